// SPDX-License-Identifier: Apache-2.0
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "facto/json_io.hpp"
#include "facto/random.hpp"

using namespace facto;
using io::json;

namespace {

struct PropertyFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json read_json(const std::string& path) {
    if (path.empty()) fail(ErrorKind::Parse, "--in is required");
    std::ifstream in(path);
    if (!in) fail(ErrorKind::Parse, path + ": cannot open file");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        fail(ErrorKind::Parse, path + ": malformed JSON (" + std::string(e.what()) + ")");
    }
}

// Writes to a temporary sibling and renames, so a failed run never leaves a partial file.
void emit(const std::string& text, const std::string& out) {
    if (out.empty()) {
        std::cout << text;
        return;
    }
    std::string tmp = out + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) fail(ErrorKind::Parse, out + ": cannot write");
        f << text;
        if (!f) fail(ErrorKind::Parse, out + ": write failed");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, out, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        fail(ErrorKind::Parse, out + ": cannot replace file");
    }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

CensusBounds parse_bounds(const std::string& s) {
    CensusBounds b;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) fail(ErrorKind::Parse, "--bounds: expected key=value, got \"" + item + "\"");
        std::string k = item.substr(0, eq), v = item.substr(eq + 1);
        int n = 0;
        try {
            std::size_t pos = 0;
            n = std::stoi(v, &pos);
            if (pos != v.size()) throw std::invalid_argument(v);
        } catch (...) {
            fail(ErrorKind::Parse, "--bounds: \"" + v + "\" is not an integer");
        }
        if (n < 0) fail(ErrorKind::Parse, "--bounds: " + k + " must be nonnegative");
        if (k == "m") b.m = n;
        else if (k == "dim") b.dim = n;
        else if (k == "window") b.window = n;
        else fail(ErrorKind::Parse, "--bounds: unknown key \"" + k + "\"");
    }
    return b;
}

std::vector<int> parse_ints(const std::string& s) {
    std::vector<int> v;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            v.push_back(std::stoi(item, &pos));
            if (pos != item.size()) throw std::invalid_argument(item);
        } catch (...) {
            fail(ErrorKind::Parse, "--shifts: \"" + item + "\" is not an integer");
        }
    }
    return v;
}

bool is_chain_json(const json& j) { return j.is_object() && j.contains("objects"); }

struct Check {
    std::string name;
    bool ok;
};

std::vector<Check> selftest(std::uint64_t seed) {
    gen::Rng rng(seed);
    Field f = Field::prime(5);
    std::vector<Check> out;
    auto run = [&](const std::string& name, int n, auto body) {
        bool ok = true;
        for (int i = 0; i < n && ok; ++i) ok = body(i);
        out.push_back({name, ok});
    };
    run("zigzag and rotation orbit", 30, [&](int i) {
        Factorization x = gen::random_factorization(rng, f, 2 + i % 2, 1 + i % 3);
        Factorization y = x;
        for (int k = 0; k <= x.l; ++k) y = rotate(y);
        return !zigzag_check(x) && y == tau(x) && rotate(rotate(x), true) == x;
    });
    run("adjunction round trips", 20, [&](int i) {
        Factorization x = gen::random_factorization(rng, f, 2, 1 + i % 3);
        std::vector<int> a{gen::uniform(rng, 0, 2)};
        for (auto& g : fac_hom_basis(nu(f, 2, x.l, a, x.l), x))
            if (adjunction_backward(Adjunction::NuLLeft, 0, x, adjunction_forward(Adjunction::NuLLeft, 0, g)) != g) return false;
        for (int k = 0; k <= x.l; ++k)
            for (auto& g : fac_hom_basis(x, nu(f, 2, x.l, a, k)))
                if (adjunction_backward(Adjunction::NuKRight, k, x, adjunction_forward(Adjunction::NuKRight, k, g)) != g) return false;
        return true;
    });
    run("nu-resolution split exact", 20, [&](int i) {
        Factorization x = gen::random_factorization(rng, f, 2 + i % 2, 1 + i % 2);
        NuResolution r = nu_resolution(x, NuSide::Epic);
        return termwise_split_exact(r.other_map, r.map) && fac_projective_test(r.middle) && !zigzag_check(r.other);
    });
    run("cok of reconstruct", 30, [&](int i) {
        MonoChain u = gen::random_chain(rng, f, 2 + i % 2, 1 + i % 2);
        return chain_iso_test(cok(reconstruct(u)), u);
    });
    run("stable homs agree under cok", 20, [&](int i) {
        Factorization x = gen::random_factorization(rng, f, 2 + i % 2, 1 + i % 2);
        Factorization y = gen::random_factorization(rng, f, 2 + i % 2, 1 + i % 2);
        return fac_stable_hom_dim(x, y) == chain_stable_hom_dim(cok(x), cok(y)) && hom_dim_compare(x, y).equal;
    });
    run("classical census d=3", 1, [&](int) {
        CensusReport r = class_census(f, 3, 1, {1, 3, 0});
        return r.ok() && r.matching.size() == 2;
    });
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Factorizations of x^d over k[x] and chains of monomorphisms over k[x]/(x^d)"};
    app.require_subcommand(1, 1);
    std::string field_s = "q", in, other, out, bounds_s = "m=1,dim=3,window=2", side = "epic", shifts_s = "0",
                format = "json";
    int d = 2, l = 1, k = 0, times = 1;
    std::uint64_t seed = 0;
    bool inverse = false;

    auto common = [&](CLI::App* c) {
        c->add_option("--field", field_s, "q or fp:<p>");
        c->add_option("--out", out, "output file (default stdout)");
        c->add_option("--seed", seed, "seed for randomized searches");
    };
    auto* validate = app.add_subcommand("validate", "check a factorization or chain and print its closing map");
    validate->add_option("--in", in)->required();
    common(validate);
    auto* cokc = app.add_subcommand("cok", "cokernel chain of a factorization");
    cokc->add_option("--in", in)->required();
    common(cokc);
    auto* rec = app.add_subcommand("reconstruct", "factorization with the given cokernel chain");
    rec->add_option("--in", in)->required();
    common(rec);
    auto* rot = app.add_subcommand("rotate", "rotate the factors");
    rot->add_option("--in", in)->required();
    rot->add_flag("--inverse", inverse);
    rot->add_option("--times", times)->check(CLI::NonNegativeNumber);
    common(rot);
    auto* nuc = app.add_subcommand("nu", "trivial factorization nu^k on free generators");
    nuc->add_option("--d", d)->required()->check(CLI::PositiveNumber);
    nuc->add_option("--l", l)->required()->check(CLI::PositiveNumber);
    nuc->add_option("--k", k)->required()->check(CLI::NonNegativeNumber);
    nuc->add_option("--shifts", shifts_s, "comma separated degree labels");
    common(nuc);
    auto* res = app.add_subcommand("resolve", "nu-resolution of a factorization");
    res->add_option("--in", in)->required();
    res->add_option("--side", side)->check(CLI::IsMember({"epic", "monic"}));
    common(res);
    auto* sh = app.add_subcommand("stable-hom", "hom and stable hom dimensions");
    sh->add_option("--in", in)->required();
    sh->add_option("--other", other, "second object (default: the first)");
    common(sh);
    auto* cen = app.add_subcommand("census", "stable class census on both sides");
    cen->add_option("--d", d)->required()->check(CLI::PositiveNumber);
    cen->add_option("--l", l)->required()->check(CLI::PositiveNumber);
    cen->add_option("--bounds", bounds_s, "m=<int>,dim=<int>,window=<int>");
    cen->add_option("--format", format)->check(CLI::IsMember({"json", "table"}));
    common(cen);
    auto* st = app.add_subcommand("selftest", "randomized property checks");
    common(st);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        Field f = io::parse_field(field_s);
        IsoSearch opt{seed, 64};
        if (validate->parsed()) {
            json j = read_json(in);
            if (is_chain_json(j)) {
                MonoChain u = io::parse_chain(j, f);
                emit(dump(json{{"valid", true}, {"length", u.l()}, {"total_dim", u.total_dim()}}), out);
            } else {
                Factorization x = io::parse_factorization(j, f);
                if (auto z = zigzag_check(x)) throw PropertyFailure("zig-zag identity fails at position " + std::to_string(*z));
                emit(dump(json{{"valid", true}, {"closing", io::graded_json(x.closing)}}), out);
            }
        } else if (cokc->parsed()) {
            emit(dump(io::chain_json(cok(io::parse_factorization(read_json(in), f)))), out);
        } else if (rec->parsed()) {
            MonoChain u = io::parse_chain(read_json(in), f);
            Factorization x = reconstruct(u);
            if (!chain_iso_test(cok(x), u, opt)) throw PropertyFailure("cokernel of the reconstruction is not the input chain");
            emit(dump(io::factorization_json(x, true)), out);
        } else if (rot->parsed()) {
            Factorization x = io::parse_factorization(read_json(in), f);
            for (int i = 0; i < times; ++i) x = rotate(x, inverse);
            emit(dump(io::factorization_json(x, true)), out);
        } else if (nuc->parsed()) {
            if (k > l) fail(ErrorKind::Range, "--k must lie in 0..l");
            emit(dump(io::factorization_json(nu(f, d, l, parse_ints(shifts_s), k), true)), out);
        } else if (res->parsed()) {
            Factorization x = io::parse_factorization(read_json(in), f);
            NuResolution r = nu_resolution(x, side == "epic" ? NuSide::Epic : NuSide::Monic);
            bool split = side == "epic" ? termwise_split_exact(r.other_map, r.map) : termwise_split_exact(r.map, r.other_map);
            if (!split) throw PropertyFailure("resolution is not termwise split exact");
            emit(dump(json{{"side", side},
                           {"middle", io::factorization_json(r.middle, true)},
                           {side == "epic" ? "kernel" : "cokernel", io::factorization_json(r.other, true)},
                           {"map", io::fac_map_json(r.map)},
                           {side == "epic" ? "kernel_map" : "cokernel_map", io::fac_map_json(r.other_map)},
                           {"termwise_split_exact", split}}),
                 out);
        } else if (sh->parsed()) {
            json a = read_json(in), b = other.empty() ? a : read_json(other);
            if (is_chain_json(a) != is_chain_json(b)) fail(ErrorKind::Parse, "--in and --other must be the same kind of object");
            if (is_chain_json(a)) {
                MonoChain u = io::parse_chain(a, f, "in"), v = io::parse_chain(b, f, "other");
                if (u.l() != v.l() || u.d != v.d) fail(ErrorKind::DimensionMismatch, "chains of different shape");
                emit(dump(json{{"hom_dim", chain_hom_basis(u, v).size()}, {"stable_hom_dim", chain_stable_hom_dim(u, v)}}), out);
            } else {
                Factorization x = io::parse_factorization(a, f, "in"), y = io::parse_factorization(b, f, "other");
                if (x.l != y.l || x.d != y.d) fail(ErrorKind::DimensionMismatch, "factorizations of different shape");
                std::size_t s = fac_stable_hom_dim(x, y), c = chain_stable_hom_dim(cok(x), cok(y));
                HomCompare hc = hom_dim_compare(x, y);
                if (s != c || !hc.equal) throw PropertyFailure("stable hom dimension differs from the cokernel side");
                emit(dump(json{{"hom_dim", fac_hom_basis(x, y).size()},
                               {"stable_hom_dim", s},
                               {"cok_stable_hom_dim", c},
                               {"hom_mod_nu_l", hc.lhs},
                               {"cok_hom_dim", hc.rhs}}),
                     out);
            }
        } else if (cen->parsed()) {
            if (f.is_rational()) fail(ErrorKind::Range, "census needs --field fp:<p>");
            CensusReport r = class_census(f, d, l, parse_bounds(bounds_s), opt);
            emit(format == "json" ? dump(io::census_json(r)) : census_table(r), out);
            if (!r.ok()) {
                for (auto& s : r.failures) std::cerr << "census failure: " << s << "\n";
                return 2;
            }
        } else if (st->parsed()) {
            auto checks = selftest(seed);
            std::ostringstream o;
            bool ok = true;
            for (auto& c : checks) {
                o << (c.ok ? "PASS " : "FAIL ") << c.name << "\n";
                ok = ok && c.ok;
            }
            emit(o.str(), out);
            return ok ? 0 : 2;
        }
    } catch (const PropertyFailure& e) {
        std::cerr << "property failure: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.kind() == ErrorKind::Internal ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
