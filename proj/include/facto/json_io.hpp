// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "facto/census.hpp"

namespace facto::io {

using json = nlohmann::ordered_json;

namespace detail {

[[noreturn]] inline void bad(const std::string& where, const std::string& what) {
    fail(ErrorKind::Parse, where + ": " + what);
}

inline const json& field_of(const json& j, const char* key, const std::string& where) {
    if (!j.is_object()) bad(where, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) bad(where, std::string("missing key \"") + key + "\"");
    return *it;
}

inline long as_int(const json& j, const std::string& where) {
    if (!j.is_number_integer()) bad(where, "expected an integer");
    return j.get<long>();
}

inline std::vector<int> int_list(const json& j, const std::string& where) {
    if (!j.is_array()) bad(where, "expected an array of integers");
    std::vector<int> v;
    for (std::size_t i = 0; i < j.size(); ++i) v.push_back(int(as_int(j[i], where + "[" + std::to_string(i) + "]")));
    return v;
}

}  // namespace detail

inline Field parse_field(const std::string& s) {
    if (s == "q") return Field::rational();
    if (s.rfind("fp:", 0) == 0) {
        std::size_t pos = 0;
        long p = 0;
        try {
            p = std::stol(s.substr(3), &pos);
        } catch (...) {
            pos = 0;
        }
        if (pos == 0 || pos != s.size() - 3) fail(ErrorKind::Parse, "--field: malformed prime in \"" + s + "\"");
        return Field::prime(p);
    }
    fail(ErrorKind::Parse, "--field: expected q or fp:<p>, got \"" + s + "\"");
}

inline Scalar parse_scalar(const json& j, Field f, const std::string& where) {
    if (j.is_number_integer()) return Scalar(f, mpq_class(j.get<long>()));
    if (j.is_string()) {
        mpq_class q;
        if (q.set_str(j.get<std::string>(), 10) != 0) detail::bad(where, "malformed rational \"" + j.get<std::string>() + "\"");
        if (q.get_den() == 0) detail::bad(where, "zero denominator");
        q.canonicalize();
        if (f.is_rational()) return Scalar(f, q);
        Scalar num(f, mpq_class(q.get_num())), den(f, mpq_class(q.get_den()));
        if (den.is_zero()) detail::bad(where, "denominator vanishes in " + f.name());
        return num / den;
    }
    detail::bad(where, "expected an integer or a \"num/den\" string");
}

inline json scalar_json(const Scalar& s) {
    if (!s.field().is_rational()) return long(s.residue());
    const mpq_class& q = s.rational();
    if (q.get_den() == 1 && q.get_num().fits_slong_p()) return q.get_num().get_si();
    return q.get_str();
}

inline Polynomial parse_poly(const json& j, Field f, const std::string& where) {
    if (j.is_number_integer() || j.is_string()) return Polynomial::constant(parse_scalar(j, f, where));
    if (!j.is_array()) detail::bad(where, "expected a coefficient array");
    std::vector<Scalar> cs;
    for (std::size_t i = 0; i < j.size(); ++i) cs.push_back(parse_scalar(j[i], f, where + "[" + std::to_string(i) + "]"));
    return Polynomial(f, cs);
}

inline json poly_json(const Polynomial& p) {
    json a = json::array();
    for (auto& c : p.coeffs()) a.push_back(scalar_json(c));
    return a;
}

inline GradedMatrix parse_graded(const json& j, Field f, const std::string& where) {
    long r = detail::as_int(detail::field_of(j, "rows", where), where + ".rows");
    long c = detail::as_int(detail::field_of(j, "cols", where), where + ".cols");
    if (r < 0 || c < 0) detail::bad(where, "negative shape");
    const json& e = detail::field_of(j, "entries", where);
    if (!e.is_array() || long(e.size()) != r) detail::bad(where + ".entries", "expected " + std::to_string(r) + " rows");
    PolyMatrix m(f, r, c);
    for (long a = 0; a < r; ++a) {
        std::string w = where + ".entries[" + std::to_string(a) + "]";
        if (!e[a].is_array() || long(e[a].size()) != c) detail::bad(w, "expected " + std::to_string(c) + " entries");
        for (long b = 0; b < c; ++b) m(a, b) = parse_poly(e[a][b], f, w + "[" + std::to_string(b) + "]");
    }
    std::vector<int> src(c, 0), tgt(r, 0);
    if (j.contains("src_degs")) src = detail::int_list(j["src_degs"], where + ".src_degs");
    if (j.contains("tgt_degs")) tgt = detail::int_list(j["tgt_degs"], where + ".tgt_degs");
    if (long(src.size()) != c || long(tgt.size()) != r) detail::bad(where, "degree vectors do not match the shape");
    return GradedMatrix(std::move(m), std::move(src), std::move(tgt));
}

inline json graded_json(const GradedMatrix& g) {
    json e = json::array();
    for (std::size_t a = 0; a < g.rows(); ++a) {
        json row = json::array();
        for (std::size_t b = 0; b < g.cols(); ++b) row.push_back(poly_json(g.mat(a, b)));
        e.push_back(row);
    }
    return json{{"rows", g.rows()}, {"cols", g.cols()}, {"entries", e}, {"src_degs", g.src}, {"tgt_degs", g.tgt}};
}

inline RModule parse_module(const json& j, const std::string& where) {
    int d = int(detail::as_int(detail::field_of(j, "d", where), where + ".d"));
    if (d < 1) detail::bad(where + ".d", "must be positive");
    const json& s = detail::field_of(j, "summands", where);
    if (!s.is_array()) detail::bad(where + ".summands", "expected an array");
    std::vector<Summand> v;
    for (std::size_t i = 0; i < s.size(); ++i) {
        std::string w = where + ".summands[" + std::to_string(i) + "]";
        auto p = detail::int_list(s[i], w);
        if (p.size() != 2) detail::bad(w, "expected [e, s]");
        if (p[0] < 1 || p[0] > d) detail::bad(w, "length must lie in 1..d");
        v.push_back({p[0], p[1]});
    }
    return RModule(d, v);
}

inline json module_json(const RModule& m) {
    json s = json::array();
    for (auto& t : m.summands()) s.push_back({t.e, t.s});
    return json{{"d", m.d()}, {"summands", s}};
}

inline KMatrix parse_kmatrix(const json& j, Field f, std::size_t r, std::size_t c, const std::string& where) {
    if (!j.is_array() || j.size() != r) detail::bad(where, "expected " + std::to_string(r) + " rows");
    KMatrix k(f, r, c);
    for (std::size_t a = 0; a < r; ++a) {
        std::string w = where + "[" + std::to_string(a) + "]";
        if (!j[a].is_array() || j[a].size() != c) detail::bad(w, "expected " + std::to_string(c) + " entries");
        for (std::size_t b = 0; b < c; ++b) k(a, b) = parse_scalar(j[a][b], f, w + "[" + std::to_string(b) + "]");
    }
    return k;
}

inline json kmatrix_json(const KMatrix& k) {
    json a = json::array();
    for (std::size_t r = 0; r < k.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < k.cols(); ++c) row.push_back(scalar_json(k(r, c)));
        a.push_back(row);
    }
    return a;
}

inline ModuleMap parse_module_map(const json& j, Field f, const std::string& where) {
    RModule s = parse_module(detail::field_of(j, "src", where), where + ".src");
    RModule t = parse_module(detail::field_of(j, "tgt", where), where + ".tgt");
    if (s.d() != t.d()) detail::bad(where, "source and target over different rings");
    ModuleMap g(f, s, t, parse_kmatrix(detail::field_of(j, "blocks", where), f, t.size(), s.size(), where + ".blocks"));
    if (auto v = g.violation()) fail(ErrorKind::InvalidModuleMap, where + ": " + *v);
    return g;
}

inline json module_map_json(const ModuleMap& g) {
    return json{{"src", module_json(g.src())}, {"tgt", module_json(g.tgt())}, {"blocks", kmatrix_json(g.blocks())}};
}

inline MonoChain parse_chain(const json& j, Field f, const std::string& where = "chain") {
    const json& o = detail::field_of(j, "objects", where);
    const json& m = detail::field_of(j, "maps", where);
    if (!o.is_array() || o.empty()) detail::bad(where + ".objects", "expected a nonempty array");
    if (!m.is_array() || m.size() + 1 != o.size()) detail::bad(where + ".maps", "expected one map fewer than objects");
    MonoChain u{f, 0, {}, {}};
    for (std::size_t i = 0; i < o.size(); ++i) u.objects.push_back(parse_module(o[i], where + ".objects[" + std::to_string(i) + "]"));
    u.d = u.objects[0].d();
    for (std::size_t i = 0; i < m.size(); ++i) {
        std::string w = where + ".maps[" + std::to_string(i) + "]";
        ModuleMap g = parse_module_map(m[i], f, w);
        if (g.src() != u.objects[i] || g.tgt() != u.objects[i + 1]) detail::bad(w, "map does not join consecutive objects");
        u.maps.push_back(std::move(g));
    }
    if (auto v = chain_validate(u)) fail(ErrorKind::InvalidChain, where + ": " + *v);
    return u;
}

inline json chain_json(const MonoChain& u) {
    json o = json::array(), m = json::array();
    for (auto& x : u.objects) o.push_back(module_json(x));
    for (auto& g : u.maps) m.push_back(module_map_json(g));
    return json{{"objects", o}, {"maps", m}};
}

inline Factorization parse_factorization(const json& j, Field f, const std::string& where = "factorization") {
    int d = int(detail::as_int(detail::field_of(j, "d", where), where + ".d"));
    int l = int(detail::as_int(detail::field_of(j, "l", where), where + ".l"));
    long m = detail::as_int(detail::field_of(j, "m", where), where + ".m");
    const json& dg = detail::field_of(j, "degs", where);
    const json& mp = detail::field_of(j, "maps", where);
    if (d < 1) detail::bad(where + ".d", "must be positive");
    if (l < 1) detail::bad(where + ".l", "must be at least 1");
    if (!dg.is_array() || long(dg.size()) != l + 1) detail::bad(where + ".degs", "expected l+1 degree vectors");
    if (!mp.is_array() || long(mp.size()) != l) detail::bad(where + ".maps", "expected l maps");
    std::vector<std::vector<int>> degs;
    for (int k = 0; k <= l; ++k) {
        degs.push_back(detail::int_list(dg[k], where + ".degs[" + std::to_string(k) + "]"));
        if (long(degs.back().size()) != m) detail::bad(where + ".degs[" + std::to_string(k) + "]", "expected m entries");
    }
    std::vector<GradedMatrix> maps;
    for (int k = 0; k < l; ++k) {
        std::string w = where + ".maps[" + std::to_string(k) + "]";
        json g = mp[k];
        if (g.is_object() && !g.contains("src_degs")) g["src_degs"] = degs[k];
        if (g.is_object() && !g.contains("tgt_degs")) g["tgt_degs"] = degs[k + 1];
        maps.push_back(parse_graded(g, f, w));
        if (maps.back().rows() != std::size_t(m) || maps.back().cols() != std::size_t(m)) detail::bad(w, "expected an m x m matrix");
    }
    int twist = j.contains("twist") ? int(detail::as_int(j["twist"], where + ".twist")) : 0;
    int phase = j.contains("phase") ? int(detail::as_int(j["phase"], where + ".phase")) : 0;
    return fac_validate(f, d, std::move(maps), std::move(degs), twist, phase);
}

inline json factorization_json(const Factorization& x, bool with_closing = false) {
    json maps = json::array();
    for (auto& a : x.maps) maps.push_back(graded_json(a));
    json j{{"d", x.d}, {"l", x.l}, {"m", x.m()}, {"degs", x.degs}, {"maps", maps}};
    if (x.twist != 0 || x.phase != 0) {
        j["twist"] = x.twist;
        j["phase"] = x.phase;
    }
    if (with_closing) j["closing"] = graded_json(x.closing);
    return j;
}

inline json fac_map_json(const FacMap& g) {
    json a = json::array();
    for (auto& c : g.comps) a.push_back(graded_json(c));
    return json{{"components", a}};
}

inline json census_json(const CensusReport& r) {
    json fac = json::array(), ch = json::array(), match = json::array();
    for (auto& x : r.fac_classes) fac.push_back(factorization_json(x));
    for (auto& u : r.chain_classes) ch.push_back(chain_json(u));
    for (auto& [a, b] : r.matching) match.push_back({a, b});
    return json{{"parameters",
                 {{"field", r.field.name()},
                  {"d", r.d},
                  {"l", r.l},
                  {"m", r.bounds.m},
                  {"dim", r.bounds.dim},
                  {"window", r.bounds.window}}},
                {"fac_classes", fac},
                {"chain_classes", ch},
                {"matching", match},
                {"fac_out_of_window", r.fac_out_of_window},
                {"chain_out_of_window", r.chain_out_of_window},
                {"hom_table", {{"factorizations", r.fac_hom}, {"chains", r.chain_hom}}},
                {"ok", r.ok()},
                {"failures", r.failures}};
}

}  // namespace facto::io
