// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "facto/module.hpp"

namespace facto {

// U^1 >-> U^2 >-> ... >-> U^l; a chain of length l-1.
struct MonoChain {
    Field field;
    int d = 1;
    std::vector<RModule> objects;
    std::vector<ModuleMap> maps;  // maps[k] : objects[k] -> objects[k+1]

    std::size_t l() const { return objects.size(); }
    std::size_t total_dim() const {
        std::size_t n = 0;
        for (auto& m : objects) n += m.dim();
        return n;
    }
    const RModule& top() const { return objects.back(); }

    // maps[j-1] o ... o maps[i] : objects[i] -> objects[j]
    ModuleMap composite(std::size_t i, std::size_t j) const {
        ModuleMap f = ModuleMap::identity(field, objects[i]);
        for (std::size_t k = i; k < j; ++k) f = compose(maps[k], f);
        return f;
    }

    friend bool operator==(const MonoChain& a, const MonoChain& b) {
        return a.field == b.field && a.d == b.d && a.objects == b.objects && a.maps == b.maps;
    }
};

struct ChainMap {
    std::vector<ModuleMap> comps;
    friend bool operator==(const ChainMap& a, const ChainMap& b) { return a.comps == b.comps; }
};

inline ChainMap compose(const ChainMap& g, const ChainMap& f) {
    require(g.comps.size() == f.comps.size(), ErrorKind::DimensionMismatch, "chain maps of different length");
    ChainMap h;
    for (std::size_t k = 0; k < f.comps.size(); ++k) h.comps.push_back(compose(g.comps[k], f.comps[k]));
    return h;
}

inline ChainMap identity_map(const MonoChain& u) {
    ChainMap h;
    for (auto& m : u.objects) h.comps.push_back(ModuleMap::identity(u.field, m));
    return h;
}

inline std::optional<std::string> chain_validate(const MonoChain& u) {
    if (u.objects.empty()) return "chain has no objects";
    if (u.maps.size() + 1 != u.objects.size()) return "chain needs exactly one map between consecutive objects";
    for (std::size_t k = 0; k < u.objects.size(); ++k)
        if (u.objects[k].d() != u.d) return "object " + std::to_string(k + 1) + " lives over a different ring";
    for (std::size_t k = 0; k < u.maps.size(); ++k) {
        const ModuleMap& a = u.maps[k];
        if (a.src() != u.objects[k] || a.tgt() != u.objects[k + 1])
            return "map " + std::to_string(k + 1) + " has the wrong source or target";
        if (a.field() != u.field) return "map " + std::to_string(k + 1) + " uses a different field";
        if (auto v = a.violation()) return "map " + std::to_string(k + 1) + ": " + *v;
        if (!is_mono_epi(a).mono) return "map " + std::to_string(k + 1) + " is not a monomorphism";
    }
    return std::nullopt;
}

inline bool is_chain_map(const MonoChain& u, const MonoChain& v, const ChainMap& g) {
    if (g.comps.size() != u.l() || v.l() != u.l()) return false;
    for (std::size_t k = 0; k < u.l(); ++k)
        if (g.comps[k].src() != u.objects[k] || g.comps[k].tgt() != v.objects[k] || g.comps[k].violation()) return false;
    for (std::size_t k = 0; k + 1 < u.l(); ++k)
        if (v.maps[k].realize() * g.comps[k].realize() != g.comps[k + 1].realize() * u.maps[k].realize()) return false;
    return true;
}

// 0 = ... = 0 >-> A = ... = A with n trailing copies of A.
inline MonoChain mu_trivial(const RModule& a, std::size_t n, std::size_t l, Field f) {
    require(l >= 1 && n >= 1 && n <= l, ErrorKind::Range, "mu_trivial: n must lie in 1..l");
    MonoChain u{f, a.d(), {}, {}};
    for (std::size_t k = 0; k < l; ++k) u.objects.push_back(k + n >= l ? a : RModule::zero(a.d()));
    for (std::size_t k = 0; k + 1 < l; ++k) {
        const RModule &s = u.objects[k], &t = u.objects[k + 1];
        u.maps.push_back(s.is_zero() ? ModuleMap::zero(f, s, t) : ModuleMap::identity(f, a));
    }
    return u;
}

inline MonoChain zero_chain(int d, std::size_t l, Field f) { return mu_trivial(RModule::zero(d), l, l, f); }

// Prepends a zero object.
inline MonoChain iota_embed(const MonoChain& u) {
    MonoChain v{u.field, u.d, {RModule::zero(u.d)}, {}};
    v.objects.insert(v.objects.end(), u.objects.begin(), u.objects.end());
    v.maps.push_back(ModuleMap::zero(u.field, v.objects[0], u.objects[0]));
    v.maps.insert(v.maps.end(), u.maps.begin(), u.maps.end());
    return v;
}

inline bool chain_projective_test(const MonoChain& u) {
    for (auto& m : u.objects)
        if (!m.is_free()) return false;
    for (auto& a : u.maps)
        if (!map_ker_cok_im(a).cok.is_free()) return false;
    return true;
}

struct ChainDirectSum {
    MonoChain sum;
    ChainMap incl0, incl1, proj0, proj1;
};

inline ChainDirectSum chain_direct_sum(const MonoChain& u, const MonoChain& v) {
    require(u.l() == v.l() && u.d == v.d && u.field == v.field, ErrorKind::DimensionMismatch,
            "direct sum of chains of different shape");
    Field f = u.field;
    ChainDirectSum r{MonoChain{f, u.d, {}, {}}, {}, {}, {}, {}};
    std::vector<DirectSum> sums;
    for (std::size_t k = 0; k < u.l(); ++k) {
        sums.push_back(direct_sum({u.objects[k], v.objects[k]}, f, u.d));
        r.sum.objects.push_back(sums.back().sum);
        r.incl0.comps.push_back(sums.back().incl[0]);
        r.incl1.comps.push_back(sums.back().incl[1]);
        r.proj0.comps.push_back(sums.back().proj[0]);
        r.proj1.comps.push_back(sums.back().proj[1]);
    }
    for (std::size_t k = 0; k + 1 < u.l(); ++k)
        r.sum.maps.push_back(block_map(sums[k], sums[k + 1], {{u.maps[k], std::nullopt}, {std::nullopt, v.maps[k]}}, f));
    return r;
}

struct ChainCover {
    MonoChain P;
    ChainMap p;
};

// P = sum_k mu_{l-k+1}(Q^k) with Q^k the projective cover of U^k; P^i = Q^1 + ... + Q^i and
// p^i restricted to Q^k is (a^{i-1} ... a^k) q^k.
inline ChainCover chain_projective_cover(const MonoChain& u) {
    Field f = u.field;
    std::size_t l = u.l();
    std::vector<Cover> q;
    for (auto& m : u.objects) q.push_back(projective_cover(m, f));
    ChainCover c{MonoChain{f, u.d, {}, {}}, {}};
    std::vector<DirectSum> sums;
    for (std::size_t i = 0; i < l; ++i) {
        std::vector<RModule> parts;
        for (std::size_t k = 0; k <= i; ++k) parts.push_back(q[k].P);
        sums.push_back(direct_sum(parts, f, u.d));
        c.P.objects.push_back(sums.back().sum);
        KMatrix F(f, u.objects[i].dim(), sums.back().sum.dim());
        for (std::size_t k = 0; k <= i; ++k)
            F = F + u.composite(k, i).realize() * q[k].p.realize() * sums.back().proj[k].realize();
        c.p.comps.push_back(ModuleMap::from_realization(f, sums.back().sum, u.objects[i], F));
    }
    for (std::size_t i = 0; i + 1 < l; ++i) {
        std::vector<std::vector<std::optional<ModuleMap>>> comp(i + 2, std::vector<std::optional<ModuleMap>>(i + 1));
        for (std::size_t k = 0; k <= i; ++k) comp[k][k] = ModuleMap::identity(f, q[k].P);
        c.P.maps.push_back(block_map(sums[i], sums[i + 1], comp, f));
    }
    return c;
}

namespace detail {

inline KMatrix flatten_matrix(const KMatrix& m) {
    KMatrix v(m.field(), m.rows() * m.cols(), 1);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) v(i * m.cols() + j, 0) = m(i, j);
    return v;
}

inline KMatrix chain_vec(const ChainMap& g, Field f) {
    std::vector<KMatrix> parts;
    std::size_t n = 0;
    for (auto& c : g.comps) {
        parts.push_back(c.vec());
        n += parts.back().rows();
    }
    KMatrix v(f, n, 1);
    std::size_t o = 0;
    for (auto& p : parts) {
        v.set_block(o, 0, p);
        o += p.rows();
    }
    return v;
}

inline std::size_t span_rank(const std::vector<KMatrix>& vs, Field f) {
    if (vs.empty()) return 0;
    return rank(vstack_cols(f, vs[0].rows(), vs));
}

inline std::vector<Scalar> random_coeffs(Field f, std::size_t n, std::mt19937_64& rng, int attempt) {
    std::vector<Scalar> c;
    if (f.is_rational()) {
        static const long primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};
        std::uniform_int_distribution<long> u(-9, 9);
        for (std::size_t i = 0; i < n; ++i)
            c.emplace_back(f, attempt == 0 ? primes[i % 16] * long(1 + i / 16) : u(rng));
    } else {
        std::uniform_int_distribution<std::uint32_t> u(0, f.characteristic() - 1);
        for (std::size_t i = 0; i < n; ++i) c.emplace_back(f, long(u(rng)));
    }
    return c;
}

inline bool nilpotent(const KMatrix& a) {
    KMatrix p = a;
    for (std::size_t i = 0; i < a.rows(); ++i) p = p * a;
    return a.rows() == 0 || p.is_zero();
}

}  // namespace detail

inline std::vector<ChainMap> chain_hom_basis(const MonoChain& u, const MonoChain& v) {
    require(u.l() == v.l(), ErrorKind::DimensionMismatch, "hom between chains of different shape");
    Field f = u.field;
    std::size_t l = u.l();
    std::vector<std::vector<ModuleMap>> H(l);
    std::vector<std::size_t> off(l + 1, 0);
    for (std::size_t k = 0; k < l; ++k) {
        H[k] = hom_basis(u.objects[k], v.objects[k], f);
        off[k + 1] = off[k] + H[k].size();
    }
    std::size_t nunk = off[l];
    std::vector<std::size_t> roff(l, 0);
    for (std::size_t k = 0; k + 1 < l; ++k) roff[k + 1] = roff[k] + v.objects[k + 1].dim() * u.objects[k].dim();
    std::size_t neq = l >= 2 ? roff[l - 1] : 0;
    KMatrix sys(f, neq, nunk);
    for (std::size_t k = 0; k + 1 < l; ++k) {
        KMatrix a = u.maps[k].realize(), b = v.maps[k].realize();
        for (std::size_t i = 0; i < H[k].size(); ++i)
            sys.set_block(roff[k], off[k] + i, detail::flatten_matrix(b * H[k][i].realize()));
        for (std::size_t i = 0; i < H[k + 1].size(); ++i)
            sys.set_block(roff[k], off[k + 1] + i, detail::flatten_matrix(Scalar(f, -1L) * (H[k + 1][i].realize() * a)));
    }
    KMatrix n = nullspace(sys);
    std::vector<ChainMap> out;
    for (std::size_t c = 0; c < n.cols(); ++c) {
        ChainMap g;
        for (std::size_t k = 0; k < l; ++k) {
            std::vector<Scalar> cs;
            for (std::size_t i = 0; i < H[k].size(); ++i) cs.push_back(n(off[k] + i, c));
            g.comps.push_back(combine(H[k], cs, f, u.objects[k], v.objects[k]));
        }
        out.push_back(std::move(g));
    }
    return out;
}

inline ChainMap combine(const std::vector<ChainMap>& basis, const std::vector<Scalar>& c, const MonoChain& u,
                        const MonoChain& v) {
    ChainMap g;
    for (std::size_t k = 0; k < u.l(); ++k) {
        KMatrix F(u.field, v.objects[k].dim(), u.objects[k].dim());
        for (std::size_t i = 0; i < basis.size(); ++i)
            if (!c[i].is_zero()) F = F + c[i] * basis[i].comps[k].realize();
        g.comps.push_back(ModuleMap::from_realization(u.field, u.objects[k], v.objects[k], F));
    }
    return g;
}

inline std::size_t chain_stable_hom_dim(const MonoChain& u, const MonoChain& v) {
    auto H = chain_hom_basis(u, v);
    if (H.empty()) return 0;
    ChainCover c = chain_projective_cover(v);
    std::vector<KMatrix> vs;
    for (auto& h : chain_hom_basis(u, c.P)) vs.push_back(detail::chain_vec(compose(c.p, h), u.field));
    return H.size() - detail::span_rank(vs, u.field);
}

struct IsoSearch {
    std::uint64_t seed = 0;
    int attempts = 64;
};

inline bool chain_iso_test(const MonoChain& u, const MonoChain& v, IsoSearch opt = {}) {
    if (u.l() != v.l() || u.d != v.d) return false;
    for (std::size_t k = 0; k < u.l(); ++k)
        if (!module_iso(u.objects[k], v.objects[k])) return false;
    if (u.total_dim() == 0) return true;
    auto H = chain_hom_basis(u, v);
    if (H.empty()) return false;
    std::mt19937_64 rng(opt.seed);
    for (int a = 0; a < opt.attempts; ++a) {
        ChainMap g = combine(H, detail::random_coeffs(u.field, H.size(), rng, a), u, v);
        bool ok = true;
        for (auto& c : g.comps) ok = ok && invertible(c.realize());
        if (ok) return true;
    }
    return false;
}

// Every sampled endomorphism is invertible or nilpotent (End is local); one-sided:
// a false answer comes with a witness, a true answer is probabilistic.
inline bool chain_is_indecomposable(const MonoChain& u, IsoSearch opt = {}) {
    if (u.total_dim() == 0) return false;
    auto E = chain_hom_basis(u, u);
    std::mt19937_64 rng(opt.seed);
    for (int a = 0; a < opt.attempts; ++a) {
        ChainMap g = combine(E, detail::random_coeffs(u.field, E.size(), rng, a + 1), u, u);
        std::size_t n = u.total_dim();
        KMatrix T(u.field, n, n);
        std::size_t o = 0;
        for (auto& c : g.comps) {
            T.set_block(o, o, c.realize());
            o += c.src().dim();
        }
        if (!invertible(T) && !detail::nilpotent(T)) return false;
    }
    return true;
}

inline MonoChain chain_shifted(const MonoChain& u, int delta) {
    MonoChain v{u.field, u.d, {}, {}};
    for (auto& m : u.objects) v.objects.push_back(m.shifted(delta));
    for (std::size_t k = 0; k < u.maps.size(); ++k)
        v.maps.emplace_back(u.field, v.objects[k], v.objects[k + 1], u.maps[k].blocks());
    return v;
}

}  // namespace facto
