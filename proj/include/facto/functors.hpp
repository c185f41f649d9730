// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "facto/chain.hpp"
#include "facto/factorization.hpp"
#include "facto/module.hpp"

namespace facto {

// U^k = X^k / X^0 for k = 1..l with the induced monos.
struct CokData {
    MonoChain chain;
    std::vector<Presentation> pres;  // pres[k-1] presents U^k
};

namespace detail {
// Map U -> V induced by a graded matrix between the presented free modules.
inline ModuleMap induced(const Presentation& from, const Presentation& to, const PolyMatrix& a, Field f, int d) {
    KMatrix F = to.apply(a * lift_coords(from.section, d));
    return ModuleMap::from_realization(f, from.module, to.module, F);
}
}  // namespace detail

inline CokData cok_data(const Factorization& x) {
    Field f = x.field;
    int d = x.d;
    CokData c{MonoChain{f, d, {}, {}}, {}};
    for (int k = 1; k <= x.l; ++k) {
        c.pres.push_back(module_from_presentation(x.composite(0, k), d));
        c.chain.objects.push_back(c.pres.back().module);
    }
    for (int k = 1; k < x.l; ++k) {
        ModuleMap g = detail::induced(c.pres[k - 1], c.pres[k], x.maps[k].mat, f, d);
        require(is_mono_epi(g).mono, ErrorKind::Internal, "induced map on cokernels is not mono");
        c.chain.maps.push_back(std::move(g));
    }
    return c;
}

inline MonoChain cok(const Factorization& x) { return cok_data(x).chain; }

inline ChainMap cok_map(const Factorization& x, const CokData& cx, const CokData& cy, const FacMap& g) {
    ChainMap h;
    for (int k = 1; k <= x.l; ++k)
        h.comps.push_back(detail::induced(cx.pres[k - 1], cy.pres[k - 1], g.comps[k].mat, x.field, x.d));
    return h;
}

// 0 -> nu^l(X^0) -> X -> (0, U^1, ..., U^l) -> 0
struct JQSequence {
    Factorization source;          // nu^l(X^0)
    FacMap j;                      // composites A^{k-1} ... A^0
    std::vector<KMatrix> q;        // q[k] : X^k / x^d X^k -> U^k, with U^0 = 0
    CokData cok;
};

namespace detail {
// p o i = 0, p onto, and dim U = deg det i: then U = cok i.
inline bool presents(const GradedMatrix& i, const KMatrix& p, std::size_t dim_u, int d) {
    if (!(p * truncate_coords(i.mat, d)).is_zero()) return false;
    if (rank(p) != dim_u) return false;
    Polynomial dt = det(i.mat);
    return !dt.is_zero() && std::size_t(dt.degree()) == dim_u;
}
}  // namespace detail

inline JQSequence jq_sequence(const Factorization& x) {
    Factorization src = nu(x.field, x.d, x.l, x.degs[0], x.l);
    src.twist = x.twist;
    src.phase = x.phase;
    JQSequence s{src, adjunction_backward(Adjunction::NuLLeft, 0, x, GradedMatrix::identity(x.field, x.degs[0])), {},
                 cok_data(x)};
    s.q.push_back(KMatrix(x.field, 0, x.m() * x.d));
    for (int k = 1; k <= x.l; ++k) s.q.push_back(s.cok.pres[k - 1].proj);
    return s;
}

inline bool jq_exact(const JQSequence& s) {
    int d = s.source.d;
    for (std::size_t k = 0; k < s.j.comps.size(); ++k) {
        std::size_t dim = k == 0 ? 0 : s.cok.chain.objects[k - 1].dim();
        if (!detail::presents(s.j.comps[k], s.q[k], dim, d)) return false;
    }
    return true;
}

struct LDiagram {
    GradedMatrix iota;  // X^0 >-> X^l
    KMatrix rho;        // X^l / x^d X^l ->> U^l
    MonoChain chain;
};

inline LDiagram to_ldiagram(const Factorization& x) {
    CokData c = cok_data(x);
    return {x.composite(0, x.l), c.pres.back().proj, c.chain};
}

inline bool ldiagram_check(const LDiagram& g) {
    return !chain_validate(g.chain) && detail::presents(g.iota, g.rho, g.chain.top().dim(), g.chain.d);
}

// Factorization whose cokernel chain is U: minimal free cover of U^l and preimages of the U^k.
inline Factorization reconstruct(const MonoChain& u) {
    require(!chain_validate(u), ErrorKind::InvalidChain, "reconstruct needs a valid chain");
    Field f = u.field;
    int d = u.d;
    int l = int(u.l());
    const RModule& top = u.top();
    std::size_t m = top.size();
    std::vector<int> cover;
    for (auto& t : top.summands()) cover.push_back(-t.s);
    Realization vt = top.realization(f);
    auto off = top.offsets();

    // Columns of W[k] span the preimage of U^k in X^l (U^0 = 0).
    std::vector<GradedMatrix> W;
    for (int k = 0; k < l; ++k) {
        KMatrix sub = k == 0 ? KMatrix(f, top.dim(), 0) : u.composite(k - 1, l - 1).realize();
        Quotient q = quotient(vt, sub, d);
        const RModule& w = q.module;
        auto woff = w.offsets();
        std::size_t r = w.size();
        std::vector<int> src = cover, tgt;
        for (auto& t : w.summands()) {
            tgt.push_back(-t.s);
            src.push_back(-t.s - t.e);
        }
        PolyMatrix rel(f, r, m + r);
        for (std::size_t i = 0; i < m; ++i) {
            KMatrix gi(f, top.dim(), 1);
            gi(off[i], 0) = Scalar::one(f);
            KMatrix img = q.proj * gi;
            for (std::size_t t = 0; t < r; ++t) {
                int j = top.summands()[i].s - w.summands()[t].s;
                if (j >= 0 && j < w.summands()[t].e) rel(t, i) = Polynomial::monomial(img(woff[t] + j, 0), j);
            }
        }
        for (std::size_t t = 0; t < r; ++t) rel(t, m + t) = Polynomial::x_pow(f, w.summands()[t].e);
        GradedMatrix ker = r == 0 ? GradedMatrix::identity(f, src) : graded_kernel(GradedMatrix(rel, src, tgt));
        require(ker.cols() == m, ErrorKind::Internal, "preimage is not of full rank");
        std::vector<std::size_t> rows = detail::range(0, m), cols = detail::range(0, m);
        W.push_back(detail::select(ker, rows, cols));
    }
    W.push_back(GradedMatrix::identity(f, cover));
    std::vector<GradedMatrix> maps;
    std::vector<std::vector<int>> degs;
    for (int k = 0; k <= l; ++k) degs.push_back(W[k].src);
    for (int k = 0; k < l; ++k) {
        auto a = graded_solve(W[k + 1], W[k]);
        require(a.has_value(), ErrorKind::Internal, "preimages are not nested");
        maps.push_back(std::move(*a));
    }
    return fac_validate(f, d, std::move(maps), std::move(degs));
}

// cok(X) >-> cok(Y) ->> cok(Z) is exact in every position, for a termwise split X >-> Y ->> Z.
inline bool cok_exactness_check(const Factorization& x, const Factorization& y, const Factorization& z, const FacMap& i,
                                const FacMap& p) {
    require(is_fac_map(x, y, i) && is_fac_map(y, z, p), ErrorKind::InvalidFactorization,
            "sequence maps are not morphisms of factorizations");
    require(termwise_split_exact(i, p), ErrorKind::InvalidFactorization, "sequence is not termwise split exact");
    CokData cx = cok_data(x), cy = cok_data(y), cz = cok_data(z);
    ChainMap ci = cok_map(x, cx, cy, i), cp = cok_map(y, cy, cz, p);
    if (!is_chain_map(cx.chain, cy.chain, ci) || !is_chain_map(cy.chain, cz.chain, cp)) return false;
    for (int k = 0; k < x.l; ++k) {
        MonoEpi a = is_mono_epi(ci.comps[k]), b = is_mono_epi(cp.comps[k]);
        if (!a.mono || !b.epi) return false;
        if (!(cp.comps[k].realize() * ci.comps[k].realize()).is_zero()) return false;
        if (cy.chain.objects[k].dim() != cx.chain.objects[k].dim() + cz.chain.objects[k].dim()) return false;
    }
    return true;
}

}  // namespace facto
