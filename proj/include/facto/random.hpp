// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <random>

#include "facto/chain.hpp"
#include "facto/factorization.hpp"
#include "facto/functors.hpp"

namespace facto::gen {

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline Scalar random_scalar(Field f, Rng& rng) {
    if (f.is_rational()) return Scalar(f, long(uniform(rng, -3, 3)));
    return Scalar(f, long(std::uniform_int_distribution<std::uint32_t>(0, f.characteristic() - 1)(rng)));
}

inline RModule random_module(Rng& rng, int d, int max_summands, int window) {
    std::vector<Summand> v(uniform(rng, 0, max_summands));
    for (auto& t : v) t = {uniform(rng, 1, d), uniform(rng, 0, window)};
    return RModule(d, v);
}

inline ModuleMap random_module_map(Rng& rng, const RModule& a, const RModule& b, Field f) {
    auto H = hom_basis(a, b, f);
    std::vector<Scalar> c;
    for (std::size_t i = 0; i < H.size(); ++i) c.push_back(random_scalar(f, rng));
    return combine(H, c, f, a, b);
}

// Chain of l objects: a random top module and successive images of random maps into it.
inline MonoChain random_chain(Rng& rng, Field f, int d, std::size_t l, int max_summands = 2, int window = 2) {
    std::vector<RModule> objs(l);
    std::vector<ModuleMap> incl(l > 0 ? l - 1 : 0);
    objs[l - 1] = random_module(rng, d, max_summands, window);
    for (std::size_t k = l - 1; k-- > 0;) {
        RModule a = random_module(rng, d, max_summands, window);
        ModuleMap g = random_module_map(rng, a, objs[k + 1], f);
        KerCokIm kc = map_ker_cok_im(g);
        objs[k] = kc.im;
        incl[k] = kc.im_incl;
    }
    return MonoChain{f, d, objs, incl};
}

// Diagonal factorization with random exponent splits of at most d, scrambled by graded
// elementary base changes in every position.
inline Factorization random_factorization(Rng& rng, Field f, int d, int l, int max_m = 2, int window = 2,
                                          int ops = 6) {
    int m = uniform(rng, 1, max_m);
    std::vector<std::vector<int>> degs(l + 1, std::vector<int>(m));
    std::vector<PolyMatrix> mats(l, PolyMatrix(f, m, m));
    for (int i = 0; i < m; ++i) {
        degs[0][i] = uniform(rng, 0, window);
        int budget = uniform(rng, 0, d);
        for (int k = 0; k < l; ++k) {
            int e = uniform(rng, 0, budget);
            budget -= e;
            degs[k + 1][i] = degs[k][i] + e;
            mats[k](i, i) = Polynomial::x_pow(f, e);
        }
    }
    for (int k = 0; k <= l; ++k)
        for (int t = 0; t < ops; ++t) {
            int i = uniform(rng, 0, m - 1), j = uniform(rng, 0, m - 1);
            if (i == j || degs[k][i] < degs[k][j]) continue;
            Polynomial p = Polynomial::monomial(random_scalar(f, rng), degs[k][i] - degs[k][j]);
            if (k < l) mats[k].add_col(j, i, -p);
            if (k > 0) mats[k - 1].add_row(i, j, p);
        }
    return fac_from_matrices(f, d, mats, degs);
}

inline GradedMatrix random_graded(Rng& rng, Field f, const std::vector<int>& src, const std::vector<int>& tgt) {
    PolyMatrix m(f, tgt.size(), src.size());
    for (std::size_t j = 0; j < tgt.size(); ++j)
        for (std::size_t i = 0; i < src.size(); ++i) {
            int e = tgt[j] - src[i];
            if (e >= 0) m(j, i) = Polynomial::monomial(random_scalar(f, rng), e);
        }
    return GradedMatrix(m, src, tgt);
}

// X >-> Y ->> Z with Y upper triangular over X + Z.
struct Extension {
    Factorization sub, total, quot;
    FacMap incl, proj;
};

inline Extension random_extension(Rng& rng, const Factorization& x, const Factorization& z, int tries = 8) {
    Field f = x.field;
    std::size_t mx = x.m(), mz = z.m();
    std::vector<std::vector<int>> degs;
    for (int k = 0; k <= x.l; ++k) degs.push_back(detail::concat(x.degs[k], z.degs[k]));
    Factorization y = direct_sum(x, z);
    for (int t = 0; t < tries; ++t) {
        std::vector<GradedMatrix> maps;
        for (int k = 0; k < x.l; ++k) {
            GradedMatrix a = block_diag(x.maps[k], z.maps[k]);
            a.mat.set_block(0, mx, random_graded(rng, f, z.degs[k], x.degs[k + 1]).mat);
            maps.push_back(std::move(a));
        }
        FacResult r = try_fac_validate(f, x.d, std::move(maps), degs, x.twist, x.phase);
        if (r.fac) {
            y = std::move(*r.fac);
            break;
        }
    }
    FacMap i, p;
    for (int k = 0; k <= x.l; ++k) {
        PolyMatrix a(f, mx + mz, mx), b(f, mz, mx + mz);
        a.set_block(0, 0, PolyMatrix::identity(f, mx));
        b.set_block(0, mx, PolyMatrix::identity(f, mz));
        i.comps.emplace_back(a, x.degs[k], degs[k]);
        p.comps.emplace_back(b, degs[k], z.degs[k]);
    }
    return {x, std::move(y), z, std::move(i), std::move(p)};
}

}  // namespace facto::gen
