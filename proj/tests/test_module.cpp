// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <random>

#include "facto/module.hpp"
#include "test_util.hpp"

using namespace facto;
using namespace facto::testing;

namespace {

const Field F5 = Field::prime(5);

// Independent count: g_t -> x^m g_u with m = s_t - s_u is a module map iff
// 0 <= m < e_u and e_t + m >= e_u.
std::size_t hom_dim_count(const RModule& a, const RModule& b) {
    std::size_t n = 0;
    for (auto& t : a.summands())
        for (auto& u : b.summands()) {
            int m = t.s - u.s;
            if (m >= 0 && m < u.e && t.e + m >= u.e) ++n;
        }
    return n;
}

RModule random_module(std::mt19937_64& rng, int d, int max_summands, int window) {
    std::uniform_int_distribution<int> n(0, max_summands), e(1, d), s(0, window);
    std::vector<Summand> v(n(rng));
    for (auto& t : v) t = {e(rng), s(rng)};
    return RModule(d, v);
}

ModuleMap random_map(std::mt19937_64& rng, const RModule& a, const RModule& b, Field f) {
    auto H = hom_basis(a, b, f);
    std::uniform_int_distribution<long> c(0, 4);
    std::vector<Scalar> cs;
    for (std::size_t i = 0; i < H.size(); ++i) cs.emplace_back(f, c(rng));
    return combine(H, cs, f, a, b);
}

}  // namespace

TEST(Presentation, Examples) {
    Field q = Field::rational();
    for (int d = 1; d <= 4; ++d) {
        Presentation p = module_from_presentation(GradedMatrix::x_pow_identity(q, {0}, d), d);
        EXPECT_EQ(p.module, RModule(d, {{d, -d}}));
    }
    EXPECT_EQ(module_from_presentation(GradedMatrix::x_pow_identity(q, {0}, 1), 2).module, RModule(2, {{1, -1}}));
    GradedMatrix a(M(q, {{X(q, 1), Z(q)}, {C(q, 1), X(q, 1)}}), {0, -1}, {1, 0});
    EXPECT_EQ(module_from_presentation(a, 2).module, RModule(2, {{2, -1}}));
    EXPECT_THROW(module_from_presentation(GradedMatrix::x_pow_identity(q, {0}, 3), 2), Error);
}

TEST(Presentation, AgreesWithSnfInvariantFactors) {
    std::mt19937_64 rng(21);
    for (int it = 0; it < 60; ++it) {
        int d = 2 + it % 3;
        // Diagonal x^e presentation scrambled by graded unimodular changes of basis.
        std::uniform_int_distribution<int> e(0, d);
        std::vector<int> src = random_labels(rng, 3, 0, 2), tgt(3);
        PolyMatrix m(F5, 3, 3);
        for (int i = 0; i < 3; ++i) {
            int ei = e(rng);
            tgt[i] = src[i] + ei;
            m(i, i) = X(F5, ei);
        }
        GradedMatrix a(m, src, tgt);
        RModule base = module_from_presentation(a, d).module;
        std::vector<Summand> expect;
        for (int i = 0; i < 3; ++i)
            if (tgt[i] > src[i]) expect.push_back({tgt[i] - src[i], -tgt[i]});
        EXPECT_EQ(base, RModule(d, expect));
        GradedMatrix l = GradedMatrix::identity(F5, tgt), r = GradedMatrix::identity(F5, src);
        for (int k = 0; k < 4; ++k) {
            std::uniform_int_distribution<int> idx(0, 2);
            int i = idx(rng), j = idx(rng);
            if (i == j) continue;
            if (tgt[i] >= tgt[j]) l.mat.add_row(i, j, Polynomial::monomial(Scalar(F5, 2L), tgt[i] - tgt[j]));
            if (src[i] >= src[j]) r.mat.add_col(j, i, Polynomial::monomial(Scalar(F5, 3L), src[i] - src[j]));
        }
        GradedMatrix b = mat_mul(mat_mul(l, a), r);
        EXPECT_FALSE(graded_check(b));
        RModule other = module_from_presentation(b, d).module;
        EXPECT_TRUE(module_iso(base, other));
        SmithForm s = snf(b.mat);
        std::vector<int> lengths;
        for (std::size_t i = 0; i < s.rank; ++i)
            if (s.D(i, i).degree() > 0) lengths.push_back(s.D(i, i).degree());
        std::vector<int> got;
        for (auto& t : other.summands()) got.push_back(t.e);
        std::sort(lengths.begin(), lengths.end());
        std::sort(got.begin(), got.end());
        EXPECT_EQ(lengths, got);
    }
}

TEST(RModule, IsoIsMultisetEquality) {
    EXPECT_TRUE(module_iso(RModule(3, {{1, 0}, {2, 1}}), RModule(3, {{2, 1}, {1, 0}})));
    EXPECT_FALSE(module_iso(RModule(3, {{1, 0}}), RModule(3, {{1, 1}})));
    EXPECT_THROW(RModule(2, {{3, 0}}), Error);
}

TEST(HomBasis, Examples) {
    EXPECT_EQ(hom_basis(RModule(2, {{1, 0}}), RModule(2, {{1, 0}}), F5).size(), 1u);
    EXPECT_EQ(hom_basis(RModule(2, {{1, 0}}), RModule(2, {{1, 1}}), F5).size(), 0u);
    EXPECT_EQ(hom_basis(RModule(2, {{2, 0}}), RModule(2, {{1, 0}}), F5).size(), 1u);
    EXPECT_EQ(hom_basis(RModule(2, {{2, 0}}), RModule::zero(2), F5).size(), 0u);
}

TEST(HomBasis, MatchesCountingOracle) {
    std::mt19937_64 rng(22);
    for (int it = 0; it < 200; ++it) {
        int d = 1 + it % 4;
        RModule a = random_module(rng, d, 3, 3), b = random_module(rng, d, 3, 3);
        auto H = hom_basis(a, b, F5);
        EXPECT_EQ(H.size(), hom_dim_count(a, b)) << a.to_string() << " " << b.to_string();
        for (auto& h : H) EXPECT_FALSE(h.violation());
    }
}

TEST(ModuleMap, InvalidBlocksAreReported) {
    RModule k(2, {{1, 0}}), r(2, {{2, 0}});
    // k -> R sending g to g does not commute with x.
    ModuleMap bad(F5, k, r, KMatrix::identity(F5, 1));
    EXPECT_TRUE(bad.violation());
    EXPECT_THROW(ModuleMap::from_realization(F5, k, r, bad.realize()), Error);
    ModuleMap good(F5, r, k, KMatrix::identity(F5, 1));
    EXPECT_FALSE(good.violation());
}

TEST(KerCokIm, Examples) {
    RModule m(2, {{2, 0}}), n(2, {{1, 0}});
    auto z = map_ker_cok_im(ModuleMap::zero(F5, m, n));
    EXPECT_EQ(z.ker, m);
    EXPECT_EQ(z.cok, n);
    EXPECT_TRUE(z.im.is_zero());
    auto id = map_ker_cok_im(ModuleMap::identity(F5, m));
    EXPECT_TRUE(id.ker.is_zero());
    EXPECT_TRUE(id.cok.is_zero());
    auto s = map_ker_cok_im(ModuleMap(F5, m, n, KMatrix::identity(F5, 1)));
    EXPECT_EQ(s.ker, RModule(2, {{1, 1}}));
    EXPECT_TRUE(s.cok.is_zero());
}

TEST(KerCokIm, RankNullityOnRandomMaps) {
    std::mt19937_64 rng(23);
    for (int it = 0; it < 150; ++it) {
        int d = 2 + it % 3;
        RModule a = random_module(rng, d, 3, 2), b = random_module(rng, d, 3, 2);
        ModuleMap f = random_map(rng, a, b, F5);
        auto k = map_ker_cok_im(f);
        EXPECT_EQ(k.ker.dim() + k.im.dim(), a.dim());
        EXPECT_EQ(k.cok.dim(), b.dim() - k.im.dim());
        EXPECT_TRUE(compose(f, k.ker_incl).realize().is_zero());
        EXPECT_TRUE(compose(k.cok_proj, f).realize().is_zero());
        EXPECT_TRUE(is_mono_epi(k.ker_incl).mono);
        EXPECT_TRUE(is_mono_epi(k.cok_proj).epi);
    }
}

TEST(MonoEpi, Examples) {
    RModule m(2, {{2, 0}});
    auto id = is_mono_epi(ModuleMap::identity(F5, m));
    EXPECT_TRUE(id.mono && id.epi);
    auto z = is_mono_epi(ModuleMap::zero(F5, m, m));
    EXPECT_FALSE(z.mono || z.epi);
    // k(-1) -> R/(x^2): g -> x g0
    ModuleMap inc(F5, RModule(2, {{1, 1}}), m, KMatrix::identity(F5, 1));
    EXPECT_FALSE(inc.violation());
    auto ie = is_mono_epi(inc);
    EXPECT_TRUE(ie.mono);
    EXPECT_FALSE(ie.epi);
}

TEST(ProjectiveCover, Examples) {
    RModule fr(3, {{3, 0}, {3, 2}});
    Cover c = projective_cover(fr, F5);
    auto me = is_mono_epi(c.p);
    EXPECT_TRUE(me.mono && me.epi);
    Cover k = projective_cover(RModule(2, {{1, 0}}), F5);
    EXPECT_EQ(k.P, RModule(2, {{2, 0}}));
    Cover mix = projective_cover(RModule(3, {{1, 0}, {2, 3}}), F5);
    EXPECT_EQ(mix.P, RModule(3, {{3, 0}, {3, 3}}));
    EXPECT_TRUE(is_mono_epi(mix.p).epi);
    EXPECT_FALSE(mix.p.violation());
}

TEST(BarCover, CoincidesWithProjectiveCover) {
    std::mt19937_64 rng(24);
    for (int it = 0; it < 50; ++it) {
        RModule m = random_module(rng, 2 + it % 3, 3, 3);
        BarCover b = bar_p_epic(m, F5);
        Cover c = projective_cover(m, F5);
        EXPECT_EQ(b.Pbar, c.P);
        EXPECT_TRUE(b.Pbar.is_free());
        EXPECT_TRUE(is_mono_epi(b.pbar).epi);
    }
}

TEST(StableHom, Examples) {
    RModule k(2, {{1, 0}});
    EXPECT_EQ(stable_hom_dim(k, k, F5), 1u);
    EXPECT_EQ(stable_hom_dim(k, RModule(2, {{2, 0}}), F5), 0u);
    EXPECT_EQ(stable_hom_dim(RModule(2, {{2, 0}}), k, F5), 0u);
}

TEST(StableHom, FreeVanishingAndAdditivity) {
    std::mt19937_64 rng(25);
    for (int it = 0; it < 80; ++it) {
        int d = 2 + it % 3;
        RModule a = random_module(rng, d, 2, 2), b = random_module(rng, d, 2, 2), c = random_module(rng, d, 2, 2);
        RModule fr(d, {{d, 1}, {d, 2}});
        EXPECT_EQ(stable_hom_dim(a, fr, F5), 0u);
        EXPECT_EQ(stable_hom_dim(fr, a, F5), 0u);
        EXPECT_EQ(stable_hom_dim(a + b, c, F5), stable_hom_dim(a, c, F5) + stable_hom_dim(b, c, F5));
        EXPECT_EQ(stable_hom_dim(a, b + c, F5), stable_hom_dim(a, b, F5) + stable_hom_dim(a, c, F5));
    }
}

TEST(Lift, Examples) {
    RModule r(2, {{2, 0}}), k(2, {{1, 0}});
    ModuleMap p(F5, r, k, KMatrix::identity(F5, 1));
    auto g = lift_along_epi(p, p);
    ASSERT_TRUE(g);
    EXPECT_EQ(compose(p, *g), p);
    auto z = lift_along_epi(p, ModuleMap::zero(F5, k, k));
    ASSERT_TRUE(z);
    EXPECT_TRUE(z->realize().is_zero());
    // id_k does not lift through R -> k.
    EXPECT_FALSE(lift_along_epi(p, ModuleMap::identity(F5, k)));
}

TEST(Lift, FreeSourcesAlwaysLift) {
    std::mt19937_64 rng(26);
    for (int it = 0; it < 60; ++it) {
        int d = 2 + it % 3;
        RModule m = random_module(rng, d, 3, 2);
        Cover c = projective_cover(m, F5);
        RModule fr(d, {{d, 0}, {d, 1}});
        ModuleMap f = random_map(rng, fr, m, F5);
        auto g = lift_along_epi(c.p, f);
        ASSERT_TRUE(g);
        EXPECT_EQ(compose(c.p, *g), f);
    }
}

TEST(DirectSum, InjectionsAndProjections) {
    RModule a(3, {{2, 1}}), b(3, {{1, 0}, {3, 2}});
    DirectSum s = direct_sum({a, b}, F5, 3);
    EXPECT_EQ(s.sum, a + b);
    EXPECT_EQ(compose(s.proj[0], s.incl[0]), ModuleMap::identity(F5, a));
    EXPECT_EQ(compose(s.proj[1], s.incl[1]), ModuleMap::identity(F5, b));
    EXPECT_TRUE(compose(s.proj[1], s.incl[0]).realize().is_zero());
}
