// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include "facto/random.hpp"
#include "test_util.hpp"

using namespace facto;
using namespace facto::testing;

namespace {

const Field F5 = Field::prime(5);
const Field Q = Field::rational();

Factorization x_x(Field f) { return fac_from_matrices(f, 2, {M(f, {{X(f, 1)}})}, {{0}, {1}}); }

Factorization jordan(Field f) {
    return fac_from_matrices(f, 2, {M(f, {{X(f, 1), Z(f)}, {C(f, 1), X(f, 1)}})}, {{0, -1}, {1, 0}});
}

// Number of degree-zero graded maps between free modules with these labels.
std::size_t free_hom_count(const std::vector<int>& src, const std::vector<int>& tgt) {
    std::size_t n = 0;
    for (int t : tgt)
        for (int s : src) n += t >= s;
    return n;
}

}  // namespace

TEST(FacValidate, ClosingExamples) {
    for (Field f : {F5, Q}) {
        Factorization a = x_x(f);
        EXPECT_EQ(a.closing.mat, M(f, {{X(f, 1)}}));
        EXPECT_EQ(a.closing.src, std::vector<int>{1});
        EXPECT_EQ(a.closing.tgt, std::vector<int>{2});
        Factorization b = jordan(f);
        EXPECT_EQ(b.closing.mat, M(f, {{X(f, 1), Z(f)}, {C(f, -1), X(f, 1)}}));
        EXPECT_FALSE(zigzag_check(a));
        EXPECT_FALSE(zigzag_check(b));
    }
}

TEST(FacValidate, Rejections) {
    FacResult r = try_fac_validate(F5, 2, {GradedMatrix(M(F5, {{X(F5, 1), Z(F5)}, {Z(F5), Z(F5)}}), {0, 0}, {1, 1})},
                                   {{0, 0}, {1, 1}});
    EXPECT_FALSE(r.fac);
    EXPECT_EQ(r.reason.rfind("NonMonic", 0), 0u);
    r = try_fac_validate(F5, 2, {GradedMatrix(M(F5, {{X(F5, 3)}}), {0}, {3})}, {{0}, {3}});
    EXPECT_FALSE(r.fac);
    EXPECT_EQ(r.reason.rfind("NoClosing", 0), 0u);
    r = try_fac_validate(F5, 2, {GradedMatrix(M(F5, {{X(F5, 1)}}), {0}, {2})}, {{0}, {2}});
    EXPECT_FALSE(r.fac);
    EXPECT_EQ(r.reason.rfind("GradingViolation", 0), 0u);
    EXPECT_THROW(fac_validate(F5, 2, {GradedMatrix(M(F5, {{X(F5, 3)}}), {0}, {3})}, {{0}, {3}}), Error);
    try {
        fac_validate(F5, 2, {GradedMatrix(M(F5, {{X(F5, 3)}}), {0}, {3})}, {{0}, {3}});
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::InvalidFactorization);
    }
}

TEST(FacValidate, RandomAreValid) {
    gen::Rng rng(41);
    for (int it = 0; it < 150; ++it) {
        Field f = it % 3 ? F5 : Q;
        Factorization x = gen::random_factorization(rng, f, 1 + it % 3, 1 + it % 3);
        EXPECT_FALSE(zigzag_check(x));
        EXPECT_FALSE(graded_check(x.closing));
        Factorization c = contract(x);
        EXPECT_FALSE(zigzag_check(c));
    }
}

TEST(Nu, Shapes) {
    Factorization n1 = nu(F5, 2, 2, {0}, 1);
    EXPECT_EQ(n1.degs, (std::vector<std::vector<int>>{{0}, {0}, {2}}));
    EXPECT_EQ(n1.maps[1].mat, M(F5, {{X(F5, 2)}}));
    EXPECT_EQ(n1.closing.mat, M(F5, {{C(F5, 1)}}));
    Factorization nl = nu(F5, 2, 2, {0}, 2);
    EXPECT_EQ(nl.closing.mat, M(F5, {{X(F5, 2)}}));
    EXPECT_THROW(nu(F5, 2, 2, {0}, 3), Error);
    for (int k = 0; k <= 2; ++k) EXPECT_TRUE(fac_projective_test(nu(F5, 2, 2, {0, 1}, k)));
}

TEST(Rotate, OrbitAndInverse) {
    gen::Rng rng(42);
    for (int it = 0; it < 60; ++it) {
        int l = 1 + it % 3;
        Factorization x = gen::random_factorization(rng, F5, 2 + it % 2, l);
        Factorization y = x;
        for (int i = 0; i <= l; ++i) {
            Factorization prev = y;
            y = rotate(y);
            EXPECT_FALSE(zigzag_check(y));
            EXPECT_EQ(rotate(y, true), prev);
        }
        EXPECT_EQ(y, tau(x));
        EXPECT_EQ(y.twist, 1);
        EXPECT_EQ(y.phase, 0);
        EXPECT_EQ(rotate(rotate(x), true), x);
        EXPECT_EQ(rotate(rotate(x, true)), x);
        Factorization z = rotate(x, true);
        EXPECT_EQ(z.phase, l);
        EXPECT_EQ(z.twist, -1);
    }
}

TEST(FacHom, BasisIsMorphisms) {
    gen::Rng rng(43);
    for (int it = 0; it < 60; ++it) {
        int l = 1 + it % 2, d = 2 + it % 2;
        Factorization x = gen::random_factorization(rng, F5, d, l), y = gen::random_factorization(rng, F5, d, l);
        for (auto& g : fac_hom_basis(x, y)) {
            MorphismCheck c = check_fac_map(x, y, g);
            EXPECT_TRUE(c.squares);
            EXPECT_TRUE(c.closing);
        }
        EXPECT_EQ(fac_hom_basis(x, x).empty(), false);
    }
}

TEST(FacHom, AdjunctionCounts) {
    gen::Rng rng(44);
    for (int it = 0; it < 40; ++it) {
        int l = 1 + it % 3, d = 2;
        Factorization x = gen::random_factorization(rng, F5, d, l);
        std::vector<int> a{gen::uniform(rng, 0, 2), gen::uniform(rng, -1, 3)};
        EXPECT_EQ(fac_hom_basis(nu(F5, d, l, a, l), x).size(), free_hom_count(a, x.degs[0]));
        for (int k = 1; k <= l; ++k)
            EXPECT_EQ(fac_hom_basis(nu(F5, d, l, a, k - 1), x).size(), free_hom_count(detail::plus(a, d), x.degs[k]));
        for (int k = 0; k <= l; ++k) EXPECT_EQ(fac_hom_basis(x, nu(F5, d, l, a, k)).size(), free_hom_count(x.degs[k], a));
    }
}

TEST(FacHom, AdjunctionRoundTrip) {
    gen::Rng rng(45);
    for (int it = 0; it < 40; ++it) {
        int l = 1 + it % 3, d = 2 + it % 2;
        Factorization x = gen::random_factorization(rng, F5, d, l), y = gen::random_factorization(rng, F5, d, l);
        auto phis = fac_hom_basis(x, y);
        std::vector<int> a{gen::uniform(rng, -1, 2), gen::uniform(rng, 0, 3)};

        Factorization nl = nu(F5, d, l, a, l);
        for (auto& g : fac_hom_basis(nl, x)) {
            GradedMatrix h = adjunction_forward(Adjunction::NuLLeft, 0, g);
            EXPECT_EQ(adjunction_backward(Adjunction::NuLLeft, 0, x, h), g);
        }
        GradedMatrix h0 = random_graded(F5, rng, a, x.degs[0]);
        FacMap g0 = adjunction_backward(Adjunction::NuLLeft, 0, x, h0);
        EXPECT_TRUE(is_fac_map(nl, x, g0));
        for (auto& phi : phis)
            EXPECT_EQ(adjunction_backward(Adjunction::NuLLeft, 0, y, mat_mul(phi.comps[0], h0)), compose(phi, g0));

        for (int k = 1; k <= l; ++k) {
            Factorization nk = nu(F5, d, l, a, k - 1);
            GradedMatrix h = random_graded(F5, rng, detail::plus(a, d), x.degs[k]);
            FacMap g = adjunction_backward(Adjunction::NuKLeft, k, x, h);
            EXPECT_TRUE(is_fac_map(nk, x, g));
            EXPECT_EQ(adjunction_forward(Adjunction::NuKLeft, k, g), h);
            for (auto& b : fac_hom_basis(nk, x))
                EXPECT_EQ(adjunction_backward(Adjunction::NuKLeft, k, x, adjunction_forward(Adjunction::NuKLeft, k, b)), b);
            for (auto& phi : phis)
                EXPECT_EQ(adjunction_backward(Adjunction::NuKLeft, k, y, mat_mul(phi.comps[k], h)), compose(phi, g));
        }
        for (int k = 0; k <= l; ++k) {
            Factorization nk = nu(F5, d, l, a, k);
            GradedMatrix h = random_graded(F5, rng, x.degs[k], a);
            FacMap g = adjunction_backward(Adjunction::NuKRight, k, x, h);
            EXPECT_TRUE(is_fac_map(x, nk, g));
            EXPECT_EQ(adjunction_forward(Adjunction::NuKRight, k, g), h);
            for (auto& b : fac_hom_basis(x, nk))
                EXPECT_EQ(adjunction_backward(Adjunction::NuKRight, k, x, adjunction_forward(Adjunction::NuKRight, k, b)), b);
            for (auto& phi : fac_hom_basis(y, x))
                EXPECT_EQ(adjunction_backward(Adjunction::NuKRight, k, y, mat_mul(h, phi.comps[k])), compose(g, phi));
        }
    }
}

TEST(NuResolution, BothSides) {
    gen::Rng rng(46);
    for (int it = 0; it < 60; ++it) {
        int l = 1 + it % 3, d = 2 + it % 2;
        Field f = it % 4 ? F5 : Q;
        Factorization x = gen::random_factorization(rng, f, d, l);
        NuResolution e = nu_resolution(x, NuSide::Epic);
        EXPECT_FALSE(zigzag_check(e.middle));
        EXPECT_FALSE(zigzag_check(e.other));
        EXPECT_TRUE(is_fac_map(e.middle, x, e.map));
        EXPECT_TRUE(is_fac_map(e.other, e.middle, e.other_map));
        EXPECT_TRUE(termwise_split_exact(e.other_map, e.map));
        EXPECT_EQ(e.other.m(), x.m() * l);

        NuResolution m = nu_resolution(x, NuSide::Monic);
        EXPECT_FALSE(zigzag_check(m.middle));
        EXPECT_FALSE(zigzag_check(m.other));
        EXPECT_TRUE(is_fac_map(x, m.middle, m.map));
        EXPECT_TRUE(is_fac_map(m.middle, m.other, m.other_map));
        EXPECT_TRUE(termwise_split_exact(m.map, m.other_map));
        if (f == F5) {
            EXPECT_TRUE(fac_projective_test(e.middle));
            EXPECT_TRUE(fac_projective_test(m.middle));
        }
    }
}

TEST(NuResolution, SplitCheckRejects) {
    Factorization x = x_x(F5);
    NuResolution e = nu_resolution(x, NuSide::Epic);
    FacMap twice = Scalar(F5, 2L) * e.other_map;
    EXPECT_TRUE(termwise_split_exact(twice, e.map));
    FacMap bad = e.other_map;
    for (auto& c : bad.comps) c.mat = PolyMatrix(F5, c.rows(), c.cols());
    EXPECT_FALSE(termwise_split_exact(bad, e.map));
}

TEST(FacStableHom, Examples) {
    Factorization a = x_x(F5);
    EXPECT_EQ(fac_stable_hom_dim(a, a), 1u);
    EXPECT_FALSE(fac_projective_test(a));
    Factorization q = x_x(Q);
    EXPECT_EQ(fac_stable_hom_dim(q, q), 1u);
    Factorization n = nu(F5, 2, 1, {0}, 0);
    EXPECT_EQ(fac_stable_hom_dim(a, n), 0u);
    EXPECT_EQ(fac_stable_hom_dim(n, a), 0u);
}

TEST(FacStableHom, Properties) {
    gen::Rng rng(47);
    for (int it = 0; it < 30; ++it) {
        int l = 1 + it % 2, d = 2 + it % 2;
        Factorization u = gen::random_factorization(rng, F5, d, l), v = gen::random_factorization(rng, F5, d, l),
                      w = gen::random_factorization(rng, F5, d, l);
        Factorization vw = direct_sum(v, w);
        EXPECT_EQ(fac_stable_hom_dim(u, vw), fac_stable_hom_dim(u, v) + fac_stable_hom_dim(u, w));
        EXPECT_EQ(fac_stable_hom_dim(vw, u), fac_stable_hom_dim(v, u) + fac_stable_hom_dim(w, u));
        Factorization p = nu_resolution(v, NuSide::Epic).middle;
        EXPECT_EQ(fac_stable_hom_dim(u, p), 0u);
        EXPECT_EQ(fac_stable_hom_dim(p, u), 0u);
        EXPECT_EQ(fac_stable_hom_dim(rotate(u), rotate(v)), fac_stable_hom_dim(u, v));
    }
}

TEST(FacIso, Examples) {
    Factorization a = x_x(F5), b = jordan(F5);
    EXPECT_TRUE(fac_iso_test(a, a));
    EXPECT_FALSE(fac_iso_test(a, nu(F5, 2, 1, {0}, 0)));
    EXPECT_TRUE(fac_is_indecomposable(a));
    EXPECT_FALSE(fac_is_indecomposable(direct_sum(a, a)));
    // Smith form diag(1, x^2): a sum of two trivial factorizations.
    EXPECT_FALSE(fac_is_indecomposable(b));
    EXPECT_TRUE(fac_projective_test(b));
    // Scaling the map by a unit is an isomorphism.
    Factorization c = fac_from_matrices(F5, 2, {M(F5, {{Scalar(F5, 3L) * X(F5, 1)}})}, {{0}, {1}});
    EXPECT_TRUE(fac_iso_test(a, c));
}

TEST(FacIso, RandomConjugates) {
    gen::Rng rng(48);
    for (int it = 0; it < 30; ++it) {
        Factorization x = gen::random_factorization(rng, F5, 3, 2);
        Factorization y = x;
        // Base change in X^1 by a unit scalar.
        Scalar s(F5, long(1 + it % 4));
        y.maps[0] = s * y.maps[0];
        y.maps[1] = s.inverse() * y.maps[1];
        EXPECT_TRUE(fac_iso_test(x, y));
        EXPECT_TRUE(fac_iso_test(direct_sum(x, y), direct_sum(y, x)));
    }
}
