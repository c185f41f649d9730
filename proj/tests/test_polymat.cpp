// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <random>

#include "facto/polymat.hpp"
#include "test_util.hpp"

using namespace facto;
using namespace facto::testing;

TEST(PolyMatrix, GradedProducts) {
    Field q = Field::rational();
    GradedMatrix a = GradedMatrix::x_pow_identity(q, {0}, 1);
    GradedMatrix b = GradedMatrix::x_pow_identity(q, {1}, 1);
    GradedMatrix ab = mat_mul(b, a);
    EXPECT_EQ(ab.mat, PolyMatrix::scalar_identity(X(q, 2), 1));
    EXPECT_EQ(ab.src, std::vector<int>{0});
    EXPECT_EQ(ab.tgt, std::vector<int>{2});
    EXPECT_EQ(mat_mul(a, GradedMatrix::identity(q, {0})), a);
    EXPECT_THROW(mat_mul(a, a), Error);

    PolyMatrix l = M(q, {{X(q, 1), Z(q)}, {Z(q), X(q, 2)}});
    PolyMatrix r = M(q, {{X(q, 2), Z(q)}, {Z(q), X(q, 1)}});
    EXPECT_EQ(l * r, PolyMatrix::scalar_identity(X(q, 3), 2));
}

TEST(Snf, HandExample) {
    Field q = Field::rational();
    PolyMatrix a = M(q, {{X(q, 1), Z(q)}, {C(q, 1), X(q, 1)}});
    SmithForm s = snf(a);
    EXPECT_EQ(s.U * a * s.V, s.D);
    EXPECT_EQ(s.D, M(q, {{C(q, 1), Z(q)}, {Z(q), X(q, 2)}}));
}

TEST(Snf, ZeroAndScalar) {
    Field q = Field::rational();
    PolyMatrix z(q, 2, 3);
    SmithForm s = snf(z);
    EXPECT_EQ(s.D, z);
    EXPECT_EQ(s.U, PolyMatrix::identity(q, 2));
    EXPECT_EQ(s.V, PolyMatrix::identity(q, 3));
    EXPECT_EQ(snf(M(q, {{X(q, 2)}})).D, M(q, {{X(q, 2)}}));
}

TEST(Snf, RandomProperties) {
    std::mt19937_64 rng(11);
    for (Field f : {Field::rational(), Field::prime(5)})
        for (int it = 0; it < 150; ++it) {
            PolyMatrix a = random_poly_matrix(f, rng, 4, 4, 3);
            SmithForm s = snf(a);
            EXPECT_EQ(s.U * a * s.V, s.D);
            EXPECT_TRUE(snf_shape_ok(s));
        }
}

TEST(Det, Bareiss) {
    Field q = Field::rational();
    EXPECT_EQ(det(M(q, {{X(q, 1), Z(q)}, {C(q, 1), X(q, 1)}})), X(q, 2));
    EXPECT_EQ(det(M(q, {{Z(q), C(q, 1)}, {C(q, 1), Z(q)}})), C(q, -1));
}

TEST(SolveRight, Examples) {
    Field q = Field::rational();
    auto x = solve_right(M(q, {{X(q, 1)}}), M(q, {{X(q, 2)}}));
    ASSERT_TRUE(x);
    EXPECT_EQ(*x, M(q, {{X(q, 1)}}));
    EXPECT_FALSE(solve_right(M(q, {{X(q, 1)}}), M(q, {{C(q, 1)}})));
    PolyMatrix a = M(q, {{X(q, 1), Z(q)}, {C(q, 1), X(q, 1)}});
    PolyMatrix b = PolyMatrix::scalar_identity(X(q, 2), 2);
    auto y = solve_right(a, b);
    ASSERT_TRUE(y);
    EXPECT_EQ(a * *y, b);
    EXPECT_THROW(solve_right(a, PolyMatrix(q, 3, 1)), Error);
}

TEST(SolveRight, RandomAgreesWithMembership) {
    std::mt19937_64 rng(12);
    for (Field f : {Field::rational(), Field::prime(5)})
        for (int it = 0; it < 100; ++it) {
            PolyMatrix a = random_poly_matrix(f, rng, 3, 3, 2);
            PolyMatrix x0 = random_poly_matrix(f, rng, 3, 1, 2);
            PolyMatrix b = a * x0;
            auto x = solve_right(a, b);
            ASSERT_TRUE(x);
            EXPECT_EQ(a * *x, b);
            // Perturb by a unit vector and compare with the SNF membership criterion.
            PolyMatrix b2 = b;
            b2(0, 0) += Polynomial::one(f);
            auto x2 = solve_right(a, b2);
            if (x2) EXPECT_EQ(a * *x2, b2);
            SmithForm s = snf(a);
            PolyMatrix c = s.U * b2;
            bool member = true;
            for (std::size_t i = 0; i < 3; ++i) {
                if (i < s.rank) member = member && divrem(c(i, 0), s.D(i, i)).second.is_zero();
                else member = member && c(i, 0).is_zero();
            }
            EXPECT_EQ(member, x2.has_value());
        }
}

TEST(KernelBasis, Examples) {
    Field q = Field::rational();
    PolyMatrix a = M(q, {{X(q, 1), X(q, 1)}});
    PolyMatrix k = kernel_basis(a);
    ASSERT_EQ(k.cols(), 1u);
    EXPECT_TRUE((a * k).is_zero());
    // [1,-1] is a unit multiple of the basis column.
    EXPECT_TRUE(solve_right(k, M(q, {{C(q, 1)}, {C(q, -1)}})).has_value());

    EXPECT_EQ(kernel_basis(M(q, {{X(q, 1), Z(q)}, {C(q, 1), X(q, 1)}})).cols(), 0u);

    PolyMatrix b = M(q, {{X(q, 2), X(q, 3)}});
    PolyMatrix kb = kernel_basis(b);
    ASSERT_EQ(kb.cols(), 1u);
    EXPECT_TRUE((b * kb).is_zero());
    EXPECT_TRUE(solve_right(kb, M(q, {{X(q, 1)}, {C(q, -1)}})).has_value());
}

TEST(KernelBasis, RandomRankNullity) {
    std::mt19937_64 rng(13);
    for (Field f : {Field::rational(), Field::prime(5)})
        for (int it = 0; it < 100; ++it) {
            PolyMatrix a = random_poly_matrix(f, rng, 3, 4, 2);
            PolyMatrix k = kernel_basis(a);
            EXPECT_TRUE((a * k).is_zero());
            EXPECT_EQ(snf(a).rank + k.cols(), a.cols());
        }
}

TEST(GradedCheck, Examples) {
    Field q = Field::rational();
    EXPECT_FALSE(graded_check(GradedMatrix::x_pow_identity(q, {0}, 1)));
    GradedMatrix bad(M(q, {{Polynomial(q, {Scalar(q, 1L), Scalar(q, 1L)})}}), {0}, {1});
    auto v = graded_check(bad);
    ASSERT_TRUE(v);
    EXPECT_EQ(v->expected_degree, 1);
    EXPECT_FALSE(graded_check(GradedMatrix(M(q, {{X(q, 2)}}), {3}, {5})));
}

TEST(GradedCheck, ProductsStayGraded) {
    std::mt19937_64 rng(14);
    Field f = Field::prime(5);
    for (int it = 0; it < 100; ++it) {
        std::vector<int> a = random_labels(rng, 3, 0, 3), b = random_labels(rng, 3, 0, 5), c = random_labels(rng, 2, 0, 7);
        GradedMatrix g1 = random_graded(f, rng, a, b), g2 = random_graded(f, rng, b, c);
        EXPECT_FALSE(graded_check(g1));
        EXPECT_FALSE(graded_check(mat_mul(g2, g1)));
    }
}

TEST(GradedKernel, HomogeneousColumns) {
    std::mt19937_64 rng(15);
    Field f = Field::prime(5);
    for (int it = 0; it < 100; ++it) {
        GradedMatrix g = random_graded(f, rng, random_labels(rng, 4, 0, 3), random_labels(rng, 2, 0, 5));
        GradedMatrix k = graded_kernel(g);
        EXPECT_FALSE(graded_check(k));
        EXPECT_TRUE((g.mat * k.mat).is_zero());
    }
}
