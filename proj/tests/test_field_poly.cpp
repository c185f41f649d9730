// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <random>

#include "facto/polynomial.hpp"

using namespace facto;

namespace {

Polynomial P(Field f, std::vector<long> c) {
    std::vector<Scalar> s;
    for (long v : c) s.emplace_back(f, v);
    return Polynomial(f, s);
}

Polynomial random_poly(Field f, std::mt19937_64& rng, int maxdeg) {
    std::uniform_int_distribution<int> deg(-1, maxdeg);
    std::uniform_int_distribution<long> coef(-6, 6);
    std::vector<Scalar> c;
    int n = deg(rng);
    for (int i = 0; i <= n; ++i) c.emplace_back(f, coef(rng));
    return Polynomial(f, c);
}

}  // namespace

TEST(Scalar, RationalLowestTerms) {
    Field q = Field::rational();
    Scalar a(q, mpq_class(6, -4));
    EXPECT_EQ(a.to_string(), "-3/2");
    EXPECT_EQ((a + Scalar(q, mpq_class(1, 2))).to_string(), "-1");
    EXPECT_TRUE((a * a.inverse()).is_one());
}

TEST(Scalar, PrimeResidues) {
    Field f = Field::prime(5);
    EXPECT_EQ(Scalar(f, -1L).residue(), 4u);
    EXPECT_EQ(Scalar(f, mpq_class(1, 2)).residue(), 3u);
    EXPECT_TRUE((Scalar(f, 3L) * Scalar(f, 2L)).is_one());
    EXPECT_THROW(Scalar(f, mpq_class(1, 5)), Error);
    EXPECT_THROW(Field::prime(6), Error);
}

TEST(Scalar, ModeMismatchThrows) {
    EXPECT_THROW(Scalar(Field::rational(), 1L) + Scalar(Field::prime(3), 1L), Error);
}

TEST(Polynomial, DifferenceOfSquares) {
    Field q = Field::rational();
    EXPECT_EQ(P(q, {1, 1}) * P(q, {-1, 1}), P(q, {-1, 0, 1}));
}

TEST(Polynomial, MonomialDivision) {
    Field q = Field::rational();
    auto [quo, rem] = divrem(Polynomial::x_pow(q, 3), Polynomial::x_pow(q, 2));
    EXPECT_EQ(quo, Polynomial::x_pow(q, 1));
    EXPECT_TRUE(rem.is_zero());
}

TEST(Polynomial, FrobeniusSquareOverF2) {
    Field f = Field::prime(2);
    Polynomial a = P(f, {1, 1});
    EXPECT_EQ(a * a, P(f, {1, 0, 1}));
}

TEST(Polynomial, Gcd) {
    Field q = Field::rational();
    EXPECT_EQ(gcd(Polynomial::x_pow(q, 2), Polynomial::x_pow(q, 3)), Polynomial::x_pow(q, 2));
    EXPECT_EQ(gcd(P(q, {-1, 0, 1}), P(q, {-1, 1})), P(q, {-1, 1}));
    Field f2 = Field::prime(2);
    EXPECT_EQ(gcd(P(f2, {1, 0, 1}), P(f2, {1, 1})), P(f2, {1, 1}));
    EXPECT_THROW(gcd(Polynomial(q), Polynomial(q)), Error);
}

TEST(Polynomial, DivisionByZeroThrows) {
    Field q = Field::rational();
    EXPECT_THROW(divrem(P(q, {1}), Polynomial(q)), Error);
}

TEST(Polynomial, RandomDivrem) {
    std::mt19937_64 rng(1);
    for (Field f : {Field::rational(), Field::prime(5), Field::prime(2)})
        for (int it = 0; it < 300; ++it) {
            Polynomial a = random_poly(f, rng, 6), b = random_poly(f, rng, 4);
            if (b.is_zero()) continue;
            auto [q, r] = divrem(a, b);
            EXPECT_EQ(q * b + r, a);
            EXPECT_LT(r.degree(), b.degree());
        }
}

TEST(Polynomial, RandomGcdDividesAndIsMonic) {
    std::mt19937_64 rng(2);
    for (Field f : {Field::rational(), Field::prime(5)})
        for (int it = 0; it < 200; ++it) {
            Polynomial c = random_poly(f, rng, 2);
            Polynomial a = random_poly(f, rng, 3) * c, b = random_poly(f, rng, 3) * c;
            if (a.is_zero() && b.is_zero()) continue;
            Polynomial g = gcd(a, b);
            EXPECT_TRUE(g.leading().is_one());
            EXPECT_TRUE(divrem(a, g).second.is_zero());
            EXPECT_TRUE(divrem(b, g).second.is_zero());
            if (!c.is_zero()) EXPECT_TRUE(divrem(g, c).second.is_zero());
        }
}

TEST(Polynomial, RingAxioms) {
    std::mt19937_64 rng(3);
    for (Field f : {Field::rational(), Field::prime(7)})
        for (int it = 0; it < 100; ++it) {
            Polynomial a = random_poly(f, rng, 4), b = random_poly(f, rng, 4), c = random_poly(f, rng, 4);
            EXPECT_EQ((a * b) * c, a * (b * c));
            EXPECT_EQ(a * (b + c), a * b + a * c);
            EXPECT_EQ(a + b, b + a);
        }
}
