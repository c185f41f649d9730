// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include <gmpxx.h>

#include "facto/error.hpp"

namespace facto {

// Ground field: the rationals (characteristic 0) or F_p for a prime p < 2^31.
class Field {
public:
    Field() = default;
    static Field rational() { return Field(); }
    static Field prime(std::uint32_t p) {
        require(p >= 2 && p < (1u << 31) && is_prime(p), ErrorKind::Range,
                "field characteristic must be a prime below 2^31, got " + std::to_string(p));
        Field f;
        f.p_ = p;
        return f;
    }

    bool is_rational() const { return p_ == 0; }
    std::uint32_t characteristic() const { return p_; }
    std::string name() const { return p_ == 0 ? "q" : "fp:" + std::to_string(p_); }

    friend bool operator==(const Field& a, const Field& b) { return a.p_ == b.p_; }
    friend bool operator!=(const Field& a, const Field& b) { return a.p_ != b.p_; }

    static bool is_prime(std::uint32_t n) {
        if (n < 2) return false;
        for (std::uint64_t q = 2; q * q <= n; ++q)
            if (n % q == 0) return false;
        return true;
    }

private:
    std::uint32_t p_ = 0;
};

class Scalar {
public:
    Scalar() : v_(std::uint32_t{0}) {}
    Scalar(Field f, long n) : field_(f) {
        if (f.is_rational()) {
            v_ = mpq_class(n);
        } else {
            long p = f.characteristic();
            long r = n % p;
            if (r < 0) r += p;
            v_ = static_cast<std::uint32_t>(r);
        }
    }
    Scalar(Field f, const mpq_class& q) : field_(f) {
        if (f.is_rational()) {
            mpq_class c = q;
            c.canonicalize();
            v_ = c;
        } else {
            std::uint32_t num = reduce(q.get_num(), f.characteristic());
            std::uint32_t den = reduce(q.get_den(), f.characteristic());
            require(den != 0, ErrorKind::DivisionByZero, "denominator vanishes in " + f.name());
            v_ = mulmod(num, invmod(den, f.characteristic()), f.characteristic());
        }
    }

    static Scalar zero(Field f) { return Scalar(f, 0L); }
    static Scalar one(Field f) { return Scalar(f, 1L); }

    Field field() const { return field_; }

    bool is_zero() const {
        if (field_.is_rational()) return sgn(std::get<mpq_class>(v_)) == 0;
        return std::get<std::uint32_t>(v_) == 0;
    }
    bool is_one() const {
        if (field_.is_rational()) return std::get<mpq_class>(v_) == 1;
        return std::get<std::uint32_t>(v_) == 1;
    }

    std::uint32_t residue() const {
        require(!field_.is_rational(), ErrorKind::ModeMismatch, "residue() on a rational scalar");
        return std::get<std::uint32_t>(v_);
    }
    const mpq_class& rational() const {
        require(field_.is_rational(), ErrorKind::ModeMismatch, "rational() on a prime-field scalar");
        return std::get<mpq_class>(v_);
    }

    friend Scalar operator+(const Scalar& a, const Scalar& b) {
        check(a, b);
        if (a.field_.is_rational()) return Scalar(a.field_, a.rational() + b.rational(), Raw{});
        std::uint64_t s = std::uint64_t(a.residue()) + b.residue();
        std::uint32_t p = a.field_.characteristic();
        return Scalar(a.field_, static_cast<std::uint32_t>(s >= p ? s - p : s));
    }
    friend Scalar operator-(const Scalar& a, const Scalar& b) {
        check(a, b);
        if (a.field_.is_rational()) return Scalar(a.field_, a.rational() - b.rational(), Raw{});
        std::uint32_t p = a.field_.characteristic();
        std::uint64_t s = std::uint64_t(a.residue()) + p - b.residue();
        return Scalar(a.field_, static_cast<std::uint32_t>(s >= p ? s - p : s));
    }
    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        check(a, b);
        if (a.field_.is_rational()) return Scalar(a.field_, a.rational() * b.rational(), Raw{});
        return Scalar(a.field_, mulmod(a.residue(), b.residue(), a.field_.characteristic()));
    }
    friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }
    Scalar operator-() const { return zero(field_) - *this; }

    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

    Scalar inverse() const {
        require(!is_zero(), ErrorKind::DivisionByZero, "inverse of zero scalar");
        if (field_.is_rational()) return Scalar(field_, 1 / rational(), Raw{});
        return Scalar(field_, invmod(residue(), field_.characteristic()));
    }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        if (a.field_ != b.field_) return false;
        if (a.field_.is_rational()) return a.rational() == b.rational();
        return a.residue() == b.residue();
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    // "num/den" (or "num") for rationals, the residue for F_p.
    std::string to_string() const {
        if (field_.is_rational()) return rational().get_str();
        return std::to_string(residue());
    }

private:
    struct Raw {};
    Scalar(Field f, mpq_class q, Raw) : field_(f), v_(std::move(q)) {}
    Scalar(Field f, std::uint32_t r) : field_(f), v_(r) {}

    static void check(const Scalar& a, const Scalar& b) {
        if (a.field_ != b.field_)
            fail(ErrorKind::ModeMismatch, "scalar mode mismatch: " + a.field_.name() + " vs " + b.field_.name());
    }
    static std::uint32_t mulmod(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
        return static_cast<std::uint32_t>(std::uint64_t(a) * b % p);
    }
    static std::uint32_t invmod(std::uint32_t a, std::uint32_t p) {
        std::uint32_t r = 1, base = a, e = p - 2;
        while (e) {
            if (e & 1) r = mulmod(r, base, p);
            base = mulmod(base, base, p);
            e >>= 1;
        }
        return r;
    }
    static std::uint32_t reduce(const mpz_class& z, std::uint32_t p) {
        mpz_class r = z % p;
        if (r < 0) r += p;
        return static_cast<std::uint32_t>(r.get_ui());
    }

    Field field_;
    std::variant<std::uint32_t, mpq_class> v_;
};

}  // namespace facto
