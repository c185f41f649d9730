// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "facto/scalar.hpp"

namespace facto {

// Dense univariate polynomial in x, lowest degree first. Zero is the empty list.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(Field f) : field_(f) {}
    Polynomial(Field f, std::vector<Scalar> coeffs) : field_(f), c_(std::move(coeffs)) {
        for (const auto& s : c_)
            if (s.field() != f) fail(ErrorKind::ModeMismatch, "coefficient mode differs from polynomial mode");
        trim();
    }

    static Polynomial zero(Field f) { return Polynomial(f); }
    static Polynomial constant(const Scalar& c) {
        Polynomial p(c.field());
        if (!c.is_zero()) p.c_.push_back(c);
        return p;
    }
    static Polynomial monomial(const Scalar& c, int exponent) {
        require(exponent >= 0, ErrorKind::Range, "negative exponent");
        Polynomial p(c.field());
        if (c.is_zero()) return p;
        p.c_.assign(exponent + 1, Scalar::zero(c.field()));
        p.c_[exponent] = c;
        return p;
    }
    static Polynomial x_pow(Field f, int exponent) { return monomial(Scalar::one(f), exponent); }
    static Polynomial one(Field f) { return constant(Scalar::one(f)); }

    Field field() const { return field_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<Scalar>& coeffs() const { return c_; }
    Scalar coeff(int i) const { return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : Scalar::zero(field_); }
    Scalar leading() const { return is_zero() ? Scalar::zero(field_) : c_.back(); }

    // Lowest exponent with a nonzero coefficient; -1 for zero.
    int valuation() const {
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (!c_[i].is_zero()) return static_cast<int>(i);
        return -1;
    }
    bool is_monomial() const { return !is_zero() && valuation() == degree(); }
    bool is_homogeneous_of(int deg) const {
        if (is_zero()) return true;
        return deg >= 0 && is_monomial() && degree() == deg;
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        check(a, b);
        Polynomial r(a.field_);
        std::size_t n = std::max(a.c_.size(), b.c_.size());
        r.c_.reserve(n);
        for (std::size_t i = 0; i < n; ++i) r.c_.push_back(a.coeff(int(i)) + b.coeff(int(i)));
        r.trim();
        return r;
    }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
        check(a, b);
        Polynomial r(a.field_);
        std::size_t n = std::max(a.c_.size(), b.c_.size());
        r.c_.reserve(n);
        for (std::size_t i = 0; i < n; ++i) r.c_.push_back(a.coeff(int(i)) - b.coeff(int(i)));
        r.trim();
        return r;
    }
    Polynomial operator-() const { return zero(field_) - *this; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        check(a, b);
        Polynomial r(a.field_);
        if (a.is_zero() || b.is_zero()) return r;
        r.c_.assign(a.c_.size() + b.c_.size() - 1, Scalar::zero(a.field_));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
        }
        r.trim();
        return r;
    }
    friend Polynomial operator*(const Scalar& s, const Polynomial& a) { return constant(s) * a; }

    Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
    Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    Polynomial shifted(int exponent) const {
        if (is_zero() || exponent == 0) return *this;
        Polynomial r(field_);
        r.c_.assign(exponent, Scalar::zero(field_));
        r.c_.insert(r.c_.end(), c_.begin(), c_.end());
        return r;
    }

    // Keeps terms of exponent < n.
    Polynomial truncated(int n) const {
        if (static_cast<int>(c_.size()) <= n) return *this;
        Polynomial r(field_, std::vector<Scalar>(c_.begin(), c_.begin() + std::max(n, 0)));
        return r;
    }

    // a = q*b + r, deg r < deg b.
    friend std::pair<Polynomial, Polynomial> divrem(const Polynomial& a, const Polynomial& b) {
        check(a, b);
        require(!b.is_zero(), ErrorKind::DivisionByZero, "division by the zero polynomial");
        Polynomial q(a.field_), r = a;
        if (a.degree() < b.degree()) return {q, r};
        q.c_.assign(a.degree() - b.degree() + 1, Scalar::zero(a.field_));
        Scalar inv = b.leading().inverse();
        while (!r.is_zero() && r.degree() >= b.degree()) {
            int shift = r.degree() - b.degree();
            Scalar c = r.leading() * inv;
            q.c_[shift] = c;
            for (int i = 0; i <= b.degree(); ++i) r.c_[i + shift] -= c * b.c_[i];
            r.trim();
        }
        q.trim();
        return {q, r};
    }

    Polynomial monic() const {
        if (is_zero()) return *this;
        Scalar inv = leading().inverse();
        Polynomial r = *this;
        for (auto& s : r.c_) s *= inv;
        return r;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.field_ == b.field_ && a.c_ == b.c_;
    }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::string out;
        for (int i = degree(); i >= 0; --i) {
            if (c_[i].is_zero()) continue;
            if (!out.empty()) out += " + ";
            std::string c = c_[i].to_string();
            if (i == 0) out += c;
            else {
                if (!c_[i].is_one()) out += c + "*";
                out += i == 1 ? "x" : "x^" + std::to_string(i);
            }
        }
        return out;
    }

private:
    static void check(const Polynomial& a, const Polynomial& b) {
        if (a.field_ != b.field_)
            fail(ErrorKind::ModeMismatch, "polynomial mode mismatch: " + a.field_.name() + " vs " + b.field_.name());
    }
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    Field field_;
    std::vector<Scalar> c_;
};

// Monic gcd.
inline Polynomial gcd(Polynomial a, Polynomial b) {
    require(!(a.is_zero() && b.is_zero()), ErrorKind::DivisionByZero, "gcd of two zero polynomials");
    while (!b.is_zero()) {
        auto qr = divrem(a, b);
        a = std::move(b);
        b = std::move(qr.second);
    }
    return a.monic();
}

}  // namespace facto
