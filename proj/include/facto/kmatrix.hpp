// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <vector>

#include "facto/scalar.hpp"

namespace facto {

// Dense matrix over the ground field.
class KMatrix {
public:
    KMatrix() = default;
    KMatrix(Field f, std::size_t rows, std::size_t cols)
        : field_(f), rows_(rows), cols_(cols), a_(rows * cols, Scalar::zero(f)) {}

    static KMatrix identity(Field f, std::size_t n) {
        KMatrix m(f, n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar::one(f);
        return m;
    }

    Field field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Scalar& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Scalar& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    bool is_zero() const {
        for (const auto& s : a_)
            if (!s.is_zero()) return false;
        return true;
    }

    friend KMatrix operator*(const KMatrix& a, const KMatrix& b) {
        require(a.cols_ == b.rows_, ErrorKind::DimensionMismatch, "k-matrix product shape mismatch");
        KMatrix r(a.field_, a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Scalar& s = a(i, k);
                if (s.is_zero()) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += s * b(k, j);
            }
        return r;
    }
    friend KMatrix operator+(const KMatrix& a, const KMatrix& b) {
        require(a.rows_ == b.rows_ && a.cols_ == b.cols_, ErrorKind::DimensionMismatch, "k-matrix sum shape mismatch");
        KMatrix r = a;
        for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] += b.a_[i];
        return r;
    }
    friend KMatrix operator-(const KMatrix& a, const KMatrix& b) {
        require(a.rows_ == b.rows_ && a.cols_ == b.cols_, ErrorKind::DimensionMismatch, "k-matrix difference shape mismatch");
        KMatrix r = a;
        for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] -= b.a_[i];
        return r;
    }
    friend KMatrix operator*(const Scalar& s, const KMatrix& a) {
        KMatrix r = a;
        for (auto& v : r.a_) v *= s;
        return r;
    }
    friend bool operator==(const KMatrix& a, const KMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }
    friend bool operator!=(const KMatrix& a, const KMatrix& b) { return !(a == b); }

    KMatrix transpose() const {
        KMatrix r(field_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }
    KMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
        require(r0 + nr <= rows_ && c0 + nc <= cols_, ErrorKind::DimensionMismatch, "k-matrix block out of range");
        KMatrix r(field_, nr, nc);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j) r(i, j) = (*this)(r0 + i, c0 + j);
        return r;
    }
    void set_block(std::size_t r0, std::size_t c0, const KMatrix& b) {
        require(r0 + b.rows_ <= rows_ && c0 + b.cols_ <= cols_, ErrorKind::DimensionMismatch, "k-matrix block out of range");
        for (std::size_t i = 0; i < b.rows_; ++i)
            for (std::size_t j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
    }
    KMatrix column(std::size_t j) const { return block(0, j, rows_, 1); }
    KMatrix columns(const std::vector<std::size_t>& idx) const {
        KMatrix r(field_, rows_, idx.size());
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < idx.size(); ++j) r(i, j) = (*this)(i, idx[j]);
        return r;
    }
    KMatrix rows_of(const std::vector<std::size_t>& idx) const {
        KMatrix r(field_, idx.size(), cols_);
        for (std::size_t i = 0; i < idx.size(); ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(i, j) = (*this)(idx[i], j);
        return r;
    }

    static KMatrix hstack(const KMatrix& a, const KMatrix& b) {
        require(a.rows_ == b.rows_, ErrorKind::DimensionMismatch, "hstack row mismatch");
        KMatrix r(a.field_, a.rows_, a.cols_ + b.cols_);
        r.set_block(0, 0, a);
        r.set_block(0, a.cols_, b);
        return r;
    }
    static KMatrix vstack(const KMatrix& a, const KMatrix& b) {
        require(a.cols_ == b.cols_, ErrorKind::DimensionMismatch, "vstack column mismatch");
        KMatrix r(a.field_, a.rows_ + b.rows_, a.cols_);
        r.set_block(0, 0, a);
        r.set_block(a.rows_, 0, b);
        return r;
    }

    void swap_rows(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
    }

private:
    Field field_;
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Scalar> a_;
};

struct Rref {
    KMatrix reduced;
    std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

inline Rref rref(KMatrix a) {
    std::vector<std::size_t> piv;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t p = r;
        while (p < a.rows() && a(p, c).is_zero()) ++p;
        if (p == a.rows()) continue;
        a.swap_rows(p, r);
        Scalar inv = a(r, c).inverse();
        for (std::size_t j = c; j < a.cols(); ++j) a(r, j) *= inv;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == r || a(i, c).is_zero()) continue;
            Scalar f = a(i, c);
            for (std::size_t j = c; j < a.cols(); ++j)
                if (!a(r, j).is_zero()) a(i, j) -= f * a(r, j);
        }
        piv.push_back(c);
        ++r;
    }
    return {std::move(a), std::move(piv)};
}

inline std::size_t rank(const KMatrix& a) { return rref(a).pivots.size(); }

// Columns form a basis of {v : a v = 0}.
inline KMatrix nullspace(const KMatrix& a) {
    Rref r = rref(a);
    std::vector<bool> is_piv(a.cols(), false);
    for (auto p : r.pivots) is_piv[p] = true;
    std::vector<std::size_t> free;
    for (std::size_t c = 0; c < a.cols(); ++c)
        if (!is_piv[c]) free.push_back(c);
    KMatrix n(a.field(), a.cols(), free.size());
    for (std::size_t k = 0; k < free.size(); ++k) {
        n(free[k], k) = Scalar::one(a.field());
        for (std::size_t i = 0; i < r.pivots.size(); ++i) n(r.pivots[i], k) = -r.reduced(i, free[k]);
    }
    return n;
}

// Some x with a x = b, if any.
inline std::optional<KMatrix> solve(const KMatrix& a, const KMatrix& b) {
    require(a.rows() == b.rows(), ErrorKind::DimensionMismatch, "solve: row mismatch");
    Rref r = rref(KMatrix::hstack(a, b));
    KMatrix x(a.field(), a.cols(), b.cols());
    for (std::size_t i = 0; i < r.pivots.size(); ++i) {
        if (r.pivots[i] >= a.cols()) return std::nullopt;
        for (std::size_t j = 0; j < b.cols(); ++j) x(r.pivots[i], j) = r.reduced(i, a.cols() + j);
    }
    return x;
}

inline Scalar det(KMatrix a) {
    require(a.rows() == a.cols(), ErrorKind::DimensionMismatch, "det of a non-square matrix");
    Field f = a.field();
    Scalar d = Scalar::one(f);
    std::size_t n = a.rows();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a(p, c).is_zero()) ++p;
        if (p == n) return Scalar::zero(f);
        if (p != c) {
            a.swap_rows(p, c);
            d = -d;
        }
        d *= a(c, c);
        Scalar inv = a(c, c).inverse();
        for (std::size_t i = c + 1; i < n; ++i) {
            if (a(i, c).is_zero()) continue;
            Scalar m = a(i, c) * inv;
            for (std::size_t j = c; j < n; ++j) a(i, j) -= m * a(c, j);
        }
    }
    return d;
}

inline bool invertible(const KMatrix& a) { return a.rows() == a.cols() && rank(a) == a.rows(); }

inline std::optional<KMatrix> inverse(const KMatrix& a) {
    if (!invertible(a)) return std::nullopt;
    return solve(a, KMatrix::identity(a.field(), a.rows()));
}

// Indices of a maximal independent subset of columns (greedy, left to right).
inline std::vector<std::size_t> independent_columns(const KMatrix& a) { return rref(a).pivots; }

}  // namespace facto
