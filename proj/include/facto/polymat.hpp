// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "facto/kmatrix.hpp"
#include "facto/polynomial.hpp"

namespace facto {

class PolyMatrix {
public:
    PolyMatrix() = default;
    PolyMatrix(Field f, std::size_t rows, std::size_t cols)
        : field_(f), rows_(rows), cols_(cols), a_(rows * cols, Polynomial(f)) {}

    static PolyMatrix identity(Field f, std::size_t n) { return scalar_identity(Polynomial::one(f), n); }
    static PolyMatrix scalar_identity(const Polynomial& p, std::size_t n) {
        PolyMatrix m(p.field(), n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = p;
        return m;
    }

    Field field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Polynomial& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Polynomial& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    bool is_zero() const {
        for (const auto& p : a_)
            if (!p.is_zero()) return false;
        return true;
    }
    bool is_square() const { return rows_ == cols_; }

    friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
        require(a.cols_ == b.rows_, ErrorKind::DimensionMismatch,
                "matrix product shape mismatch: " + a.shape() + " * " + b.shape());
        PolyMatrix r(a.field_, a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Polynomial& p = a(i, k);
                if (p.is_zero()) continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    if (!b(k, j).is_zero()) r(i, j) += p * b(k, j);
            }
        return r;
    }
    friend PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b) {
        require(a.rows_ == b.rows_ && a.cols_ == b.cols_, ErrorKind::DimensionMismatch, "matrix sum shape mismatch");
        PolyMatrix r = a;
        for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] += b.a_[i];
        return r;
    }
    friend PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b) {
        require(a.rows_ == b.rows_ && a.cols_ == b.cols_, ErrorKind::DimensionMismatch, "matrix difference shape mismatch");
        PolyMatrix r = a;
        for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] -= b.a_[i];
        return r;
    }
    friend PolyMatrix operator*(const Polynomial& p, const PolyMatrix& a) {
        PolyMatrix r = a;
        for (auto& e : r.a_) e = p * e;
        return r;
    }
    friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
        return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }
    friend bool operator!=(const PolyMatrix& a, const PolyMatrix& b) { return !(a == b); }

    PolyMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
        require(r0 + nr <= rows_ && c0 + nc <= cols_, ErrorKind::DimensionMismatch, "matrix block out of range");
        PolyMatrix r(field_, nr, nc);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j) r(i, j) = (*this)(r0 + i, c0 + j);
        return r;
    }
    void set_block(std::size_t r0, std::size_t c0, const PolyMatrix& b) {
        require(r0 + b.rows_ <= rows_ && c0 + b.cols_ <= cols_, ErrorKind::DimensionMismatch, "matrix block out of range");
        for (std::size_t i = 0; i < b.rows_; ++i)
            for (std::size_t j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
    }
    static PolyMatrix hstack(const PolyMatrix& a, const PolyMatrix& b) {
        require(a.rows_ == b.rows_, ErrorKind::DimensionMismatch, "hstack row mismatch");
        PolyMatrix r(a.field_, a.rows_, a.cols_ + b.cols_);
        r.set_block(0, 0, a);
        r.set_block(0, a.cols_, b);
        return r;
    }
    static PolyMatrix vstack(const PolyMatrix& a, const PolyMatrix& b) {
        require(a.cols_ == b.cols_, ErrorKind::DimensionMismatch, "vstack column mismatch");
        PolyMatrix r(a.field_, a.rows_ + b.rows_, a.cols_);
        r.set_block(0, 0, a);
        r.set_block(a.rows_, 0, b);
        return r;
    }

    void swap_rows(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
    }
    void swap_cols(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, i), (*this)(r, j));
    }
    // row i += p * row j
    void add_row(std::size_t i, std::size_t j, const Polynomial& p) {
        for (std::size_t c = 0; c < cols_; ++c)
            if (!(*this)(j, c).is_zero()) (*this)(i, c) += p * (*this)(j, c);
    }
    // col i += col j * p
    void add_col(std::size_t i, std::size_t j, const Polynomial& p) {
        for (std::size_t r = 0; r < rows_; ++r)
            if (!(*this)(r, j).is_zero()) (*this)(r, i) += p * (*this)(r, j);
    }
    void scale_row(std::size_t i, const Scalar& s) {
        for (std::size_t c = 0; c < cols_; ++c) (*this)(i, c) = s * (*this)(i, c);
    }

    std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

private:
    Field field_;
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Polynomial> a_;
};

// Fraction-free (Bareiss) determinant.
inline Polynomial det(PolyMatrix a) {
    require(a.is_square(), ErrorKind::DimensionMismatch, "det of a non-square matrix");
    Field f = a.field();
    std::size_t n = a.rows();
    if (n == 0) return Polynomial::one(f);
    bool negate = false;
    Polynomial prev = Polynomial::one(f);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::size_t p = k;
        while (p < n && a(p, k).is_zero()) ++p;
        if (p == n) return Polynomial::zero(f);
        if (p != k) {
            a.swap_rows(p, k);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Polynomial t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                a(i, j) = divrem(t, prev).first;
            }
        prev = a(k, k);
    }
    Polynomial d = a(n - 1, n - 1);
    return negate ? -d : d;
}

struct SmithForm {
    PolyMatrix U, D, V;  // U * A * V = D
    std::size_t rank = 0;
};

// Smith normal form by Euclidean elimination; the pivot is always an entry of
// minimal degree, so homogeneous inputs keep homogeneous transforms.
inline SmithForm snf(const PolyMatrix& a) {
    Field f = a.field();
    std::size_t r = a.rows(), c = a.cols();
    PolyMatrix D = a, U = PolyMatrix::identity(f, r), V = PolyMatrix::identity(f, c);
    std::size_t t = 0;
    auto bring_min_to = [&](std::size_t t) -> bool {
        int best = -1;
        std::size_t bi = 0, bj = 0;
        for (std::size_t i = t; i < r; ++i)
            for (std::size_t j = t; j < c; ++j) {
                const Polynomial& p = D(i, j);
                if (!p.is_zero() && (best < 0 || p.degree() < best)) {
                    best = p.degree();
                    bi = i;
                    bj = j;
                }
            }
        if (best < 0) return false;
        D.swap_rows(t, bi);
        U.swap_rows(t, bi);
        D.swap_cols(t, bj);
        V.swap_cols(t, bj);
        return true;
    };
    while (t < std::min(r, c)) {
        if (!bring_min_to(t)) break;
        for (;;) {
            bool dirty = false;
            for (std::size_t i = t + 1; i < r; ++i) {
                if (D(i, t).is_zero()) continue;
                auto [q, rem] = divrem(D(i, t), D(t, t));
                D.add_row(i, t, -q);
                U.add_row(i, t, -q);
                if (!rem.is_zero()) dirty = true;
            }
            for (std::size_t j = t + 1; j < c; ++j) {
                if (D(t, j).is_zero()) continue;
                auto [q, rem] = divrem(D(t, j), D(t, t));
                D.add_col(j, t, -q);
                V.add_col(j, t, -q);
                if (!rem.is_zero()) dirty = true;
            }
            if (dirty) {
                bring_min_to(t);
                continue;
            }
            // Divisibility of the remaining block.
            bool fixed = false;
            for (std::size_t i = t + 1; i < r && !fixed; ++i)
                for (std::size_t j = t + 1; j < c && !fixed; ++j) {
                    if (D(i, j).is_zero()) continue;
                    if (!divrem(D(i, j), D(t, t)).second.is_zero()) {
                        Polynomial one = Polynomial::one(f);
                        D.add_row(t, i, one);
                        U.add_row(t, i, one);
                        fixed = true;
                    }
                }
            if (!fixed) break;
        }
        Scalar inv = D(t, t).leading().inverse();
        D.scale_row(t, inv);
        U.scale_row(t, inv);
        ++t;
    }
    return {std::move(U), std::move(D), std::move(V), t};
}

// X with A X = B, if one exists over k[x].
inline std::optional<PolyMatrix> solve_right(const PolyMatrix& A, const PolyMatrix& B) {
    require(A.rows() == B.rows(), ErrorKind::DimensionMismatch,
            "solve_right: A is " + A.shape() + ", B is " + B.shape());
    SmithForm s = snf(A);
    PolyMatrix C = s.U * B;
    PolyMatrix Y(A.field(), A.cols(), B.cols());
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < B.cols(); ++j) {
            if (i < s.rank) {
                auto [q, rem] = divrem(C(i, j), s.D(i, i));
                if (!rem.is_zero()) return std::nullopt;
                Y(i, j) = q;
            } else if (!C(i, j).is_zero()) {
                return std::nullopt;
            }
        }
    return s.V * Y;
}

// Columns form a k[x]-basis of ker A.
inline PolyMatrix kernel_basis(const PolyMatrix& A) {
    SmithForm s = snf(A);
    return s.V.block(0, s.rank, A.cols(), A.cols() - s.rank);
}

struct GradingViolation {
    std::size_t row, col;
    int expected_degree;  // may be negative: the entry must then vanish
};

// Degree-0 map between graded free k[x]-modules. A basis element with label n
// generates a copy of S(n), so entry (j,i) is c*x^(tgt_j - src_i).
struct GradedMatrix {
    PolyMatrix mat;
    std::vector<int> src, tgt;

    GradedMatrix() = default;
    GradedMatrix(PolyMatrix m, std::vector<int> s, std::vector<int> t)
        : mat(std::move(m)), src(std::move(s)), tgt(std::move(t)) {
        require(mat.cols() == src.size() && mat.rows() == tgt.size(), ErrorKind::DimensionMismatch,
                "degree vectors do not match matrix shape " + mat.shape());
    }

    Field field() const { return mat.field(); }
    std::size_t rows() const { return mat.rows(); }
    std::size_t cols() const { return mat.cols(); }
    int expected_degree(std::size_t j, std::size_t i) const { return tgt[j] - src[i]; }

    static GradedMatrix identity(Field f, const std::vector<int>& degs) {
        return GradedMatrix(PolyMatrix::identity(f, degs.size()), degs, degs);
    }
    static GradedMatrix zero(Field f, const std::vector<int>& src, const std::vector<int>& tgt) {
        return GradedMatrix(PolyMatrix(f, tgt.size(), src.size()), src, tgt);
    }
    // x^e * I from degs to degs + e.
    static GradedMatrix x_pow_identity(Field f, const std::vector<int>& degs, int e) {
        std::vector<int> t = degs;
        for (auto& v : t) v += e;
        return GradedMatrix(PolyMatrix::scalar_identity(Polynomial::x_pow(f, e), degs.size()), degs, t);
    }

    // Coefficient of x^(tgt_j - src_i) in entry (j,i).
    Scalar coefficient(std::size_t j, std::size_t i) const {
        int e = expected_degree(j, i);
        return e < 0 ? Scalar::zero(field()) : mat(j, i).coeff(e);
    }
    // Part of the map of internal degree zero: entries whose source and target labels agree.
    KMatrix constant_part() const {
        KMatrix k(field(), rows(), cols());
        for (std::size_t j = 0; j < rows(); ++j)
            for (std::size_t i = 0; i < cols(); ++i)
                if (tgt[j] == src[i]) k(j, i) = mat(j, i).coeff(0);
        return k;
    }

    // Same matrix with every label moved by delta.
    GradedMatrix shifted(int delta) const {
        GradedMatrix g = *this;
        for (auto& v : g.src) v += delta;
        for (auto& v : g.tgt) v += delta;
        return g;
    }

    friend bool operator==(const GradedMatrix& a, const GradedMatrix& b) {
        return a.mat == b.mat && a.src == b.src && a.tgt == b.tgt;
    }
    friend bool operator!=(const GradedMatrix& a, const GradedMatrix& b) { return !(a == b); }
};

inline std::optional<GradingViolation> graded_check(const GradedMatrix& a) {
    for (std::size_t j = 0; j < a.rows(); ++j)
        for (std::size_t i = 0; i < a.cols(); ++i)
            if (!a.mat(j, i).is_homogeneous_of(a.expected_degree(j, i)))
                return GradingViolation{j, i, a.expected_degree(j, i)};
    return std::nullopt;
}

inline GradedMatrix mat_mul(const GradedMatrix& a, const GradedMatrix& b) {
    require(b.tgt == a.src, ErrorKind::DimensionMismatch, "mat_mul: degree vectors do not chain");
    return GradedMatrix(a.mat * b.mat, b.src, a.tgt);
}
inline GradedMatrix operator*(const GradedMatrix& a, const GradedMatrix& b) { return mat_mul(a, b); }

inline GradedMatrix operator+(const GradedMatrix& a, const GradedMatrix& b) {
    require(a.src == b.src && a.tgt == b.tgt, ErrorKind::DimensionMismatch, "graded sum: degree vectors differ");
    return GradedMatrix(a.mat + b.mat, a.src, a.tgt);
}
inline GradedMatrix operator-(const GradedMatrix& a, const GradedMatrix& b) {
    require(a.src == b.src && a.tgt == b.tgt, ErrorKind::DimensionMismatch, "graded difference: degree vectors differ");
    return GradedMatrix(a.mat - b.mat, a.src, a.tgt);
}
inline GradedMatrix operator*(const Scalar& s, const GradedMatrix& a) {
    return GradedMatrix(Polynomial::constant(s) * a.mat, a.src, a.tgt);
}

inline GradedMatrix block_diag(const GradedMatrix& a, const GradedMatrix& b) {
    PolyMatrix m(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
    m.set_block(0, 0, a.mat);
    m.set_block(a.rows(), a.cols(), b.mat);
    std::vector<int> s = a.src, t = a.tgt;
    s.insert(s.end(), b.src.begin(), b.src.end());
    t.insert(t.end(), b.tgt.begin(), b.tgt.end());
    return GradedMatrix(std::move(m), std::move(s), std::move(t));
}

// Label of a homogeneous column vector v (entries c*x^(n_j - label)); nullopt for zero
// or inhomogeneous columns.
inline std::optional<int> column_label(const PolyMatrix& m, std::size_t col, const std::vector<int>& row_labels) {
    std::optional<int> label;
    for (std::size_t j = 0; j < m.rows(); ++j) {
        const Polynomial& p = m(j, col);
        if (p.is_zero()) continue;
        if (!p.is_monomial()) return std::nullopt;
        int l = row_labels[j] - p.degree();
        if (label && *label != l) return std::nullopt;
        label = l;
    }
    return label;
}

// Graded kernel of a homogeneous matrix: the kernel basis with inferred source labels.
inline GradedMatrix graded_kernel(const GradedMatrix& a) {
    PolyMatrix k = kernel_basis(a.mat);
    std::vector<int> labels;
    for (std::size_t c = 0; c < k.cols(); ++c) {
        auto l = column_label(k, c, a.src);
        require(l.has_value(), ErrorKind::Internal, "kernel column is not homogeneous");
        labels.push_back(*l);
    }
    return GradedMatrix(std::move(k), std::move(labels), a.src);
}

// Solves a * x = b for graded a, b with common target; the result is graded from b.src to a.src.
inline std::optional<GradedMatrix> graded_solve(const GradedMatrix& a, const GradedMatrix& b) {
    require(a.tgt == b.tgt, ErrorKind::DimensionMismatch, "graded_solve: targets differ");
    auto x = solve_right(a.mat, b.mat);
    if (!x) return std::nullopt;
    GradedMatrix g(std::move(*x), b.src, a.src);
    // A non-injective a admits inhomogeneous solutions; keep only the degree-0 part.
    for (std::size_t j = 0; j < g.rows(); ++j)
        for (std::size_t i = 0; i < g.cols(); ++i) {
            int e = g.expected_degree(j, i);
            g.mat(j, i) = e < 0 ? Polynomial(a.field()) : Polynomial::monomial(g.mat(j, i).coeff(e), e);
        }
    if (a.mat * g.mat != b.mat) return std::nullopt;
    return g;
}

}  // namespace facto
