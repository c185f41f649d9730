// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "facto/chain.hpp"
#include "facto/polymat.hpp"

namespace facto {

namespace detail {
inline std::vector<int> plus(std::vector<int> v, int delta) {
    for (auto& x : v) x += delta;
    return v;
}
inline std::vector<int> concat(std::vector<int> a, const std::vector<int>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}
}  // namespace detail

// X^0 -> X^1 -> ... -> X^l with closing map X^l -> tau X^0; composites equal x^d.
struct Factorization {
    Field field;
    int d = 1;
    int l = 1;
    std::vector<std::vector<int>> degs;  // labels of X^0 .. X^l
    std::vector<GradedMatrix> maps;      // maps[k] : X^k -> X^{k+1}
    GradedMatrix closing;                // X^l -> tau X^0
    int twist = 0;
    int phase = 0;  // rotation position in 0..l

    std::size_t m() const { return degs.empty() ? 0 : degs[0].size(); }

    // maps[j-1] ... maps[i] : X^i -> X^j
    GradedMatrix composite(std::size_t i, std::size_t j) const {
        GradedMatrix g = GradedMatrix::identity(field, degs[i]);
        for (std::size_t k = i; k < j; ++k) g = mat_mul(maps[k], g);
        return g;
    }
    // maps[0..l-1] followed by the closing map
    const GradedMatrix& map(std::size_t k) const { return k < maps.size() ? maps[k] : closing; }

    friend bool operator==(const Factorization& a, const Factorization& b) {
        return a.field == b.field && a.d == b.d && a.l == b.l && a.degs == b.degs && a.maps == b.maps &&
               a.closing == b.closing && a.twist == b.twist && a.phase == b.phase;
    }
    friend bool operator!=(const Factorization& a, const Factorization& b) { return !(a == b); }
};

struct FacResult {
    std::optional<Factorization> fac;
    std::string reason;
};

inline FacResult try_fac_validate(Field f, int d, std::vector<GradedMatrix> maps, std::vector<std::vector<int>> degs,
                                  int twist = 0, int phase = 0) {
    if (d < 1) return {std::nullopt, "d must be positive"};
    if (maps.empty()) return {std::nullopt, "l must be at least 1"};
    int l = static_cast<int>(maps.size());
    if (degs.size() != maps.size() + 1) return {std::nullopt, "expected l+1 degree vectors"};
    if (phase < 0 || phase > l) return {std::nullopt, "phase outside 0..l"};
    std::size_t m = degs[0].size();
    for (auto& v : degs)
        if (v.size() != m) return {std::nullopt, "degree vectors of unequal length"};
    for (int k = 0; k < l; ++k) {
        const GradedMatrix& a = maps[k];
        if (a.field() != f) return {std::nullopt, "map " + std::to_string(k) + " uses a different field"};
        if (a.rows() != m || a.cols() != m) return {std::nullopt, "map " + std::to_string(k) + " is not " + std::to_string(m) + "x" + std::to_string(m)};
        if (a.src != degs[k] || a.tgt != degs[k + 1])
            return {std::nullopt, "map " + std::to_string(k) + " does not carry the declared degree vectors"};
        if (auto v = graded_check(a))
            return {std::nullopt, "GradingViolation: map " + std::to_string(k) + " entry (" + std::to_string(v->row) + "," +
                                      std::to_string(v->col) + ") must be homogeneous of degree " +
                                      std::to_string(v->expected_degree)};
        if (det(a.mat).is_zero()) return {std::nullopt, "NonMonic: map " + std::to_string(k) + " has zero determinant"};
    }
    Factorization x{f, d, l, std::move(degs), std::move(maps), {}, twist, phase};
    GradedMatrix prod = x.composite(0, l).shifted(d);
    auto c = graded_solve(prod, GradedMatrix::x_pow_identity(f, x.degs[l], d));
    if (!c) return {std::nullopt, "NoClosing: x^" + std::to_string(d) + " does not factor through the composite"};
    x.closing = std::move(*c);
    return {std::move(x), ""};
}

inline Factorization fac_validate(Field f, int d, std::vector<GradedMatrix> maps, std::vector<std::vector<int>> degs,
                                  int twist = 0, int phase = 0) {
    FacResult r = try_fac_validate(f, d, std::move(maps), std::move(degs), twist, phase);
    if (!r.fac) fail(ErrorKind::InvalidFactorization, r.reason);
    return std::move(*r.fac);
}

// Validates maps read from elsewhere whose labels are taken from the degree vectors.
inline Factorization fac_from_matrices(Field f, int d, const std::vector<PolyMatrix>& mats,
                                       const std::vector<std::vector<int>>& degs, int twist = 0, int phase = 0) {
    require(degs.size() == mats.size() + 1, ErrorKind::InvalidFactorization, "expected l+1 degree vectors");
    std::vector<GradedMatrix> maps;
    for (std::size_t k = 0; k < mats.size(); ++k) {
        require(mats[k].rows() == degs[k + 1].size() && mats[k].cols() == degs[k].size(),
                ErrorKind::InvalidFactorization, "map " + std::to_string(k) + " does not match the degree vectors");
        maps.emplace_back(mats[k], degs[k], degs[k + 1]);
    }
    return fac_validate(f, d, std::move(maps), degs, twist, phase);
}

// tau(A^{k-1} ... A^0) A^l A^{l-1} ... A^k = x^d for every k; returns the first failing k.
inline std::optional<int> zigzag_check(const Factorization& x) {
    for (int k = 0; k <= x.l; ++k) {
        GradedMatrix lhs = mat_mul(mat_mul(x.composite(0, k).shifted(x.d), x.closing), x.composite(k, x.l));
        if (lhs != GradedMatrix::x_pow_identity(x.field, x.degs[k], x.d)) return k;
    }
    return std::nullopt;
}

// Trivial factorization nu^k(A): A up to position k, tau A after, x^d at position k.
inline Factorization nu(Field f, int d, int l, const std::vector<int>& a, int k) {
    require(l >= 1 && k >= 0 && k <= l, ErrorKind::Range, "nu: k must lie in 0..l");
    std::vector<std::vector<int>> degs;
    std::vector<GradedMatrix> maps;
    for (int j = 0; j <= l; ++j) degs.push_back(j <= k ? a : detail::plus(a, d));
    for (int j = 0; j < l; ++j)
        maps.push_back(j == k ? GradedMatrix::x_pow_identity(f, a, d) : GradedMatrix::identity(f, degs[j]));
    return fac_validate(f, d, std::move(maps), std::move(degs));
}

inline Factorization zero_factorization(Field f, int d, int l) { return nu(f, d, l, {}, l); }

// tau X: every label moves by d.
inline Factorization tau(const Factorization& x, int times = 1) {
    Factorization y = x;
    for (auto& v : y.degs) v = detail::plus(v, times * x.d);
    for (auto& a : y.maps) a = a.shifted(times * x.d);
    y.closing = y.closing.shifted(times * x.d);
    y.twist += times;
    return y;
}

// (X^1, ..., X^l, tau X^0) with closing tau A^0; the inverse is (tau^-1 X^l, X^0, ..., X^{l-1}).
inline Factorization rotate(const Factorization& x, bool inverse = false) {
    Factorization y = x;
    int l = x.l, d = x.d;
    y.degs.clear();
    y.maps.clear();
    if (!inverse) {
        for (int k = 1; k <= l; ++k) y.degs.push_back(x.degs[k]);
        y.degs.push_back(detail::plus(x.degs[0], d));
        for (int k = 1; k < l; ++k) y.maps.push_back(x.maps[k]);
        y.maps.push_back(x.closing);
        y.closing = x.maps[0].shifted(d);
        if (x.phase < l) ++y.phase;
        else {
            y.phase = 0;
            ++y.twist;
        }
    } else {
        y.degs.push_back(detail::plus(x.degs[l], -d));
        for (int k = 0; k < l; ++k) y.degs.push_back(x.degs[k]);
        y.maps.push_back(x.closing.shifted(-d));
        for (int k = 0; k + 1 < l; ++k) y.maps.push_back(x.maps[k]);
        y.closing = x.maps[l - 1];
        if (x.phase > 0) --y.phase;
        else {
            y.phase = l;
            --y.twist;
        }
    }
    return y;
}

inline Factorization direct_sum(const Factorization& x, const Factorization& y) {
    require(x.l == y.l && x.d == y.d && x.field == y.field && x.twist == y.twist && x.phase == y.phase,
            ErrorKind::DimensionMismatch, "direct sum of factorizations of different shape");
    Factorization s{x.field, x.d, x.l, {}, {}, block_diag(x.closing, y.closing), x.twist, x.phase};
    for (int k = 0; k <= x.l; ++k) s.degs.push_back(detail::concat(x.degs[k], y.degs[k]));
    for (int k = 0; k < x.l; ++k) s.maps.push_back(block_diag(x.maps[k], y.maps[k]));
    return s;
}

// Two-factor contraction X^0 -> X^l.
inline Factorization contract(const Factorization& x) {
    return Factorization{x.field, x.d, 1, {x.degs[0], x.degs[x.l]}, {x.composite(0, x.l)}, x.closing, x.twist, 0};
}

// Components f^0..f^l.
struct FacMap {
    std::vector<GradedMatrix> comps;
    friend bool operator==(const FacMap& a, const FacMap& b) { return a.comps == b.comps; }
    friend bool operator!=(const FacMap& a, const FacMap& b) { return !(a == b); }
};

inline FacMap compose(const FacMap& g, const FacMap& f) {
    require(g.comps.size() == f.comps.size(), ErrorKind::DimensionMismatch, "factorization maps of different length");
    FacMap h;
    for (std::size_t k = 0; k < f.comps.size(); ++k) h.comps.push_back(mat_mul(g.comps[k], f.comps[k]));
    return h;
}
inline FacMap operator+(const FacMap& a, const FacMap& b) {
    FacMap h;
    for (std::size_t k = 0; k < a.comps.size(); ++k) h.comps.push_back(a.comps[k] + b.comps[k]);
    return h;
}
inline FacMap operator*(const Scalar& s, const FacMap& a) {
    FacMap h;
    for (auto& c : a.comps) h.comps.push_back(s * c);
    return h;
}
inline FacMap identity_map(const Factorization& x) {
    FacMap h;
    for (auto& v : x.degs) h.comps.push_back(GradedMatrix::identity(x.field, v));
    return h;
}
inline FacMap zero_map(const Factorization& x, const Factorization& y) {
    FacMap h;
    for (int k = 0; k <= x.l; ++k) h.comps.push_back(GradedMatrix::zero(x.field, x.degs[k], y.degs[k]));
    return h;
}

struct MorphismCheck {
    bool squares = false;  // f^{k+1} A^k = B^k f^k for k < l
    bool closing = false;  // tau(f^0) A^l = B^l f^l
};

inline MorphismCheck check_fac_map(const Factorization& x, const Factorization& y, const FacMap& f) {
    MorphismCheck r;
    if (f.comps.size() != std::size_t(x.l + 1) || x.l != y.l) return r;
    for (int k = 0; k <= x.l; ++k) {
        const GradedMatrix& c = f.comps[k];
        if (c.src != x.degs[k] || c.tgt != y.degs[k] || graded_check(c)) return r;
    }
    r.squares = true;
    for (int k = 0; k < x.l; ++k)
        if (f.comps[k + 1].mat * x.maps[k].mat != y.maps[k].mat * f.comps[k].mat) r.squares = false;
    r.closing = f.comps[0].mat * x.closing.mat == y.closing.mat * f.comps[x.l].mat;
    return r;
}

inline bool is_fac_map(const Factorization& x, const Factorization& y, const FacMap& f) {
    MorphismCheck c = check_fac_map(x, y, f);
    return c.squares && c.closing;
}

namespace detail {

struct HomCoords {
    struct Unknown {
        int k;
        std::size_t row, col;
        int e;
    };
    std::vector<Unknown> unk;
};

inline HomCoords hom_coords(const Factorization& x, const Factorization& y) {
    HomCoords h;
    for (int k = 0; k <= x.l; ++k)
        for (std::size_t j = 0; j < y.degs[k].size(); ++j)
            for (std::size_t i = 0; i < x.degs[k].size(); ++i) {
                int e = y.degs[k][j] - x.degs[k][i];
                if (e >= 0) h.unk.push_back({k, j, i, e});
            }
    return h;
}

inline KMatrix fac_vec(const HomCoords& h, const FacMap& f, Field fld) {
    KMatrix v(fld, h.unk.size(), 1);
    for (std::size_t u = 0; u < h.unk.size(); ++u) {
        auto& q = h.unk[u];
        v(u, 0) = f.comps[q.k].mat(q.row, q.col).coeff(q.e);
    }
    return v;
}

inline FacMap fac_from_vec(const HomCoords& h, const KMatrix& v, std::size_t col, const Factorization& x,
                           const Factorization& y) {
    FacMap f = zero_map(x, y);
    for (std::size_t u = 0; u < h.unk.size(); ++u) {
        auto& q = h.unk[u];
        if (!v(u, col).is_zero()) f.comps[q.k].mat(q.row, q.col) = Polynomial::monomial(v(u, col), q.e);
    }
    return f;
}

}  // namespace detail

// k-basis of Hom(X, Y): commuting tuples of graded matrices.
inline std::vector<FacMap> fac_hom_basis(const Factorization& x, const Factorization& y) {
    require(x.l == y.l && x.d == y.d && x.field == y.field, ErrorKind::DimensionMismatch,
            "hom between factorizations of different shape");
    Field f = x.field;
    detail::HomCoords h = detail::hom_coords(x, y);
    // Equation rows: (k, r, c) for f^{k+1} A^k - B^k f^k, coefficient of x^(Y^{k+1}_r - X^k_c).
    std::vector<std::vector<std::vector<long>>> row_of(x.l);
    std::size_t nrows = 0;
    for (int k = 0; k < x.l; ++k) {
        row_of[k].assign(y.m(), std::vector<long>(x.m(), -1));
        for (std::size_t r = 0; r < y.m(); ++r)
            for (std::size_t c = 0; c < x.m(); ++c)
                if (y.degs[k + 1][r] - x.degs[k][c] >= 0) row_of[k][r][c] = long(nrows++);
    }
    KMatrix sys(f, nrows, h.unk.size());
    for (std::size_t u = 0; u < h.unk.size(); ++u) {
        auto& q = h.unk[u];
        if (q.k >= 1) {  // f^{k} = E_{row,col} x^e appears in square k-1 as E x^e A^{k-1}
            int k = q.k - 1;
            const GradedMatrix& a = x.maps[k];
            for (std::size_t c = 0; c < x.m(); ++c) {
                long r = row_of[k][q.row][c];
                if (r < 0) continue;
                int delta = y.degs[k + 1][q.row] - x.degs[k][c];
                sys(r, u) += a.mat(q.col, c).coeff(delta - q.e);
            }
        }
        if (q.k < x.l) {  // -B^k E x^e
            int k = q.k;
            const GradedMatrix& b = y.maps[k];
            for (std::size_t r = 0; r < y.m(); ++r) {
                long row = row_of[k][r][q.col];
                if (row < 0) continue;
                int delta = y.degs[k + 1][r] - x.degs[k][q.col];
                sys(row, u) -= b.mat(r, q.row).coeff(delta - q.e);
            }
        }
    }
    KMatrix n = nullspace(sys);
    std::vector<FacMap> out;
    for (std::size_t c = 0; c < n.cols(); ++c) out.push_back(detail::fac_from_vec(h, n, c, x, y));
    return out;
}

inline FacMap combine(const std::vector<FacMap>& basis, const std::vector<Scalar>& c, const Factorization& x,
                      const Factorization& y) {
    FacMap g = zero_map(x, y);
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (!c[i].is_zero()) g = g + c[i] * basis[i];
    return g;
}

// Split short exact in every position: p i = 0 and [i | s] invertible for a section s of p.
inline bool termwise_split_exact(const FacMap& i, const FacMap& p) {
    if (i.comps.size() != p.comps.size()) return false;
    for (std::size_t k = 0; k < i.comps.size(); ++k) {
        const GradedMatrix &a = i.comps[k], &b = p.comps[k];
        if (a.tgt != b.src) return false;
        if (!(b.mat * a.mat).is_zero()) return false;
        auto s = solve_right(b.mat, PolyMatrix::identity(b.field(), b.rows()));
        if (!s) return false;
        PolyMatrix sq = PolyMatrix::hstack(a.mat, *s);
        if (!sq.is_square()) return false;
        Polynomial dt = det(sq);
        if (dt.is_zero() || dt.degree() != 0) return false;
    }
    return true;
}

// Selects rows (or columns) of a graded matrix by index list.
namespace detail {
inline GradedMatrix select(const GradedMatrix& g, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
    PolyMatrix m(g.field(), rows.size(), cols.size());
    std::vector<int> s, t;
    for (auto c : cols) s.push_back(g.src[c]);
    for (auto r : rows) t.push_back(g.tgt[r]);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) m(i, j) = g.mat(rows[i], cols[j]);
    return GradedMatrix(std::move(m), std::move(s), std::move(t));
}
inline std::vector<std::size_t> range(std::size_t a, std::size_t b) {
    std::vector<std::size_t> v;
    for (std::size_t i = a; i < b; ++i) v.push_back(i);
    return v;
}
// Horizontal block row [b_0 | b_1 | ...] with a common target.
inline GradedMatrix hcat(const std::vector<GradedMatrix>& bs) {
    GradedMatrix r = bs[0];
    for (std::size_t i = 1; i < bs.size(); ++i) {
        require(bs[i].tgt == r.tgt, ErrorKind::Internal, "hcat: targets differ");
        r = GradedMatrix(PolyMatrix::hstack(r.mat, bs[i].mat), concat(r.src, bs[i].src), r.tgt);
    }
    return r;
}
inline GradedMatrix vcat(const std::vector<GradedMatrix>& bs) {
    GradedMatrix r = bs[0];
    for (std::size_t i = 1; i < bs.size(); ++i) {
        require(bs[i].src == r.src, ErrorKind::Internal, "vcat: sources differ");
        r = GradedMatrix(PolyMatrix::vstack(r.mat, bs[i].mat), r.src, concat(r.tgt, bs[i].tgt));
    }
    return r;
}
}  // namespace detail

enum class NuSide { Epic, Monic };

// Epic:  middle = nu^l(X^0) + sum_{k=1}^l nu^{k-1}(tau^-1 X^k) ->> X, other = kernel, other_map : kernel >-> middle.
// Monic: X >-> middle = sum_{k=0}^l nu^k(X^k), other = cokernel, other_map : middle ->> cokernel.
struct NuResolution {
    Factorization middle;
    FacMap map;
    Factorization other;
    FacMap other_map;
};

inline NuResolution nu_resolution(const Factorization& x, NuSide side) {
    Field f = x.field;
    int l = x.l, d = x.d;
    std::size_t m = x.m();
    std::vector<Factorization> parts;
    for (int k = 0; k <= l; ++k) {
        Factorization p = side == NuSide::Epic ? (k == 0 ? nu(f, d, l, x.degs[0], l) : nu(f, d, l, detail::plus(x.degs[k], -d), k - 1))
                                               : nu(f, d, l, x.degs[k], k);
        p.twist = x.twist;
        p.phase = x.phase;
        parts.push_back(std::move(p));
    }
    Factorization mid = parts[0];
    for (int k = 1; k <= l; ++k) mid = direct_sum(mid, parts[k]);

    // Block (j, k) of the structure map at position j.
    auto block = [&](int j, int k) -> GradedMatrix {
        if (side == NuSide::Epic) {
            if (k == 0) return x.composite(0, j);
            if (k <= j) return x.composite(k, j);
            return mat_mul(x.composite(0, j), mat_mul(x.closing, x.composite(k, l)).shifted(-d));
        }
        if (k >= j) return x.composite(j, k);
        return mat_mul(mat_mul(x.composite(0, k).shifted(d), x.closing), x.composite(j, l));
    };
    FacMap structure;
    for (int j = 0; j <= l; ++j) {
        std::vector<GradedMatrix> bs;
        for (int k = 0; k <= l; ++k) bs.push_back(block(j, k));
        structure.comps.push_back(side == NuSide::Epic ? detail::hcat(bs) : detail::vcat(bs));
    }
    // At position j the summand j is a copy of X^j on which the structure map is the identity;
    // the complement (indices of all other summands) carries the kernel / cokernel.
    auto rest = [&](int j) {
        std::vector<std::size_t> idx;
        for (int k = 0; k <= l; ++k)
            if (k != j)
                for (std::size_t i = 0; i < m; ++i) idx.push_back(k * m + i);
        return idx;
    };
    auto own = [&](int j) { return detail::range(j * m, (j + 1) * m); };

    std::vector<GradedMatrix> emb, ret;  // kernel inclusion / retraction onto the complement
    FacMap other_map;
    std::vector<std::vector<int>> odegs;
    for (int j = 0; j <= l; ++j) {
        const GradedMatrix& s = structure.comps[j];
        std::vector<std::size_t> r = rest(j), o = own(j);
        std::size_t n = r.size();
        if (side == NuSide::Epic) {
            // kernel: v_own = -beta v_rest
            GradedMatrix beta = detail::select(s, detail::range(0, m), r);
            PolyMatrix K(f, (l + 1) * m, n);
            std::vector<int> tgt = mid.degs[j];
            for (std::size_t a = 0; a < n; ++a) K(r[a], a) = Polynomial::one(f);
            for (std::size_t a = 0; a < m; ++a)
                for (std::size_t b = 0; b < n; ++b) K(o[a], b) = -beta.mat(a, b);
            std::vector<int> labels;
            for (auto i : r) labels.push_back(mid.degs[j][i]);
            emb.emplace_back(K, labels, tgt);
            PolyMatrix R(f, n, (l + 1) * m);
            for (std::size_t a = 0; a < n; ++a) R(a, r[a]) = Polynomial::one(f);
            ret.emplace_back(R, tgt, labels);
            odegs.push_back(labels);
        } else {
            // cokernel: w = v_rest - gamma v_own
            GradedMatrix gamma = detail::select(s, r, detail::range(0, m));
            PolyMatrix P(f, n, (l + 1) * m);
            for (std::size_t a = 0; a < n; ++a) P(a, r[a]) = Polynomial::one(f);
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < m; ++b) P(a, o[b]) = -gamma.mat(a, b);
            std::vector<int> labels;
            for (auto i : r) labels.push_back(mid.degs[j][i]);
            ret.emplace_back(P, mid.degs[j], labels);
            PolyMatrix I(f, (l + 1) * m, n);
            for (std::size_t a = 0; a < n; ++a) I(r[a], a) = Polynomial::one(f);
            emb.emplace_back(I, labels, mid.degs[j]);
            odegs.push_back(labels);
        }
    }
    std::vector<GradedMatrix> omaps;
    for (int j = 0; j < l; ++j) omaps.push_back(mat_mul(mat_mul(ret[j + 1], mid.maps[j]), emb[j]));
    Factorization other = fac_validate(f, d, std::move(omaps), std::move(odegs), x.twist, x.phase);
    for (int j = 0; j <= l; ++j) other_map.comps.push_back(side == NuSide::Epic ? emb[j] : ret[j]);
    return {std::move(mid), std::move(structure), std::move(other), std::move(other_map)};
}

inline std::size_t fac_stable_hom_dim(const Factorization& x, const Factorization& y) {
    auto H = fac_hom_basis(x, y);
    if (H.empty()) return 0;
    NuResolution r = nu_resolution(y, NuSide::Epic);
    detail::HomCoords hc = detail::hom_coords(x, y);
    std::vector<KMatrix> vs;
    for (auto& h : fac_hom_basis(x, r.middle)) vs.push_back(detail::fac_vec(hc, compose(r.map, h), x.field));
    return H.size() - detail::span_rank(vs, x.field);
}

inline bool fac_projective_test(const Factorization& x) { return fac_stable_hom_dim(x, x) == 0; }

// Adjunctions with the trivial factorizations:
//   NuLLeft:  Hom(nu^l(A), X)     = Hom(A, X^0),     g -> g^0
//   NuKLeft:  Hom(nu^{k-1}(A), X) = Hom(tau A, X^k), g -> g^k   (1 <= k <= l)
//   NuKRight: Hom(X, nu^k(B))     = Hom(X^k, B),     g -> g^k   (0 <= k <= l)
enum class Adjunction { NuLLeft, NuKLeft, NuKRight };

inline GradedMatrix adjunction_forward(Adjunction which, int k, const FacMap& g) {
    return g.comps.at(which == Adjunction::NuLLeft ? 0 : k);
}

inline FacMap adjunction_backward(Adjunction which, int k, const Factorization& x, const GradedMatrix& h) {
    int l = x.l, d = x.d;
    FacMap g;
    switch (which) {
        case Adjunction::NuLLeft:
            require(h.tgt == x.degs[0], ErrorKind::DimensionMismatch, "adjunction: target is not X^0");
            for (int j = 0; j <= l; ++j) g.comps.push_back(mat_mul(x.composite(0, j), h));
            break;
        case Adjunction::NuKLeft: {
            require(k >= 1 && k <= l, ErrorKind::Range, "adjunction: k must lie in 1..l");
            require(h.tgt == x.degs[k], ErrorKind::DimensionMismatch, "adjunction: target is not X^k");
            GradedMatrix g0 = mat_mul(mat_mul(x.closing, x.composite(k, l)), h).shifted(-d);
            for (int j = 0; j <= l; ++j) {
                if (j < k) g.comps.push_back(mat_mul(x.composite(0, j), g0));
                else g.comps.push_back(mat_mul(x.composite(k, j), h));
            }
            break;
        }
        case Adjunction::NuKRight: {
            require(k >= 0 && k <= l, ErrorKind::Range, "adjunction: k must lie in 0..l");
            require(h.src == x.degs[k], ErrorKind::DimensionMismatch, "adjunction: source is not X^k");
            for (int j = 0; j <= l; ++j) {
                if (j <= k) g.comps.push_back(mat_mul(h, x.composite(j, k)));
                else
                    g.comps.push_back(
                        mat_mul(mat_mul(mat_mul(h, x.composite(0, k)).shifted(d), x.closing), x.composite(j, l)));
            }
            break;
        }
    }
    return g;
}

inline bool fac_iso_test(const Factorization& x, const Factorization& y, IsoSearch opt = {}) {
    if (x.l != y.l || x.d != y.d || x.m() != y.m()) return false;
    for (int k = 0; k <= x.l; ++k) {
        auto a = x.degs[k], b = y.degs[k];
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b) return false;
    }
    if (x.m() == 0) return true;
    auto H = fac_hom_basis(x, y);
    if (H.empty()) return false;
    std::mt19937_64 rng(opt.seed);
    for (int a = 0; a < opt.attempts; ++a) {
        FacMap g = combine(H, detail::random_coeffs(x.field, H.size(), rng, a), x, y);
        bool ok = true;
        for (auto& c : g.comps) ok = ok && invertible(c.constant_part());
        if (ok) return true;
    }
    return false;
}

// Locality of End(X) on the generator spaces X^k / x X^k (graded Nakayama).
inline bool fac_is_indecomposable(const Factorization& x, IsoSearch opt = {}) {
    if (x.m() == 0) return false;
    auto E = fac_hom_basis(x, x);
    std::mt19937_64 rng(opt.seed);
    std::size_t n = x.m() * (x.l + 1);
    for (int a = 0; a < opt.attempts; ++a) {
        FacMap g = combine(E, detail::random_coeffs(x.field, E.size(), rng, a + 1), x, x);
        KMatrix T(x.field, n, n);
        for (int k = 0; k <= x.l; ++k) T.set_block(k * x.m(), k * x.m(), g.comps[k].constant_part());
        if (!invertible(T) && !detail::nilpotent(T)) return false;
    }
    return true;
}

// Uniform translation bringing the smallest label of X^0 to 0.
inline int normalizing_shift(const Factorization& x) {
    if (x.m() == 0) return 0;
    return -*std::min_element(x.degs[0].begin(), x.degs[0].end());
}

inline Factorization shift_labels(const Factorization& x, int delta) {
    Factorization y = x;
    for (auto& v : y.degs) v = detail::plus(v, delta);
    for (auto& a : y.maps) a = a.shifted(delta);
    y.closing = y.closing.shifted(delta);
    return y;
}

}  // namespace facto
