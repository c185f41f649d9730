// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "facto/kmatrix.hpp"
#include "facto/polymat.hpp"

namespace facto {

// Graded k-vector space with a degree-raising nilpotent operator (the action of x).
struct Realization {
    std::vector<int> deg;
    KMatrix x;
    std::size_t dim() const { return deg.size(); }
};

// Summand (R/(x^e))(-s): generator in degree s, basis x^j g in degree s + j.
struct Summand {
    int e = 1;
    int s = 0;
    friend auto operator<=>(const Summand&, const Summand&) = default;
};

class RModule {
public:
    RModule() = default;
    RModule(int d, std::vector<Summand> summands) : d_(d), sum_(std::move(summands)) {
        require(d >= 1, ErrorKind::Range, "d must be positive");
        for (const auto& t : sum_)
            require(t.e >= 1 && t.e <= d, ErrorKind::Range,
                    "summand length " + std::to_string(t.e) + " outside 1.." + std::to_string(d));
        std::sort(sum_.begin(), sum_.end());
    }
    static RModule zero(int d) { return RModule(d, {}); }

    int d() const { return d_; }
    const std::vector<Summand>& summands() const { return sum_; }
    std::size_t size() const { return sum_.size(); }
    bool is_zero() const { return sum_.empty(); }
    bool is_free() const {
        return std::all_of(sum_.begin(), sum_.end(), [&](const Summand& t) { return t.e == d_; });
    }
    std::size_t dim() const {
        std::size_t n = 0;
        for (const auto& t : sum_) n += t.e;
        return n;
    }
    std::size_t offset(std::size_t t) const {
        std::size_t n = 0;
        for (std::size_t i = 0; i < t; ++i) n += sum_[i].e;
        return n;
    }
    std::vector<std::size_t> offsets() const {
        std::vector<std::size_t> o(sum_.size());
        std::size_t n = 0;
        for (std::size_t i = 0; i < sum_.size(); ++i) {
            o[i] = n;
            n += sum_[i].e;
        }
        return o;
    }
    std::vector<int> basis_degrees() const {
        std::vector<int> v;
        for (const auto& t : sum_)
            for (int j = 0; j < t.e; ++j) v.push_back(t.s + j);
        return v;
    }
    Realization realization(Field f) const {
        Realization r{basis_degrees(), KMatrix(f, dim(), dim())};
        std::size_t o = 0;
        for (const auto& t : sum_) {
            for (int j = 0; j + 1 < t.e; ++j) r.x(o + j + 1, o + j) = Scalar::one(f);
            o += t.e;
        }
        return r;
    }
    RModule shifted(int delta) const {
        RModule m = *this;
        for (auto& t : m.sum_) t.s += delta;
        return m;
    }

    friend bool operator==(const RModule& a, const RModule& b) { return a.d_ == b.d_ && a.sum_ == b.sum_; }
    friend bool operator!=(const RModule& a, const RModule& b) { return !(a == b); }

    std::string to_string() const {
        std::string s = "{";
        for (std::size_t i = 0; i < sum_.size(); ++i) {
            if (i) s += ",";
            s += "(" + std::to_string(sum_[i].e) + "," + std::to_string(sum_[i].s) + ")";
        }
        return s + "}";
    }

private:
    int d_ = 1;
    std::vector<Summand> sum_;
};

inline bool module_iso(const RModule& a, const RModule& b) { return a == b; }

inline RModule operator+(const RModule& a, const RModule& b) {
    require(a.d() == b.d(), ErrorKind::DimensionMismatch, "modules over different rings");
    auto s = a.summands();
    s.insert(s.end(), b.summands().begin(), b.summands().end());
    return RModule(a.d(), s);
}

namespace detail {

inline KMatrix vstack_cols(Field f, std::size_t n, const std::vector<KMatrix>& cols) {
    KMatrix m(f, n, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) m.set_block(0, j, cols[j]);
    return m;
}

// Degree of a homogeneous vector, nullopt for zero; throws on mixed degrees.
inline std::optional<int> vector_degree(const KMatrix& v, std::size_t col, const std::vector<int>& deg) {
    std::optional<int> d;
    for (std::size_t i = 0; i < v.rows(); ++i) {
        if (v(i, col).is_zero()) continue;
        if (d && *d != deg[i]) fail(ErrorKind::Internal, "vector is not homogeneous");
        d = deg[i];
    }
    return d;
}

// Homogeneous basis of the span of homogeneous columns, grouped by degree.
inline std::map<int, std::vector<KMatrix>> homogeneous_basis(const KMatrix& vecs, const std::vector<int>& deg) {
    std::map<int, std::vector<std::size_t>> by_deg;
    for (std::size_t c = 0; c < vecs.cols(); ++c)
        if (auto d = vector_degree(vecs, c, deg)) by_deg[*d].push_back(c);
    std::map<int, std::vector<KMatrix>> out;
    for (auto& [d, idx] : by_deg) {
        KMatrix sub = vecs.columns(idx);
        for (auto p : independent_columns(sub)) out[d].push_back(sub.column(p));
    }
    return out;
}

// Nullspace of a (rows x n) restricted to each degree block of the domain.
inline std::map<int, std::vector<KMatrix>> homogeneous_nullspace(const KMatrix& a, const std::vector<int>& deg) {
    std::map<int, std::vector<std::size_t>> by_deg;
    for (std::size_t i = 0; i < deg.size(); ++i) by_deg[deg[i]].push_back(i);
    std::map<int, std::vector<KMatrix>> out;
    for (auto& [d, idx] : by_deg) {
        KMatrix n = nullspace(a.columns(idx));
        for (std::size_t k = 0; k < n.cols(); ++k) {
            KMatrix v(a.field(), deg.size(), 1);
            for (std::size_t r = 0; r < idx.size(); ++r) v(idx[r], 0) = n(r, k);
            out[d].push_back(std::move(v));
        }
    }
    return out;
}

inline std::vector<KMatrix> flatten(const std::map<int, std::vector<KMatrix>>& m) {
    std::vector<KMatrix> v;
    for (auto& [d, vs] : m) v.insert(v.end(), vs.begin(), vs.end());
    return v;
}

inline KMatrix power(const KMatrix& x, int e) {
    KMatrix r = KMatrix::identity(x.field(), x.rows());
    for (int i = 0; i < e; ++i) r = x * r;
    return r;
}

}  // namespace detail

struct Decomposition {
    RModule module;
    KMatrix basis;  // column (t,j) = x^j g_t in the coordinates of the realization
};

// Normal form of a realization with x^d = 0: graded Jordan chains, generators of
// length-j chains chosen degree-wise as a complement of ker x^(j-1) + x ker x^(j+1) in ker x^j.
inline Decomposition decompose(const Realization& v, int d) {
    Field f = v.x.field();
    std::size_t n = v.dim();
    require(detail::power(v.x, d).is_zero(), ErrorKind::Internal, "x^d does not act as zero");
    std::vector<std::map<int, std::vector<KMatrix>>> K(d + 2);
    for (int j = 1; j <= d; ++j) K[j] = detail::homogeneous_nullspace(detail::power(v.x, j), v.deg);
    K[d + 1] = K[d];
    struct Gen {
        Summand s;
        KMatrix g;
    };
    std::vector<Gen> gens;
    for (int j = d; j >= 1; --j) {
        for (auto& [delta, kj] : K[j]) {
            std::vector<KMatrix> span;
            if (auto it = K[j - 1].find(delta); it != K[j - 1].end()) span = it->second;
            if (auto it = K[j + 1].find(delta - 1); it != K[j + 1].end())
                for (auto& w : it->second) span.push_back(v.x * w);
            std::size_t r = span.empty() ? 0 : rank(detail::vstack_cols(f, n, span));
            for (auto& cand : kj) {
                span.push_back(cand);
                std::size_t r2 = rank(detail::vstack_cols(f, n, span));
                if (r2 > r) {
                    r = r2;
                    gens.push_back({{j, delta}, cand});
                } else {
                    span.pop_back();
                }
            }
        }
    }
    std::stable_sort(gens.begin(), gens.end(), [](const Gen& a, const Gen& b) { return a.s < b.s; });
    KMatrix basis(f, n, n);
    std::vector<Summand> sums;
    std::size_t col = 0;
    for (auto& g : gens) {
        KMatrix w = g.g;
        for (int j = 0; j < g.s.e; ++j) {
            require(col < n, ErrorKind::Internal, "decomposition overflow");
            basis.set_block(0, col++, w);
            w = v.x * w;
        }
        sums.push_back(g.s);
    }
    require(col == n && invertible(basis), ErrorKind::Internal, "decomposition is not a basis");
    return {RModule(d, std::move(sums)), std::move(basis)};
}

struct Quotient {
    RModule module;
    KMatrix proj;     // dim Q x dim V, x-equivariant
    KMatrix section;  // dim V x dim Q, graded k-linear section
};

// V / S for an x-stable span S of homogeneous columns.
inline Quotient quotient(const Realization& v, const KMatrix& sub, int d) {
    Field f = v.x.field();
    std::size_t n = v.dim();
    auto sb = detail::homogeneous_basis(sub, v.deg);
    std::vector<KMatrix> all = detail::flatten(sb);
    std::size_t ns = all.size();
    std::vector<std::size_t> comp;
    for (std::size_t i = 0; i < n; ++i) {
        KMatrix e(f, n, 1);
        e(i, 0) = Scalar::one(f);
        all.push_back(e);
        std::size_t r = rank(detail::vstack_cols(f, n, all));
        if (r == ns + comp.size() + 1) comp.push_back(i);
        else all.pop_back();
    }
    KMatrix B = detail::vstack_cols(f, n, all);
    KMatrix Binv = *inverse(B);
    std::vector<std::size_t> qrows;
    for (std::size_t k = 0; k < comp.size(); ++k) qrows.push_back(ns + k);
    KMatrix Q = Binv.rows_of(qrows);
    KMatrix C0 = B.block(0, ns, n, comp.size());
    require((Q * (v.x * B.block(0, 0, n, ns))).is_zero(), ErrorKind::Internal, "subspace is not x-stable");
    Realization q;
    for (auto i : comp) q.deg.push_back(v.deg[i]);
    q.x = Q * v.x * C0;
    Decomposition dec = decompose(q, d);
    KMatrix Pinv = *inverse(dec.basis);
    return {dec.module, Pinv * Q, C0 * dec.basis};
}

struct Submodule {
    RModule module;
    KMatrix incl;  // dim V x dim sub, x-equivariant
};

inline Submodule submodule(const Realization& v, const KMatrix& sub, int d) {
    Field f = v.x.field();
    std::vector<KMatrix> all = detail::flatten(detail::homogeneous_basis(sub, v.deg));
    KMatrix Sb = detail::vstack_cols(f, v.dim(), all);
    Realization s;
    for (std::size_t c = 0; c < Sb.cols(); ++c) s.deg.push_back(*detail::vector_degree(Sb, c, v.deg));
    auto xs = solve(Sb, v.x * Sb);
    require(xs.has_value(), ErrorKind::Internal, "subspace is not x-stable");
    s.x = *xs;
    Decomposition dec = decompose(s, d);
    return {dec.module, Sb * dec.basis};
}

// Degree-0 x-equivariant map. blocks(u,t) is the coefficient c in g_t -> c x^(s_t - s_u) g_u.
class ModuleMap {
public:
    ModuleMap() = default;
    ModuleMap(Field f, RModule src, RModule tgt, KMatrix blocks)
        : field_(f), src_(std::move(src)), tgt_(std::move(tgt)), blocks_(std::move(blocks)) {
        require(src_.d() == tgt_.d(), ErrorKind::InvalidModuleMap, "source and target over different rings");
        require(blocks_.rows() == tgt_.size() && blocks_.cols() == src_.size(), ErrorKind::InvalidModuleMap,
                "block matrix shape does not match summand counts");
    }
    static ModuleMap zero(Field f, const RModule& src, const RModule& tgt) {
        return ModuleMap(f, src, tgt, KMatrix(f, tgt.size(), src.size()));
    }
    static ModuleMap identity(Field f, const RModule& m) {
        return ModuleMap(f, m, m, KMatrix::identity(f, m.size()));
    }

    Field field() const { return field_; }
    const RModule& src() const { return src_; }
    const RModule& tgt() const { return tgt_; }
    const KMatrix& blocks() const { return blocks_; }

    // Matrix of the map on realizations (dim tgt x dim src).
    KMatrix realize() const {
        KMatrix F(field_, tgt_.dim(), src_.dim());
        auto os = src_.offsets(), ot = tgt_.offsets();
        for (std::size_t u = 0; u < tgt_.size(); ++u)
            for (std::size_t t = 0; t < src_.size(); ++t) {
                const Scalar& c = blocks_(u, t);
                if (c.is_zero()) continue;
                int m = src_.summands()[t].s - tgt_.summands()[u].s;
                for (int j = 0; j < src_.summands()[t].e; ++j)
                    if (m + j >= 0 && m + j < tgt_.summands()[u].e) F(ot[u] + m + j, os[t] + j) += c;
            }
        return F;
    }

    // Reason the blocks do not define a module map, if any.
    std::optional<std::string> violation() const {
        for (std::size_t u = 0; u < tgt_.size(); ++u)
            for (std::size_t t = 0; t < src_.size(); ++t) {
                if (blocks_(u, t).is_zero()) continue;
                int m = src_.summands()[t].s - tgt_.summands()[u].s;
                if (m < 0 || m >= tgt_.summands()[u].e)
                    return "block (" + std::to_string(u) + "," + std::to_string(t) + ") has no degree-0 image";
            }
        KMatrix F = realize();
        if (F * src_.realization(field_).x != tgt_.realization(field_).x * F) return "map does not commute with x";
        return std::nullopt;
    }

    static ModuleMap from_realization(Field f, const RModule& src, const RModule& tgt, const KMatrix& F) {
        require(F.rows() == tgt.dim() && F.cols() == src.dim(), ErrorKind::DimensionMismatch,
                "realized map has the wrong shape");
        KMatrix b(f, tgt.size(), src.size());
        auto os = src.offsets(), ot = tgt.offsets();
        for (std::size_t u = 0; u < tgt.size(); ++u)
            for (std::size_t t = 0; t < src.size(); ++t) {
                int m = src.summands()[t].s - tgt.summands()[u].s;
                if (m >= 0 && m < tgt.summands()[u].e) b(u, t) = F(ot[u] + m, os[t]);
            }
        ModuleMap g(f, src, tgt, b);
        require(g.realize() == F, ErrorKind::InvalidModuleMap, "linear map is not a degree-0 module map");
        require(F * src.realization(f).x == tgt.realization(f).x * F, ErrorKind::InvalidModuleMap,
                "linear map does not commute with x");
        return g;
    }

    // Flattened block coefficients, for linear algebra on hom spaces.
    KMatrix vec() const {
        KMatrix v(field_, blocks_.rows() * blocks_.cols(), 1);
        for (std::size_t u = 0; u < blocks_.rows(); ++u)
            for (std::size_t t = 0; t < blocks_.cols(); ++t) v(u * blocks_.cols() + t, 0) = blocks_(u, t);
        return v;
    }

    friend bool operator==(const ModuleMap& a, const ModuleMap& b) {
        return a.src_ == b.src_ && a.tgt_ == b.tgt_ && a.realize() == b.realize();
    }
    friend bool operator!=(const ModuleMap& a, const ModuleMap& b) { return !(a == b); }

private:
    Field field_;
    RModule src_, tgt_;
    KMatrix blocks_;
};

// g after f
inline ModuleMap compose(const ModuleMap& g, const ModuleMap& f) {
    require(g.src() == f.tgt(), ErrorKind::DimensionMismatch, "compose: modules do not chain");
    return ModuleMap::from_realization(f.field(), f.src(), g.tgt(), g.realize() * f.realize());
}
inline ModuleMap operator+(const ModuleMap& a, const ModuleMap& b) {
    require(a.src() == b.src() && a.tgt() == b.tgt(), ErrorKind::DimensionMismatch, "sum of maps with different ends");
    return ModuleMap::from_realization(a.field(), a.src(), a.tgt(), a.realize() + b.realize());
}
inline ModuleMap operator*(const Scalar& s, const ModuleMap& a) {
    return ModuleMap(a.field(), a.src(), a.tgt(), s * a.blocks());
}

inline ModuleMap combine(const std::vector<ModuleMap>& basis, const std::vector<Scalar>& c, Field f,
                         const RModule& src, const RModule& tgt) {
    KMatrix F(f, tgt.dim(), src.dim());
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (!c[i].is_zero()) F = F + c[i] * basis[i].realize();
    return ModuleMap::from_realization(f, src, tgt, F);
}

// Basis of degree-0 linear maps F with F x_V = x_W F, returned as realized matrices.
inline std::vector<KMatrix> equivariant_maps(const Realization& v, const Realization& w) {
    Field f = v.x.field();
    std::vector<std::pair<std::size_t, std::size_t>> unk;
    for (std::size_t a = 0; a < w.dim(); ++a)
        for (std::size_t b = 0; b < v.dim(); ++b)
            if (w.deg[a] == v.deg[b]) unk.emplace_back(a, b);
    std::size_t nw = w.dim(), nv = v.dim();
    KMatrix sys(f, nw * nv, unk.size());
    for (std::size_t k = 0; k < unk.size(); ++k) {
        auto [a, b] = unk[k];
        for (std::size_t c = 0; c < nv; ++c)
            if (!v.x(b, c).is_zero()) sys(a * nv + c, k) += v.x(b, c);
        for (std::size_t r = 0; r < nw; ++r)
            if (!w.x(r, a).is_zero()) sys(r * nv + b, k) -= w.x(r, a);
    }
    KMatrix n = nullspace(sys);
    std::vector<KMatrix> out;
    for (std::size_t j = 0; j < n.cols(); ++j) {
        KMatrix F(f, nw, nv);
        for (std::size_t k = 0; k < unk.size(); ++k) F(unk[k].first, unk[k].second) = n(k, j);
        out.push_back(std::move(F));
    }
    return out;
}

inline std::vector<ModuleMap> hom_basis(const RModule& m, const RModule& n, Field f) {
    require(m.d() == n.d(), ErrorKind::DimensionMismatch, "hom between modules over different rings");
    std::vector<ModuleMap> out;
    for (auto& F : equivariant_maps(m.realization(f), n.realization(f)))
        out.push_back(ModuleMap::from_realization(f, m, n, F));
    return out;
}

struct KerCokIm {
    RModule ker;
    ModuleMap ker_incl;
    RModule cok;
    ModuleMap cok_proj;
    RModule im;
    ModuleMap im_incl;
};

inline KerCokIm map_ker_cok_im(const ModuleMap& f) {
    Field k = f.field();
    int d = f.src().d();
    KMatrix F = f.realize();
    Realization vs = f.src().realization(k), vt = f.tgt().realization(k);
    auto kers = detail::flatten(detail::homogeneous_nullspace(F, vs.deg));
    Submodule ker = submodule(vs, detail::vstack_cols(k, vs.dim(), kers), d);
    Submodule im = submodule(vt, F, d);
    Quotient cok = quotient(vt, F, d);
    return {ker.module,
            ModuleMap::from_realization(k, ker.module, f.src(), ker.incl),
            cok.module,
            ModuleMap::from_realization(k, f.tgt(), cok.module, cok.proj),
            im.module,
            ModuleMap::from_realization(k, im.module, f.tgt(), im.incl)};
}

struct MonoEpi {
    bool mono, epi;
};

inline MonoEpi is_mono_epi(const ModuleMap& f) {
    std::size_t r = rank(f.realize());
    return {r == f.src().dim(), r == f.tgt().dim()};
}

struct Cover {
    RModule P;
    ModuleMap p;
};

inline Cover projective_cover(const RModule& m, Field f) {
    std::vector<Summand> ps;
    for (const auto& t : m.summands()) ps.push_back({m.d(), t.s});
    RModule P(m.d(), ps);
    // Both lists are ordered by generator degree among equal lengths; match greedily.
    KMatrix b(f, m.size(), P.size());
    std::vector<bool> used(P.size(), false);
    for (std::size_t t = 0; t < m.size(); ++t)
        for (std::size_t u = 0; u < P.size(); ++u)
            if (!used[u] && P.summands()[u].s == m.summands()[t].s) {
                used[u] = true;
                b(t, u) = Scalar::one(f);
                break;
            }
    return {P, ModuleMap(f, P, m, b)};
}

// Stable hom dimension: maps modulo those lifting through the projective cover of the target.
inline std::size_t stable_hom_dim(const RModule& m, const RModule& n, Field f) {
    auto H = hom_basis(m, n, f);
    if (H.empty()) return 0;
    Cover c = projective_cover(n, f);
    auto HP = hom_basis(m, c.P, f);
    if (HP.empty()) return H.size();
    std::vector<KMatrix> vs;
    for (auto& h : HP) vs.push_back(compose(c.p, h).vec());
    return H.size() - rank(detail::vstack_cols(f, vs[0].rows(), vs));
}

// g with p g = f, if any.
inline std::optional<ModuleMap> lift_along_epi(const ModuleMap& p, const ModuleMap& f) {
    require(p.tgt() == f.tgt(), ErrorKind::DimensionMismatch, "lift_along_epi: targets differ");
    Field k = f.field();
    auto H = hom_basis(f.src(), p.src(), k);
    if (H.empty()) {
        if (f.realize().is_zero()) return ModuleMap::zero(k, f.src(), p.src());
        return std::nullopt;
    }
    std::vector<KMatrix> vs;
    for (auto& h : H) vs.push_back(compose(p, h).vec());
    auto c = solve(detail::vstack_cols(k, vs[0].rows(), vs), f.vec());
    if (!c) return std::nullopt;
    std::vector<Scalar> coeffs;
    for (std::size_t i = 0; i < H.size(); ++i) coeffs.push_back((*c)(i, 0));
    return combine(H, coeffs, k, f.src(), p.src());
}

// Coordinates of a polynomial vector (rows = generators) in the truncation X / x^d X:
// index i*d + j holds the coefficient of x^j in row i.
inline KMatrix truncate_coords(const PolyMatrix& v, int d) {
    KMatrix k(v.field(), v.rows() * d, v.cols());
    for (std::size_t i = 0; i < v.rows(); ++i)
        for (std::size_t c = 0; c < v.cols(); ++c)
            for (int j = 0; j < d; ++j) k(i * d + j, c) = v(i, c).coeff(j);
    return k;
}

inline PolyMatrix lift_coords(const KMatrix& k, int d) {
    std::size_t m = k.rows() / d;
    PolyMatrix v(k.field(), m, k.cols());
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t c = 0; c < k.cols(); ++c) {
            std::vector<Scalar> cs;
            for (int j = 0; j < d; ++j) cs.push_back(k(i * d + j, c));
            v(i, c) = Polynomial(k.field(), cs);
        }
    return v;
}

// Realization of X / x^d X for X free with the given labels.
inline Realization truncated_free(Field f, const std::vector<int>& labels, int d) {
    std::size_t m = labels.size();
    Realization r{std::vector<int>(m * d), KMatrix(f, m * d, m * d)};
    for (std::size_t i = 0; i < m; ++i)
        for (int j = 0; j < d; ++j) {
            r.deg[i * d + j] = -labels[i] + j;
            if (j + 1 < d) r.x(i * d + j + 1, i * d + j) = Scalar::one(f);
        }
    return r;
}

// Cokernel of a map of graded free modules, seen through X / x^d X.
struct Presentation {
    RModule module;
    std::vector<int> labels;  // target labels of the presenting matrix
    KMatrix proj;             // dim U x (m*d), x-equivariant
    KMatrix section;          // (m*d) x dim U

    // Images in U of the columns of a polynomial matrix with rows indexed by the generators.
    KMatrix apply(const PolyMatrix& v) const { return proj * truncate_coords(v, module.d()); }
};

inline Presentation module_from_presentation(const GradedMatrix& a, int d) {
    Field f = a.field();
    require(!graded_check(a).has_value(), ErrorKind::InvalidFactorization, "presentation matrix is not graded");
    require(solve_right(a.mat, PolyMatrix::scalar_identity(Polynomial::x_pow(f, d), a.rows())).has_value(),
            ErrorKind::NotAnnihilated, "cokernel is not annihilated by x^" + std::to_string(d));
    Realization F = truncated_free(f, a.tgt, d);
    PolyMatrix gens(f, a.rows(), a.cols() * d);
    for (std::size_t c = 0; c < a.cols(); ++c)
        for (int j = 0; j < d; ++j)
            for (std::size_t i = 0; i < a.rows(); ++i) gens(i, c * d + j) = a.mat(i, c).shifted(j);
    Quotient q = quotient(F, truncate_coords(gens, d), d);
    return {q.module, a.tgt, q.proj, q.section};
}

struct BarCover {
    RModule Pbar;
    ModuleMap pbar;
    GradedMatrix omega;  // x^d on the graded free cover
};

// Free R-module P / x^d P for the graded free S-module P covering M, with the induced epic.
inline BarCover bar_p_epic(const RModule& m, Field f) {
    int d = m.d();
    std::vector<int> labels;
    for (const auto& t : m.summands()) labels.push_back(-t.s);
    std::vector<int> src = labels;
    for (auto& v : src) v -= d;
    GradedMatrix omega(PolyMatrix::scalar_identity(Polynomial::x_pow(f, d), labels.size()), src, labels);
    Presentation pres = module_from_presentation(omega, d);
    // S-cover: generator i goes to g_i. Its value on the truncation, composed with the section.
    KMatrix rho(f, m.dim(), labels.size() * d);
    KMatrix xm = m.realization(f).x;
    auto om = m.offsets();
    for (std::size_t i = 0; i < m.size(); ++i) {
        KMatrix g(f, m.dim(), 1);
        g(om[i], 0) = Scalar::one(f);
        for (int j = 0; j < d; ++j) {
            rho.set_block(0, i * d + j, g);
            g = xm * g;
        }
    }
    return {pres.module, ModuleMap::from_realization(f, pres.module, m, rho * pres.section), omega};
}

// Direct sum with canonical injections and projections (normal-form order is by (e,s)).
struct DirectSum {
    RModule sum;
    std::vector<ModuleMap> incl, proj;
};

inline DirectSum direct_sum(const std::vector<RModule>& parts, Field f, int d) {
    std::vector<std::tuple<Summand, std::size_t, std::size_t>> all;
    for (std::size_t c = 0; c < parts.size(); ++c)
        for (std::size_t t = 0; t < parts[c].size(); ++t) all.emplace_back(parts[c].summands()[t], c, t);
    std::stable_sort(all.begin(), all.end(),
                     [](const auto& a, const auto& b) { return std::get<0>(a) < std::get<0>(b); });
    std::vector<Summand> s;
    for (auto& a : all) s.push_back(std::get<0>(a));
    RModule sum(d, s);
    DirectSum ds{sum, {}, {}};
    for (std::size_t c = 0; c < parts.size(); ++c) {
        KMatrix bi(f, sum.size(), parts[c].size()), bp(f, parts[c].size(), sum.size());
        for (std::size_t pos = 0; pos < all.size(); ++pos)
            if (std::get<1>(all[pos]) == c) {
                bi(pos, std::get<2>(all[pos])) = Scalar::one(f);
                bp(std::get<2>(all[pos]), pos) = Scalar::one(f);
            }
        ds.incl.emplace_back(f, parts[c], sum, bi);
        ds.proj.emplace_back(f, sum, parts[c], bp);
    }
    return ds;
}

// Map between direct sums from a matrix of components (rows: target parts, cols: source parts).
inline ModuleMap block_map(const DirectSum& src, const DirectSum& tgt,
                           const std::vector<std::vector<std::optional<ModuleMap>>>& comp, Field f) {
    KMatrix F(f, tgt.sum.dim(), src.sum.dim());
    for (std::size_t i = 0; i < comp.size(); ++i)
        for (std::size_t j = 0; j < comp[i].size(); ++j)
            if (comp[i][j]) F = F + tgt.incl[i].realize() * comp[i][j]->realize() * src.proj[j].realize();
    return ModuleMap::from_realization(f, src.sum, tgt.sum, F);
}

}  // namespace facto
