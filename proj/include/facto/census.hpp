// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "facto/functors.hpp"

namespace facto {

struct CensusBounds {
    int m = 1;       // rank of the factorizations
    int dim = 3;     // k-dimension of the top chain object
    int window = 2;  // spread of generator degrees
};

namespace detail {

inline std::vector<Scalar> field_elements(Field f) {
    require(!f.is_rational(), ErrorKind::Range, "enumeration needs a finite field");
    std::vector<Scalar> v;
    for (std::uint32_t a = 0; a < f.characteristic(); ++a) v.emplace_back(f, long(a));
    return v;
}

// Every subspace of k^n, as column bases in reduced echelon form.
inline std::vector<KMatrix> all_subspaces(Field f, std::size_t n) {
    auto els = field_elements(f);
    std::vector<KMatrix> out;
    for (std::size_t r = 0; r <= n; ++r) {
        std::vector<std::size_t> piv(r);
        std::function<void(std::size_t, std::size_t)> choose = [&](std::size_t i, std::size_t from) {
            if (i == r) {
                // free slots: (row j, basis vector c) with j > piv[c] and j not a pivot
                std::vector<std::pair<std::size_t, std::size_t>> slots;
                for (std::size_t c = 0; c < r; ++c)
                    for (std::size_t j = piv[c] + 1; j < n; ++j)
                        if (std::find(piv.begin(), piv.end(), j) == piv.end()) slots.emplace_back(j, c);
                std::vector<std::size_t> idx(slots.size(), 0);
                while (true) {
                    KMatrix b(f, n, r);
                    for (std::size_t c = 0; c < r; ++c) b(piv[c], c) = Scalar::one(f);
                    for (std::size_t s = 0; s < slots.size(); ++s) b(slots[s].first, slots[s].second) = els[idx[s]];
                    out.push_back(b);
                    std::size_t s = 0;
                    while (s < idx.size() && ++idx[s] == els.size()) idx[s++] = 0;
                    if (s == idx.size()) break;
                }
                return;
            }
            for (std::size_t p = from; p < n; ++p) {
                piv[i] = p;
                choose(i + 1, p + 1);
            }
        };
        choose(0, 0);
    }
    return out;
}

// Graded x-stable subspaces of a realized module.
inline std::vector<KMatrix> graded_submodules(const Realization& v) {
    Field f = v.x.field();
    std::map<int, std::vector<std::size_t>> pieces;
    for (std::size_t i = 0; i < v.dim(); ++i) pieces[v.deg[i]].push_back(i);
    std::vector<std::vector<KMatrix>> choices;
    std::vector<std::vector<std::size_t>> where;
    for (auto& [deg, idx] : pieces) {
        choices.push_back(all_subspaces(f, idx.size()));
        where.push_back(idx);
    }
    std::vector<KMatrix> out;
    std::vector<std::size_t> pick(choices.size(), 0);
    while (true) {
        std::size_t cols = 0;
        for (std::size_t p = 0; p < choices.size(); ++p) cols += choices[p][pick[p]].cols();
        KMatrix s(f, v.dim(), cols);
        std::size_t c0 = 0;
        for (std::size_t p = 0; p < choices.size(); ++p) {
            const KMatrix& b = choices[p][pick[p]];
            for (std::size_t c = 0; c < b.cols(); ++c)
                for (std::size_t i = 0; i < where[p].size(); ++i) s(where[p][i], c0 + c) = b(i, c);
            c0 += b.cols();
        }
        if (rank(KMatrix::hstack(s, v.x * s)) == cols) out.push_back(s);
        std::size_t p = 0;
        while (p < pick.size() && ++pick[p] == choices[p].size()) pick[p++] = 0;
        if (p == pick.size()) break;
    }
    return out;
}

inline bool contains(const KMatrix& big, const KMatrix& small) {
    return rank(KMatrix::hstack(big, small)) == big.cols();
}

// Zero and all normal-form modules with dim <= max_dim and generators in degrees 0..window, smallest at 0.
inline std::vector<RModule> all_modules(int d, int max_dim, int window) {
    std::vector<Summand> kinds;
    for (int e = 1; e <= d; ++e)
        for (int s = 0; s <= window; ++s) kinds.push_back({e, s});
    std::vector<RModule> out{RModule::zero(d)};
    std::vector<Summand> cur;
    std::function<void(std::size_t, int)> go = [&](std::size_t from, int dim) {
        if (!cur.empty()) {
            int mn = cur[0].s;
            for (auto& t : cur) mn = std::min(mn, t.s);
            if (mn == 0) out.emplace_back(d, cur);
        }
        for (std::size_t i = from; i < kinds.size(); ++i)
            if (dim + kinds[i].e <= max_dim) {
                cur.push_back(kinds[i]);
                go(i, dim + kinds[i].e);
                cur.pop_back();
            }
    };
    go(0, 0);
    return out;
}

inline int label_spread(const std::vector<int>& v) {
    if (v.empty()) return 0;
    return *std::max_element(v.begin(), v.end()) - *std::min_element(v.begin(), v.end());
}

inline int top_spread(const MonoChain& u) {
    std::vector<int> s;
    for (auto& t : u.top().summands()) s.push_back(t.s);
    return label_spread(s);
}

// Translates so that the smallest generator degree of the top object is 0.
inline MonoChain normalize_chain(const MonoChain& u) {
    if (u.top().is_zero()) return u;
    int mn = u.top().summands()[0].s;
    for (auto& t : u.top().summands()) mn = std::min(mn, t.s);
    return chain_shifted(u, -mn);
}

inline Factorization normalize_fac(const Factorization& x) { return shift_labels(x, normalizing_shift(x)); }

}  // namespace detail

// Factorizations of rank 1..m_max with the smallest label of X^0 at 0 and X^0 inside the window,
// up to isomorphism. A^0 is taken diagonal (graded Smith form); the scalars of A^1 are normalized
// along a spanning forest of its support by the diagonal automorphisms.
inline std::vector<Factorization> enumerate_factorizations(Field f, int d, int l, int m_max, int window,
                                                           IsoSearch opt = {}) {
    auto els = detail::field_elements(f);
    std::vector<Scalar> units(els.begin() + 1, els.end());
    std::vector<Factorization> all;
    using Key = std::tuple<std::vector<std::vector<int>>, std::size_t>;
    std::map<Key, std::vector<std::size_t>> buckets;

    auto add = [&](Factorization x) {
        Key key;
        for (auto v : x.degs) {
            std::sort(v.begin(), v.end());
            std::get<0>(key).push_back(v);
        }
        std::get<1>(key) = fac_hom_basis(x, x).size();
        auto& b = buckets[key];
        for (auto i : b)
            if (fac_iso_test(all[i], x, opt)) return;
        b.push_back(all.size());
        all.push_back(std::move(x));
    };

    for (int m = 1; m <= m_max; ++m) {
        // X^0 labels sorted with the first at 0; exponents of the diagonal A^0 with ties ordered.
        std::vector<int> x0(m, 0), a0(m, 0);
        std::function<void(int)> labels0 = [&](int i) {
            if (i == m) {
                std::function<void(int)> exps = [&](int j) {
                    if (j == m) {
                        std::vector<std::vector<int>> degs{x0};
                        std::vector<int> x1(m);
                        for (int t = 0; t < m; ++t) x1[t] = x0[t] + a0[t];
                        degs.push_back(x1);
                        PolyMatrix A0(f, m, m);
                        for (int t = 0; t < m; ++t) A0(t, t) = Polynomial::x_pow(f, a0[t]);
                        int lo = *std::min_element(x1.begin(), x1.end());
                        int hi = *std::max_element(x0.begin(), x0.end()) + d;
                        // Remaining label vectors X^2..X^l, each sorted, within [lo, hi].
                        std::vector<std::vector<int>> rest;
                        std::vector<int> cur(m);
                        std::function<void(int, int)> sorted = [&](int t, int from) {
                            if (t == m) {
                                rest.push_back(cur);
                                return;
                            }
                            for (int v = from; v <= hi; ++v) {
                                cur[t] = v;
                                sorted(t + 1, v);
                            }
                        };
                        sorted(0, lo);
                        std::vector<PolyMatrix> mats{A0};
                        std::function<void(int)> step = [&](int k) {
                            if (k == l) {
                                FacResult r = try_fac_validate(f, d, [&] {
                                    std::vector<GradedMatrix> g;
                                    for (int q = 0; q < l; ++q) g.emplace_back(mats[q], degs[q], degs[q + 1]);
                                    return g;
                                }(), degs);
                                if (r.fac) add(std::move(*r.fac));
                                return;
                            }
                            for (auto& next : rest) {
                                degs.push_back(next);
                                const auto& src = degs[k];
                                std::vector<std::pair<int, int>> slots;
                                for (int r = 0; r < m; ++r)
                                    for (int c = 0; c < m; ++c)
                                        if (next[r] >= src[c]) slots.emplace_back(r, c);
                                std::size_t ns = slots.size();
                                for (std::uint32_t mask = 0; mask < (1u << ns); ++mask) {
                                    // Support must leave every row and column nonzero.
                                    std::vector<int> rows(m, 0), cols(m, 0);
                                    for (std::size_t s = 0; s < ns; ++s)
                                        if (mask >> s & 1) rows[slots[s].first]++, cols[slots[s].second]++;
                                    if (std::count(rows.begin(), rows.end(), 0) || std::count(cols.begin(), cols.end(), 0)) continue;
                                    // Entries on a spanning forest of the support are 1 for k == 1.
                                    std::vector<int> comp(2 * m);
                                    for (int q = 0; q < 2 * m; ++q) comp[q] = q;
                                    std::function<int(int)> find = [&](int q) { return comp[q] == q ? q : comp[q] = find(comp[q]); };
                                    std::vector<std::size_t> freeslots, fixed;
                                    for (std::size_t s = 0; s < ns; ++s) {
                                        if (!(mask >> s & 1)) continue;
                                        int a = find(slots[s].first), b = find(m + slots[s].second);
                                        if (k == 1 && a != b) {
                                            comp[a] = b;
                                            fixed.push_back(s);
                                        } else freeslots.push_back(s);
                                    }
                                    std::vector<std::size_t> idx(freeslots.size(), 0);
                                    while (true) {
                                        PolyMatrix A(f, m, m);
                                        for (auto s : fixed)
                                            A(slots[s].first, slots[s].second) =
                                                Polynomial::x_pow(f, next[slots[s].first] - src[slots[s].second]);
                                        for (std::size_t q = 0; q < freeslots.size(); ++q) {
                                            auto s = freeslots[q];
                                            A(slots[s].first, slots[s].second) = Polynomial::monomial(
                                                units[idx[q]], next[slots[s].first] - src[slots[s].second]);
                                        }
                                        mats.push_back(A);
                                        step(k + 1);
                                        mats.pop_back();
                                        std::size_t q = 0;
                                        while (q < idx.size() && ++idx[q] == units.size()) idx[q++] = 0;
                                        if (q == idx.size()) break;
                                    }
                                }
                                degs.pop_back();
                            }
                        };
                        step(1);
                        return;
                    }
                    int from = (j > 0 && x0[j] == x0[j - 1]) ? a0[j - 1] : 0;
                    for (int e = from; e <= d; ++e) {
                        a0[j] = e;
                        exps(j + 1);
                    }
                };
                exps(0);
                return;
            }
            for (int v = x0[i - 1]; v <= window; ++v) {
                x0[i] = v;
                labels0(i + 1);
            }
        };
        x0[0] = 0;
        labels0(1);
    }
    return all;
}

// Chains U^1 >-> ... >-> U^l of graded submodules of a top object with dim <= dim_max, up to isomorphism.
inline std::vector<MonoChain> enumerate_chains(Field f, int d, int l, int dim_max, int window, IsoSearch opt = {}) {
    std::vector<MonoChain> all;
    std::map<std::vector<std::string>, std::vector<std::size_t>> buckets;
    auto add = [&](MonoChain u) {
        std::vector<std::string> key;
        for (auto& o : u.objects) key.push_back(o.to_string());
        auto& b = buckets[key];
        for (auto i : b)
            if (chain_iso_test(all[i], u, opt)) return;
        b.push_back(all.size());
        all.push_back(std::move(u));
    };
    for (const RModule& top : detail::all_modules(d, dim_max, window)) {
        Realization v = top.realization(f);
        auto subs = detail::graded_submodules(v);
        std::vector<std::size_t> pick(l > 1 ? l - 1 : 0);
        std::function<void(int, std::size_t)> nest = [&](int k, std::size_t from) {
            if (k == l - 1) {
                MonoChain u{f, d, {}, {}};
                std::vector<KMatrix> incl;
                for (int j = 0; j < l - 1; ++j) {
                    Submodule s = submodule(v, subs[pick[j]], d);
                    u.objects.push_back(s.module);
                    incl.push_back(s.incl);
                }
                u.objects.push_back(top);
                incl.push_back(KMatrix::identity(f, top.dim()));
                for (int j = 0; j + 1 < l; ++j) {
                    auto a = solve(incl[j + 1], incl[j]);
                    u.maps.push_back(ModuleMap::from_realization(f, u.objects[j], u.objects[j + 1], *a));
                }
                add(std::move(u));
                return;
            }
            for (std::size_t i = 0; i < subs.size(); ++i) {
                if (k > 0 && !detail::contains(subs[i], subs[pick[k - 1]])) continue;
                pick[k] = i;
                nest(k + 1, i);
            }
        };
        nest(0, 0);
    }
    return all;
}

struct CensusReport {
    Field field;
    int d = 1, l = 1;
    CensusBounds bounds;
    std::vector<Factorization> fac_classes;  // indecomposable, nonprojective
    std::vector<MonoChain> chain_classes;    // indecomposable, nonprojective
    std::vector<std::pair<std::size_t, std::size_t>> matching;  // (fac, chain)
    std::vector<std::size_t> fac_out_of_window, chain_out_of_window;
    std::vector<std::vector<std::size_t>> fac_hom, chain_hom;  // stable hom dims over matched pairs
    std::vector<std::string> failures;

    bool ok() const { return failures.empty(); }
};

inline CensusReport class_census(Field f, int d, int l, CensusBounds b, IsoSearch opt = {}) {
    require(!f.is_rational(), ErrorKind::Range, "census needs a prime field");
    require(d >= 1 && l >= 1 && b.m >= 0 && b.dim >= 0 && b.window >= 0, ErrorKind::Range, "census bounds must be nonnegative");
    CensusReport rep{f, d, l, b, {}, {}, {}, {}, {}, {}, {}, {}};
    for (auto& x : enumerate_factorizations(f, d, l, b.m, b.window, opt))
        if (fac_stable_hom_dim(x, x) > 0 && fac_is_indecomposable(x, opt)) rep.fac_classes.push_back(x);
    for (auto& u : enumerate_chains(f, d, l, b.dim, b.window, opt))
        if (chain_stable_hom_dim(u, u) > 0 && chain_is_indecomposable(u, opt)) rep.chain_classes.push_back(u);

    std::vector<int> hit(rep.chain_classes.size(), -1);
    for (std::size_t i = 0; i < rep.fac_classes.size(); ++i) {
        MonoChain c = detail::normalize_chain(cok(rep.fac_classes[i]));
        std::optional<std::size_t> found;
        for (std::size_t j = 0; j < rep.chain_classes.size() && !found; ++j)
            if (rep.chain_classes[j].objects == c.objects && chain_iso_test(rep.chain_classes[j], c, opt)) found = j;
        if (!found) {
            if (int(c.top().dim()) > b.dim || detail::top_spread(c) > b.window) rep.fac_out_of_window.push_back(i);
            else rep.failures.push_back("factorization class " + std::to_string(i) + " has no matching chain class");
            continue;
        }
        if (hit[*found] >= 0)
            rep.failures.push_back("factorization classes " + std::to_string(hit[*found]) + " and " + std::to_string(i) +
                                   " have isomorphic cokernels");
        hit[*found] = int(i);
        rep.matching.emplace_back(i, *found);
    }
    for (std::size_t j = 0; j < rep.chain_classes.size(); ++j) {
        if (hit[j] >= 0) continue;
        Factorization x = detail::normalize_fac(reconstruct(rep.chain_classes[j]));
        if (int(x.m()) > b.m || detail::label_spread(x.degs[0]) > b.window) rep.chain_out_of_window.push_back(j);
        else rep.failures.push_back("chain class " + std::to_string(j) + " is not the cokernel of any factorization class");
    }
    std::size_t n = rep.matching.size();
    rep.fac_hom.assign(n, std::vector<std::size_t>(n));
    rep.chain_hom.assign(n, std::vector<std::size_t>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t c = 0; c < n; ++c) {
            const Factorization &x = rep.fac_classes[rep.matching[a].first], &y = rep.fac_classes[rep.matching[c].first];
            rep.fac_hom[a][c] = fac_stable_hom_dim(x, y);
            rep.chain_hom[a][c] = chain_stable_hom_dim(cok(x), cok(y));
            if (rep.fac_hom[a][c] != rep.chain_hom[a][c])
                rep.failures.push_back("stable hom dims differ for pair (" + std::to_string(a) + "," + std::to_string(c) + ")");
        }
    return rep;
}

struct HomCompare {
    std::size_t lhs = 0, rhs = 0;
    bool equal = false;
};

namespace detail {
inline std::size_t span_dim(const std::vector<FacMap>& maps, const Factorization& x, const Factorization& y) {
    HomCoords hc = hom_coords(x, y);
    std::vector<KMatrix> vs;
    for (auto& g : maps) vs.push_back(fac_vec(hc, g, x.field));
    return span_rank(vs, x.field);
}
}  // namespace detail

// Hom modulo maps through nu^l(E), against chain homs of the cokernels.
inline HomCompare hom_dim_compare(const Factorization& x, const Factorization& y) {
    JQSequence s = jq_sequence(y);
    std::vector<FacMap> through;
    for (auto& a : fac_hom_basis(x, s.source)) through.push_back(compose(s.j, a));
    HomCompare r;
    r.lhs = fac_hom_basis(x, y).size() - detail::span_dim(through, x, y);
    r.rhs = chain_hom_basis(cok(x), cok(y)).size();
    r.equal = r.lhs == r.rhs;
    return r;
}

// Dimensions of the maps X -> Y through the counit nu^l(Y^0) -> Y and of all composites through
// nu^l(Y^0 + X^l).
inline std::pair<std::size_t, std::size_t> quotient_ideal_dims(const Factorization& x, const Factorization& y) {
    JQSequence s = jq_sequence(y);
    std::vector<FacMap> counit;
    for (auto& a : fac_hom_basis(x, s.source)) counit.push_back(compose(s.j, a));
    Factorization big = nu(x.field, x.d, x.l, detail::concat(y.degs[0], x.degs[x.l]), x.l);
    big.twist = x.twist;
    big.phase = x.phase;
    std::vector<FacMap> prods;
    auto in = fac_hom_basis(x, big), out = fac_hom_basis(big, y);
    for (auto& a : in)
        for (auto& b : out) prods.push_back(compose(b, a));
    return {detail::span_dim(counit, x, y), detail::span_dim(prods, x, y)};
}

inline std::string census_table(const CensusReport& r) {
    std::ostringstream o;
    o << "census field=" << r.field.name() << " d=" << r.d << " l=" << r.l << " m<=" << r.bounds.m
      << " dim<=" << r.bounds.dim << " window=" << r.bounds.window << "\n";
    o << "factorization classes: " << r.fac_classes.size() << "\n";
    o << "chain classes: " << r.chain_classes.size() << "\n";
    o << "matched: " << r.matching.size() << "\n";
    o << "out of window: " << r.fac_out_of_window.size() << " factorization, " << r.chain_out_of_window.size()
      << " chain\n";
    for (std::size_t a = 0; a < r.matching.size(); ++a) {
        const Factorization& x = r.fac_classes[r.matching[a].first];
        const MonoChain& u = r.chain_classes[r.matching[a].second];
        o << "  [" << a << "] X^0=";
        for (auto v : x.degs[0]) o << v << ' ';
        o << "m=" << x.m() << "  <->  ";
        for (std::size_t k = 0; k < u.objects.size(); ++k) o << (k ? " >-> " : "") << u.objects[k].to_string();
        o << "\n";
    }
    o << "stable hom table:\n";
    for (std::size_t a = 0; a < r.fac_hom.size(); ++a) {
        o << " ";
        for (std::size_t c = 0; c < r.fac_hom[a].size(); ++c) o << ' ' << r.fac_hom[a][c] << '/' << r.chain_hom[a][c];
        o << "\n";
    }
    o << (r.ok() ? "status: ok" : "status: FAILED") << "\n";
    for (auto& s : r.failures) o << "  " << s << "\n";
    return o.str();
}

}  // namespace facto
