#pragma once

// Formal structure of the connection at one pole: cells of the formal
// decomposition, the structural assumption, and irregularities of the module
// and of its endomorphisms.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "specrig/exact/localize.hpp"
#include "specrig/puiseux/puiseux.hpp"
#include "specrig/split/splitting.hpp"

namespace specrig {

struct HTLCell {
    /// Principal part of z*y: terms with negative exponent, lowest first.
    std::vector<PuiseuxTerm> q;
    long r = 1;
    long p = 0;
    /// z^0 coefficient of z*y, filled by the reduction route only.
    std::optional<AlgNum> residue;
    /// Index of the underlying cluster and its roots.
    std::size_t cluster = 0;
    std::vector<std::size_t> roots;

    Rat slope() const { return Rat(p, r); }
};

enum class LocalMode { MultiplicityFree, RegularSemisimple, Violation };

inline const char* to_string(LocalMode m) {
    switch (m) {
        case LocalMode::MultiplicityFree: return "multiplicity-free";
        case LocalMode::RegularSemisimple: return "regular-semisimple";
        default: return "violation";
    }
}

struct AssumptionReport {
    LocalMode mode = LocalMode::Violation;
    std::string reason;
    bool ok() const { return mode != LocalMode::Violation; }
};

struct LocalOptions {
    PuiseuxOptions puiseux;
    /// Truncation of the local matrix; 0 selects the default.
    long truncation = 0;
    bool allow_shear = true;
};

struct LocalModule {
    Point point;
    std::size_t n = 0;
    long nu = 0;
    std::vector<HTLCell> cells;
    YPoly<RatFn> charpoly;
    PuiseuxResult puiseux;
    MatRF local;
    AssumptionReport assumption;
    std::vector<std::string> warnings;
    /// Set when a resonance makes the horizontal-dimension count unreliable.
    bool unreliable = false;
    long truncation = 0;

    std::size_t m() const { return cells.size(); }
};

namespace detail {

inline std::vector<PuiseuxTerm> principal_part(const RootExpansion& y) {
    std::vector<PuiseuxTerm> q;
    for (const auto& t : y.terms)
        if (t.exponent < -1) q.push_back({t.exponent + 1, t.coeff});
    return q;
}

inline std::string terms_key(const std::vector<PuiseuxTerm>& q) {
    std::string s;
    for (const auto& t : q) s += to_short(t.exponent) + ":" + to_string(t.coeff.minpoly_q(), "x") + ";";
    return s;
}

}  // namespace detail

/// Per-root data read off the reduction route, matched to Puiseux roots.
struct ReductionData {
    long ramification = 1;
    std::vector<KSeries> eigenvalues;
    /// root_of[i] is the Puiseux root equal to eigenvalue i through exponent -1.
    std::vector<std::size_t> root_of;
    /// Residue per Puiseux root.
    std::vector<AlgNum> residue;
    /// Orbits of t -> zeta t on the eigenvalues, as sets of Puiseux roots.
    std::vector<std::vector<std::size_t>> orbits;
};

inline TruncSeriesMat local_trunc(const MatRF& G, long nu, long N) {
    TruncSeriesMat T;
    T.r = -nu;
    const long prec = N - nu;
    auto S = G.map<QSeries>([&](const RatFn& f) { return to_series(f, prec); });
    for (long e = -nu; e < prec; ++e) {
        KMat A(G.rows(), G.cols());
        for (std::size_t i = 0; i < G.rows(); ++i)
            for (std::size_t j = 0; j < G.cols(); ++j) A(i, j) = AlgNum(S(i, j).coeff(e));
        T.coeffs.push_back(std::move(A));
    }
    return T;
}

namespace detail {

/// Cycles of t -> zeta t, matching eigenvalues by their terms below t^-1
/// (the principal part of z*y).
inline std::vector<std::vector<std::size_t>> reduction_orbits(const std::vector<KSeries>& lam,
                                                              const std::vector<std::size_t>& root_of, long s,
                                                              FieldContext& ctx) {
    const std::size_t n = lam.size();
    if (s == 1) {
        std::vector<std::vector<std::size_t>> single;
        for (auto r : root_of) single.push_back({r});
        std::sort(single.begin(), single.end());
        return single;
    }
    auto principal = [&](const KSeries& f, const AlgNum& zeta) {
        std::vector<std::pair<long, AlgNum>> out;
        for (long e = f.low_val(); e < -1; ++e) {
            AlgNum c = f.coeff(e);
            if (!is_zero(c)) out.emplace_back(e, c * zeta.pow((((e - s + 1) % s) + s) % s));
        }
        return out;
    };
    std::vector<std::size_t> next(n);
    const AlgNum zeta = ctx.root_of_unity(s);
    for (std::size_t i = 0; i < n; ++i) {
        auto img = principal(lam[i], zeta);
        std::optional<std::size_t> hit;
        for (std::size_t j = 0; j < n; ++j)
            if (principal(lam[j], AlgNum(1)) == img) {
                if (hit) throw InternalInconsistency("conjugate eigenvalue is ambiguous");
                hit = j;
            }
        if (!hit) throw InternalInconsistency("conjugate eigenvalue not found");
        next[i] = *hit;
    }
    std::vector<std::vector<std::size_t>> orbits;
    std::vector<bool> seen(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        if (seen[i]) continue;
        std::vector<std::size_t> o;
        for (std::size_t j = i; !seen[j]; j = next[j]) {
            seen[j] = true;
            o.push_back(root_of[j]);
        }
        std::sort(o.begin(), o.end());
        orbits.push_back(std::move(o));
    }
    std::sort(orbits.begin(), orbits.end());
    return orbits;
}

}  // namespace detail

/// Diagonalizes the local matrix after pulling back by the global
/// ramification and matches each eigenvalue with a Puiseux root.
inline ReductionData reduce_local(const LocalModule& L, const LocalOptions& opt = {}) {
    const long s = L.puiseux.global_ramification;
    long pmax = 0;
    for (const auto& c : L.cells) pmax = std::max(pmax, c.p);
    long N = L.nu + pmax + 2;
    for (int attempt = 0;; ++attempt) {
        try {
            auto G = ramified_pullback(local_trunc(L.local, L.nu, N), s);
            FieldContext ctx(L.puiseux.field, opt.puiseux.field);
            auto F = full_split(G, ctx, {opt.allow_shear});
            ReductionData R;
            R.ramification = s;
            R.residue.assign(L.n, AlgNum(0));
            std::vector<bool> used(L.n, false);
            for (const auto& lam : F.eigenvalues) {
                // y = lam / (s t^(s-1)); terms of y with exponent <= -1 in z.
                const long top = -1;
                if (lam.prec() <= top) throw InsufficientTruncation("eigenvalue not known through the residue");
                std::vector<PuiseuxTerm> y;
                for (long e = lam.low_val(); e <= top; ++e) {
                    AlgNum c = lam.coeff(e);
                    if (!is_zero(c)) y.push_back({Rat(e - s + 1, s), c / AlgNum(s)});
                }
                for (auto& t : y) t.exponent.canonicalize();
                std::optional<std::size_t> hit;
                for (std::size_t a = 0; a < L.n && !hit; ++a) {
                    if (used[a]) continue;
                    std::vector<PuiseuxTerm> ya;
                    for (const auto& t : L.puiseux.roots[a].terms)
                        if (t.exponent <= -1) ya.push_back(t);
                    if (ya.size() != y.size()) continue;
                    bool same = true;
                    for (std::size_t i = 0; i < y.size() && same; ++i)
                        same = ya[i].exponent == y[i].exponent && ya[i].coeff == y[i].coeff;
                    if (same) hit = a;
                }
                if (!hit) throw InternalInconsistency("reduction eigenvalue matches no Puiseux root");
                used[*hit] = true;
                R.root_of.push_back(*hit);
                for (const auto& t : y)
                    if (t.exponent == -1) R.residue[*hit] = t.coeff;
                R.eigenvalues.push_back(lam);
            }
            R.orbits = detail::reduction_orbits(F.eigenvalues, R.root_of, s, ctx);
            return R;
        } catch (const InsufficientTruncation&) {
            if (attempt >= 5) throw;
            N *= 2;
        }
    }
}

/// Whether the reduction orbits coincide with the Puiseux cells.
inline bool reduction_cells_agree(const LocalModule& L, const ReductionData& R) {
    std::vector<std::vector<std::size_t>> cells;
    for (const auto& c : L.cells) {
        auto r = c.roots;
        std::sort(r.begin(), r.end());
        cells.push_back(std::move(r));
    }
    std::sort(cells.begin(), cells.end());
    return cells == R.orbits;
}

/// Multiplicity-free iff the principal parts of z*y are pairwise distinct
/// over all roots; regular semisimple iff all roots are unramified with
/// distinct normal forms q + R/z and the reduction route certifies them.
inline AssumptionReport check_assumption(const LocalModule& L, const LocalOptions& opt = {},
                                         ReductionData* reduction = nullptr) {
    AssumptionReport rep;
    Rat worst(-1000000);
    bool any = false;
    for (std::size_t a = 0; a < L.n; ++a)
        for (std::size_t b = 0; b < L.n; ++b)
            if (a != b && (!any || L.puiseux.contact[a][b] > worst)) worst = L.puiseux.contact[a][b], any = true;
    if (!any || worst < -1) {
        rep.mode = LocalMode::MultiplicityFree;
        return rep;
    }
    bool unramified = std::all_of(L.cells.begin(), L.cells.end(), [](const HTLCell& c) { return c.r == 1; });
    if (!unramified) {
        rep.reason = "a ramified cell shares its principal part with another root (contact " + to_short(worst) + ")";
        return rep;
    }
    if (worst > -1) {
        rep.reason = "two roots agree through the residue term (contact " + to_short(worst) + ")";
        return rep;
    }
    try {
        auto R = reduce_local(L, opt);
        if (reduction) *reduction = std::move(R);
    } catch (const Error& e) {
        rep.reason = std::string("reduction route failed: ") + e.what();
        return rep;
    }
    rep.mode = LocalMode::RegularSemisimple;
    return rep;
}

/// -sum over ordered pairs of distinct roots a in cell i, b in cell j of
/// min(0, ord(q_a - q_b)).
inline long irr_hom(const LocalModule& L, std::size_t i, std::size_t j) {
    Rat s = 0;
    for (auto a : L.cells[i].roots)
        for (auto b : L.cells[j].roots)
            if (a != b) s += std::min(Rat(0), Rat(L.puiseux.contact[a][b] + 1));
    if (!is_integer(s)) throw InternalInconsistency("non-integral irregularity");
    return -to_long(s);
}

inline long irregularity(const LocalModule& L) {
    long s = 0;
    for (const auto& c : L.cells) s += c.p;
    return s;
}

inline long irr_end(const LocalModule& L) {
    long s = 0;
    for (std::size_t i = 0; i < L.m(); ++i)
        for (std::size_t j = 0; j < L.m(); ++j) s += irr_hom(L, i, j);
    return s;
}

/// Irr(End) from the order of the discriminant: -ord disc - n(n-1). Valid
/// whenever all contacts are at most -1.
inline long irr_end_from_discriminant(const LocalModule& L) {
    const long n = static_cast<long>(L.n);
    return -discriminant_rf(L.charpoly).order_at_zero() - n * (n - 1);
}

inline long hor_dim(const LocalModule& L) { return static_cast<long>(L.m()); }

inline long delta_end(const LocalModule& L) {
    const long n = static_cast<long>(L.n);
    return n * n + irr_end(L) - hor_dim(L);
}

/// Localizes, expands the characteristic polynomial, groups roots into cells
/// and checks the structural assumption.
inline LocalModule build_local(const MatRF& A, const Point& a, const LocalOptions& opt = {}) {
    LocalModule L;
    L.point = a;
    L.n = A.rows();
    L.local = local_matrix(A, a);
    L.nu = pole_order(L.local);
    L.truncation = opt.truncation > 0 ? opt.truncation : default_truncation(L.n, L.nu);
    L.charpoly = charpoly(L.local);
    PuiseuxOptions po = opt.puiseux;
    if (po.initial_precision <= 0) po.initial_precision = L.truncation;
    L.puiseux = puiseux_roots(L.charpoly, po);
    for (std::size_t c = 0; c < L.puiseux.clusters.size(); ++c) {
        const auto& cl = L.puiseux.clusters[c];
        HTLCell cell;
        cell.cluster = c;
        cell.roots = cl.members;
        cell.r = cl.r;
        cell.q = detail::principal_part(L.puiseux.roots[cl.representative()]);
        if (cell.q.empty()) {
            cell.p = 0;
        } else {
            Rat p = -Rat(cell.r) * cell.q.front().exponent;
            if (!is_integer(p)) throw InternalInconsistency("principal part order not compatible with ramification");
            cell.p = to_long(p);
        }
        L.cells.push_back(std::move(cell));
    }
    std::stable_sort(L.cells.begin(), L.cells.end(), [](const HTLCell& x, const HTLCell& y) {
        if (x.slope() != y.slope()) return x.slope() > y.slope();
        return detail::terms_key(x.q) < detail::terms_key(y.q);
    });
    ReductionData R;
    L.assumption = check_assumption(L, opt, &R);
    if (L.assumption.mode == LocalMode::RegularSemisimple) {
        for (auto& c : L.cells) c.residue = R.residue[c.roots.front()];
        for (std::size_t i = 0; i < L.m(); ++i)
            for (std::size_t j = i + 1; j < L.m(); ++j) {
                const auto& ci = L.cells[i];
                const auto& cj = L.cells[j];
                if (L.puiseux.contact[ci.roots.front()][cj.roots.front()] != -1) continue;
                AlgNum d = *ci.residue - *cj.residue;
                if (d.is_rational() && is_integer(d.rational_value()) && !is_zero(d)) {
                    L.unreliable = true;
                    L.warnings.push_back("resonance at " + to_string(a) + ": cells " + std::to_string(i + 1) + " and " +
                                         std::to_string(j + 1) + " have residues differing by " +
                                         to_short(d.rational_value()));
                }
            }
    }
    return L;
}

}  // namespace specrig
