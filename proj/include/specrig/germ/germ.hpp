#pragma once

// Germs of the spectral curve at the points over a pole where it meets the
// divisor at infinity: branches, intersections, Milnor and delta invariants.

#include <cstddef>
#include <optional>
#include <vector>

#include "specrig/exact/hensel.hpp"
#include "specrig/local/local_module.hpp"

namespace specrig {

struct GermBranch {
    std::size_t cell = 0;
    long p = 0;
    long r = 1;
};

struct GermData {
    Point point;
    long n = 0;
    long m = 0;
    std::vector<GermBranch> branches;
    /// irr_hom between branches, indexed like branches.
    std::vector<std::vector<long>> irr_hom;
    long irr_end = 0;
    long local_inf = 0;
    long mu = 0;
    long delta = 0;

    long r_C() const { return static_cast<long>(branches.size()); }
    bool empty() const { return branches.empty(); }
};

/// Cells whose roots tend to infinity.
inline std::vector<GermBranch> unbounded_branches(const LocalModule& L) {
    std::vector<GermBranch> out;
    for (std::size_t i = 0; i < L.m(); ++i) {
        const auto& c = L.cells[i];
        if (L.puiseux.clusters[c.cluster].unbounded()) out.push_back({i, c.p, c.r});
    }
    return out;
}

inline long local_inf_intersection(const GermData& g) {
    long s = 0;
    for (const auto& b : g.branches) s += b.p + b.r;
    return s;
}

inline long branch_intersection(const GermData& g, std::size_t i, std::size_t j) {
    if (i == j) throw MathError("intersection of a branch with itself");
    const auto& a = g.branches[i];
    const auto& b = g.branches[j];
    return a.p * b.r + b.p * a.r + a.r * b.r - g.irr_hom[i][j];
}

inline long branch_milnor(const GermData& g, std::size_t i) {
    const auto& a = g.branches[i];
    return (2 * a.p + a.r - 1) * (a.r - 1) - g.irr_hom[i][i];
}

inline long germ_milnor(const GermData& g) {
    return -g.n * g.n - g.irr_end + 2 * (g.n - 1) * g.local_inf + (g.m - g.r_C()) + 1;
}

/// The same number assembled from branch invariants.
inline long germ_milnor_from_branches(const GermData& g) {
    long s = 1 - g.r_C();
    for (std::size_t i = 0; i < g.branches.size(); ++i) {
        s += branch_milnor(g, i);
        for (std::size_t j = i + 1; j < g.branches.size(); ++j) s += 2 * branch_intersection(g, i, j);
    }
    return s;
}

inline long delta_invariant(long mu, long r_C) {
    const long twice = mu + r_C - 1;
    if (twice < 0 || twice % 2 != 0) throw InternalInconsistency("delta invariant is not a nonnegative integer");
    return twice / 2;
}

struct MilnorOracle {
    /// Degree of the Weierstrass factor, the intersection with the fiber.
    long degree = 0;
    /// Intersection of the germ with its polar curve.
    long polar = 0;
    long mu = 0;
};

namespace detail {

/// Weierstrass factor, modulo x^M, of x^kappa zeta^n P(x, 1/zeta) at zeta = 0.
inline std::pair<YPoly<QSeries>, long> weierstrass_factor(const YPoly<RatFn>& P, long M) {
    const std::size_t n = P.size() - 1;
    long kappa = 0;
    for (const auto& c : P) kappa = std::max(kappa, -std::min(0L, c.order_at_zero()));
    // h_j = x^kappa c_{n-j}; slices[k] is the coefficient of x^k.
    std::vector<QPoly> slices(static_cast<std::size_t>(M));
    for (std::size_t j = 0; j <= n; ++j) {
        const auto s = to_series(P[n - j] * RatFn::var().pow(kappa), M);
        for (long k = 0; k < M; ++k) {
            Rat v = s.coeff(k);
            if (!is_zero(v)) slices[static_cast<std::size_t>(k)].set_coeff(j, slices[static_cast<std::size_t>(k)].coeff(j) + v);
        }
    }
    const QPoly& H0 = slices[0];
    if (H0.is_zero()) throw InternalInconsistency("cleared polynomial vanishes on the fiber");
    const long d = H0.low_degree();
    const QPoly Z = QPoly::monomial(Rat(1), static_cast<std::size_t>(d));
    const QPoly U0 = exact_div(H0, Z);
    const auto f = hensel_lift(slices, Z, U0, M).first;
    YPoly<QSeries> F(static_cast<std::size_t>(d + 1));
    for (long j = 0; j < d; ++j) {
        std::vector<Rat> c(static_cast<std::size_t>(M));
        for (long k = 0; k < M; ++k) c[static_cast<std::size_t>(k)] = f[static_cast<std::size_t>(k)].coeff(static_cast<std::size_t>(j));
        F[static_cast<std::size_t>(j)] = QSeries(0, std::move(c), M);
    }
    F[static_cast<std::size_t>(d)] = QSeries(Rat(1));
    return {F, d};
}

}  // namespace detail

/// mu = (F, dF/dzeta) + 1 - (F, x) from the local characteristic polynomial
/// alone, with F the Weierstrass factor at the point at infinity of the fiber.
inline MilnorOracle germ_milnor_oracle(const YPoly<RatFn>& P, long M = 0) {
    const long n = static_cast<long>(P.size()) - 1;
    long nu = 0;
    for (const auto& c : P) nu = std::max(nu, -std::min(0L, c.order_at_zero()));
    if (M <= 0) M = 8 + 2 * n * (nu + 1);
    for (int attempt = 0;; ++attempt) {
        auto [F, d] = detail::weierstrass_factor(P, M);
        MilnorOracle o;
        o.degree = d;
        if (d <= 1) return o;
        auto R = resultant(F, y_derivative(F), QSeries(Rat(1)));
        if (R.known_zero()) {
            if (R.is_exact_zero()) throw MathError("germ is not reduced");
            if (attempt >= 5) throw InsufficientTruncation("polar intersection not determined");
            M *= 2;
            continue;
        }
        o.polar = R.val();
        o.mu = o.polar + 1 - d;
        return o;
    }
}

/// Germ data over a pole, or an empty germ if no root tends to infinity.
inline GermData build_germ(const LocalModule& L) {
    if (!L.assumption.ok()) throw MathError("germ formulas need the structural assumption at " + to_string(L.point));
    GermData g;
    g.point = L.point;
    g.n = static_cast<long>(L.n);
    g.m = static_cast<long>(L.m());
    g.branches = unbounded_branches(L);
    g.irr_end = irr_end(L);
    g.irr_hom.assign(g.branches.size(), std::vector<long>(g.branches.size()));
    for (std::size_t i = 0; i < g.branches.size(); ++i)
        for (std::size_t j = 0; j < g.branches.size(); ++j)
            g.irr_hom[i][j] = irr_hom(L, g.branches[i].cell, g.branches[j].cell);
    g.local_inf = local_inf_intersection(g);
    if (g.empty()) return g;
    g.mu = germ_milnor(g);
    const long alt = germ_milnor_from_branches(g);
    if (alt != g.mu) throw InternalInconsistency("Milnor number differs between the germ and branch formulas");
    g.delta = delta_invariant(g.mu, g.r_C());
    return g;
}

}  // namespace specrig
