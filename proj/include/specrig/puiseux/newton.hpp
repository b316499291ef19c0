#pragma once

// Newton polygons of polynomials in y with truncated Laurent series
// coefficients.

#include <cstddef>
#include <string>
#include <vector>

#include "specrig/exact/resultant.hpp"
#include "specrig/exact/series.hpp"
#include "specrig/exact/upoly.hpp"

namespace specrig {

template <class K>
struct NewtonEdge {
    long i_start = 0;
    long i_end = 0;
    /// Rise of the valuation per unit step in i.
    Rat slope;
    /// Valuation of the roots on this edge, -slope.
    Rat root_order;
    /// sum over points on the edge of lc(g_i) c^(i - i_start).
    UPoly<K> residual;

    long length() const noexcept { return i_end - i_start; }
};

template <class K>
struct NewtonPolygon {
    /// Known support points (i, valuation).
    std::vector<std::pair<long, long>> support;
    /// Lowest index with a coefficient that is not exactly zero.
    long y_valuation = 0;
    std::vector<NewtonEdge<K>> edges;
};

/// Lower hull over indices [first nonzero, upto]. Coefficients whose valuation
/// is not known must lie strictly above the hull; otherwise the precision is
/// insufficient to decide the polygon.
template <class K>
NewtonPolygon<K> newton_polygon(const YPoly<Series<K>>& F, long upto = -1) {
    if (upto < 0) upto = static_cast<long>(F.size()) - 1;
    NewtonPolygon<K> P;
    long first = 0;
    while (first <= upto && F[static_cast<std::size_t>(first)].is_exact_zero()) ++first;
    if (first > upto) throw MathError("Newton polygon of the zero polynomial");
    P.y_valuation = first;
    if (first == upto) return P;
    for (long i = first; i <= upto; ++i) {
        const auto& g = F[static_cast<std::size_t>(i)];
        if (!g.known_zero()) P.support.emplace_back(i, g.val());
        else if ((i == first || i == upto) && !g.is_exact_zero())
            throw InsufficientTruncation("end point of the Newton polygon has unknown valuation");
    }
    // Lower convex hull (monotone chain) over support points.
    std::vector<std::pair<long, long>> hull;
    for (const auto& p : P.support) {
        while (hull.size() >= 2) {
            const auto& a = hull[hull.size() - 2];
            const auto& b = hull.back();
            // Remove b if it lies on or above segment a-p.
            long cross = (b.first - a.first) * (p.second - a.second) - (b.second - a.second) * (p.first - a.first);
            if (cross <= 0) hull.pop_back();
            else break;
        }
        hull.push_back(p);
    }
    if (hull.back().first != upto) throw InsufficientTruncation("right end of the Newton polygon undetermined");
    for (std::size_t e = 0; e + 1 < hull.size(); ++e) {
        const auto [i1, v1] = hull[e];
        const auto [i2, v2] = hull[e + 1];
        NewtonEdge<K> E;
        E.i_start = i1;
        E.i_end = i2;
        E.slope = Rat(v2 - v1, i2 - i1);
        E.slope.canonicalize();
        E.root_order = -E.slope;
        std::vector<K> res(static_cast<std::size_t>(i2 - i1 + 1));
        for (long i = i1; i <= i2; ++i) {
            const auto& g = F[static_cast<std::size_t>(i)];
            Rat line = Rat(v1) + E.slope * Rat(i - i1);
            if (g.known_zero()) {
                if (!g.is_exact_zero() && Rat(g.prec()) <= line)
                    throw InsufficientTruncation("coefficient of y^" + std::to_string(i) + " undetermined on the Newton polygon");
                continue;
            }
            if (Rat(g.val()) == line) res[static_cast<std::size_t>(i - i1)] = g.lc();
        }
        E.residual = UPoly<K>(std::move(res));
        P.edges.push_back(std::move(E));
    }
    return P;
}

}  // namespace specrig
