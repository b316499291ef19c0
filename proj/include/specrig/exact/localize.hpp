#pragma once

// Passage from the global connection matrix to local data at a point:
// Laurent expansions, the local matrix in the local coordinate, pole orders
// and characteristic polynomials.

#include <algorithm>
#include <cstddef>
#include <vector>

#include "specrig/exact/matrix.hpp"
#include "specrig/exact/ratfn.hpp"
#include "specrig/exact/resultant.hpp"
#include "specrig/exact/series.hpp"

namespace specrig {

using MatRF = Matrix<RatFn>;
using QSeries = Series<Rat>;
using MatSeries = Matrix<QSeries>;

/// Laurent expansion at the origin with all coefficients of exponent < prec.
inline QSeries to_series(const RatFn& f, long prec) {
    if (f.is_zero()) return QSeries();
    const int kn = f.num().low_degree();
    const int kd = f.den().low_degree();
    const long v = static_cast<long>(kn) - static_cast<long>(kd);
    QPoly n0 = exact_div(f.num(), QPoly::monomial(Rat(1), static_cast<std::size_t>(kn)));
    QPoly d0 = exact_div(f.den(), QPoly::monomial(Rat(1), static_cast<std::size_t>(kd)));
    if (d0.degree() == 0) {
        Rat inv = 1 / d0[0];
        std::vector<Rat> c;
        for (const auto& x : n0.coeffs()) c.push_back(x * inv);
        return QSeries(v, std::move(c), kExact);
    }
    if (prec <= v) return QSeries::zero_to(prec);
    const std::size_t len = static_cast<std::size_t>(prec - v);
    std::vector<Rat> q(len);
    std::vector<Rat> rem(len);
    for (std::size_t i = 0; i < len && i < n0.size(); ++i) rem[i] = n0[i];
    const Rat inv = 1 / d0[0];
    for (std::size_t i = 0; i < len; ++i) {
        q[i] = rem[i] * inv;
        if (is_zero(q[i])) continue;
        for (std::size_t j = 1; j < d0.size() && i + j < len; ++j) rem[i + j] -= q[i] * d0[j];
    }
    return QSeries(v, std::move(q), prec);
}

/// The local matrix in the coordinate x centered at the point: A(a + x) at a
/// finite point and -x^{-2} A(1/x) at infinity.
inline MatRF local_matrix(const MatRF& A, const Point& a) {
    MatRF G = A.map<RatFn>([&](const RatFn& f) { return f.at_point(a); });
    if (a.infinite) {
        RatFn factor = RatFn(Rat(-1)) / RatFn::var().pow(2);
        G = G.map<RatFn>([&](const RatFn& f) { return factor * f; });
    }
    return G;
}

/// max(0, -min order at the origin) over all entries.
inline long pole_order(const MatRF& G) {
    long m = 0;
    for (std::size_t i = 0; i < G.rows(); ++i)
        for (std::size_t j = 0; j < G.cols(); ++j) m = std::min(m, G(i, j).order_at_zero());
    return -m;
}

inline long default_truncation(std::size_t n, long nu_max) {
    const long nn = static_cast<long>(n);
    return 2 * (nn * nu_max + nn * nn + 4);
}

struct LocalMatrix {
    Point point;
    long nu = 0;
    /// x^nu G is known modulo x^N.
    long N = 0;
    MatRF exact;
    MatSeries series;
};

inline LocalMatrix localize(const MatRF& A, const Point& a, long N) {
    LocalMatrix L;
    L.point = a;
    L.exact = local_matrix(A, a);
    L.nu = pole_order(L.exact);
    L.N = N;
    const long prec = N - L.nu;
    L.series = L.exact.map<QSeries>([&](const RatFn& f) { return to_series(f, prec); });
    return L;
}

/// det(yI - M) as a monic polynomial in y, lowest degree first.
inline YPoly<RatFn> charpoly(const MatRF& M) {
    auto desc = berkowitz(M);
    return YPoly<RatFn>(desc.rbegin(), desc.rend());
}

/// Coefficientwise Laurent expansion of a polynomial in y.
inline YPoly<QSeries> expand(const YPoly<RatFn>& F, long prec) {
    YPoly<QSeries> out;
    out.reserve(F.size());
    for (const auto& c : F) out.push_back(to_series(c, prec));
    return out;
}

/// Common denominator D and polynomial coefficients D*F_i.
inline std::pair<QPoly, YPoly<QPoly>> clear_denominators(const YPoly<RatFn>& F) {
    QPoly D(Rat(1));
    for (const auto& c : F) D = exact_div(D * c.den(), gcd(D, c.den()));
    YPoly<QPoly> P;
    P.reserve(F.size());
    for (const auto& c : F) P.push_back(exact_div(c.num() * D, c.den()));
    return {D, P};
}

/// Discriminant in y of a polynomial with rational-function coefficients,
/// computed over Q[z] to avoid fraction growth.
inline RatFn discriminant_rf(const YPoly<RatFn>& F) {
    auto [D, P] = clear_denominators(F);
    trim(P);
    if (P.size() < 2) throw MathError("discriminant of a constant polynomial");
    const std::size_t n = P.size() - 1;
    if (n == 1) return RatFn(Rat(1));
    QPoly r = resultant(P, y_derivative(P));
    if ((n * (n - 1) / 2) % 2 == 1) r = -r;
    r = exact_div(r, P.back());
    return RatFn(r) / RatFn(pow(D, static_cast<unsigned>(2 * n - 2)));
}

}  // namespace specrig
