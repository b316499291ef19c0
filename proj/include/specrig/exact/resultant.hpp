#pragma once

// Resultants and discriminants of polynomials in y whose coefficients lie in a
// commutative ring. Polynomials are coefficient vectors, lowest degree first,
// with a nonzero last entry.

#include <cstddef>
#include <vector>

#include "specrig/exact/matrix.hpp"

namespace specrig {

template <class R>
using YPoly = std::vector<R>;

template <class R>
void trim(YPoly<R>& p) {
    while (!p.empty() && is_zero(p.back())) p.pop_back();
}

template <class R>
YPoly<R> y_derivative(const YPoly<R>& p) {
    YPoly<R> d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(R(static_cast<long>(i)) * p[i]);
    trim(d);
    return d;
}

template <class R>
Matrix<R> sylvester_matrix(const YPoly<R>& f, const YPoly<R>& g) {
    const std::size_t m = f.size() - 1, n = g.size() - 1;
    Matrix<R> S(m + n, m + n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t i = 0; i <= m; ++i) S(r, r + i) = f[m - i];
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t i = 0; i <= n; ++i) S(n + r, r + i) = g[n - i];
    return S;
}

/// Res_y(f, g) as the Sylvester determinant.
template <class R>
R resultant(YPoly<R> f, YPoly<R> g, const R& one = R(1)) {
    trim(f);
    trim(g);
    if (f.empty() && g.empty()) throw MathError("resultant of two zero polynomials");
    if (f.empty() || g.empty()) return R();
    if (f.size() == 1 && g.size() == 1) return one;
    return determinant(sylvester_matrix(f, g), one);
}

/// Discriminant of a monic polynomial: (-1)^{n(n-1)/2} Res(F, F').
template <class R>
R discriminant_monic(YPoly<R> F, const R& one = R(1)) {
    trim(F);
    if (F.size() < 2) throw MathError("discriminant of a constant polynomial");
    const std::size_t n = F.size() - 1;
    if (n == 1) return one;
    R r = resultant(F, y_derivative(F), one);
    if ((n * (n - 1) / 2) % 2 == 1) r = -r;
    return r;
}

/// Discriminant over a field: (-1)^{n(n-1)/2} Res(F, F') / lc(F).
template <class R>
R discriminant(YPoly<R> F, const R& one = R(1)) {
    trim(F);
    if (F.size() < 2) throw MathError("discriminant of a constant polynomial");
    const std::size_t n = F.size() - 1;
    if (n == 1) return one;
    R r = resultant(F, y_derivative(F), one);
    if ((n * (n - 1) / 2) % 2 == 1) r = -r;
    return r / F.back();
}

}  // namespace specrig
