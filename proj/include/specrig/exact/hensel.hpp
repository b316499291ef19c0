#pragma once

// Linear Hensel lifting of a coprime factorization H(0, y) = A0 B0 with A0
// monic, for H given by its slices in the power series variable.

#include <cstddef>
#include <utility>
#include <vector>

#include "specrig/exact/rational.hpp"
#include "specrig/exact/upoly.hpp"

namespace specrig {

using QPoly = UPoly<Rat>;

/// slices[k] is the coefficient of w^k of H(w, y). Returns slices of A and B
/// with H = A B modulo w^M, A monic in y of degree deg A0.
inline std::pair<std::vector<QPoly>, std::vector<QPoly>> hensel_lift(const std::vector<QPoly>& slices, const QPoly& A0,
                                                                     const QPoly& B0, long M) {
    auto [g, s, t] = ext_gcd(A0, B0);
    (void)s;
    if (g.degree() != 0) throw MathError("hensel_lift: factors are not coprime");
    const QPoly tinv = t * QPoly(Rat(1) / g[0]);
    const std::size_t m = static_cast<std::size_t>(M);
    std::vector<QPoly> A(m), B(m);
    A[0] = A0;
    B[0] = B0;
    for (std::size_t k = 1; k < m; ++k) {
        QPoly E = k < slices.size() ? slices[k] : QPoly();
        for (std::size_t i = 1; i < k; ++i) E = E - A[i] * B[k - i];
        A[k] = (tinv * E) % A0;
        B[k] = exact_div(E - A[k] * B0, A0);
    }
    return {A, B};
}

}  // namespace specrig
