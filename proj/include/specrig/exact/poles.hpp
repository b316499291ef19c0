#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "specrig/algebra/qfactor.hpp"
#include "specrig/exact/localize.hpp"

namespace specrig {

struct PoleValidation {
    /// Actual poles, finite ones ascending, infinity last.
    std::vector<Point> poles;
    std::vector<std::string> warnings;
};

/// Poles of A dz on the projective line. Finite poles must be rational.
inline std::vector<Point> actual_poles(const MatRF& A) {
    QPoly den(Rat(1));
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j) {
            const QPoly& d = A(i, j).den();
            den = exact_div(den * d, gcd(den, d));
        }
    std::vector<Point> out;
    if (den.degree() > 0) {
        QPoly rest = squarefree_part(den);
        for (const Rat& r : rational_roots(rest)) {
            out.push_back(Point::at(r));
            rest = exact_div(rest, QPoly({-r, Rat(1)}));
        }
        if (rest.degree() > 0)
            throw UnsupportedPoint("pole at a non-rational point (factor " + to_string(rest, "z") + ")");
    }
    bool inf_pole = false;
    for (std::size_t i = 0; i < A.rows() && !inf_pole; ++i)
        for (std::size_t j = 0; j < A.cols(); ++j)
            if (valuation(A(i, j), Point::at_infinity()) < 2) {
                inf_pole = true;
                break;
            }
    if (inf_pole) out.push_back(Point::at_infinity());
    return out;
}

inline PoleValidation pole_set_validate(const MatRF& A, const std::vector<Point>& declared) {
    PoleValidation v;
    std::vector<Point> actual = actual_poles(A);
    for (const Point& p : actual)
        if (std::find(declared.begin(), declared.end(), p) == declared.end())
            throw PoleSetError("undeclared pole at " + to_string(p));
    for (const Point& p : declared)
        if (std::find(actual.begin(), actual.end(), p) == actual.end())
            v.warnings.push_back("declared pole " + to_string(p) + " is not a pole; ignored");
    v.poles = std::move(actual);
    return v;
}

}  // namespace specrig
