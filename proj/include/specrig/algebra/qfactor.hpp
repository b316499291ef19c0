#pragma once

// Factorization of univariate rational polynomials into irreducibles.
// Candidate factors come from high-precision complex root clusters and are
// accepted only after exact division, so every reported factor is exact.
// Irreducibility of a remaining cofactor follows from the exhaustive subset
// search, which is sound as long as the coefficient bound stays within the
// working precision; beyond that the routine refuses.

#include <algorithm>
#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>
#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "specrig/exact/upoly.hpp"

namespace specrig {

using QPoly = UPoly<Rat>;

struct QFactorOptions {
    int max_degree = 24;
};

namespace detail {

using BigFloat = boost::multiprecision::cpp_bin_float_50;
using BigComplex = boost::multiprecision::cpp_complex_50;

inline BigFloat to_big(const Int& z) { return BigFloat(z.get_str()); }

inline bool nearest_integer(const BigFloat& x, const BigFloat& tol, Int& out) {
    BigFloat r = boost::multiprecision::round(x);
    if (boost::multiprecision::abs(x - r) > tol) return false;
    std::string s = r.str(0, std::ios_base::fixed);
    auto dot = s.find('.');
    if (dot != std::string::npos) s.resize(dot);
    if (s == "-0") s = "0";
    out = Int(s);
    return true;
}

/// Simultaneous root approximation (Aberth-Ehrlich) followed by Newton polishing.
inline std::vector<BigComplex> complex_roots(const std::vector<Int>& f) {
    const std::size_t d = f.size() - 1;
    std::vector<BigComplex> a(d + 1);
    for (std::size_t i = 0; i <= d; ++i) a[i] = BigComplex(to_big(f[i]));
    auto eval = [&](const BigComplex& x, BigComplex& p, BigComplex& dp) {
        p = a[d];
        dp = BigComplex(0);
        for (std::size_t i = d; i-- > 0;) {
            dp = dp * x + p;
            p = p * x + a[i];
        }
    };
    BigFloat lead = boost::multiprecision::abs(to_big(f[d]));
    BigFloat bound = 0;
    for (std::size_t i = 0; i < d; ++i) bound = std::max(bound, BigFloat(boost::multiprecision::abs(to_big(f[i])) / lead));
    BigFloat radius = 1 + bound;
    std::vector<BigComplex> z(d);
    const BigFloat two_pi = 2 * boost::math::constants::pi<BigFloat>();
    for (std::size_t k = 0; k < d; ++k) {
        BigFloat ang = two_pi * (BigFloat(k) + BigFloat("0.4")) / BigFloat(d) + BigFloat("0.25");
        BigFloat rad = radius * (BigFloat("0.5") + BigFloat(k % 3) / 7);
        z[k] = BigComplex(rad * boost::multiprecision::cos(ang), rad * boost::multiprecision::sin(ang));
    }
    const BigFloat eps("1e-46");
    for (int it = 0; it < 2000; ++it) {
        BigFloat maxstep = 0;
        for (std::size_t k = 0; k < d; ++k) {
            BigComplex p, dp;
            eval(z[k], p, dp);
            if (p == BigComplex(0)) continue;
            BigComplex ratio = p / dp;
            BigComplex s(0);
            for (std::size_t j = 0; j < d; ++j)
                if (j != k) s += BigComplex(1) / (z[k] - z[j]);
            BigComplex step = ratio / (BigComplex(1) - ratio * s);
            z[k] -= step;
            BigFloat mag = boost::multiprecision::abs(step) / (1 + boost::multiprecision::abs(z[k]));
            maxstep = std::max(maxstep, mag);
        }
        if (maxstep < eps) break;
    }
    for (auto& r : z)
        for (int it = 0; it < 4; ++it) {
            BigComplex p, dp;
            eval(r, p, dp);
            if (dp == BigComplex(0)) break;
            r -= p / dp;
        }
    return z;
}

inline std::vector<Int> to_int_coeffs(const QPoly& p) { return primitive_integer_coeffs(p); }

inline QPoly from_int_coeffs(const std::vector<Int>& c) {
    std::vector<Rat> v;
    v.reserve(c.size());
    for (const auto& x : c) v.emplace_back(x);
    return QPoly(std::move(v));
}

inline BigFloat coeff_bound(const std::vector<Int>& f) {
    BigFloat norm2 = 0;
    for (const auto& c : f) {
        BigFloat x = to_big(c);
        norm2 += x * x;
    }
    BigFloat b = boost::multiprecision::sqrt(norm2) * boost::multiprecision::pow(BigFloat(2), BigFloat(f.size() - 1));
    return b * boost::multiprecision::abs(to_big(f.back()));
}

/// Irreducible factors of a squarefree primitive integer polynomial with nonzero constant term.
inline std::vector<QPoly> factor_squarefree_int(const std::vector<Int>& f0, const QFactorOptions& opt) {
    const std::size_t d0 = f0.size() - 1;
    if (d0 <= 1) return {from_int_coeffs(f0)};
    if (static_cast<int>(d0) > opt.max_degree)
        throw UnsupportedExtension("polynomial of degree " + std::to_string(d0) + " exceeds the factorization bound");
    if (coeff_bound(f0) > BigFloat("1e30"))
        throw UnsupportedExtension("coefficients too large for certified factorization");

    std::vector<QPoly> out;
    QPoly rest = from_int_coeffs(f0);
    std::vector<BigComplex> roots = complex_roots(f0);
    const BigFloat tol("1e-12");

    std::size_t k = 1;
    while (2 * k <= roots.size()) {
        const std::size_t d = roots.size();
        std::vector<Int> rc = to_int_coeffs(rest);
        const BigFloat lc = to_big(rc.back());
        // Enumerate k-subsets in lexicographic order with a trace filter.
        std::vector<std::size_t> chosen;
        std::function<bool(std::size_t, const BigComplex&)> rec = [&](std::size_t start, const BigComplex& sum) -> bool {
            if (chosen.size() == k) {
                BigComplex tr = sum * lc;
                Int dummy;
                if (boost::multiprecision::abs(tr.imag()) > tol || !nearest_integer(tr.real(), tol, dummy)) return false;
                std::vector<BigComplex> prod = {BigComplex(lc)};
                for (std::size_t j : chosen) {
                    std::vector<BigComplex> next(prod.size() + 1, BigComplex(0));
                    for (std::size_t i = 0; i < prod.size(); ++i) {
                        next[i + 1] += prod[i];
                        next[i] -= prod[i] * roots[j];
                    }
                    prod = std::move(next);
                }
                std::vector<Rat> cand;
                for (const auto& c : prod) {
                    Int v;
                    if (boost::multiprecision::abs(c.imag()) > tol || !nearest_integer(c.real(), tol, v)) return false;
                    cand.emplace_back(v);
                }
                QPoly g(std::move(cand));
                if (g.degree() != static_cast<int>(k)) return false;
                auto [q, r] = divmod(rest, g);
                if (!r.is_zero()) return false;
                out.push_back(g.monic());
                rest = q;
                std::vector<BigComplex> keep;
                for (std::size_t i = 0; i < roots.size(); ++i)
                    if (std::find(chosen.begin(), chosen.end(), i) == chosen.end()) keep.push_back(roots[i]);
                roots = std::move(keep);
                return true;
            }
            for (std::size_t i = start; i + (k - chosen.size()) <= d; ++i) {
                chosen.push_back(i);
                bool ok = rec(i + 1, sum + roots[i]);
                chosen.pop_back();
                if (ok) return true;
            }
            return false;
        };
        if (!rec(0, BigComplex(0))) ++k;
    }
    if (rest.degree() > 0) out.push_back(rest.monic());
    return out;
}

inline bool canonical_less(const QPoly& a, const QPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (int i = a.degree(); i >= 0; --i) {
        const Rat& x = a[static_cast<std::size_t>(i)];
        const Rat& y = b[static_cast<std::size_t>(i)];
        if (x != y) return x < y;
    }
    return false;
}

}  // namespace detail

/// Monic irreducible factors with multiplicities, sorted by degree then coefficients.
inline std::vector<std::pair<QPoly, int>> factor_rational(const QPoly& p, const QFactorOptions& opt = {}) {
    if (p.is_zero()) throw MathError("factorization of the zero polynomial");
    std::vector<std::pair<QPoly, int>> out;
    for (auto& [part, mult] : squarefree_decomposition(p)) {
        QPoly f = part;
        int low = f.low_degree();
        if (low > 0) {
            out.emplace_back(QPoly::x(), mult);
            f = exact_div(f, QPoly::monomial(Rat(1), static_cast<std::size_t>(low)));
        }
        if (f.degree() <= 0) continue;
        for (auto& g : detail::factor_squarefree_int(detail::to_int_coeffs(f), opt)) out.emplace_back(g, mult);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (detail::canonical_less(a.first, b.first)) return true;
        if (detail::canonical_less(b.first, a.first)) return false;
        return a.second < b.second;
    });
    return out;
}

/// Distinct rational roots, ascending.
inline std::vector<Rat> rational_roots(const QPoly& p, const QFactorOptions& opt = {}) {
    std::vector<Rat> out;
    if (p.degree() <= 0) return out;
    for (auto& [g, m] : factor_rational(p, opt))
        if (g.degree() == 1) out.push_back(-g[0] / g[1]);
    std::sort(out.begin(), out.end());
    return out;
}

inline bool is_irreducible(const QPoly& p, const QFactorOptions& opt = {}) {
    if (p.degree() <= 0) return false;
    auto f = factor_rational(p, opt);
    return f.size() == 1 && f[0].second == 1;
}

}  // namespace specrig
