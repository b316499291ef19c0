#pragma once

// Dense univariate polynomials over a field (or a commutative ring for the
// ring-only operations). The coefficient type must be default-constructible
// to zero and provide is_zero() through ordinary or argument-dependent lookup.

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "specrig/exact/rational.hpp"

namespace specrig {

namespace detail {
template <class T>
bool coeff_is_zero(const T& v) {
    return is_zero(v);
}
}  // namespace detail

template <class F>
class UPoly {
   public:
    using coeff_type = F;

    UPoly() = default;
    explicit UPoly(F c) {
        if (!detail::coeff_is_zero(c)) c_.push_back(std::move(c));
    }
    explicit UPoly(std::vector<F> coeffs) : c_(std::move(coeffs)) { normalize(); }
    UPoly(std::initializer_list<F> coeffs) : c_(coeffs) { normalize(); }

    static UPoly monomial(F c, std::size_t k) {
        if (detail::coeff_is_zero(c)) return UPoly();
        std::vector<F> v(k + 1);
        v[k] = std::move(c);
        return UPoly(std::move(v));
    }
    static UPoly x() { return monomial(F(1), 1); }

    /// -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    std::size_t size() const noexcept { return c_.size(); }

    F coeff(std::size_t i) const { return i < c_.size() ? c_[i] : F(); }
    const F& operator[](std::size_t i) const { return c_[i]; }
    const std::vector<F>& coeffs() const noexcept { return c_; }
    const F& lc() const {
        if (c_.empty()) throw MathError("leading coefficient of zero polynomial");
        return c_.back();
    }

    /// Lowest exponent with a nonzero coefficient; -1 for zero.
    int low_degree() const {
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (!detail::coeff_is_zero(c_[i])) return static_cast<int>(i);
        return -1;
    }

    void set_coeff(std::size_t i, F v) {
        if (i >= c_.size()) c_.resize(i + 1);
        c_[i] = std::move(v);
        normalize();
    }

    UPoly operator-() const {
        UPoly r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }
    UPoly& operator+=(const UPoly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] + o.c_[i];
        normalize();
        return *this;
    }
    UPoly& operator-=(const UPoly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] - o.c_[i];
        normalize();
        return *this;
    }
    friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
    friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
    friend UPoly operator*(const UPoly& a, const UPoly& b) {
        if (a.is_zero() || b.is_zero()) return UPoly();
        std::vector<F> r(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (detail::coeff_is_zero(a.c_[i])) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
        }
        return UPoly(std::move(r));
    }
    UPoly& operator*=(const UPoly& o) { return *this = *this * o; }
    friend UPoly operator*(const F& s, const UPoly& p) {
        if (detail::coeff_is_zero(s)) return UPoly();
        std::vector<F> r(p.c_);
        for (auto& x : r) x = s * x;
        return UPoly(std::move(r));
    }
    friend UPoly operator*(const UPoly& p, const F& s) { return s * p; }

    friend bool operator==(const UPoly& a, const UPoly& b) {
        if (a.c_.size() != b.c_.size()) return false;
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            if (!detail::coeff_is_zero(a.c_[i] - b.c_[i])) return false;
        return true;
    }
    friend bool operator!=(const UPoly& a, const UPoly& b) { return !(a == b); }

    template <class V>
    V eval(const V& x) const {
        V r = V();
        for (std::size_t i = c_.size(); i-- > 0;) r = r * x + V(c_[i]);
        return r;
    }
    F operator()(const F& x) const {
        F r = F();
        for (std::size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
        return r;
    }

    UPoly derivative() const {
        if (c_.size() <= 1) return UPoly();
        std::vector<F> r(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = F(static_cast<long>(i)) * c_[i];
        return UPoly(std::move(r));
    }

    /// p(q(x)) by Horner.
    UPoly compose(const UPoly& q) const {
        UPoly r;
        for (std::size_t i = c_.size(); i-- > 0;) r = r * q + UPoly(c_[i]);
        return r;
    }

    /// p(x + a).
    UPoly shift(const F& a) const { return compose(UPoly({a, F(1)})); }

    /// x^deg p(1/x) with the given nominal degree.
    UPoly reversed(std::size_t nominal_degree) const {
        std::vector<F> r(nominal_degree + 1);
        for (std::size_t i = 0; i < c_.size() && i <= nominal_degree; ++i) r[nominal_degree - i] = c_[i];
        return UPoly(std::move(r));
    }

    UPoly monic() const {
        if (is_zero()) return *this;
        F inv = F(1) / lc();
        return inv * *this;
    }

    template <class G, class Fn>
    UPoly<G> map(Fn&& fn) const {
        std::vector<G> r;
        r.reserve(c_.size());
        for (const auto& x : c_) r.push_back(fn(x));
        return UPoly<G>(std::move(r));
    }

   private:
    void normalize() {
        while (!c_.empty() && detail::coeff_is_zero(c_.back())) c_.pop_back();
    }
    std::vector<F> c_;
};

template <class F>
bool is_zero(const UPoly<F>& p) {
    return p.is_zero();
}

/// Euclidean division over a field: a = q*b + r, deg r < deg b.
template <class F>
std::pair<UPoly<F>, UPoly<F>> divmod(const UPoly<F>& a, const UPoly<F>& b) {
    if (b.is_zero()) throw MathError("polynomial division by zero");
    std::vector<F> rem = a.coeffs();
    const int db = b.degree();
    if (a.degree() < db) return {UPoly<F>(), a};
    std::vector<F> quo(static_cast<std::size_t>(a.degree() - db + 1));
    const F inv = F(1) / b.lc();
    for (int i = a.degree(); i >= db; --i) {
        const F& top = rem[static_cast<std::size_t>(i)];
        if (is_zero(top)) continue;
        F q = top * inv;
        for (int j = 0; j <= db; ++j) {
            auto& slot = rem[static_cast<std::size_t>(i - db + j)];
            slot = slot - q * b[static_cast<std::size_t>(j)];
        }
        quo[static_cast<std::size_t>(i - db)] = std::move(q);
    }
    rem.resize(static_cast<std::size_t>(db));
    return {UPoly<F>(std::move(quo)), UPoly<F>(std::move(rem))};
}

template <class F>
UPoly<F> operator/(const UPoly<F>& a, const UPoly<F>& b) {
    return divmod(a, b).first;
}
template <class F>
UPoly<F> operator%(const UPoly<F>& a, const UPoly<F>& b) {
    return divmod(a, b).second;
}

/// Exact quotient; throws if b does not divide a.
template <class F>
UPoly<F> exact_div(const UPoly<F>& a, const UPoly<F>& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) throw MathError("inexact polynomial division");
    return q;
}

/// Monic gcd (zero if both are zero).
template <class F>
UPoly<F> gcd(UPoly<F> a, UPoly<F> b) {
    while (!b.is_zero()) {
        UPoly<F> r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

/// Returns (g, s, t) with s*a + t*b = g, g monic.
template <class F>
std::tuple<UPoly<F>, UPoly<F>, UPoly<F>> ext_gcd(const UPoly<F>& a, const UPoly<F>& b) {
    UPoly<F> r0 = a, r1 = b;
    UPoly<F> s0(F(1)), s1, t0, t1(F(1));
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        UPoly<F> s2 = s0 - q * s1;
        UPoly<F> t2 = t0 - q * t1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    F inv = F(1) / r0.lc();
    return {inv * r0, inv * s0, inv * t0};
}

/// Yun's squarefree decomposition over a field of characteristic zero:
/// returns [(a_1, 1), (a_2, 2), ...] with p = lc * prod a_i^i, a_i monic squarefree.
template <class F>
std::vector<std::pair<UPoly<F>, int>> squarefree_decomposition(const UPoly<F>& p) {
    std::vector<std::pair<UPoly<F>, int>> out;
    if (p.degree() <= 0) return out;
    UPoly<F> f = p.monic();
    UPoly<F> fp = f.derivative();
    UPoly<F> a = gcd(f, fp);
    UPoly<F> b = exact_div(f, a);
    UPoly<F> c = exact_div(fp, a);
    UPoly<F> d = c - b.derivative();
    int i = 1;
    while (b.degree() > 0) {
        UPoly<F> g = gcd(b, d);
        if (g.degree() > 0) out.emplace_back(g, i);
        b = exact_div(b, g);
        c = exact_div(d, g);
        d = c - b.derivative();
        ++i;
    }
    return out;
}

/// Monic squarefree part.
template <class F>
UPoly<F> squarefree_part(const UPoly<F>& p) {
    if (p.degree() <= 0) return p.is_zero() ? p : UPoly<F>(F(1));
    return exact_div(p.monic(), gcd(p, p.derivative()));
}

template <class F>
bool is_squarefree(const UPoly<F>& p) {
    return gcd(p, p.derivative()).degree() <= 0;
}

template <class F>
UPoly<F> pow(const UPoly<F>& p, unsigned e) {
    UPoly<F> r(F(1));
    for (unsigned i = 0; i < e; ++i) r = r * p;
    return r;
}

inline std::string to_string(const UPoly<Rat>& p, const std::string& var = "x") {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = p.degree(); i >= 0; --i) {
        const Rat& c = p[static_cast<std::size_t>(i)];
        if (is_zero(c)) continue;
        Rat a = abs(c);
        if (!first) os << (sgn(c) < 0 ? " - " : " + ");
        else if (sgn(c) < 0) os << "-";
        first = false;
        const bool unit = (a == 1);
        if (!unit || i == 0) {
            if (is_integer(a)) os << a.get_num().get_str();
            else os << "(" << to_pq(a) << ")";
        }
        if (i > 0) {
            if (!unit) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

/// Primitive integer polynomial with positive leading coefficient, same roots.
inline std::vector<Int> primitive_integer_coeffs(const UPoly<Rat>& p) {
    Int den = 1;
    for (const auto& c : p.coeffs()) den = lcm(den, Int(c.get_den()));
    std::vector<Int> out;
    out.reserve(p.size());
    Int g = 0;
    for (const auto& c : p.coeffs()) {
        Rat v = c * Rat(den);
        out.push_back(v.get_num());
        g = gcd(g, v.get_num());
    }
    if (g != 0) {
        if (sgn(out.back()) < 0) g = -g;
        for (auto& x : out) x /= g;
    }
    return out;
}

}  // namespace specrig
