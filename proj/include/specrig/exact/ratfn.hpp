#pragma once

// Rational functions in one variable over Q, kept reduced with monic denominator.

#include <climits>
#include <string>
#include <utility>

#include "specrig/exact/rational.hpp"
#include "specrig/exact/upoly.hpp"

namespace specrig {

using QPoly = UPoly<Rat>;

/// Sentinel valuation of the zero function.
inline constexpr long kInfiniteOrder = LONG_MAX / 4;

/// A point of the projective line with rational affine coordinate, or infinity.
struct Point {
    bool infinite = false;
    Rat value;

    static Point at(Rat v) { return Point{false, std::move(v)}; }
    static Point at_infinity() { return Point{true, Rat(0)}; }

    friend bool operator==(const Point& a, const Point& b) {
        return a.infinite == b.infinite && (a.infinite || a.value == b.value);
    }
    /// Finite points ascending, infinity last.
    friend bool operator<(const Point& a, const Point& b) {
        if (a.infinite != b.infinite) return b.infinite;
        return !a.infinite && a.value < b.value;
    }
};

inline std::string to_string(const Point& p) { return p.infinite ? "inf" : to_short(p.value); }

class RatFn {
   public:
    RatFn() : num_(), den_(Rat(1)) {}
    RatFn(const Rat& c) : num_(c), den_(Rat(1)) {}
    RatFn(long c) : RatFn(Rat(c)) {}
    explicit RatFn(QPoly p) : num_(std::move(p)), den_(Rat(1)) {}
    RatFn(QPoly n, QPoly d) : num_(std::move(n)), den_(std::move(d)) { reduce(); }

    static RatFn var() { return RatFn(QPoly::x()); }

    const QPoly& num() const noexcept { return num_; }
    const QPoly& den() const noexcept { return den_; }
    bool is_zero() const noexcept { return num_.is_zero(); }
    bool is_polynomial() const { return den_.degree() == 0; }
    bool is_constant() const { return den_.degree() == 0 && num_.degree() <= 0; }
    Rat constant_value() const { return num_.coeff(0); }

    RatFn operator-() const { return RatFn(-num_, den_, Reduced{}); }
    friend RatFn operator+(const RatFn& a, const RatFn& b) {
        if (a.den_ == b.den_) return RatFn(a.num_ + b.num_, a.den_);
        return RatFn(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFn operator-(const RatFn& a, const RatFn& b) { return a + (-b); }
    friend RatFn operator*(const RatFn& a, const RatFn& b) {
        if (a.is_zero() || b.is_zero()) return RatFn();
        return RatFn(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatFn operator/(const RatFn& a, const RatFn& b) {
        if (b.is_zero()) throw MathError("division by the zero rational function");
        return RatFn(a.num_ * b.den_, a.den_ * b.num_);
    }
    RatFn& operator+=(const RatFn& o) { return *this = *this + o; }
    RatFn& operator-=(const RatFn& o) { return *this = *this - o; }
    RatFn& operator*=(const RatFn& o) { return *this = *this * o; }
    RatFn& operator/=(const RatFn& o) { return *this = *this / o; }

    friend bool operator==(const RatFn& a, const RatFn& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend bool operator!=(const RatFn& a, const RatFn& b) { return !(a == b); }

    RatFn pow(long e) const {
        if (e < 0) return RatFn(Rat(1)) / pow(-e);
        RatFn r(Rat(1));
        for (long i = 0; i < e; ++i) r = r * *this;
        return r;
    }

    /// Value at a rational point; throws when the point is a pole.
    Rat eval(const Rat& a) const {
        Rat d = den_(a);
        if (specrig::is_zero(d)) throw MathError("evaluation at a pole");
        return num_(a) / d;
    }

    /// f(z + a).
    RatFn shift(const Rat& a) const { return RatFn(num_.shift(a), den_.shift(a)); }

    /// f(1/w) as a function of w.
    RatFn invert_variable() const {
        if (is_zero()) return *this;
        const int dn = num_.degree(), dd = den_.degree();
        QPoly rn = num_.reversed(static_cast<std::size_t>(dn));
        QPoly rd = den_.reversed(static_cast<std::size_t>(dd));
        if (dd >= dn) rn = rn * QPoly::monomial(Rat(1), static_cast<std::size_t>(dd - dn));
        else rd = rd * QPoly::monomial(Rat(1), static_cast<std::size_t>(dn - dd));
        return RatFn(rn, rd);
    }

    /// f(a + x) for a finite point, f(1/x) for infinity.
    RatFn at_point(const Point& p) const { return p.infinite ? invert_variable() : shift(p.value); }

    /// Order of vanishing at the origin of the variable.
    long order_at_zero() const {
        if (is_zero()) return kInfiniteOrder;
        return static_cast<long>(num_.low_degree()) - static_cast<long>(den_.low_degree());
    }

    RatFn derivative() const {
        return RatFn(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
    }

    std::string to_string(const std::string& var = "z") const {
        if (den_.degree() == 0) return specrig::to_string(num_, var);
        return "(" + specrig::to_string(num_, var) + ")/(" + specrig::to_string(den_, var) + ")";
    }

   private:
    struct Reduced {};
    RatFn(QPoly n, QPoly d, Reduced) : num_(std::move(n)), den_(std::move(d)) {}

    void reduce() {
        if (den_.is_zero()) throw MathError("rational function with zero denominator");
        if (num_.is_zero()) {
            den_ = QPoly(Rat(1));
            return;
        }
        QPoly g = gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = exact_div(num_, g);
            den_ = exact_div(den_, g);
        }
        Rat l = den_.lc();
        if (l != 1) {
            Rat inv = 1 / l;
            num_ = inv * num_;
            den_ = inv * den_;
        }
    }

    QPoly num_;
    QPoly den_;
};

inline bool is_zero(const RatFn& f) { return f.is_zero(); }

/// Valuation at a point of the line; kInfiniteOrder for zero. At infinity this
/// is the order in w = 1/z of the function itself (not of a differential).
inline long valuation(const RatFn& f, const Point& a) { return f.at_point(a).order_at_zero(); }

}  // namespace specrig
