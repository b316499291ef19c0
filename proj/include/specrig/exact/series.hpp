#pragma once

// Truncated Laurent series in one variable with explicit precision.
// A series carries coefficients for exponents val() .. prec()-1; everything
// at or beyond prec() is unknown. Series built from finite Laurent polynomials
// are exact (prec() == kExact) and keep exact zeros exact.

#include <algorithm>
#include <climits>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "specrig/exact/rational.hpp"

namespace specrig {

inline constexpr long kExact = LONG_MAX / 4;

inline long sat_add(long a, long b) {
    if (a >= kExact || b >= kExact) return kExact;
    long s = a + b;
    return s >= kExact ? kExact : s;
}

template <class K>
class Series {
   public:
    using coeff_type = K;

    /// Exact zero.
    Series() = default;
    /// Exact constant.
    Series(const K& c) {
        if (!is_zero(c)) c_.push_back(c);
    }
    Series(long c) : Series(K(c)) {}

    /// Coefficients for exponents v, v+1, ...; prec is the first unknown exponent.
    Series(long v, std::vector<K> coeffs, long prec) : val_(v), c_(std::move(coeffs)), prec_(prec) { normalize(); }

    static Series zero_to(long prec) { return Series(0, {}, prec); }
    static Series monomial(const K& c, long e) { return Series(e, {c}, kExact); }

    bool exact() const noexcept { return prec_ >= kExact; }
    long prec() const noexcept { return prec_; }
    /// All known coefficients vanish.
    bool known_zero() const noexcept { return c_.empty(); }
    bool is_exact_zero() const noexcept { return c_.empty() && exact(); }

    /// Valuation; kExact for the exact zero. Throws when no nonzero term is known.
    long val() const {
        if (!c_.empty()) return val_;
        if (exact()) return kExact;
        throw InsufficientTruncation("valuation undetermined below order " + std::to_string(prec_));
    }
    /// Valuation if known, otherwise prec() (a lower bound).
    long low_val() const noexcept { return c_.empty() ? prec_ : val_; }

    const K& lc() const {
        if (c_.empty()) throw InsufficientTruncation("leading coefficient undetermined");
        return c_.front();
    }

    /// Coefficient of t^e; throws if e is beyond the known precision.
    K coeff(long e) const {
        if (e >= prec_) throw InsufficientTruncation("coefficient of order " + std::to_string(e) + " not known");
        if (c_.empty() || e < val_) return K();
        std::size_t i = static_cast<std::size_t>(e - val_);
        return i < c_.size() ? c_[i] : K();
    }
    /// Highest exponent with a stored coefficient, or val()-1 when empty.
    long last_stored() const noexcept { return val_ + static_cast<long>(c_.size()) - 1; }
    const std::vector<K>& raw() const noexcept { return c_; }
    long raw_val() const noexcept { return val_; }

    Series truncate(long p) const {
        if (p >= prec_) return *this;
        std::vector<K> v;
        for (std::size_t i = 0; i < c_.size() && val_ + static_cast<long>(i) < p; ++i) v.push_back(c_[i]);
        return Series(val_, std::move(v), p);
    }

    Series operator-() const {
        Series r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }
    friend Series operator+(const Series& a, const Series& b) { return add(a, b, false); }
    friend Series operator-(const Series& a, const Series& b) { return add(a, b, true); }
    friend Series operator*(const Series& a, const Series& b) {
        long p = std::min(sat_add(a.prec_, b.low_val()), sat_add(b.prec_, a.low_val()));
        if (a.c_.empty() || b.c_.empty()) return zero_to(p);
        long v = a.val_ + b.val_;
        if (v >= p) return zero_to(p);
        std::size_t len = a.c_.size() + b.c_.size() - 1;
        if (p < kExact) len = std::min(len, static_cast<std::size_t>(p - v));
        std::vector<K> r(len);
        for (std::size_t i = 0; i < a.c_.size() && i < len; ++i) {
            if (is_zero(a.c_[i])) continue;
            for (std::size_t j = 0; j < b.c_.size() && i + j < len; ++j) r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
        }
        return Series(v, std::move(r), p);
    }
    friend Series operator*(const K& s, const Series& a) {
        if (is_zero(s)) return a.exact() ? Series() : zero_to(a.prec_);
        Series r = a;
        for (auto& x : r.c_) x = s * x;
        return r;
    }
    Series& operator+=(const Series& o) { return *this = *this + o; }
    Series& operator-=(const Series& o) { return *this = *this - o; }
    Series& operator*=(const Series& o) { return *this = *this * o; }

    /// Multiplication by t^k.
    Series shift(long k) const {
        Series r = *this;
        r.val_ += k;
        r.prec_ = sat_add(r.prec_, k);
        return r;
    }

    /// Substitution t -> t^q.
    Series ramify(long q) const {
        if (q == 1) return *this;
        std::vector<K> v;
        if (!c_.empty()) {
            v.resize((c_.size() - 1) * static_cast<std::size_t>(q) + 1);
            for (std::size_t i = 0; i < c_.size(); ++i) v[i * static_cast<std::size_t>(q)] = c_[i];
        }
        long p = exact() ? kExact : prec_ * q;
        return Series(val_ * q, std::move(v), p);
    }

    /// Multiplicative inverse; needs a known leading coefficient.
    /// Relative precision is preserved.
    Series inverse() const {
        if (c_.empty()) throw InsufficientTruncation("inverse of a series with unknown leading term");
        const long rel = exact() ? -1 : prec_ - val_;
        if (exact() && c_.size() == 1) return Series(-val_, {K(1) / c_[0]}, kExact);
        if (rel < 0) throw MathError("inverse of an exact non-monomial series needs a precision");
        return inverse_to(rel);
    }

    /// Inverse carrying `rel` terms of relative precision.
    Series inverse_to(long rel) const {
        if (c_.empty()) throw InsufficientTruncation("inverse of a series with unknown leading term");
        if (!exact()) rel = std::min(rel, prec_ - val_);
        const K inv0 = K(1) / c_[0];
        std::vector<K> r(static_cast<std::size_t>(std::max(rel, 0L)));
        for (long k = 0; k < rel; ++k) {
            K s = (k == 0) ? K(1) : K();
            for (long j = 1; j <= k; ++j) {
                std::size_t jj = static_cast<std::size_t>(j);
                if (jj < c_.size()) s = s - c_[jj] * r[static_cast<std::size_t>(k - j)];
            }
            r[static_cast<std::size_t>(k)] = s * inv0;
        }
        return Series(-val_, std::move(r), -val_ + rel);
    }

    template <class G, class Fn>
    Series<G> map(Fn&& fn) const {
        std::vector<G> v;
        v.reserve(c_.size());
        for (const auto& x : c_) v.push_back(fn(x));
        return Series<G>(val_, std::move(v), prec_);
    }

    /// Equality of the known parts; both precisions must agree.
    friend bool operator==(const Series& a, const Series& b) {
        if (a.prec_ != b.prec_ || a.c_.size() != b.c_.size()) return false;
        if (a.c_.empty()) return true;
        if (a.val_ != b.val_) return false;
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            if (!is_zero(a.c_[i] - b.c_[i])) return false;
        return true;
    }

   private:
    static Series add(const Series& a, const Series& b, bool negate_b) {
        long p = std::min(a.prec_, b.prec_);
        if (a.c_.empty() && b.c_.empty()) return zero_to(p);
        long lo = LONG_MAX;
        if (!a.c_.empty()) lo = a.val_;
        if (!b.c_.empty()) lo = std::min(lo, b.val_);
        if (lo >= p) return zero_to(p);
        long hi = LONG_MIN;
        if (!a.c_.empty()) hi = std::max(hi, a.last_stored());
        if (!b.c_.empty()) hi = std::max(hi, b.last_stored());
        if (p < kExact) hi = std::min(hi, p - 1);
        std::vector<K> r(static_cast<std::size_t>(hi - lo + 1));
        if (!a.c_.empty())
            for (std::size_t i = 0; i < a.c_.size(); ++i) {
                long e = a.val_ + static_cast<long>(i);
                if (e > hi) break;
                r[static_cast<std::size_t>(e - lo)] = a.c_[i];
            }
        if (!b.c_.empty())
            for (std::size_t i = 0; i < b.c_.size(); ++i) {
                long e = b.val_ + static_cast<long>(i);
                if (e > hi) break;
                auto& slot = r[static_cast<std::size_t>(e - lo)];
                if (negate_b) slot = slot - b.c_[i];
                else slot = slot + b.c_[i];
            }
        return Series(lo, std::move(r), p);
    }

    void normalize() {
        if (prec_ < kExact) {
            long keep = prec_ - val_;
            if (keep < 0) keep = 0;
            if (static_cast<long>(c_.size()) > keep) c_.resize(static_cast<std::size_t>(keep));
        }
        std::size_t lead = 0;
        while (lead < c_.size() && is_zero(c_[lead])) ++lead;
        if (lead > 0) {
            c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(lead));
            val_ += static_cast<long>(lead);
        }
        while (!c_.empty() && is_zero(c_.back())) c_.pop_back();
        if (c_.empty()) val_ = 0;
    }

    long val_ = 0;
    std::vector<K> c_;
    long prec_ = kExact;
};

template <class K>
bool is_zero(const Series<K>& s) {
    return s.is_exact_zero();
}

}  // namespace specrig
