#pragma once

// Algebraic number fields built as a chain of simple extensions of Q. Each
// field stores a primitive element with its minimal polynomial over Q, a link
// to the field it extends, and the image of that field's generator, so
// elements of a smaller field lift into any field further down the chain.

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "specrig/algebra/qfactor.hpp"
#include "specrig/exact/matrix.hpp"
#include "specrig/exact/resultant.hpp"
#include "specrig/exact/upoly.hpp"

namespace specrig {

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

class NumberField {
   public:
    NumberField(QPoly minpoly, FieldPtr parent, QPoly parent_image, std::string name)
        : minpoly_(minpoly.monic()), parent_(std::move(parent)), image_(std::move(parent_image)), name_(std::move(name)) {
        if (minpoly_.degree() < 1) throw MathError("field generator of degree < 1");
        depth_ = parent_ ? parent_->depth_ + 1 : 1;
    }

    const QPoly& minpoly() const noexcept { return minpoly_; }
    int degree() const noexcept { return minpoly_.degree(); }
    const FieldPtr& parent() const noexcept { return parent_; }
    /// Image of the parent's generator, as a polynomial in this field's generator.
    const QPoly& parent_image() const noexcept { return image_; }
    const std::string& name() const noexcept { return name_; }
    int depth() const noexcept { return depth_; }

    bool extends(const NumberField* other) const {
        for (const NumberField* f = this; f; f = f->parent_.get())
            if (f == other) return true;
        return false;
    }

   private:
    QPoly minpoly_;
    FieldPtr parent_;
    QPoly image_;
    std::string name_;
    int depth_ = 1;
};

class AlgNum {
   public:
    AlgNum() = default;
    AlgNum(long c) : rep_(Rat(c)) {}
    AlgNum(const Rat& c) : rep_(c) {}
    AlgNum(FieldPtr f, QPoly rep) : field_(std::move(f)), rep_(std::move(rep)) { reduce(); }

    static AlgNum generator(const FieldPtr& f) {
        if (f->degree() == 1) return AlgNum(-f->minpoly()[0]);
        return AlgNum(f, QPoly::x());
    }

    const FieldPtr& field() const noexcept { return field_; }
    const QPoly& rep() const noexcept { return rep_; }
    bool is_zero() const noexcept { return rep_.is_zero(); }
    bool is_rational() const { return rep_.degree() <= 0; }
    Rat rational_value() const {
        if (!is_rational()) throw MathError("algebraic number is not rational");
        return rep_.coeff(0);
    }

    /// The same number expressed in a field that extends this one's field.
    AlgNum lift_to(const FieldPtr& target) const {
        if (field_ == target || rep_.degree() <= 0) return AlgNum(target, rep_, Reduced{});
        if (!target || !target->extends(field_.get())) throw MathError("incompatible number fields");
        AlgNum up = lift_to(target->parent());
        QPoly r = up.rep_.compose(target->parent_image());
        return AlgNum(target, std::move(r));
    }

    friend AlgNum operator+(const AlgNum& a, const AlgNum& b) {
        FieldPtr f = common(a, b);
        return AlgNum(f, a.in(f) + b.in(f), Reduced{});
    }
    friend AlgNum operator-(const AlgNum& a, const AlgNum& b) {
        FieldPtr f = common(a, b);
        return AlgNum(f, a.in(f) - b.in(f), Reduced{});
    }
    AlgNum operator-() const { return AlgNum(field_, -rep_, Reduced{}); }
    friend AlgNum operator*(const AlgNum& a, const AlgNum& b) {
        FieldPtr f = common(a, b);
        return AlgNum(f, a.in(f) * b.in(f));
    }
    AlgNum inverse() const {
        if (rep_.is_zero()) throw MathError("division by zero in a number field");
        if (rep_.degree() == 0) return AlgNum(field_, QPoly(1 / rep_[0]), Reduced{});
        auto [g, s, t] = ext_gcd(rep_, field_->minpoly());
        if (g.degree() != 0) throw MathError("field modulus is not irreducible");
        return AlgNum(field_, s);
    }
    friend AlgNum operator/(const AlgNum& a, const AlgNum& b) { return a * b.inverse(); }
    AlgNum& operator+=(const AlgNum& o) { return *this = *this + o; }
    AlgNum& operator-=(const AlgNum& o) { return *this = *this - o; }
    AlgNum& operator*=(const AlgNum& o) { return *this = *this * o; }

    friend bool operator==(const AlgNum& a, const AlgNum& b) { return (a - b).is_zero(); }
    friend bool operator!=(const AlgNum& a, const AlgNum& b) { return !(a == b); }

    AlgNum pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        AlgNum r(1), b = *this;
        while (e > 0) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    /// Matrix of multiplication by this element on the power basis of its field.
    Matrix<Rat> multiplication_matrix() const {
        const int d = field_ ? field_->degree() : 1;
        Matrix<Rat> M(static_cast<std::size_t>(d), static_cast<std::size_t>(d));
        for (int j = 0; j < d; ++j) {
            QPoly col = field_ ? (rep_ * QPoly::monomial(Rat(1), static_cast<std::size_t>(j))) % field_->minpoly() : rep_;
            for (int i = 0; i < d; ++i) M(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = col.coeff(static_cast<std::size_t>(i));
        }
        return M;
    }

    /// Minimal polynomial over Q (monic).
    QPoly minpoly_q() const {
        if (is_rational()) return QPoly({-rational_value(), Rat(1)});
        auto desc = berkowitz(multiplication_matrix());
        QPoly cp(std::vector<Rat>(desc.rbegin(), desc.rend()));
        return squarefree_part(cp);
    }

    std::string to_string() const {
        if (is_rational()) return to_short(rep_.coeff(0));
        return specrig::to_string(rep_, field_->name());
    }

   private:
    struct Reduced {};
    AlgNum(FieldPtr f, QPoly rep, Reduced) : field_(std::move(f)), rep_(std::move(rep)) {}

    static FieldPtr common(const AlgNum& a, const AlgNum& b) {
        if (a.field_ == b.field_) return a.field_;
        if (a.rep_.degree() <= 0) return b.field_ ? b.field_ : a.field_;
        if (b.rep_.degree() <= 0) return a.field_ ? a.field_ : b.field_;
        if (b.field_->extends(a.field_.get())) return b.field_;
        if (a.field_->extends(b.field_.get())) return a.field_;
        throw MathError("arithmetic between unrelated number fields");
    }
    QPoly in(const FieldPtr& f) const {
        if (f == field_ || rep_.degree() <= 0) return rep_;
        return lift_to(f).rep_;
    }
    void reduce() {
        if (field_ && rep_.degree() >= field_->degree()) rep_ = rep_ % field_->minpoly();
    }

    FieldPtr field_;
    QPoly rep_;
};

inline bool is_zero(const AlgNum& x) { return x.is_zero(); }

using KPoly = UPoly<AlgNum>;

inline KPoly to_kpoly(const QPoly& p) {
    return p.map<AlgNum>([](const Rat& c) { return AlgNum(c); });
}

/// The field holding all coefficients of p (the deepest one), or null for Q.
inline FieldPtr field_of(const KPoly& p) {
    FieldPtr f;
    for (const auto& c : p.coeffs()) {
        if (c.is_rational()) continue;
        if (!f || c.field()->extends(f.get())) f = c.field();
    }
    return f;
}

/// Norm from Q(theta)[x] down to Q[x]: Res_y(m(y), P(x, y)).
inline QPoly norm_poly(const KPoly& p, const FieldPtr& f) {
    if (!f) return p.map<Rat>([](const AlgNum& c) { return c.rational_value(); });
    const int d = f->degree();
    // Regroup p = sum_i c_i(theta) x^i by powers of theta.
    YPoly<QPoly> P(static_cast<std::size_t>(d));
    for (int i = 0; i <= p.degree(); ++i) {
        QPoly r = p[static_cast<std::size_t>(i)].lift_to(f).rep();
        for (int j = 0; j <= r.degree(); ++j)
            P[static_cast<std::size_t>(j)] += QPoly::monomial(r[static_cast<std::size_t>(j)], static_cast<std::size_t>(i));
    }
    trim(P);
    YPoly<QPoly> M;
    for (const auto& c : f->minpoly().coeffs()) M.push_back(QPoly(c));
    if (P.empty()) return QPoly();
    if (P.size() == 1) return pow(P[0], static_cast<unsigned>(d));
    return resultant(M, P);
}

struct FieldOptions {
    int max_field_degree = 16;
    QFactorOptions qfactor;
};

namespace detail {

inline KPoly shift_by(const KPoly& p, const AlgNum& a) { return p.compose(KPoly({a, AlgNum(1)})); }

inline KPoly kpoly_in(const QPoly& q, const FieldPtr& f) {
    return q.map<AlgNum>([&](const Rat& c) { return AlgNum(f, QPoly(c)); });
}

/// Smallest s >= 0 with Norm(p(x - s*theta)) squarefree, and that norm.
inline std::pair<long, QPoly> squarefree_norm(const KPoly& p, const FieldPtr& f) {
    const AlgNum theta = AlgNum::generator(f);
    for (long s = 0; s < 64; ++s) {
        KPoly ps = s == 0 ? p : shift_by(p, -(AlgNum(s) * theta));
        QPoly N = norm_poly(ps, f);
        if (is_squarefree(N)) return {s, N};
    }
    throw InternalInconsistency("no squarefree norm found");
}

}  // namespace detail

/// Monic irreducible factors over the field f of a squarefree polynomial (Trager).
inline std::vector<KPoly> factor_squarefree_over(const KPoly& p, const FieldPtr& f, const FieldOptions& opt = {}) {
    if (p.degree() <= 0) return {};
    if (p.degree() == 1) return {p.monic()};
    if (!f || f->degree() == 1) {
        std::vector<KPoly> out;
        QPoly q = p.map<Rat>([&](const AlgNum& c) { return c.lift_to(f).rep().coeff(0); });
        for (auto& [g, m] : factor_rational(q, opt.qfactor)) out.push_back(detail::kpoly_in(g, f));
        return out;
    }
    auto [s, N] = detail::squarefree_norm(p, f);
    const AlgNum theta = AlgNum::generator(f);
    KPoly ps = s == 0 ? p : detail::shift_by(p, -(AlgNum(s) * theta));
    std::vector<KPoly> out;
    for (auto& [g, m] : factor_rational(N, opt.qfactor)) {
        KPoly h = gcd(ps, detail::kpoly_in(g, f));
        if (h.degree() <= 0) continue;
        out.push_back(s == 0 ? h : detail::shift_by(h, AlgNum(s) * theta).monic());
    }
    return out;
}

/// A simple extension of f by a root of the irreducible polynomial h over f.
/// Returns the new field and the adjoined root.
inline std::pair<FieldPtr, AlgNum> adjoin_root(const KPoly& h, const FieldPtr& f, const std::string& name,
                                               const FieldOptions& opt = {}) {
    if (h.degree() < 2) throw MathError("adjoining a root of a linear polynomial");
    const int base = f ? f->degree() : 1;
    if (base * h.degree() > opt.max_field_degree)
        throw UnsupportedExtension("field degree " + std::to_string(base * h.degree()) + " exceeds the bound");
    if (!f || f->degree() == 1) {
        QPoly q = h.map<Rat>([&](const AlgNum& c) { return c.lift_to(f).rep().coeff(0); });
        auto nf = std::make_shared<const NumberField>(q, f, f ? QPoly(-f->minpoly()[0]) : QPoly::x(), name);
        return {nf, AlgNum::generator(nf)};
    }
    auto [s, N] = detail::squarefree_norm(h, f);
    // Work first in a detached copy to find where the old generator goes.
    auto tmp = std::make_shared<const NumberField>(N, nullptr, QPoly(), name);
    const AlgNum gamma = AlgNum::generator(tmp);
    KPoly H;
    {
        // H(t) = sum_i h_i(t) (gamma - s t)^i, h_i the coefficient of h as a polynomial in theta.
        KPoly lin({gamma, AlgNum(-s)});
        KPoly acc(AlgNum(1));
        for (int i = 0; i <= h.degree(); ++i) {
            QPoly hi = h[static_cast<std::size_t>(i)].lift_to(f).rep();
            H += detail::kpoly_in(hi, tmp) * acc;
            acc = acc * lin;
        }
    }
    KPoly g = gcd(detail::kpoly_in(f->minpoly(), tmp), H);
    if (g.degree() != 1) throw InternalInconsistency("primitive element recovery failed");
    QPoly image = (-g[0]).rep();
    auto nf = std::make_shared<const NumberField>(N, f, image, name);
    AlgNum gamma_nf = AlgNum::generator(nf);
    AlgNum theta_nf(nf, image);
    return {nf, gamma_nf - AlgNum(s) * theta_nf};
}

/// Keeps the current field of a computation and extends it on demand.
class FieldContext {
   public:
    explicit FieldContext(FieldOptions opt = {}) : opt_(opt) {}
    FieldContext(FieldPtr start, FieldOptions opt) : opt_(opt), field_(std::move(start)) {
        if (field_) count_ = field_->depth();
    }

    const FieldPtr& field() const noexcept { return field_; }
    int degree() const noexcept { return field_ ? field_->degree() : 1; }
    const FieldOptions& options() const noexcept { return opt_; }

    /// All roots of p with multiplicities, extending the field as needed.
    std::vector<std::pair<AlgNum, int>> roots(const KPoly& p) {
        std::vector<std::pair<AlgNum, int>> out;
        for (auto& [part, mult] : squarefree_decomposition(p)) {
            KPoly rest = part;
            while (rest.degree() > 0) {
                auto fs = factor_squarefree_over(rest, field_, opt_);
                const KPoly* nonlinear = nullptr;
                for (const auto& h : fs) {
                    if (h.degree() == 1) {
                        out.emplace_back(-h[0] / h[1], mult);
                        rest = exact_div(rest, h);
                    } else if (!nonlinear || h.degree() < nonlinear->degree()) {
                        nonlinear = &h;
                    }
                }
                if (nonlinear) {
                    auto [nf, root] = adjoin_root(*nonlinear, field_, "a" + std::to_string(++count_), opt_);
                    field_ = nf;
                    out.emplace_back(root, mult);
                    rest = exact_div(rest, KPoly({-root, AlgNum(1)}));
                }
            }
        }
        return out;
    }

    /// A primitive k-th root of unity.
    AlgNum root_of_unity(long k) {
        if (k <= 2) return AlgNum(k == 2 ? -1 : 1);
        std::vector<AlgNum> c(static_cast<std::size_t>(k + 1));
        c[0] = AlgNum(-1);
        c[static_cast<std::size_t>(k)] = AlgNum(1);
        for (auto& [r, m] : roots(KPoly(c))) {
            bool primitive = true;
            for (long d = 1; d < k && primitive; ++d)
                if (k % d == 0 && r.pow(d) == AlgNum(1)) primitive = false;
            if (primitive) return r;
        }
        throw InternalInconsistency("no primitive root of unity found");
    }

   private:
    FieldOptions opt_;
    FieldPtr field_;
    int count_ = 0;
};

}  // namespace specrig
