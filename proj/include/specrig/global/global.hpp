#pragma once

// Global invariants of the spectral curve and of the connection, and the
// verdicts comparing them.

#include <algorithm>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "specrig/algebra/numfield.hpp"
#include "specrig/algebra/qfactor.hpp"
#include "specrig/exact/hensel.hpp"
#include "specrig/germ/germ.hpp"

namespace specrig {

/// n X_0 + b f on the compactified cotangent bundle of a genus g curve.
struct CurveClass {
    long n = 1;
    long b = 0;
    long g = 0;
};

inline long total_inf_intersection(const std::vector<GermData>& germs) {
    long b = 0;
    for (const auto& g : germs) b += g.local_inf;
    return b;
}

inline Rat arithmetic_genus_exact(const CurveClass& c) {
    return Rat(c.n * c.n * (2 * c.g - 2) + (2 * c.n - 2) * c.b, 2) + 1;
}

inline long arithmetic_genus(const CurveClass& c) {
    Rat g = arithmetic_genus_exact(c);
    g.canonicalize();
    if (!is_integer(g)) throw InternalInconsistency("arithmetic genus is not an integer");
    return to_long(g);
}

inline long euler_char_normalization(long g_a, long sum_delta) { return 2 - 2 * g_a + 2 * sum_delta; }

inline long rigidity_index(long n, long g, const std::vector<long>& delta_ends) {
    long r = (2 - 2 * g) * n * n;
    for (auto d : delta_ends) r -= d;
    return r;
}

enum class Verdict { Pass, Fail, NotApplicable };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        default: return "not-applicable";
    }
}

struct IdentityCheck {
    Verdict verdict = Verdict::NotApplicable;
    long lhs = 0;
    long rhs = 0;
    std::string reason;
};

/// mu (oracle) == -delta(End) - r_C + 2(n-1)(C, X_inf) + 1.
inline IdentityCheck verify_milnor(const GermData& g, long delta_end, const MilnorOracle& o) {
    IdentityCheck c;
    c.lhs = o.mu;
    c.rhs = -delta_end - g.r_C() + 2 * (g.n - 1) * g.local_inf + 1;
    c.verdict = c.lhs == c.rhs ? Verdict::Pass : Verdict::Fail;
    return c;
}

/// 2 delta - 2(n-1)(C, X_inf) == -delta(End).
inline IdentityCheck verify_delta_identity(const GermData& g, long delta_end) {
    IdentityCheck c;
    c.lhs = 2 * g.delta - 2 * (g.n - 1) * g.local_inf;
    c.rhs = -delta_end;
    c.verdict = c.lhs == c.rhs ? Verdict::Pass : Verdict::Fail;
    return c;
}

struct Cohomology {
    long h0 = 1, h1 = 0, h2 = 1;
    std::optional<std::string> warning;
};

inline Cohomology cohomology_dims(long rig) {
    Cohomology c;
    c.h1 = 2 - rig;
    if (c.h1 < 0) c.warning = "h1 = 2 - rig is negative; the connection is likely reducible";
    return c;
}

enum class Irreducibility { Irreducible, Reducible, Unknown };

inline const char* to_string(Irreducibility s) {
    switch (s) {
        case Irreducibility::Irreducible: return "irreducible";
        case Irreducibility::Reducible: return "reducible";
        default: return "unknown";
    }
}

struct IrreducibilityReport {
    Irreducibility status = Irreducibility::Unknown;
    std::string reason;
    /// Degrees in y of a certified factorization, when reducible.
    std::vector<long> factor_degrees;
};

namespace detail {

/// A monic factor of F over Q(z) whose specialization at z0 is A0, if the
/// Hensel lift reconstructs one.
inline std::optional<UPoly<RatFn>> lift_factor(const YPoly<RatFn>& F, const Rat& z0, const QPoly& A0, const QPoly& B0) {
    auto [D, P] = clear_denominators(F);
    long degz = 0;
    for (const auto& c : P) degz = std::max(degz, static_cast<long>(c.degree()));
    const long M = static_cast<long>(D.degree()) + degz + 1;
    std::vector<QPoly> slices(static_cast<std::size_t>(M));
    for (std::size_t j = 0; j < F.size(); ++j) {
        const auto s = to_series(F[j].shift(z0), M);
        for (long k = 0; k < M; ++k) {
            Rat v = s.coeff(k);
            if (!is_zero(v)) slices[static_cast<std::size_t>(k)].set_coeff(j, v);
        }
    }
    const auto A = hensel_lift(slices, A0, B0, M).first;
    // D(z0 + w) A(w, y) has polynomial coefficients of w-degree < M.
    const auto Dw = to_series(RatFn(D).shift(z0), M);
    const QPoly back({-z0, Rat(1)});
    std::vector<RatFn> h(static_cast<std::size_t>(A0.degree() + 1));
    for (int j = 0; j <= A0.degree(); ++j) {
        std::vector<Rat> c(static_cast<std::size_t>(M));
        for (long k = 0; k < M; ++k)
            for (long i = 0; i <= k; ++i) c[static_cast<std::size_t>(k)] += Dw.coeff(i) * A[static_cast<std::size_t>(k - i)].coeff(static_cast<std::size_t>(j));
        h[static_cast<std::size_t>(j)] = RatFn(QPoly(std::move(c)).compose(back)) / RatFn(D);
    }
    UPoly<RatFn> H(std::move(h));
    UPoly<RatFn> G(std::vector<RatFn>(F.begin(), F.end()));
    if (H.degree() < 1 || H.degree() >= G.degree()) return std::nullopt;
    if (!(G % H).is_zero()) return std::nullopt;
    return H;
}

}  // namespace detail

/// Irreducible if some pole has one cluster of full ramification; reducible
/// if a factorization over Q(z) is found and verified; unknown otherwise.
inline IrreducibilityReport irreducibility_status(const YPoly<RatFn>& F, const std::vector<LocalModule>& locals) {
    IrreducibilityReport rep;
    const long n = static_cast<long>(F.size()) - 1;
    if (n == 1) {
        rep.status = Irreducibility::Irreducible;
        rep.reason = "rank one";
        return rep;
    }
    for (const auto& L : locals)
        if (L.puiseux.clusters.size() == 1 && L.puiseux.clusters[0].r == n) {
            rep.status = Irreducibility::Irreducible;
            rep.reason = "totally ramified at " + to_string(L.point);
            return rep;
        }
    // Specialize at a point where all coefficients are finite and F stays
    // squarefree.
    for (long k = 0; k < 40; ++k) {
        const Rat z0((k % 2 == 0 ? 1 : -1) * ((k + 1) / 2));
        QPoly f;
        bool finite = true;
        for (std::size_t j = 0; j < F.size() && finite; ++j) {
            if (is_zero(F[j].den().eval(z0))) finite = false;
            else f.set_coeff(j, F[j].eval(z0));
        }
        if (!finite || !is_squarefree(f)) continue;
        std::vector<std::pair<QPoly, int>> fs;
        try {
            fs = factor_rational(f);
        } catch (const UnsupportedExtension& e) {
            rep.reason = std::string("specialization could not be factored: ") + e.what();
            return rep;
        }
        if (fs.size() == 1) {
            rep.reason = "irreducible over Q(z); no totally ramified pole certifies absolute irreducibility";
            return rep;
        }
        const std::size_t s = fs.size();
        for (unsigned mask = 1; mask + 1 < (1u << s); ++mask) {
            if (!(mask & 1u)) continue;
            QPoly A0(Rat(1)), B0(Rat(1));
            for (std::size_t i = 0; i < s; ++i) {
                if ((mask >> i) & 1u) A0 = A0 * fs[i].first;
                else B0 = B0 * fs[i].first;
            }
            auto H = detail::lift_factor(F, z0, A0, B0);
            if (H) {
                rep.status = Irreducibility::Reducible;
                rep.reason = "factor of degree " + std::to_string(H->degree()) + " over Q(z)";
                rep.factor_degrees = {static_cast<long>(H->degree()), n - static_cast<long>(H->degree())};
                return rep;
            }
        }
        rep.reason = "no factor over Q(z) lifts from the specialization";
        return rep;
    }
    rep.reason = "no admissible specialization point";
    return rep;
}

enum class Smoothness { Smooth, Singular, Indeterminate };

inline const char* to_string(Smoothness s) {
    switch (s) {
        case Smoothness::Smooth: return "smooth";
        case Smoothness::Singular: return "singular";
        default: return "indeterminate";
    }
}

struct SmoothnessReport {
    Smoothness status = Smoothness::Smooth;
    std::vector<std::string> singular_points;
    std::string reason;
};

namespace detail {

inline KPoly specialize(const YPoly<QPoly>& P, const AlgNum& theta) {
    std::vector<AlgNum> c;
    for (const auto& q : P) c.push_back(q.eval(theta));
    return KPoly(std::move(c));
}

/// Whether P, P_y and P_z share a zero over the root theta of the fiber.
inline bool singular_over(const YPoly<QPoly>& P, const AlgNum& theta) {
    YPoly<QPoly> Pz;
    for (const auto& q : P) Pz.push_back(q.derivative());
    KPoly f = specialize(P, theta);
    KPoly g = gcd(gcd(f, f.derivative()), specialize(Pz, theta));
    return g.degree() > 0;
}

}  // namespace detail

/// Singular points of the spectral curve over the complement of the poles,
/// including the fiber over infinity when infinity is not a pole.
inline SmoothnessReport smoothness_check(const MatRF& A, const std::vector<Point>& poles) {
    SmoothnessReport rep;
    auto [D, P] = clear_denominators(charpoly(A));
    trim(P);
    YPoly<QPoly> Pz;
    for (const auto& q : P) Pz.push_back(q.derivative());
    QPoly T = gcd(resultant(P, y_derivative(P), QPoly(Rat(1))), resultant(P, Pz, QPoly(Rat(1))));
    if (T.degree() > 0) {
        std::vector<std::pair<QPoly, int>> fs;
        try {
            fs = factor_rational(squarefree_part(T));
        } catch (const UnsupportedExtension& e) {
            rep.status = Smoothness::Indeterminate;
            rep.reason = std::string("candidate locus could not be factored: ") + e.what();
            return rep;
        }
        for (const auto& [phi, mult] : fs) {
            (void)mult;
            AlgNum theta;
            std::string where;
            if (phi.degree() == 1) {
                Rat a = -phi[0] / phi[1];
                if (std::find(poles.begin(), poles.end(), Point::at(a)) != poles.end()) continue;
                theta = AlgNum(a);
                where = "z = " + to_short(a);
            } else {
                auto f = std::make_shared<const NumberField>(phi, nullptr, QPoly(), "s");
                theta = AlgNum::generator(f);
                where = "z a root of " + to_string(phi, "z");
            }
            if (detail::singular_over(P, theta)) rep.singular_points.push_back(where);
        }
    }
    const Point inf = Point::at_infinity();
    if (std::find(poles.begin(), poles.end(), inf) == poles.end()) {
        auto [Dx, Px] = clear_denominators(charpoly(local_matrix(A, inf)));
        trim(Px);
        if (detail::singular_over(Px, AlgNum(0))) rep.singular_points.push_back("z = inf");
    }
    if (!rep.singular_points.empty()) {
        rep.status = Smoothness::Singular;
        rep.reason = "singular point over " + rep.singular_points.front();
    }
    return rep;
}

}  // namespace specrig
