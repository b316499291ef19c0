#pragma once

// Newton-Puiseux expansion of every root of a squarefree polynomial in y over
// Q((z)). Each root is carried explicitly over a number field that grows as
// residual polynomials demand, so contacts between roots and the monodromy
// action z^(1/R) -> xi z^(1/R) become direct comparisons of expansions.

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "specrig/algebra/numfield.hpp"
#include "specrig/exact/localize.hpp"
#include "specrig/puiseux/newton.hpp"

namespace specrig {

using KSeries = Series<AlgNum>;

struct PuiseuxTerm {
    /// Exponent of z.
    Rat exponent;
    AlgNum coeff;
};

/// One root y(z) = sum c_e z^e, expanded until its next exponent exceeds the
/// expansion depth, or exactly when the expansion terminates.
struct RootExpansion {
    std::vector<PuiseuxTerm> terms;
    /// Product of the edge denominators along the path; exponents lie in (1/ramification)Z.
    long ramification = 1;
    /// The root equals the finite sum of its terms.
    bool exact = false;

    /// Valuation of the root; nullopt for the zero root.
    std::optional<Rat> order() const {
        if (terms.empty()) return std::nullopt;
        return terms.front().exponent;
    }
};

/// A Galois orbit of roots under monodromy.
struct PuiseuxCluster {
    std::vector<std::size_t> members;
    long r = 1;
    std::optional<Rat> order;
    std::size_t representative() const { return members.front(); }
    bool unbounded() const { return order && sgn(*order) < 0; }
};

struct PuiseuxOptions {
    FieldOptions field;
    /// Terms are produced at least up to this exponent of z.
    Rat min_depth = Rat(-1);
    long initial_precision = 0;
    long max_precision = 0;
};

struct PuiseuxResult {
    std::size_t n = 0;
    std::vector<RootExpansion> roots;
    std::vector<PuiseuxCluster> clusters;
    /// contact[i][j] for i != j: valuation of y_i - y_j.
    std::vector<std::vector<Rat>> contact;
    /// Image of each root under z^(1/R) -> xi z^(1/R).
    std::vector<std::size_t> monodromy;
    long global_ramification = 1;
    Rat depth;
    long precision_used = 0;
    FieldPtr field;

    /// Root index of xi^k applied to root i.
    std::size_t conjugate(std::size_t i, long k) const {
        for (long s = 0; s < k; ++s) i = monodromy[i];
        return i;
    }
    std::size_t cluster_of(std::size_t root) const {
        for (std::size_t c = 0; c < clusters.size(); ++c)
            if (std::find(clusters[c].members.begin(), clusters[c].members.end(), root) != clusters[c].members.end()) return c;
        throw InternalInconsistency("root outside every cluster");
    }
};

namespace detail {

struct PuiseuxNode {
    YPoly<KSeries> G;  // in t, z = t^R
    long R = 1;
    std::vector<PuiseuxTerm> terms;
    long mult = 0;
};

inline YPoly<KSeries> taylor_shift(const YPoly<KSeries>& G, const KSeries& shift) {
    // Horner: sum g_i (shift + Y)^i.
    YPoly<KSeries> acc;
    for (std::size_t i = G.size(); i-- > 0;) {
        YPoly<KSeries> next(acc.size() + 1);
        for (std::size_t j = 0; j < acc.size(); ++j) {
            next[j] += acc[j] * shift;
            next[j + 1] += acc[j];
        }
        next[0] += G[i];
        acc = std::move(next);
    }
    while (acc.size() > 1 && acc.back().is_exact_zero()) acc.pop_back();
    return acc;
}

class PuiseuxRun {
   public:
    PuiseuxRun(const YPoly<QSeries>& F, const PuiseuxOptions& opt) : ctx_(opt.field), opt_(opt) {
        root_.G.reserve(F.size());
        for (const auto& c : F) root_.G.push_back(c.map<AlgNum>([](const Rat& x) { return AlgNum(x); }));
        root_.mult = static_cast<long>(F.size()) - 1;
    }

    /// Splits all roots; leaves with a single root stop right after separation.
    void separate() {
        std::vector<PuiseuxNode> stack = {root_};
        while (!stack.empty()) {
            PuiseuxNode node = std::move(stack.back());
            stack.pop_back();
            expand(node, stack);
        }
    }

    /// Continues every simple root until its next exponent exceeds depth.
    void deepen(const Rat& depth) {
        for (auto& leaf : leaves_) {
            while (!leaf.exact && step_simple(leaf, depth)) {
            }
        }
    }

    struct Leaf {
        PuiseuxNode node;
        bool exact = false;
    };

    std::vector<Leaf>& leaves() { return leaves_; }
    FieldContext& ctx() { return ctx_; }

   private:
    void emit_leaf(PuiseuxNode node, bool exact) { leaves_.push_back(Leaf{std::move(node), exact}); }

    void expand(PuiseuxNode& node, std::vector<PuiseuxNode>& stack) {
        if (node.mult == 1 && !node.terms.empty()) {
            const bool exact = node.G[0].is_exact_zero();
            emit_leaf(std::move(node), exact);
            return;
        }
        NewtonPolygon<AlgNum> P = newton_polygon(node.G, node.mult);
        if (P.y_valuation > 1) throw MathError("characteristic polynomial is not squarefree");
        if (P.y_valuation == 1) {
            PuiseuxNode exact_leaf = node;
            exact_leaf.mult = 1;
            emit_leaf(std::move(exact_leaf), true);
        }
        const Rat last = node.terms.empty() ? Rat(0) : node.terms.back().exponent * Rat(node.R);
        for (const auto& E : P.edges) {
            if (!node.terms.empty() && E.root_order <= last)
                throw InternalInconsistency("Newton edge does not refine the expansion");
            const Rat& rho = E.root_order;  // in units of t
            const long q = rho.get_den().get_si();
            const long a = rho.get_num().get_si();
            for (auto& [c, mu] : ctx_.roots(E.residual)) {
                if (c.is_zero()) continue;
                PuiseuxNode child;
                child.R = node.R * q;
                child.mult = mu;
                child.terms = node.terms;
                child.terms.push_back({rho / Rat(node.R), c});
                YPoly<KSeries> Gq;
                Gq.reserve(node.G.size());
                for (const auto& g : node.G) Gq.push_back(g.ramify(q));
                child.G = taylor_shift(Gq, KSeries::monomial(c, a));
                stack.push_back(std::move(child));
            }
        }
    }

    /// One linear Newton step on a simple root; false if the next exponent exceeds depth.
    bool step_simple(Leaf& leaf, const Rat& depth) {
        PuiseuxNode& node = leaf.node;
        if (node.G[0].is_exact_zero()) {
            leaf.exact = true;
            return false;
        }
        const KSeries& g0 = node.G[0];
        const KSeries& g1 = node.G[1];
        if (g1.known_zero()) throw InsufficientTruncation("simple root continuation needs more terms");
        if (g0.known_zero()) {
            // The next exponent is at least prec(g0) - val(g1).
            if (Rat(g0.prec() - g1.val()) / Rat(node.R) > depth) return false;
            throw InsufficientTruncation("simple root continuation needs more terms");
        }
        const long v0 = g0.val(), v1 = g1.val();
        // The other roots are smaller, so known higher coefficients lie strictly above the edge.
        for (std::size_t i = 2; i < node.G.size(); ++i) {
            const auto& g = node.G[i];
            if (g.known_zero()) continue;
            if (Rat(g.val()) <= Rat(v1) + Rat(static_cast<long>(i) - 1) * Rat(v1 - v0))
                throw InternalInconsistency("simple root with a non-linear Newton polygon");
        }
        const long a = v0 - v1;
        const Rat e = Rat(a) / Rat(node.R);
        if (e > depth) return false;
        AlgNum c = -(g0.lc() / g1.lc());
        node.terms.push_back({e, c});
        node.G = taylor_shift(node.G, KSeries::monomial(c, a));
        if (node.G[0].is_exact_zero()) leaf.exact = true;
        return true;
    }

    FieldContext ctx_;
    PuiseuxOptions opt_;
    PuiseuxNode root_;
    std::vector<Leaf> leaves_;
};

/// Valuation of y_a - y_b from their expansions.
inline Rat expansion_contact(const RootExpansion& A, const RootExpansion& B) {
    std::size_t i = 0;
    while (true) {
        const bool ea = i >= A.terms.size(), eb = i >= B.terms.size();
        if (ea && eb) {
            if (A.exact && B.exact) throw MathError("repeated root");
            throw InsufficientTruncation("roots not separated at the current depth");
        }
        if (ea) {
            if (!A.exact) throw InsufficientTruncation("roots not separated at the current depth");
            return B.terms[i].exponent;
        }
        if (eb) {
            if (!B.exact) throw InsufficientTruncation("roots not separated at the current depth");
            return A.terms[i].exponent;
        }
        const auto& ta = A.terms[i];
        const auto& tb = B.terms[i];
        if (ta.exponent != tb.exponent) return std::min(ta.exponent, tb.exponent);
        if (ta.coeff != tb.coeff) return ta.exponent;
        ++i;
    }
}

/// Terms of xi^k applied to the expansion, xi a primitive R-th root of unity.
inline std::vector<PuiseuxTerm> conjugate_terms(const std::vector<PuiseuxTerm>& terms, const AlgNum& xi, long R) {
    std::vector<PuiseuxTerm> out;
    out.reserve(terms.size());
    for (const auto& t : terms) {
        Rat er = t.exponent * Rat(R);
        long k = er.get_num().get_si() % R;
        if (k < 0) k += R;
        out.push_back({t.exponent, t.coeff * xi.pow(k)});
    }
    return out;
}

/// Agreement of two term lists on all exponents <= depth.
inline bool agree_to(const std::vector<PuiseuxTerm>& a, const RootExpansion& b, const Rat& depth) {
    std::size_t i = 0;
    for (; i < a.size() && a[i].exponent <= depth; ++i) {
        if (i >= b.terms.size()) return false;
        if (b.terms[i].exponent != a[i].exponent || b.terms[i].coeff != a[i].coeff) return false;
    }
    return i >= b.terms.size() || b.terms[i].exponent > depth;
}

inline PuiseuxResult run_puiseux(const YPoly<QSeries>& F, const PuiseuxOptions& opt, long precision) {
    PuiseuxRun run(F, opt);
    run.separate();
    PuiseuxResult res;
    res.n = F.size() - 1;
    res.precision_used = precision;

    auto collect = [&]() {
        res.roots.clear();
        for (auto& leaf : run.leaves()) {
            RootExpansion e;
            e.terms = leaf.node.terms;
            e.ramification = leaf.node.R;
            e.exact = leaf.exact || leaf.node.G[0].is_exact_zero();
            res.roots.push_back(std::move(e));
        }
    };
    collect();
    if (res.roots.size() != res.n) throw InternalInconsistency("root count differs from the degree");

    // Contacts are fixed once roots are separated; the depth must pass all of them.
    Rat depth = opt.min_depth;
    for (std::size_t i = 0; i < res.n; ++i)
        for (std::size_t j = i + 1; j < res.n; ++j) depth = std::max(depth, expansion_contact(res.roots[i], res.roots[j]));
    run.deepen(depth);
    collect();
    res.depth = depth;

    res.contact.assign(res.n, std::vector<Rat>(res.n));
    for (std::size_t i = 0; i < res.n; ++i)
        for (std::size_t j = 0; j < res.n; ++j)
            if (i != j) res.contact[i][j] = expansion_contact(res.roots[i], res.roots[j]);

    long R = 1;
    for (const auto& r : res.roots) R = lcm_long(R, r.ramification);
    res.global_ramification = R;
    AlgNum xi = run.ctx().root_of_unity(R);
    res.monodromy.assign(res.n, 0);
    for (std::size_t i = 0; i < res.n; ++i) {
        auto img = conjugate_terms(res.roots[i].terms, xi, R);
        std::optional<std::size_t> hit;
        for (std::size_t j = 0; j < res.n; ++j)
            if (agree_to(img, res.roots[j], depth)) {
                if (hit) throw InsufficientTruncation("conjugate root not determined at the current depth");
                hit = j;
            }
        if (!hit) throw InsufficientTruncation("conjugate root not found at the current depth");
        res.monodromy[i] = *hit;
    }

    std::vector<bool> seen(res.n, false);
    for (std::size_t i = 0; i < res.n; ++i) {
        if (seen[i]) continue;
        PuiseuxCluster c;
        std::size_t j = i;
        do {
            seen[j] = true;
            c.members.push_back(j);
            j = res.monodromy[j];
        } while (j != i);
        c.r = static_cast<long>(c.members.size());
        c.order = res.roots[i].order();
        res.clusters.push_back(std::move(c));
    }
    res.field = run.ctx().field();
    return res;
}

}  // namespace detail

/// Expands every root of F (coefficients given exactly as rational functions of
/// the local coordinate), raising the working precision until all quantities
/// are determined.
inline PuiseuxResult puiseux_roots(const YPoly<RatFn>& F, const PuiseuxOptions& opt = {}) {
    if (F.size() < 2) throw MathError("polynomial in y of degree 0");
    if (is_zero(discriminant_rf(F))) throw MathError("characteristic polynomial is not squarefree");
    long nu = 0;
    for (const auto& c : F) nu = std::max(nu, -std::min(0L, c.order_at_zero()));
    const long n = static_cast<long>(F.size()) - 1;
    long prec = opt.initial_precision > 0 ? opt.initial_precision : default_truncation(static_cast<std::size_t>(n), nu);
    const long cap = opt.max_precision > 0 ? opt.max_precision : 8 * prec;
    while (true) {
        try {
            return detail::run_puiseux(expand(F, prec), opt, prec);
        } catch (const InsufficientTruncation&) {
            if (prec >= cap) throw;
            prec = std::min(cap, 2 * prec);
        }
    }
}

/// Valuation of y_rep(c1) - (xi^k y_rep(c2)).
inline Rat cluster_contact(const PuiseuxResult& P, std::size_t c1, std::size_t c2, long k) {
    std::size_t a = P.clusters[c1].representative();
    std::size_t b = P.conjugate(P.clusters[c2].representative(), k);
    if (a == b) throw MathError("contact of a root with itself");
    return P.contact[a][b];
}

/// Number of clusters of roots tending to infinity.
inline std::size_t branch_count(const PuiseuxResult& P) {
    return static_cast<std::size_t>(
        std::count_if(P.clusters.begin(), P.clusters.end(), [](const PuiseuxCluster& c) { return c.unbounded(); }));
}

}  // namespace specrig
