#pragma once

// Block splitting of truncated Laurent series matrices by formal similarity
// T(t) A(t) = B(t) T(t), with certified residuals.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "specrig/algebra/numfield.hpp"
#include "specrig/exact/errors.hpp"
#include "specrig/exact/matrix.hpp"
#include "specrig/exact/resultant.hpp"
#include "specrig/exact/series.hpp"
#include "specrig/split/linalg.hpp"

namespace specrig {

using KMat = Matrix<AlgNum>;
using KSeries = Series<AlgNum>;

/// t^r (A_0 + A_1 t + ... + A_{N-1} t^{N-1}) + O(t^{r+N}).
struct TruncSeriesMat {
    long r = 0;
    std::vector<KMat> coeffs;

    TruncSeriesMat() = default;
    TruncSeriesMat(long lead, std::vector<KMat> c) : r(lead), coeffs(std::move(c)) {}

    std::size_t n() const { return coeffs.empty() ? 0 : coeffs.front().rows(); }
    std::size_t cols() const { return coeffs.empty() ? 0 : coeffs.front().cols(); }
    long N() const { return static_cast<long>(coeffs.size()); }
    const KMat& operator[](std::size_t i) const { return coeffs[i]; }

    /// Coefficient of t^(r+i), zero beyond the stored range.
    KMat at(long i) const {
        if (i < 0 || i >= N()) return KMat(n(), cols());
        return coeffs[static_cast<std::size_t>(i)];
    }

    TruncSeriesMat block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
        TruncSeriesMat b;
        b.r = r;
        for (const auto& A : coeffs) b.coeffs.push_back(A.block(r0, c0, nr, nc));
        return b;
    }

    /// Drops vanishing leading coefficients, raising r accordingly.
    void normalize() {
        std::size_t k = 0;
        while (k < coeffs.size() && coeffs[k].all_zero()) ++k;
        coeffs.erase(coeffs.begin(), coeffs.begin() + static_cast<long>(k));
        r += static_cast<long>(k);
    }

    Matrix<KSeries> to_series() const {
        Matrix<KSeries> M(n(), cols());
        for (std::size_t i = 0; i < n(); ++i)
            for (std::size_t j = 0; j < cols(); ++j) {
                std::vector<AlgNum> c;
                for (const auto& A : coeffs) c.push_back(A(i, j));
                M(i, j) = KSeries(r, std::move(c), r + N());
            }
        return M;
    }

    /// Laurent series matrix truncated to a common precision, with leading
    /// exponent the minimal valuation.
    static TruncSeriesMat from_series(const Matrix<KSeries>& M) {
        long prec = kExact;
        long lead = kExact;
        for (std::size_t i = 0; i < M.rows(); ++i)
            for (std::size_t j = 0; j < M.cols(); ++j) {
                prec = std::min(prec, M(i, j).prec());
                if (!M(i, j).known_zero()) lead = std::min(lead, M(i, j).val());
            }
        if (prec >= kExact) throw MathError("series matrix without a precision bound");
        if (lead > prec) lead = prec;
        TruncSeriesMat T;
        T.r = lead;
        for (long e = lead; e < prec; ++e) {
            KMat A(M.rows(), M.cols());
            for (std::size_t i = 0; i < M.rows(); ++i)
                for (std::size_t j = 0; j < M.cols(); ++j) A(i, j) = M(i, j).coeff(e);
            T.coeffs.push_back(std::move(A));
        }
        return T;
    }
};

/// Coefficients of t^0..t^{N-1} of X(t) Y(t) for coefficient lists.
inline std::vector<KMat> mul_coeffs(const std::vector<KMat>& X, const std::vector<KMat>& Y, std::size_t N) {
    std::vector<KMat> out;
    for (std::size_t k = 0; k < N; ++k) {
        KMat acc(X.front().rows(), Y.front().cols());
        for (std::size_t i = 0; i <= k && i < X.size(); ++i)
            if (k - i < Y.size()) acc = acc + X[i] * Y[k - i];
        out.push_back(std::move(acc));
    }
    return out;
}

/// The operator T -> T Q - P T, inverted once for repeated right-hand sides.
class SylvesterSolver {
   public:
    SylvesterSolver(const KMat& P, const KMat& Q) : p_(P.rows()), q_(Q.rows()) {
        auto cp = berkowitz(P, AlgNum(1));
        auto cq = berkowitz(Q, AlgNum(1));
        YPoly<AlgNum> fp(cp.rbegin(), cp.rend()), fq(cq.rbegin(), cq.rend());
        if (is_zero(resultant(fp, fq, AlgNum(1)))) throw SpectraOverlap("blocks share an eigenvalue");
        // Unknown T(i,k) sits at index i*q + k.
        KMat M(p_ * q_, p_ * q_);
        for (std::size_t i = 0; i < p_; ++i)
            for (std::size_t k = 0; k < q_; ++k) {
                const std::size_t row = i * q_ + k;
                for (std::size_t j = 0; j < q_; ++j) M(row, i * q_ + j) = M(row, i * q_ + j) + Q(j, k);
                for (std::size_t j = 0; j < p_; ++j) M(row, j * q_ + k) = M(row, j * q_ + k) - P(i, j);
            }
        auto inv = inverse(M);
        if (!inv) throw InternalInconsistency("sylvester system singular despite disjoint spectra");
        inv_ = std::move(*inv);
    }

    KMat operator()(const KMat& C) const {
        if (C.rows() != p_ || C.cols() != q_) throw MathError("sylvester_solve: shape mismatch");
        KMat T(p_, q_);
        for (std::size_t row = 0; row < p_ * q_; ++row) {
            AlgNum acc(0);
            for (std::size_t col = 0; col < p_ * q_; ++col) {
                const auto& c = C(col / q_, col % q_);
                if (!is_zero(c)) acc = acc + inv_(row, col) * c;
            }
            T(row / q_, row % q_) = acc;
        }
        return T;
    }

   private:
    std::size_t p_, q_;
    KMat inv_;
};

/// Solves T Q - P T = C; the solution is unique iff P and Q share no
/// eigenvalue.
inline KMat sylvester_solve(const KMat& P, const KMat& Q, const KMat& C) {
    if (C.rows() != P.rows() || C.cols() != Q.rows()) throw MathError("sylvester_solve: shape mismatch");
    return SylvesterSolver(P, Q)(C);
}

namespace detail {

/// Solves X Akk - Ajj X = -Ajk + X Akj X for X = O(t) term by term.
inline std::vector<KMat> riccati_solve(const TruncSeriesMat& Ajj, const TruncSeriesMat& Akk, const TruncSeriesMat& Ajk,
                                       const TruncSeriesMat& Akj) {
    const long N = Ajj.N();
    std::vector<KMat> X(static_cast<std::size_t>(N), KMat(Ajk.n(), Ajk.cols()));
    // Z[m] = sum over l + mu = m, mu >= 1 of Akj_l X_mu.
    std::vector<KMat> Z(static_cast<std::size_t>(N), KMat(Akj.n(), Ajk.cols()));
    const SylvesterSolver solve_step(Ajj.at(0), Akk.at(0));
    for (long n = 1; n < N; ++n) {
        KMat C = KMat(Ajk.n(), Ajk.cols()) - Ajk.at(n);
        for (long mu = 1; mu < n; ++mu) {
            const auto& Xm = X[static_cast<std::size_t>(mu)];
            C = C - (Xm * Akk.at(n - mu) - Ajj.at(n - mu) * Xm);
            C = C + Xm * Z[static_cast<std::size_t>(n - mu)];
        }
        X[static_cast<std::size_t>(n)] = solve_step(C);
        for (long m = n; m < N; ++m) Z[static_cast<std::size_t>(m)] = Z[static_cast<std::size_t>(m)] + Akj.at(m - n) * X[static_cast<std::size_t>(n)];
    }
    return X;
}

}  // namespace detail

struct SplitResult {
    /// [[I, T12], [T21, I]] with T12, T21 = O(t).
    TruncSeriesMat T;
    TruncSeriesMat B1;
    TruncSeriesMat B2;
    /// T A - diag(B1, B2) T vanishes through t^(r + order - 1).
    long order = 0;
};

/// Coefficients of T A - B T relative to t^r, for T with r = 0.
inline std::vector<KMat> split_residual(const TruncSeriesMat& T, const TruncSeriesMat& A, const TruncSeriesMat& B) {
    const std::size_t N = static_cast<std::size_t>(std::min({T.N(), A.N(), B.N()}));
    auto TA = mul_coeffs(T.coeffs, A.coeffs, N);
    auto BT = mul_coeffs(B.coeffs, T.coeffs, N);
    for (std::size_t i = 0; i < N; ++i) TA[i] = TA[i] - BT[i];
    return TA;
}

inline TruncSeriesMat block_diag(const TruncSeriesMat& B1, const TruncSeriesMat& B2) {
    const std::size_t k = B1.n(), n = k + B2.n();
    const long lead = std::min(B1.r, B2.r);
    const long top = std::min(B1.r + B1.N(), B2.r + B2.N());
    TruncSeriesMat D;
    D.r = lead;
    for (long e = lead; e < top; ++e) {
        KMat M(n, n);
        M.set_block(0, 0, B1.at(e - B1.r));
        M.set_block(k, k, B2.at(e - B2.r));
        D.coeffs.push_back(std::move(M));
    }
    return D;
}

/// Splits G along the first k coordinates. The leading matrix must be block
/// diagonal with disjoint block spectra.
inline SplitResult split_once(const TruncSeriesMat& G, std::size_t k) {
    const std::size_t n = G.n();
    if (k == 0 || k >= n) throw MathError("split_once: block size out of range");
    if (G.N() < 1) throw InsufficientTruncation("split_once: no known coefficients");
    const auto A11 = G.block(0, 0, k, k), A12 = G.block(0, k, k, n - k);
    const auto A21 = G.block(k, 0, n - k, k), A22 = G.block(k, k, n - k, n - k);
    if (!A12.at(0).all_zero() || !A21.at(0).all_zero())
        throw MathError("split_once: leading matrix is not block diagonal");
    auto X = detail::riccati_solve(A11, A22, A12, A21);
    auto Y = detail::riccati_solve(A22, A11, A21, A12);
    const std::size_t N = static_cast<std::size_t>(G.N());
    SplitResult S;
    S.B1.r = S.B2.r = G.r;
    S.B1.coeffs = mul_coeffs(X, A21.coeffs, N);
    S.B2.coeffs = mul_coeffs(Y, A12.coeffs, N);
    for (std::size_t i = 0; i < N; ++i) {
        S.B1.coeffs[i] = S.B1.coeffs[i] + A11[i];
        S.B2.coeffs[i] = S.B2.coeffs[i] + A22[i];
    }
    for (std::size_t i = 0; i < N; ++i) {
        KMat M(n, n);
        if (i == 0) M = KMat::identity(n, AlgNum(1));
        M.set_block(0, k, X[i]);
        M.set_block(k, 0, Y[i]);
        S.T.coeffs.push_back(std::move(M));
    }
    for (const auto& R : split_residual(S.T, G, block_diag(S.B1, S.B2)))
        if (!R.all_zero()) throw InternalInconsistency("split_once: residual does not vanish");
    S.order = G.N();
    return S;
}

inline TruncSeriesMat conjugate_const(const TruncSeriesMat& G, const KMat& Sinv, const KMat& S) {
    TruncSeriesMat H;
    H.r = G.r;
    for (const auto& A : G.coeffs) H.coeffs.push_back(Sinv * A * S);
    return H;
}

/// G~(t) = s t^(s-1) G(t^s).
inline TruncSeriesMat ramified_pullback(const TruncSeriesMat& G, long s) {
    if (s < 1) throw MathError("ramified_pullback: index must be positive");
    TruncSeriesMat H;
    H.r = s * G.r + s - 1;
    const KMat zero(G.n(), G.cols());
    for (long i = 0; i < s * G.N(); ++i)
        H.coeffs.push_back(i % s == 0 ? AlgNum(s) * G[static_cast<std::size_t>(i / s)] : zero);
    return H;
}

struct Shear {
    /// Entry (i, j) is multiplied by t^(w_i - w_j).
    std::vector<long> weights;
    long lead = 0;
};

/// Integer weights maximizing the leading exponent of the sheared matrix,
/// when the optimum (the minimal cycle mean of entry valuations) is integral.
inline std::optional<Shear> balancing_shear(const TruncSeriesMat& G) {
    const std::size_t n = G.n();
    const long bound = G.r + G.N();
    std::vector<std::vector<long>> v(n, std::vector<long>(n, bound));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (long e = 0; e < G.N(); ++e)
                if (!is_zero(G[static_cast<std::size_t>(e)](i, j))) {
                    v[i][j] = G.r + e;
                    break;
                }
    // Karp: D[k][x] is the least weight of a k-edge walk ending at x.
    const long inf = kExact;
    std::vector<std::vector<long>> D(n + 1, std::vector<long>(n, inf));
    for (std::size_t x = 0; x < n; ++x) D[0][x] = 0;
    for (std::size_t k = 1; k <= n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (D[k - 1][i] < inf) D[k][j] = std::min(D[k][j], D[k - 1][i] + v[i][j]);
    Rat mu;
    bool have = false;
    for (std::size_t x = 0; x < n; ++x) {
        if (D[n][x] >= inf) continue;
        Rat worst;
        bool w = false;
        for (std::size_t k = 0; k < n; ++k) {
            if (D[k][x] >= inf) continue;
            Rat m(D[n][x] - D[k][x], static_cast<long>(n - k));
            m.canonicalize();
            if (!w || m > worst) worst = m, w = true;
        }
        if (w && (!have || worst < mu)) mu = worst, have = true;
    }
    if (!have || !is_integer(mu)) return std::nullopt;
    const long m = to_long(mu);
    std::vector<long> d(n, 0);
    for (std::size_t it = 0; it < n; ++it)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) d[j] = std::min(d[j], d[i] + v[i][j] - m);
    return Shear{d, m};
}

inline Matrix<KSeries> diag_monomials(const std::vector<long>& w) {
    Matrix<KSeries> D(w.size(), w.size());
    for (std::size_t i = 0; i < w.size(); ++i) D(i, i) = KSeries::monomial(AlgNum(1), w[i]);
    return D;
}

struct FullSplit {
    /// Eigenvalue expansions, one per coordinate.
    std::vector<KSeries> eigenvalues;
    /// T with T G = diag(eigenvalues) T.
    Matrix<KSeries> transform;
};

struct FullSplitOptions {
    bool allow_shear = true;
};

namespace detail {

inline Matrix<KSeries> block_diag_series(const Matrix<KSeries>& X, const Matrix<KSeries>& Y) {
    Matrix<KSeries> M(X.rows() + Y.rows(), X.cols() + Y.cols());
    M.set_block(0, 0, X);
    M.set_block(X.rows(), X.cols(), Y);
    return M;
}

inline Matrix<KSeries> const_series(const KMat& S) {
    return S.map<KSeries>([](const AlgNum& a) { return KSeries(a); });
}

inline FullSplit full_split_rec(TruncSeriesMat G, FieldContext& ctx, const FullSplitOptions& opt, int depth) {
    const std::size_t n = G.n();
    if (depth > 64 + 4 * static_cast<int>(n)) throw InternalInconsistency("full_split: no progress");
    G.normalize();
    FullSplit out;
    if (n == 1) {
        out.eigenvalues.push_back(G.N() == 0 ? KSeries::zero_to(G.r) : G.to_series()(0, 0));
        out.transform = Matrix<KSeries>::identity(1, KSeries(AlgNum(1)));
        return out;
    }
    if (G.N() == 0) throw InsufficientTruncation("eigenvalues not separated within the truncation");
    const KMat& A0 = G[0];
    auto cp = berkowitz(A0, AlgNum(1));
    auto roots = ctx.roots(KPoly(std::vector<AlgNum>(cp.rbegin(), cp.rend())));
    if (roots.size() >= 2) {
        KMat S(n, n);
        std::size_t col = 0, first = 0;
        for (const auto& [lam, mult] : roots) {
            KMat N0 = A0 - KMat::identity(n, lam);
            KMat P = KMat::identity(n, AlgNum(1));
            for (int k = 0; k < mult; ++k) P = P * N0;
            auto basis = kernel(P);
            if (basis.size() != static_cast<std::size_t>(mult)) throw InternalInconsistency("generalized eigenspace dimension");
            if (first == 0) first = basis.size();
            for (const auto& b : basis) {
                for (std::size_t i = 0; i < n; ++i) S(i, col) = b[i];
                ++col;
            }
        }
        auto Sinv = inverse(S);
        if (!Sinv) throw InternalInconsistency("generalized eigenvectors are dependent");
        auto H = conjugate_const(G, *Sinv, S);
        auto sp = split_once(H, first);
        auto f1 = full_split_rec(sp.B1, ctx, opt, depth + 1);
        auto f2 = full_split_rec(sp.B2, ctx, opt, depth + 1);
        out.eigenvalues = f1.eigenvalues;
        out.eigenvalues.insert(out.eigenvalues.end(), f2.eigenvalues.begin(), f2.eigenvalues.end());
        out.transform = block_diag_series(f1.transform, f2.transform) * sp.T.to_series() * const_series(*Sinv);
        return out;
    }
    const AlgNum lam = roots.front().first;
    const KSeries shift = KSeries::monomial(lam, G.r);
    TruncSeriesMat H = G;
    H.coeffs[0] = A0 - KMat::identity(n, lam);
    FullSplit inner;
    if (H.coeffs[0].all_zero()) {
        inner = full_split_rec(H, ctx, opt, depth + 1);
    } else {
        if (!opt.allow_shear) throw NotRegularSemisimple("nilpotent leading matrix");
        H.normalize();
        auto sh = balancing_shear(H);
        if (!sh || sh->lead <= H.r) throw NotRegularSemisimple("nilpotent leading matrix cannot be balanced without ramification");
        const auto D = diag_monomials(sh->weights);
        std::vector<long> neg(sh->weights);
        for (auto& w : neg) w = -w;
        auto sheared = TruncSeriesMat::from_series(D * H.to_series() * diag_monomials(neg));
        inner = full_split_rec(sheared, ctx, opt, depth + 1);
        inner.transform = inner.transform * D;
    }
    for (auto& e : inner.eigenvalues) e = e + shift;
    return inner;
}

}  // namespace detail

/// Diagonalizes G by formal similarity over an algebraic extension of the
/// coefficient field. Raises NotRegularSemisimple if a nilpotent leading
/// term cannot be balanced.
inline FullSplit full_split(const TruncSeriesMat& G, FieldContext& ctx, const FullSplitOptions& opt = {}) {
    return detail::full_split_rec(G, ctx, opt, 0);
}

/// Entries of T G - diag(lambda) T; all must be known to vanish.
inline Matrix<KSeries> full_split_residual(const FullSplit& F, const TruncSeriesMat& G) {
    const std::size_t n = G.n();
    Matrix<KSeries> L(n, n);
    for (std::size_t i = 0; i < n; ++i) L(i, i) = F.eigenvalues[i];
    return F.transform * G.to_series() - L * F.transform;
}

}  // namespace specrig
