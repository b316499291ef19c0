#include <gtest/gtest.h>

#include <random>

#include "specrig/split/splitting.hpp"

using namespace specrig;

namespace {

AlgNum k(long n, long d = 1) { return AlgNum(make_rat(n, d)); }

KMat mat2(long a, long b, long c, long d) { return KMat{{k(a), k(b)}, {k(c), k(d)}}; }

TruncSeriesMat padded(long r, std::vector<KMat> c, std::size_t N) {
    const std::size_t n = c.front().rows();
    while (c.size() < N) c.emplace_back(n, n);
    return TruncSeriesMat(r, std::move(c));
}

/// Every known coefficient of every entry vanishes.
bool known_zero(const Matrix<KSeries>& M) {
    for (std::size_t i = 0; i < M.rows(); ++i)
        for (std::size_t j = 0; j < M.cols(); ++j)
            if (!M(i, j).known_zero()) return false;
    return true;
}

std::vector<KSeries> charpoly_series(const Matrix<KSeries>& M) { return berkowitz(M, KSeries(AlgNum(1))); }

}  // namespace

TEST(Sylvester, ScalarCases) {
    EXPECT_EQ(sylvester_solve(KMat{{k(0)}}, KMat{{k(1)}}, KMat{{k(7, 3)}})(0, 0), k(7, 3));
    EXPECT_EQ(sylvester_solve(KMat{{k(1)}}, KMat{{k(3)}}, KMat{{k(4)}})(0, 0), k(2));
}

TEST(Sylvester, RectangularCase) {
    auto T = sylvester_solve(mat2(0, 0, 0, 1), KMat{{k(2)}}, KMat{{k(2)}, {k(2)}});
    EXPECT_EQ(T(0, 0), k(1));
    EXPECT_EQ(T(1, 0), k(2));
}

TEST(Sylvester, SharedEigenvalueRaises) {
    EXPECT_THROW(sylvester_solve(KMat{{k(1)}}, KMat{{k(1)}}, KMat{{k(1)}}), SpectraOverlap);
}

TEST(SplitOnce, SymmetricCoupling) {
    // [[0, t], [t, 1]]: the small eigenvalue is -t^2 + t^4 - 2t^6 + ...
    auto G = padded(0, {mat2(0, 0, 0, 1), mat2(0, 1, 1, 0)}, 8);
    auto S = split_once(G, 1);
    EXPECT_EQ(S.order, 8);
    EXPECT_EQ(S.T[1](0, 1), k(-1));
    EXPECT_EQ(S.T[1](1, 0), k(1));
    EXPECT_EQ(S.B1[2](0, 0), k(-1));
    EXPECT_EQ(S.B2[2](0, 0), k(1));
    EXPECT_EQ(S.B1[4](0, 0), k(1));
    EXPECT_EQ(S.B1[6](0, 0), k(-2));
    // Each block eigenvalue is a root of y^2 - y - t^2.
    for (const auto* B : {&S.B1, &S.B2}) {
        KSeries y = B->to_series()(0, 0);
        KSeries t2 = KSeries::monomial(k(1), 2);
        KSeries v = y * y - y - t2;
        EXPECT_TRUE(v.known_zero());
        EXPECT_GE(v.prec(), 8);
    }
}

TEST(SplitOnce, LowerTriangular) {
    auto G = padded(0, {mat2(0, 0, 0, 1), mat2(0, 0, 1, 0)}, 6);
    auto S = split_once(G, 1);
    EXPECT_EQ(S.T[1](1, 0), k(1));
    for (long i = 0; i < 6; ++i) {
        EXPECT_TRUE(is_zero(S.T[static_cast<std::size_t>(i)](0, 1)));
        EXPECT_TRUE(is_zero(S.B1[static_cast<std::size_t>(i)](0, 0)));
        EXPECT_EQ(S.B2[static_cast<std::size_t>(i)](0, 0), k(i == 0 ? 1 : 0));
    }
}

TEST(SplitOnce, RequiresBlockDiagonalLead) {
    auto G = padded(0, {mat2(0, 1, 0, 1)}, 3);
    EXPECT_THROW(split_once(G, 1), MathError);
}

TEST(SplitOnce, RandomCertificatesPreserveCharpoly) {
    std::mt19937 rng(20260);
    std::uniform_int_distribution<long> coef(-3, 3);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 3;
        const std::size_t kk = 1 + static_cast<std::size_t>(trial % 2);
        const long N = 6;
        std::vector<KMat> c;
        KMat A0(n, n);
        // Block 1 eigenvalues in {0, 1}, block 2 in {5, 6}.
        for (std::size_t i = 0; i < n; ++i) A0(i, i) = k(i < kk ? static_cast<long>(i) : 5 + static_cast<long>(i));
        if (kk == 2) A0(0, 1) = k(coef(rng));
        c.push_back(A0);
        for (long e = 1; e < N; ++e) {
            KMat A(n, n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) A(i, j) = k(coef(rng));
            c.push_back(A);
        }
        const long r = -2 + trial % 3;
        TruncSeriesMat G(r, c);
        auto S = split_once(G, kk);
        EXPECT_EQ(S.order, N);
        for (const auto& R : split_residual(S.T, G, block_diag(S.B1, S.B2))) EXPECT_TRUE(R.all_zero());
        auto lhs = charpoly_series(G.to_series());
        auto rhs = charpoly_series(block_diag(S.B1, S.B2).to_series());
        for (std::size_t i = 0; i < lhs.size(); ++i) EXPECT_TRUE((lhs[i] - rhs[i]).known_zero()) << "trial " << trial;
    }
}

TEST(Pullback, AiryAtInfinity) {
    // Airy at infinity in x = 1/z: -x^{-3} [[0, x], [1, 0]], pulled back by x = t^2.
    auto G = padded(-3, {mat2(0, 0, -1, 0), mat2(0, -1, 0, 0)}, 2);
    auto H = ramified_pullback(G, 2);
    EXPECT_EQ(H.r, -5);
    EXPECT_EQ(H.N(), 4);
    EXPECT_EQ(H[0](1, 0), k(-2));
    EXPECT_EQ(H[2](0, 1), k(-2));
    EXPECT_TRUE(H[1].all_zero());
}

TEST(FullSplit, AiryNeedsShear) {
    auto G = padded(-3, {mat2(0, 0, -1, 0), mat2(0, -1, 0, 0)}, 12);
    auto H = ramified_pullback(G, 2);
    FieldContext ctx;
    EXPECT_THROW(full_split(H, ctx, {false}), NotRegularSemisimple);
    auto F = full_split(H, ctx);
    ASSERT_EQ(F.eigenvalues.size(), 2u);
    for (const auto& e : F.eigenvalues) {
        EXPECT_EQ(e.val(), -4);
        EXPECT_EQ(e.lc() * e.lc(), k(4));
    }
    EXPECT_EQ(F.eigenvalues[0].lc() + F.eigenvalues[1].lc(), k(0));
    EXPECT_TRUE(known_zero(full_split_residual(F, H)));
}

TEST(FullSplit, UnbalancedNilpotentRaises) {
    // Entries of valuation -2 and -1 off the diagonal: cycle mean -3/2.
    auto G = padded(-2, {mat2(0, 1, 0, 0), mat2(0, 0, 1, 0)}, 6);
    FieldContext ctx;
    EXPECT_THROW(full_split(G, ctx), NotRegularSemisimple);
}

TEST(FullSplit, RandomResidualsVanish) {
    std::mt19937 rng(7);
    std::uniform_int_distribution<long> coef(-2, 2);
    for (int trial = 0; trial < 8; ++trial) {
        const std::size_t n = 3;
        std::vector<KMat> c;
        for (long e = 0; e < 10; ++e) {
            KMat A(n, n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) A(i, j) = k(coef(rng));
            if (e == 0) {
                // Leading term with a repeated scalar eigenvalue and one simple.
                A = KMat(n, n);
                A(0, 0) = A(1, 1) = k(1);
                A(2, 2) = k(-1);
                A(0, 2) = k(coef(rng));
            }
            c.push_back(A);
        }
        TruncSeriesMat G(-1, c);
        FieldContext ctx;
        auto F = full_split(G, ctx);
        ASSERT_EQ(F.eigenvalues.size(), n);
        EXPECT_TRUE(known_zero(full_split_residual(F, G))) << "trial " << trial;
        auto lhs = charpoly_series(G.to_series());
        Matrix<KSeries> L(n, n);
        for (std::size_t i = 0; i < n; ++i) L(i, i) = F.eigenvalues[i];
        auto rhs = charpoly_series(L);
        for (std::size_t i = 0; i < lhs.size(); ++i) EXPECT_TRUE((lhs[i] - rhs[i]).known_zero()) << "trial " << trial;
    }
}
