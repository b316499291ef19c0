#include <gtest/gtest.h>

#include "specrig/puiseux/puiseux.hpp"

using namespace specrig;

namespace {

RatFn z() { return RatFn::var(); }
RatFn c(long n, long d = 1) { return RatFn(make_rat(n, d)); }
Rat q(long n, long d = 1) { return make_rat(n, d); }

YPoly<QSeries> exact_series(const YPoly<RatFn>& F) { return expand(F, 40); }

/// Order of the discriminant of a monic polynomial at the origin.
long disc_order(const YPoly<RatFn>& F) { return discriminant_rf(F).order_at_zero(); }

Rat pair_sum(const PuiseuxResult& P) {
    Rat s = 0;
    for (std::size_t i = 0; i < P.n; ++i)
        for (std::size_t j = 0; j < P.n; ++j)
            if (i != j) s += P.contact[i][j];
    return s;
}

}  // namespace

TEST(Newton, AiryCleared) {
    // z^6 y^2 - z
    YPoly<RatFn> F = {-z(), c(0), z().pow(6)};
    auto P = newton_polygon(exact_series(F));
    ASSERT_EQ(P.edges.size(), 1u);
    EXPECT_EQ(P.edges[0].slope, q(5, 2));
    EXPECT_EQ(P.edges[0].length(), 2);
    EXPECT_EQ(P.edges[0].root_order, q(-5, 2));
}

TEST(Newton, SquareRoot) {
    YPoly<RatFn> F = {-z(), c(0), c(1)};
    auto P = newton_polygon(exact_series(F));
    ASSERT_EQ(P.edges.size(), 1u);
    EXPECT_EQ(P.edges[0].root_order, q(1, 2));
}

TEST(Newton, TwoSimplePoles) {
    YPoly<RatFn> F = {c(2) / z().pow(2), c(-3) / z(), c(1)};
    auto P = newton_polygon(exact_series(F));
    ASSERT_EQ(P.edges.size(), 1u);
    EXPECT_EQ(P.edges[0].slope, q(1));
    EXPECT_EQ(P.edges[0].length(), 2);
    EXPECT_EQ(P.edges[0].residual.degree(), 2);
}

TEST(Newton, UnknownCoefficientOnHull) {
    YPoly<QSeries> F = {QSeries(0, {Rat(1)}, kExact), QSeries::zero_to(1), QSeries(2, {Rat(1)}, kExact)};
    EXPECT_THROW(newton_polygon(F), InsufficientTruncation);
}

TEST(Puiseux, AiryAtInfinity) {
    // det(yI - G) for the Airy local matrix: y^2 - w^{-5}
    YPoly<RatFn> F = {c(-1) / z().pow(5), c(0), c(1)};
    auto P = puiseux_roots(F);
    ASSERT_EQ(P.clusters.size(), 1u);
    EXPECT_EQ(P.clusters[0].r, 2);
    EXPECT_EQ(*P.clusters[0].order, q(-5, 2));
    EXPECT_EQ(cluster_contact(P, 0, 0, 1), q(-5, 2));
    EXPECT_EQ(branch_count(P), 1u);
    EXPECT_EQ(pair_sum(P), Rat(disc_order(F)));
}

TEST(Puiseux, TwoRationalClusters) {
    YPoly<RatFn> F = {c(2) / z().pow(2), c(-3) / z(), c(1)};
    auto P = puiseux_roots(F);
    ASSERT_EQ(P.clusters.size(), 2u);
    for (const auto& cl : P.clusters) {
        EXPECT_EQ(cl.r, 1);
        EXPECT_EQ(*cl.order, q(-1));
    }
    EXPECT_EQ(cluster_contact(P, 0, 1, 0), q(-1));
}

TEST(Puiseux, Constant) {
    YPoly<RatFn> F = {c(-5), c(1)};
    auto P = puiseux_roots(F);
    ASSERT_EQ(P.clusters.size(), 1u);
    EXPECT_EQ(*P.clusters[0].order, q(0));
    EXPECT_TRUE(P.roots[0].exact);
}

TEST(Puiseux, HalfPowerClusters) {
    // (y^2 - 1/z)(y^2 - 4/z): clusters of z^{-1/2} and 2 z^{-1/2}.
    YPoly<RatFn> a = {c(-1) / z(), c(0), c(1)}, b = {c(-4) / z(), c(0), c(1)};
    YPoly<RatFn> F(5);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) F[i + j] += a[i] * b[j];
    auto P = puiseux_roots(F);
    ASSERT_EQ(P.clusters.size(), 2u);
    for (long k = 0; k < 2; ++k) EXPECT_EQ(cluster_contact(P, 0, 1, k), q(-1, 2));
    EXPECT_EQ(pair_sum(P), Rat(disc_order(F)));
}

TEST(Puiseux, IrrationalResidualAndDeepSeparation) {
    // roots 1/z + sqrt(2) z^{1/3} + ..., from (y - 1/z)^3 - 2 z
    YPoly<RatFn> F = {-(c(1) / z().pow(3)) - c(2) * z(), c(3) / z().pow(2), c(-3) / z(), c(1)};
    auto P = puiseux_roots(F);
    ASSERT_EQ(P.clusters.size(), 1u);
    EXPECT_EQ(P.clusters[0].r, 3);
    EXPECT_EQ(cluster_contact(P, 0, 0, 1), q(1, 3));
    EXPECT_EQ(pair_sum(P), Rat(disc_order(F)));
}

TEST(Puiseux, RandomDiscriminantIdentity) {
    // Products of explicit factors with assorted contacts.
    std::vector<YPoly<RatFn>> factors = {
        {c(-1) / z().pow(3), c(0), c(1)},
        {-(c(1) / z()) - c(1) - z(), c(1)},
        {-(c(1) / z()) - c(2), c(1)},
        {-z(), c(0), c(1)},
        {c(-7, 2), c(1)},
    };
    for (std::size_t m = 1; m < (1u << factors.size()); ++m) {
        YPoly<RatFn> F = {c(1)};
        for (std::size_t k = 0; k < factors.size(); ++k) {
            if (!(m & (1u << k))) continue;
            YPoly<RatFn> G(F.size() + factors[k].size() - 1);
            for (std::size_t i = 0; i < F.size(); ++i)
                for (std::size_t j = 0; j < factors[k].size(); ++j) G[i + j] += F[i] * factors[k][j];
            F = G;
        }
        auto P = puiseux_roots(F);
        long total = 0;
        for (const auto& cl : P.clusters) total += cl.r;
        EXPECT_EQ(total, static_cast<long>(F.size()) - 1);
        EXPECT_EQ(pair_sum(P), Rat(disc_order(F))) << "mask " << m;
    }
}

TEST(Puiseux, MonomialRootWithSeriesCoefficients) {
    // Roots 1/z + 1/(1 + z) and -1/(3z): the second is exact, the coefficients are not.
    const RatFn r1 = c(1) / z() + c(1) / (c(1) + z());
    const RatFn r2 = c(-1, 3) / z();
    YPoly<RatFn> F = {r1 * r2, c(0) - r1 - r2, c(1)};
    auto P = puiseux_roots(F);
    ASSERT_EQ(P.n, 2u);
    EXPECT_EQ(P.contact[0][1], q(-1));
    EXPECT_EQ(pair_sum(P), Rat(disc_order(F)));
}
