#include <gtest/gtest.h>

#include "specrig/global/global.hpp"

using namespace specrig;

namespace {

RatFn z() { return RatFn::var(); }
RatFn c(long n, long d = 1) { return RatFn(make_rat(n, d)); }

const Point kInf = Point::at_infinity();
const Point kZero = Point::at(Rat(0));

}  // namespace

TEST(Global, ArithmeticGenus) {
    EXPECT_EQ(arithmetic_genus({2, 5, 0}), 2);
    EXPECT_EQ(arithmetic_genus({2, 7, 0}), 4);
    for (long b = 0; b < 6; ++b) EXPECT_EQ(arithmetic_genus({1, b, 0}), 0);
    // Higher genus base, formula level only.
    EXPECT_EQ(arithmetic_genus({2, 3, 1}), 4);
    EXPECT_EQ(arithmetic_genus({2, 1, 0}), -2);
}

TEST(Global, EulerCharAndRigidity) {
    EXPECT_EQ(euler_char_normalization(2, 2), 2);
    EXPECT_EQ(euler_char_normalization(4, 3), 0);
    EXPECT_EQ(euler_char_normalization(0, 0), 2);
    EXPECT_EQ(rigidity_index(2, 0, {6}), 2);
    EXPECT_EQ(rigidity_index(2, 0, {8}), 0);
    EXPECT_EQ(rigidity_index(2, 0, {2, 2}), 4);
    EXPECT_EQ(rigidity_index(2, 1, {}), 0);
}

TEST(Global, Cohomology) {
    auto h = cohomology_dims(2);
    EXPECT_EQ(h.h0, 1);
    EXPECT_EQ(h.h1, 0);
    EXPECT_EQ(h.h2, 1);
    EXPECT_FALSE(h.warning);
    EXPECT_EQ(cohomology_dims(0).h1, 2);
    EXPECT_TRUE(cohomology_dims(4).warning);
}

TEST(Global, SmoothnessAiry) {
    MatRF A{{c(0), c(1)}, {z(), c(0)}};
    EXPECT_EQ(smoothness_check(A, {kInf}).status, Smoothness::Smooth);
}

TEST(Global, SmoothnessFiniteNode) {
    MatRF A{{c(0), c(1)}, {z().pow(2), c(0)}};
    auto rep = smoothness_check(A, {kInf});
    EXPECT_EQ(rep.status, Smoothness::Singular);
    ASSERT_EQ(rep.singular_points.size(), 1u);
    EXPECT_EQ(rep.singular_points[0], "z = 0");
}

TEST(Global, SmoothnessIrrationalLocus) {
    // y^2 = (z^2 - 2)^2 is singular over both roots of z^2 - 2.
    MatRF A{{c(0), c(1)}, {(z().pow(2) - c(2)).pow(2), c(0)}};
    auto rep = smoothness_check(A, {kInf});
    EXPECT_EQ(rep.status, Smoothness::Singular);
}

TEST(Global, SmoothnessGraph) {
    MatRF A{{c(3) / z() + z()}};
    EXPECT_EQ(smoothness_check(A, {kZero, kInf}).status, Smoothness::Smooth);
}

TEST(Global, SmoothnessOverNonPoleInfinity) {
    // Pole at 0 only; in the chart at infinity the curve is y^2 = x^2.
    MatRF A{{c(0), c(-1) / z().pow(2)}, {c(-1) / z().pow(4), c(0)}};
    auto rep = smoothness_check(A, {kZero});
    EXPECT_EQ(rep.status, Smoothness::Singular);
}

TEST(Global, IrreducibilityTotallyRamified) {
    MatRF A{{c(0), c(1)}, {z(), c(0)}};
    auto L = build_local(A, kInf);
    auto rep = irreducibility_status(charpoly(A), {L});
    EXPECT_EQ(rep.status, Irreducibility::Irreducible);
}

TEST(Global, IrreducibilityReducible) {
    MatRF A{{c(1, 3) / z(), c(0)}, {c(0), c(-1, 2) / z()}};
    auto rep = irreducibility_status(charpoly(A), {build_local(A, kZero), build_local(A, kInf)});
    EXPECT_EQ(rep.status, Irreducibility::Reducible);
    EXPECT_EQ(rep.factor_degrees, (std::vector<long>{1, 1}));
}

TEST(Global, IrreducibilityReducibleAfterGauge) {
    // diag(1/z, z) conjugated by a constant matrix; the factorization is hidden.
    MatRF D{{c(1) / z(), c(0)}, {c(0), z()}};
    MatRF P{{c(1), c(2)}, {c(1), c(3)}};
    MatRF Pinv{{c(3), c(-2)}, {c(-1), c(1)}};
    MatRF A = P * D * Pinv;
    auto rep = irreducibility_status(charpoly(A), {});
    EXPECT_EQ(rep.status, Irreducibility::Reducible);
}

TEST(Global, IrreducibilityUnknown) {
    MatRF A{{c(0), c(1)}, {z().pow(2) + c(1), c(0)}};
    auto rep = irreducibility_status(charpoly(A), {build_local(A, kInf)});
    EXPECT_EQ(rep.status, Irreducibility::Unknown);
}
