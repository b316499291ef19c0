#include <gtest/gtest.h>

#include "specrig/algebra/qfactor.hpp"
#include "specrig/exact/localize.hpp"
#include "specrig/exact/matrix.hpp"
#include "specrig/exact/poles.hpp"
#include "specrig/exact/ratfn.hpp"
#include "specrig/exact/resultant.hpp"
#include "specrig/exact/series.hpp"

using namespace specrig;

namespace {

RatFn z() { return RatFn::var(); }
RatFn c(long n, long d = 1) { return RatFn(make_rat(n, d)); }

}  // namespace

TEST(Resultant, SylvesterQuadratic) {
    YPoly<RatFn> f = {-z(), c(0), c(1)};
    YPoly<RatFn> g = {c(0), c(2)};
    EXPECT_EQ(resultant(f, g), c(-4) * z());
    EXPECT_EQ(discriminant(f), c(4) * z());
}

TEST(Resultant, LinearAndUnit) {
    YPoly<Rat> f = {Rat(-3), Rat(1)}, g = {Rat(-5), Rat(1)};
    EXPECT_EQ(resultant(f, g), Rat(-2));
    EXPECT_EQ(resultant(f, YPoly<Rat>{Rat(1)}), Rat(1));
    EXPECT_EQ(discriminant(YPoly<Rat>{Rat(2), Rat(-3), Rat(1)}), Rat(1));
    EXPECT_EQ(discriminant(YPoly<Rat>{Rat(0), Rat(0), Rat(1)}), Rat(0));
}

TEST(QFactor, Basic) {
    QPoly p = QPoly({Rat(-2), Rat(0), Rat(1)}) * QPoly({Rat(1), Rat(1), Rat(1)}) * QPoly({Rat(-1), Rat(3)});
    auto f = factor_rational(p);
    ASSERT_EQ(f.size(), 3u);
    EXPECT_EQ(f[0].first.degree(), 1);
    EXPECT_EQ(rational_roots(p), std::vector<Rat>{make_rat(1, 3)});
    EXPECT_TRUE(is_irreducible(QPoly({Rat(2), Rat(0), Rat(0), Rat(0), Rat(1)})));
    EXPECT_FALSE(is_irreducible(QPoly({Rat(4), Rat(0), Rat(0), Rat(0), Rat(1)})));
}

TEST(Series, MulPrecision) {
    Series<Rat> a(0, {Rat(1), Rat(1)}, 5);
    Series<Rat> b = a.inverse();
    Series<Rat> p = a * b;
    EXPECT_EQ(p.coeff(0), Rat(1));
    for (long e = 1; e < p.prec(); ++e) EXPECT_EQ(p.coeff(e), Rat(0));
}

TEST(Berkowitz, Charpoly) {
    Matrix<RatFn> M = {{c(0), c(1)}, {z(), c(0)}};
    auto cp = berkowitz(M);
    EXPECT_EQ(cp[0], c(1));
    EXPECT_EQ(cp[1], c(0));
    EXPECT_EQ(cp[2], -z());
}

TEST(Valuation, Examples) {
    RatFn f = z().pow(2) / (z() - c(1));
    EXPECT_EQ(valuation(f, Point::at(Rat(0))), 2);
    EXPECT_EQ(valuation(c(1) / z(), Point::at_infinity()), 1);
    EXPECT_EQ(valuation(RatFn(), Point::at(Rat(3))), kInfiniteOrder);
}

TEST(Valuation, Additive) {
    std::vector<RatFn> fs = {z() + c(2), c(3) / (z() * z()), (z() - c(1)) / (z() + c(1)), z().pow(3) - c(1, 2)};
    std::vector<Point> pts = {Point::at(Rat(0)), Point::at(Rat(1)), Point::at(Rat(-1)), Point::at_infinity()};
    for (const auto& f : fs)
        for (const auto& g : fs)
            for (const auto& a : pts) EXPECT_EQ(valuation(f * g, a), valuation(f, a) + valuation(g, a));
}

TEST(Localize, Examples) {
    MatRF A1 = {{z()}};
    auto L1 = localize(A1, Point::at_infinity(), 10);
    EXPECT_EQ(L1.nu, 3);
    EXPECT_EQ(L1.exact(0, 0), c(-1) / z().pow(3));

    MatRF airy = {{c(0), c(1)}, {z(), c(0)}};
    auto L2 = localize(airy, Point::at_infinity(), 10);
    EXPECT_EQ(L2.nu, 3);
    EXPECT_EQ(L2.exact(0, 1), c(-1) / z().pow(2));
    EXPECT_EQ(L2.exact(1, 0), c(-1) / z().pow(3));

    MatRF A3 = {{c(1) / z().pow(2)}};
    EXPECT_EQ(localize(A3, Point::at(Rat(0)), 10).nu, 2);
}

TEST(Localize, SeriesMatchesSyntheticDivision) {
    // 1/(1 - 2x + 3x^2): coefficients by the recurrence c_k = 2c_{k-1} - 3c_{k-2}.
    RatFn f = c(1) / (c(1) - c(2) * z() + c(3) * z() * z());
    QSeries s = to_series(f, 12);
    std::vector<Rat> ref = {Rat(1), Rat(2)};
    for (int k = 2; k < 12; ++k) ref.push_back(2 * ref[k - 1] - 3 * ref[k - 2]);
    for (int k = 0; k < 12; ++k) EXPECT_EQ(s.coeff(k), ref[k]);
    EXPECT_THROW(s.coeff(12), InsufficientTruncation);
}

TEST(Poles, Validation) {
    MatRF A = {{c(1) / z()}};
    EXPECT_THROW(pole_set_validate(A, {Point::at(Rat(0))}), PoleSetError);
    EXPECT_NO_THROW(pole_set_validate(A, {Point::at(Rat(0)), Point::at_infinity()}));
    MatRF B = {{c(1) / (z() * z() + c(1))}};
    EXPECT_THROW(pole_set_validate(B, {}), UnsupportedPoint);
    MatRF C = {{z()}};
    auto v = pole_set_validate(C, {Point::at_infinity(), Point::at(Rat(5))});
    EXPECT_EQ(v.poles.size(), 1u);
    EXPECT_EQ(v.warnings.size(), 1u);
}

TEST(Charpoly, SimilarityInvariance) {
    MatRF M = {{c(0), c(1), z()}, {z(), c(0), c(1) / z()}, {c(2), z() * z(), c(-1)}};
    MatRF P = {{c(1), c(2), c(0)}, {c(0), c(1), c(3)}, {c(1), c(0), c(1)}};
    // P^{-1} by adjugate over Q.
    Rat d = determinant(P.map<Rat>([](const RatFn& f) { return f.constant_value(); }));
    MatRF adj(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            MatRF minor(2, 2);
            std::size_t r = 0;
            for (std::size_t a = 0; a < 3; ++a) {
                if (a == j) continue;
                std::size_t cc = 0;
                for (std::size_t b = 0; b < 3; ++b) {
                    if (b == i) continue;
                    minor(r, cc++) = P(a, b);
                }
                ++r;
            }
            RatFn m = determinant(minor);
            adj(i, j) = ((i + j) % 2 ? -m : m) / RatFn(d);
        }
    EXPECT_EQ(P * adj, MatRF::identity(3));
    EXPECT_EQ(charpoly(P * M * adj), charpoly(M));
    auto F = charpoly(MatRF{{c(0), c(1)}, {z(), c(0)}});
    EXPECT_EQ(F, (YPoly<RatFn>{-z(), c(0), c(1)}));
}

TEST(Resultant, ClearedDiscriminantMatches) {
    YPoly<RatFn> F = {c(2) / z().pow(2), c(-3) / z(), c(1)};
    EXPECT_EQ(discriminant_rf(F), discriminant(F));
    YPoly<RatFn> G = {c(-1) / (z() - c(1)), z(), c(1, 2) / z(), c(1)};
    EXPECT_EQ(discriminant_rf(G), discriminant(G));
}
