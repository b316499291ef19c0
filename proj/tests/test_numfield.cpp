#include <gtest/gtest.h>

#include "specrig/algebra/numfield.hpp"

using namespace specrig;

namespace {

KPoly kp(std::initializer_list<long> c) {
    std::vector<AlgNum> v;
    for (long x : c) v.emplace_back(x);
    return KPoly(v);
}

AlgNum eval(const KPoly& p, const AlgNum& x) {
    AlgNum r(0);
    for (int i = p.degree(); i >= 0; --i) r = r * x + p[static_cast<std::size_t>(i)];
    return r;
}

}  // namespace

TEST(NumberField, QuadraticArithmetic) {
    auto f = std::make_shared<const NumberField>(QPoly({Rat(-2), Rat(0), Rat(1)}), nullptr, QPoly::x(), "s");
    AlgNum s = AlgNum::generator(f);
    EXPECT_EQ(s * s, AlgNum(2));
    AlgNum x = AlgNum(1) + s;
    EXPECT_EQ(x * x.inverse(), AlgNum(1));
    EXPECT_EQ(x.minpoly_q(), QPoly({Rat(-1), Rat(-2), Rat(1)}));
}

TEST(NumberField, TragerSplitsOverExtension) {
    FieldContext ctx;
    auto r = ctx.roots(kp({-2, 0, 1}));
    ASSERT_EQ(r.size(), 2u);
    EXPECT_EQ(ctx.degree(), 2);
    auto fs = factor_squarefree_over(kp({-2, 0, 0, 0, 1}), ctx.field());
    EXPECT_EQ(fs.size(), 2u);  // (x^2 - r)(x^2 + r)
}

TEST(NumberField, AllRootsOfQuarticBinomial) {
    FieldContext ctx;
    KPoly p = kp({-2, 0, 0, 0, 1});
    auto r = ctx.roots(p);
    ASSERT_EQ(r.size(), 4u);
    EXPECT_EQ(ctx.degree(), 8);
    for (auto& [x, m] : r) {
        EXPECT_EQ(m, 1);
        EXPECT_TRUE(eval(p, x).is_zero());
    }
    for (std::size_t i = 0; i < r.size(); ++i)
        for (std::size_t j = i + 1; j < r.size(); ++j) EXPECT_FALSE(r[i].first == r[j].first);
}

TEST(NumberField, RootsOfUnity) {
    FieldContext ctx;
    AlgNum w = ctx.root_of_unity(3);
    EXPECT_EQ(w.pow(3), AlgNum(1));
    EXPECT_FALSE(w == AlgNum(1));
    AlgNum i = ctx.root_of_unity(4);
    EXPECT_EQ(i * i, AlgNum(-1));
    EXPECT_EQ(ctx.degree(), 4);
    EXPECT_EQ(w.lift_to(ctx.field()).pow(3), AlgNum(1));
}

TEST(NumberField, MultipleRoots) {
    FieldContext ctx;
    auto r = ctx.roots(kp({-1, 0, 1}) * kp({-1, 0, 1}) * kp({3, 1}));
    int total = 0;
    for (auto& [x, m] : r) total += m;
    EXPECT_EQ(total, 5);
    EXPECT_EQ(ctx.degree(), 1);
}
