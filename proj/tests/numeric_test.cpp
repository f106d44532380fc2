#include <gtest/gtest.h>

#include <mbl/numeric_verify.hpp>
#include <mbl/parse.hpp>

#include "support.hpp"

using namespace mbl;

namespace {

Poly P(const char* s) { return parse_polynomial(s); }

} // namespace

TEST(HighPrecision, RootsOfKnownPolynomial)
{
    using Real = MpReal<80>;
    auto roots = polynomial_roots(to_complex<Real>(P("z^3-6*z^2+11*z-6")));
    std::vector<double> re;
    for (const auto& z : roots) {
        EXPECT_LT(static_cast<double>(abs(z.im)), 1e-70);
        re.push_back(static_cast<double>(z.re));
    }
    std::sort(re.begin(), re.end());
    EXPECT_NEAR(re[0], 1, 1e-15);
    EXPECT_NEAR(re[1], 2, 1e-15);
    EXPECT_NEAR(re[2], 3, 1e-15);
}

TEST(HighPrecision, RationalRoots)
{
    EXPECT_EQ(rational_roots(P("(3*z-2)*(z+5)*(z^2+1)")), (std::vector<Rational>{Rational(-5), Rational(2, 3)}));
    EXPECT_TRUE(rational_roots(P("z^2-2")).empty());
    EXPECT_EQ(rational_roots(P("z^2-4")), (std::vector<Rational>{Rational(-2), Rational(2)}));
}

TEST(HighPrecision, SquarefreeDecomposition)
{
    auto parts = squarefree_decomposition(P("2*(z-1)^3*(z+2)*(z^2+1)^2"));
    ASSERT_EQ(parts.size(), 3u);
    EXPECT_EQ(parts[0].first, P("z+2"));
    EXPECT_EQ(parts[0].second, 1);
    EXPECT_EQ(parts[1].first, P("z^2+1"));
    EXPECT_EQ(parts[1].second, 2);
    EXPECT_EQ(parts[2].first, P("z-1"));
    EXPECT_EQ(parts[2].second, 3);
}

TEST(AnnihilationNumeric, SpecExamples)
{
    auto sq = algebraic_resultant(P("z^2"), P("z"));
    LinearOperator L1({P("-1"), P("2*z")});
    EXPECT_LT(verify_annihilation_numeric(L1, sq, 5).max_residual, 1e-40);

    auto lin = algebraic_resultant(P("z^2"), P("z^2"));
    LinearOperator L2({P("-1"), P("z")});
    EXPECT_LT(verify_annihilation_numeric(L2, lin, 5).max_residual, 1e-50);

    LinearOperator wrong({P("1"), P("2*z")}, false);
    EXPECT_GT(verify_annihilation_numeric(wrong, sq, 5).max_residual, 1e-3);
}

TEST(AnnihilationNumeric, ConstructedOperatorsAndCorruptions)
{
    proptest::Gen g(51);
    for (int it = 0; it < 10; ++it) {
        Poly Pp = g.poly(static_cast<int>(g.integer(1, 4)));
        Poly Qq = g.poly(static_cast<int>(g.integer(1, 6)));
        auto eq = algebraic_resultant(Pp, Qq);
        auto L = minimal_annihilator(eq);
        auto ok = verify_annihilation_numeric(L, eq, 3);
        EXPECT_LT(ok.max_residual, 1e-30) << to_expression(Pp) << " | " << to_expression(Qq);
        EXPECT_GT(verify_annihilation_numeric(corrupt_operator(L), eq, 3).max_residual, 1e-3);
    }
}

TEST(AnnihilationNumeric, CubicBranchesSpanTwoDimensions)
{
    // w1 + w2 + w3 = 0 for the roots of w^3 - 3w = z, so the branches span a plane
    auto rep = wronskian_order_infinity(P("z^3-3*z"), P("z"), 256);
    EXPECT_EQ(rep.r, 2);
    EXPECT_TRUE(rep.rank_consistent);
}

TEST(Wronskian, SpecExamples)
{
    auto a = wronskian_order_infinity(P("z^2"), P("z"), 256);
    EXPECT_EQ(a.r, 1);
    EXPECT_EQ(a.at_infinity.status, OrderStatus::determined);
    EXPECT_EQ(a.at_infinity.order, Rational(-1, 2));
    EXPECT_EQ(a.at_infinity.bound, Rational(-1, 2));
    EXPECT_TRUE(a.at_infinity.pass);

    auto b = wronskian_order_infinity(P("z^2"), P("z^2"), 256);
    EXPECT_EQ(b.at_infinity.order, Rational(-1));
    EXPECT_EQ(b.at_infinity.bound, Rational(-1));
    EXPECT_TRUE(b.pass());

    auto c = wronskian_order_infinity(P("z^3-3*z"), P("z"), 256);
    EXPECT_EQ(c.at_infinity.bound, Rational(1, 3));
    EXPECT_EQ(c.at_infinity.status, OrderStatus::determined);
    EXPECT_GE(c.at_infinity.order, Rational(1, 3));
    EXPECT_TRUE(c.pass());
    // critical values +-2, each with one double critical point
    ASSERT_EQ(c.at_critical.size(), 2u);
    for (const auto& loc : c.at_critical) {
        EXPECT_EQ(loc.critical_multiplicity, 1);
        EXPECT_EQ(loc.ramification, 2);
        EXPECT_EQ(loc.status, OrderStatus::determined);
        EXPECT_TRUE(loc.pass);
    }
    EXPECT_THROW(wronskian_order_infinity(P("z^2"), P("z"), 64), std::invalid_argument);
}

TEST(Wronskian, CriticalValueOfSquare)
{
    // g = sqrt(z) at 0: W = g has order 1/2 >= -1 + 1 = 0
    auto a = wronskian_order_infinity(P("z^2"), P("z"), 256);
    ASSERT_EQ(a.at_critical.size(), 1u);
    EXPECT_EQ(*a.at_critical[0].point, 0);
    EXPECT_EQ(a.at_critical[0].order, Rational(1, 2));
    EXPECT_EQ(a.at_critical[0].bound, 0);
    EXPECT_TRUE(a.at_critical[0].strict_pass);
}

TEST(Wronskian, RandomInstancesRespectBounds)
{
    proptest::Gen g(52);
    for (int it = 0; it < 6; ++it) {
        Poly Pp = g.poly(static_cast<int>(g.integer(2, 4)));
        Poly Qq = g.poly(static_cast<int>(g.integer(1, 5)));
        auto rep = wronskian_order_infinity(Pp, Qq, 256);
        EXPECT_EQ(rep.at_infinity.status, OrderStatus::determined);
        EXPECT_TRUE(rep.pass()) << to_expression(Pp) << " | " << to_expression(Qq);
    }
}
