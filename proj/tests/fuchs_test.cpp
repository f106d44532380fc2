#include <gtest/gtest.h>

#include <mbl/fuchs.hpp>
#include <mbl/numeric_verify.hpp>
#include <mbl/parse.hpp>

#include "support.hpp"

using namespace mbl;

namespace {

Poly P(const char* s) { return parse_polynomial(s); }

MomentInstance inst(const char* p, const char* q, Rational a = -1, Rational b = 1)
{
    return MomentInstance(P(p), P(q), a, b);
}

ExactTail tail_of(const RationalFunction& f, int K) { return expand_at_infinity(f, K); }

} // namespace

TEST(ApplyOperator, SpecExamples)
{
    const LinearOperator L({P("-1"), P("2*z")});
    const ExactTail H = h_series(inst("z^2", "z"), 30);
    const ExactTail LH = apply_operator(L, H);
    EXPECT_EQ(LH.valid_to(), 29);
    EXPECT_EQ(LH[0], 0);
    for (int k = 1; k <= LH.valid_to(); ++k) {
        EXPECT_EQ(LH[k], -4) << k;
    }
    EXPECT_EQ(LH, tail_of(RationalFunction(P("-4"), P("z-1")), 29));

    const LinearOperator D({P("0"), P("1")});
    EXPECT_TRUE(apply_operator(D, ExactTail(1, 20)).is_zero_to_truncation());

    const LinearOperator E({P("0"), P("z")}, false);
    ExactTail s(1, 20);
    s.set(1, 1);
    const ExactTail Es = apply_operator(E, s);
    EXPECT_EQ(Es[1], -1);
    EXPECT_EQ(*Es.order(), 1);
    for (int k = 2; k <= Es.valid_to(); ++k) {
        EXPECT_EQ(Es[k], 0);
    }
}

TEST(ApplyOperator, InsufficientTruncation)
{
    const LinearOperator L({P("-1"), P("2*z")});
    EXPECT_THROW(apply_operator(L, h_series(inst("z^2", "z"), 7)), InsufficientTruncation);
    EXPECT_NO_THROW(apply_operator(L, h_series(inst("z^2", "z"), 8)));
}

TEST(ExpandAtInfinity, MatchesSimplePole)
{
    EXPECT_EQ(expand_at_infinity(RationalFunction(P("3"), P("z-2")), 15), simple_pole_tail(Rational(2), 15).scaled(Rational(3)));
}

TEST(FitRationalRhs, SpecExamples)
{
    const auto fr = fit_rational_rhs(tail_of(RationalFunction(P("-4"), P("z-1")), 20), 1, 1, 1);
    ASSERT_TRUE(std::holds_alternative<RhsFit>(fr));
    const auto& fit = std::get<RhsFit>(fr);
    EXPECT_EQ(fit.numerator, P("-4*z+4"));
    EXPECT_EQ(fit.reduced, RationalFunction(P("-4"), P("z-1")));
    EXPECT_GE(fit.margin, 5);
    EXPECT_TRUE(fit.collapsed);
    EXPECT_TRUE(fit.pole_orders_ok);
    EXPECT_TRUE(fit.strict_pole_orders_ok);
    EXPECT_TRUE(fit.denominator_divides);

    const auto zero = fit_rational_rhs(ExactTail(1, 20), 1, 1, 1);
    ASSERT_TRUE(std::holds_alternative<RhsFit>(zero));
    EXPECT_TRUE(std::get<RhsFit>(zero).reduced.is_zero());

    const auto bad = fit_rational_rhs(tail_of(RationalFunction(P("1"), P("z-2")), 20), 1, 1, 1);
    EXPECT_TRUE(std::holds_alternative<Inconsistent>(bad));
}

TEST(FitRationalRhs, RecoversRandomRhs)
{
    proptest::Gen g(41);
    for (int it = 0; it < 100; ++it) {
        const int r = static_cast<int>(g.integer(1, 4));
        const Rational pp = g.rational(5, 3);
        const Rational pm = g.integer(0, 3) == 0 ? pp : g.rational(5, 3);
        const Poly den = pow(linear_factor(pp), r) * pow(linear_factor(pm), r);
        const Poly B = g.poly(static_cast<int>(g.integer(0, 2 * r + 2)), 6, 4);
        const RationalFunction R(B, den);
        const auto fr = fit_rational_rhs(expand_at_infinity(R, 2 * r + 12), pp, pm, r);
        ASSERT_TRUE(std::holds_alternative<RhsFit>(fr));
        const auto& fit = std::get<RhsFit>(fr);
        EXPECT_EQ(fit.reduced, R);
        EXPECT_TRUE(fit.denominator_divides);
        EXPECT_TRUE(fit.pole_orders_ok);

        // an extra pole elsewhere cannot be absorbed
        const RationalFunction R2 = R + RationalFunction(Poly(Rational(1)), linear_factor(pp + pm + 7));
        EXPECT_TRUE(std::holds_alternative<Inconsistent>(fit_rational_rhs(expand_at_infinity(R2, 2 * r + 12), pp, pm, r)));
    }
}

TEST(FitRationalRhs, NeedsMargin)
{
    EXPECT_THROW(fit_rational_rhs(ExactTail(1, 6), 0, 1, 1), InsufficientTruncation);
}

TEST(KisunkoCheck, SpecExamples)
{
    const auto a = kisunko_check(inst("z^2", "z"), 30);
    ASSERT_TRUE(a.fit);
    EXPECT_EQ(a.r, 1);
    EXPECT_EQ(a.fit->reduced, RationalFunction(P("-4"), P("z-1")));
    EXPECT_EQ(a.ord_R, 1);
    EXPECT_TRUE(a.ok());

    const auto b = kisunko_check(inst("z^2", "z^2"), 30);
    ASSERT_TRUE(b.fit);
    EXPECT_TRUE(b.h_zero);
    EXPECT_TRUE(b.fit->reduced.is_zero());
    EXPECT_FALSE(b.ord_R);
    EXPECT_TRUE(b.ok());

    const auto c40 = kisunko_check(inst("z^3-3*z", "z"), 40);
    const auto c60 = kisunko_check(inst("z^3-3*z", "z"), 60);
    ASSERT_TRUE(c40.fit);
    EXPECT_TRUE(c40.ok());
    EXPECT_TRUE(same_result(c40, c60));
    EXPECT_FALSE(c40.fit->collapsed);
    EXPECT_LE(c40.fit->pole_order_plus, 2);
    EXPECT_LE(c40.fit->pole_order_minus, 2);
    EXPECT_EQ(c40.fit->reduced.denominator().degree(), c40.fit->pole_order_plus + c40.fit->pole_order_minus);
}

TEST(KisunkoCheck, WrongOperatorIsInconsistent)
{
    const auto I = inst("z^3-3*z", "z+z^2");
    const LinearOperator L = minimal_annihilator(I.P, I.Q);
    const LinearOperator bad = corrupt_operator(L);
    const auto rep = kisunko_check(I, bad, default_truncation(bad));
    EXPECT_FALSE(rep.ok());
}

TEST(KisunkoCheck, RandomInstancesStable)
{
    proptest::Gen g(7);
    for (int it = 0; it < 30; ++it) {
        const int dP = static_cast<int>(g.integer(2, 4));
        const int dQ = static_cast<int>(g.integer(1, 5));
        const Rational a = g.rational(3, 2);
        Rational b;
        do {
            b = g.rational(3, 2);
        } while (b == a);
        const MomentInstance I(g.poly(dP, 5, 3), g.poly(dQ, 5, 3), a, b);
        const LinearOperator L = minimal_annihilator(I.P, I.Q);
        const int K = default_truncation(L);
        const auto k1 = kisunko_check(I, L, K);
        const auto k2 = kisunko_check(I, L, K + 20);
        EXPECT_TRUE(k1.ok()) << to_expression(I.P) << " ; " << to_expression(I.Q);
        EXPECT_TRUE(same_result(k1, k2));
    }
}

TEST(BoundAudit, SpecExamples)
{
    const auto a = bound_audit(inst("z^2", "z"));
    EXPECT_FALSE(a.error) << *a.error;
    EXPECT_EQ(a.N, 0);
    // deg Q = 1 here, so the index bound is 1 + 3 = 4; 0 < 4 <= bautin_bound(2, 3) = 6
    EXPECT_EQ(a.N_bound, 4);
    EXPECT_LT(*a.N, bautin_bound(2, 3));
    EXPECT_EQ(a.ord_H, 1);
    EXPECT_EQ(a.ord_H_bound, make_rational(9, 2));
    EXPECT_EQ(a.ord_R, 1);
    EXPECT_TRUE(a.all_pass()) << a.failed_flags().front();

    const auto b = bound_audit(inst("z^2", "z-5/3*z^3"));
    EXPECT_EQ(b.N, 1);
    EXPECT_EQ(b.N_bound, 6);
    EXPECT_TRUE(b.all_pass());

    const auto c = bound_audit(inst("z^4", "z^2"));
    EXPECT_TRUE(c.center);
    EXPECT_FALSE(c.N);
    EXPECT_FALSE(c.ord_H);
    EXPECT_TRUE(c.pcc_witness);
    EXPECT_TRUE(c.all_pass());
}

TEST(BoundAudit, RandomInstancesPass)
{
    proptest::Gen g(2024);
    for (int it = 0; it < 25; ++it) {
        const int dP = static_cast<int>(g.integer(2, 4));
        const int dQ = static_cast<int>(g.integer(0, 5));
        const MomentInstance I(g.poly(dP, 5, 3), g.poly(dQ, 5, 3), g.rational(2, 1), 3);
        const auto rep = bound_audit(I);
        EXPECT_TRUE(rep.all_pass()) << to_expression(I.P) << " ; " << to_expression(I.Q);
        for (const auto& f : rep.failed_flags()) {
            ADD_FAILURE() << f;
        }
    }
}

TEST(EulerOperator, OrderMonotonicity)
{
    proptest::Gen g(99);
    for (int it = 0; it < 40; ++it) {
        const LinearOperator L = minimal_annihilator(g.poly(static_cast<int>(g.integer(2, 4)), 5, 2),
                                                     g.poly(static_cast<int>(g.integer(1, 4)), 5, 2));
        const EulerForm ef = euler_form(L);
        const int low = static_cast<int>(g.integer(1, 6));
        ExactTail s(1, 30);
        for (int k = low; k <= 30; ++k) {
            s.set(k, g.rational(4, 4));
        }
        s.set(low, g.nonzero_rational(4, 4));
        const ExactTail Ls = apply_euler_operator(ef, s);
        ASSERT_TRUE(Ls.order());
        EXPECT_GE(*Ls.order(), *s.order());
    }
}
