#include <gtest/gtest.h>

#include <mbl/moments.hpp>
#include <mbl/parse.hpp>

#include "support.hpp"

using namespace mbl;

namespace {

Poly P(const char* s) { return parse_polynomial(s); }

MomentInstance inst(const char* p, const char* q, long a = -1, long b = 1)
{
    return MomentInstance(P(p), P(q), Rational(a), Rational(b));
}

/// Independent oracle: antiderivative by Horner at a and b, no integer scaling.
Rational oracle_integral(const Poly& f, const Rational& a, const Rational& b)
{
    std::vector<Rational> c(static_cast<std::size_t>(std::max(f.degree(), 0)) + 2);
    for (int j = 0; j <= f.degree(); ++j) {
        c[static_cast<std::size_t>(j) + 1] = f[j] / Rational(j + 1);
    }
    auto horner = [&](const Rational& x) {
        Rational acc = 0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) {
            acc = acc * x + *it;
        }
        return acc;
    };
    return horner(b) - horner(a);
}

} // namespace

TEST(Moments, SpecExamples)
{
    auto e1 = inst("z^2", "z");
    EXPECT_EQ(moment(e1, 0), Rational(4, 3));
    EXPECT_EQ(moment(e1, 1), Rational(4, 5));
    for (int k = 0; k <= 10; ++k) {
        EXPECT_EQ(moment(inst("z^2", "z^2"), k), 0);
    }
    EXPECT_EQ(moment_tilde(e1, 1), Rational(2, 3));
    EXPECT_EQ(moment_tilde(e1, 0), Rational(2));
    EXPECT_EQ(moment_tilde(inst("z^2", "z^2"), 3), 0);
}

TEST(Moments, ClosedFormOfWorkedInstance)
{
    MomentSequence seq(inst("z^2", "z"), MomentKind::standard);
    for (int k = 0; k <= 20; ++k) {
        EXPECT_EQ(seq[k], Rational(4, 2 * k + 3));
    }
}

TEST(Moments, SequenceMatchesExpansionAndOracle)
{
    proptest::Gen g(21);
    for (int it = 0; it < 80; ++it) {
        MomentInstance in(g.poly(static_cast<int>(g.integer(1, 5))), g.poly(static_cast<int>(g.integer(0, 6))),
                          g.rational(3, 4), g.rational(3, 4) + 5);
        MomentSequence m(in, MomentKind::standard);
        MomentSequence mt(in, MomentKind::tilde);
        for (int k = 0; k <= 12; ++k) {
            const Rational direct = moment(in, k);
            EXPECT_EQ(m[k], direct);
            EXPECT_EQ(direct, oracle_integral(pow(in.P, static_cast<unsigned>(k)) * in.Q * in.p(), in.a, in.b));
            EXPECT_EQ(mt[k], moment_tilde(in, k));
            EXPECT_EQ(mt[k], oracle_integral(pow(in.P, static_cast<unsigned>(k)) * in.q(), in.a, in.b));
        }
    }
}

TEST(VanishingIndex, SpecExamples)
{
    auto r0 = vanishing_index(inst("z^2", "z"), 20);
    ASSERT_TRUE(std::holds_alternative<FirstNonzero>(r0));
    EXPECT_EQ(std::get<FirstNonzero>(r0).index, 0);
    EXPECT_EQ(std::get<FirstNonzero>(r0).value, Rational(4, 3));

    auto r1 = vanishing_index(inst("z^2", "z-5/3*z^3"), 20);
    ASSERT_TRUE(std::holds_alternative<FirstNonzero>(r1));
    EXPECT_EQ(std::get<FirstNonzero>(r1).index, 1);
    EXPECT_EQ(std::get<FirstNonzero>(r1).value, Rational(-16, 105));

    auto r2 = vanishing_index(inst("z^2", "z^2"), 50);
    ASSERT_TRUE(std::holds_alternative<AllZeroUpTo>(r2));
    EXPECT_EQ(std::get<AllZeroUpTo>(r2).kmax, 50);
}

TEST(Bounds, ClosedForms)
{
    EXPECT_EQ(bautin_bound(2, 3), 6);
    EXPECT_EQ(bautin_bound(1, 5), 5);
    EXPECT_EQ(bautin_bound_tilde(2, 0), 5);
    EXPECT_THROW(bautin_bound(0, 1), std::invalid_argument);
}

TEST(TildeRelation, SpecExamples)
{
    auto a = check_tilde_relation(inst("z^2", "z^2"), 20);
    EXPECT_TRUE(a.ok());
    EXPECT_TRUE(a.relation_checked);

    auto b = check_tilde_relation(inst("z^2-1", "(z^2-1)^2"), 20);
    EXPECT_TRUE(b.endpoints_equal);
    EXPECT_TRUE(b.ok());
    EXPECT_EQ(b.checked_up_to, 20);

    auto c = check_tilde_relation(inst("z^2", "z"), 20);
    EXPECT_FALSE(c.endpoints_equal);
    EXPECT_FALSE(c.relation_checked);
    EXPECT_TRUE(c.ok());
}

TEST(TildeRelation, RandomNormalizedInstances)
{
    proptest::Gen g(22);
    for (int it = 0; it < 100; ++it) {
        Poly p = g.poly(static_cast<int>(g.integer(1, 4)));
        Poly q = g.poly(static_cast<int>(g.integer(1, 5)));
        Rational a = g.rational(2, 3);
        Rational b = a + g.integer(1, 3);
        // Q(a) = Q(b) = 0 by subtracting the chord through (a, Q(a)), (b, Q(b))
        q -= Poly({Rational(-a), Rational(1)}).scaled((q(b) - q(a)) / (b - a)) + Poly(q(a));
        MomentInstance in(p, q, a, b);
        auto rep = check_tilde_relation(in, 25);
        EXPECT_TRUE(rep.endpoints_equal);
        EXPECT_TRUE(rep.relation_checked);
        EXPECT_TRUE(rep.ok());
        EXPECT_TRUE(rep.boundary_failures.empty());
    }
}

TEST(TildeRelation, BoundaryTermWhenEndpointValuesDiffer)
{
    // Q(a) = Q(b) = 1 but P(a) != P(b): the short form needs the boundary term
    MomentInstance in(P("z"), P("z^2"), Rational(-1), Rational(1));
    auto rep = check_tilde_relation(in, 10);
    EXPECT_TRUE(rep.endpoints_equal);
    EXPECT_FALSE(rep.boundary_terms_vanish);
    EXPECT_TRUE(rep.ok());
    EXPECT_FALSE(rep.boundary_failures.empty());
}

TEST(TildeRelation, FirstTildeMomentIsEndpointDifference)
{
    proptest::Gen g(24);
    for (int it = 0; it < 100; ++it) {
        Rational a = g.rational(3, 3);
        MomentInstance in(g.poly(static_cast<int>(g.integer(1, 4))), g.poly(static_cast<int>(g.integer(0, 5))), a,
                          a + g.integer(1, 2));
        auto rep = check_tilde_relation(in, 5);
        EXPECT_TRUE(rep.first_tilde_matches);
        EXPECT_TRUE(rep.ok());
    }
}

TEST(Pcc, ComposeProducesCenters)
{
    auto c1 = pcc_compose(P("z^2"), P("z"), P("z^2"), -1, 1);
    EXPECT_EQ(c1.P, P("z^4"));
    EXPECT_EQ(c1.Q, P("z^2"));
    MomentSequence m1(c1, MomentKind::standard);
    for (int k = 0; k <= 100; ++k) {
        ASSERT_EQ(m1[k], 0) << k;
    }
    auto c2 = pcc_compose(P("z"), P("z^3"), P("z^2+z"), -1, 0);
    MomentSequence m2(c2, MomentKind::tilde);
    for (int k = 0; k <= 100; ++k) {
        ASSERT_EQ(m2[k], 0) << k;
    }
    EXPECT_THROW(pcc_compose(P("z"), P("z"), P("z"), -1, 1), std::invalid_argument);
}

TEST(Pcc, CheckExamples)
{
    auto h = pcc_check(inst("z^4", "z^2"));
    ASSERT_TRUE(h.holds());
    EXPECT_EQ(*h.witness, P("z^2"));
    EXPECT_FALSE(pcc_check(inst("z^2", "z")).holds());
    EXPECT_FALSE(pcc_check(inst("z^3", "z")).holds());
}

TEST(Pcc, RandomComposedInstancesAreDetectedAndVanish)
{
    proptest::Gen g(23);
    for (int it = 0; it < 30; ++it) {
        // W = (z - a)(z - b) S(z) + c has W(a) = W(b)
        Rational a = g.rational(2, 2);
        Rational b = a + g.integer(1, 2);
        Poly W = Poly({-a, 1}) * Poly({-b, 1}) * g.poly(static_cast<int>(g.integer(0, 1))) + Poly(g.rational());
        MomentInstance in = pcc_compose(g.poly(static_cast<int>(g.integer(1, 2))), g.poly(static_cast<int>(g.integer(1, 3))), W, a, b);
        const int K = bautin_bound(in.deg_P(), in.deg_Q());
        MomentSequence m(in, MomentKind::standard);
        for (int k = 0; k <= 2 * K; ++k) {
            ASSERT_EQ(m[k], 0);
        }
        EXPECT_TRUE(pcc_check(in).holds());
    }
}
