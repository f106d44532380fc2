#include <gtest/gtest.h>

#include <complex>

#include <mbl/decomposition.hpp>
#include <mbl/parse.hpp>
#include <mbl/rational_function.hpp>
#include <mbl/resultant.hpp>

#include "support.hpp"

using namespace mbl;

namespace {

Poly P(const char* s) { return parse_polynomial(s); }
Rational Q(const char* s) { return parse_rational(s); }

BiPolynomial y_minus(const Poly& c) { return BiPolynomial({-c, Poly(Rational(1))}); }

} // namespace

TEST(Rationals, ParseForms)
{
    EXPECT_EQ(Q("7"), Rational(7));
    EXPECT_EQ(Q("-3/4"), Rational(-3, 4));
    EXPECT_EQ(Q("0.125"), Rational(1, 8));
    EXPECT_EQ(Q("\xe2\x88\x92" "1"), Rational(-1));
    EXPECT_EQ(Q("6/4"), Rational(3, 2));
    EXPECT_THROW(Q("1/0"), ParseError);
    EXPECT_THROW(Q("abc"), ParseError);
}

TEST(Polynomials, ParseAndPrint)
{
    EXPECT_EQ(P("z^3-3*z"), Poly({0, -3, 0, 1}));
    EXPECT_EQ(P("1/2*z^2-1/2"), Poly({Rational(-1, 2), 0, Rational(1, 2)}));
    EXPECT_EQ(P("[1, 0, -2]"), Poly({1, 0, -2}));
    EXPECT_EQ(P("(z+1)^2"), Poly({1, 2, 1}));
    EXPECT_EQ(P("3z - 2(z+1)"), Poly({-2, 1}));
    EXPECT_EQ(to_expression(P("z^3-3*z")), "z^3-3*z");
    EXPECT_EQ(to_expression(P("1/2*z^2-1/2")), "1/2*z^2-1/2");
    EXPECT_EQ(to_expression(Poly()), "0");
    EXPECT_THROW(P("z*x"), ParseError);
    EXPECT_THROW(P("1/z"), ParseError);
}

TEST(Polynomials, ComposeDerivativeGcd)
{
    EXPECT_EQ(compose(P("z^2"), P("z+1")), P("z^2+2*z+1"));
    EXPECT_EQ(derivative(P("z^3-3*z")), P("3*z^2-3"));
    EXPECT_EQ(gcd(P("z^2-1"), P("z^2-2*z+1")), P("z-1"));
    EXPECT_EQ(Poly().degree(), kDegreeOfZero);
    EXPECT_EQ(squarefree_part(P("(z-1)^3*(z+2)")), P("(z-1)*(z+2)"));
}

TEST(Polynomials, DefiniteIntegral)
{
    EXPECT_EQ(definite_integral(P("1"), -1, 1), Rational(2));
    EXPECT_EQ(definite_integral(P("z"), -1, 1), Rational(0));
    EXPECT_EQ(definite_integral(P("z^2"), -1, 1), Rational(2, 3));
}

TEST(Polynomials, IntegralIsLinear)
{
    proptest::Gen g(11);
    for (int it = 0; it < 200; ++it) {
        Poly f = g.poly(static_cast<int>(g.integer(0, 8)));
        Poly h = g.poly(static_cast<int>(g.integer(0, 8)));
        Rational a = g.rational(), b = g.rational();
        EXPECT_EQ(definite_integral(f + h, a, b), definite_integral(f, a, b) + definite_integral(h, a, b));
    }
}

TEST(Polynomials, ComposeIsAssociative)
{
    proptest::Gen g(12);
    for (int it = 0; it < 100; ++it) {
        Poly f = g.poly(static_cast<int>(g.integer(0, 3)));
        Poly h = g.poly(static_cast<int>(g.integer(0, 3)));
        Poly k = g.poly(static_cast<int>(g.integer(0, 3)));
        EXPECT_EQ(compose(compose(f, h), k), compose(f, compose(h, k)));
        if (f.degree() >= 1 && h.degree() >= 1) {
            EXPECT_EQ(compose(f, h).degree(), f.degree() * h.degree());
        }
    }
}

TEST(Polynomials, DivmodAndGcdProperties)
{
    proptest::Gen g(13);
    for (int it = 0; it < 100; ++it) {
        Poly c = g.poly(static_cast<int>(g.integer(0, 3)));
        Poly f = g.poly(static_cast<int>(g.integer(0, 5))) * c;
        Poly h = g.poly(static_cast<int>(g.integer(1, 5))) * c;
        auto [q, r] = divmod(f, h);
        EXPECT_EQ(q * h + r, f);
        EXPECT_LT(r.degree(), h.degree());
        Poly d = gcd(f, h);
        EXPECT_TRUE((f % d).is_zero());
        EXPECT_TRUE((h % d).is_zero());
        EXPECT_TRUE((d % make_monic(c)).is_zero());
    }
}

TEST(Resultants, SpecExamples)
{
    const Poly z = Poly::variable();
    // Res_w(w^2 - z, y - w) with coefficients in Q[z][y]
    using Tri = Polynomial<BiPolynomial>;
    auto lift = [](const Poly& c) { return BiPolynomial(c); };
    Tri w2_minus_z({lift(-z), lift(Poly()), lift(Poly(Rational(1)))});
    Tri y_minus_w({BiPolynomial({Poly(), Poly(Rational(1))}), lift(Poly(Rational(-1)))});
    EXPECT_EQ(resultant(w2_minus_z, y_minus_w), BiPolynomial({-z, Poly(), Poly(Rational(1))}));

    Tri w_minus_c({lift(Poly(Rational(-3))), lift(Poly(Rational(1)))});
    EXPECT_EQ(resultant(w_minus_c, y_minus_w), y_minus(Poly(Rational(3))));

    Tri y_minus_w2({BiPolynomial({Poly(), Poly(Rational(1))}), lift(Poly()), lift(Poly(Rational(-1)))});
    BiPolynomial y_minus_z = y_minus(z);
    EXPECT_EQ(resultant(w2_minus_z, y_minus_w2), y_minus_z * y_minus_z);

    EXPECT_THROW(resultant(Poly(), P("z")), std::invalid_argument);
}

TEST(Resultants, VanishesExactlyOnCommonRoots)
{
    proptest::Gen g(14);
    for (int it = 0; it < 10; ++it) {
        // A(z, y) = y^2 - z r(z), B(z, y) = y - s(z); common root iff s^2 = z r at z0
        Poly r = g.integer_poly(1, 5);
        Poly s = g.integer_poly(1, 5);
        BiPolynomial A({-(Poly::variable() * r), Poly(), Poly(Rational(1))});
        BiPolynomial B = y_minus(s);
        Poly res = resultant(A, B);
        const Poly expected = s * s - Poly::variable() * r;
        EXPECT_EQ(make_monic(res), make_monic(expected));
        for (int j = 0; j < 10; ++j) {
            Rational z0 = g.rational();
            Poly a0 = evaluate_inner(A, z0);
            Poly b0 = evaluate_inner(B, z0);
            const bool shared = gcd(a0, b0).degree() > 0;
            EXPECT_EQ(sgn(res(z0)) == 0, shared);
            // numeric check of the shared-root statement
            const double y0 = s(z0).get_d();
            const double val = y0 * y0 - Rational(z0 * r(z0)).get_d();
            EXPECT_EQ(std::abs(val) < 1e-9 * (1 + std::abs(y0 * y0)), shared);
        }
    }
}

TEST(CriticalValues, SpecExamples)
{
    EXPECT_EQ(critical_values(P("z^2")), P("z"));
    EXPECT_EQ(critical_values(P("z^3-3*z")), P("z^2-4"));
    EXPECT_EQ(critical_values(P("z+5")), P("1"));
}

TEST(RightComponent, SpecExamples)
{
    EXPECT_EQ(right_component(P("z^4"), 2), P("z^2"));
    EXPECT_EQ(right_component(P("(z^2+z)^2 + 3*(z^2+z)"), 2), P("z^2+z"));
    EXPECT_FALSE(right_component(P("z^4+z"), 2).has_value());
}

TEST(RightComponent, RecompositionReproducesInput)
{
    proptest::Gen g(15);
    for (int it = 0; it < 60; ++it) {
        Poly outer = g.poly(static_cast<int>(g.integer(2, 3)));
        Poly inner = g.poly(static_cast<int>(g.integer(2, 3)));
        Poly F = compose(outer, inner);
        auto W = right_component(F, inner.degree());
        ASSERT_TRUE(W.has_value());
        auto O = outer_factor(F, *W);
        ASSERT_TRUE(O.has_value());
        EXPECT_EQ(compose(*O, *W), F);
        // a random perturbation of degree one generically destroys decomposability
        Poly G = F + P("z");
        if (auto W2 = right_component(G, inner.degree())) {
            auto O2 = outer_factor(G, *W2);
            ASSERT_TRUE(O2.has_value());
            EXPECT_EQ(compose(*O2, *W2), G);
        }
    }
}

TEST(RationalFunctions, Canonical)
{
    RationalFunction f(P("z^2-1"), P("2*z-2"));
    EXPECT_EQ(f.numerator(), P("1/2*z+1/2"));
    EXPECT_EQ(f.denominator(), P("1"));
    RationalFunction g(P("1"), P("z"));
    EXPECT_EQ(g.order_at_infinity(), 1);
    EXPECT_EQ(derivative(g), RationalFunction(P("-1"), P("z^2")));
    EXPECT_EQ(g * RationalFunction(P("z")), RationalFunction(Rational(1)));
    EXPECT_EQ(root_multiplicity(P("(z-2)^3*(z+1)"), Rational(2)), 3);
}
