#include <gtest/gtest.h>

#include <cmath>

#include <mbl/abel.hpp>
#include <mbl/parse.hpp>

#include "support.hpp"

using namespace mbl;

namespace {

Poly P(const char* s) { return parse_polynomial(s); }

AbelInstance abel(const char* p, const char* q, double eps, Rational a = -1, Rational b = 1)
{
    return AbelInstance(P(p), P(q), a, b, eps);
}

std::vector<double> samples(double ymax, int n)
{
    std::vector<double> ys;
    for (int i = 0; i <= n; ++i) {
        ys.push_back(ymax * i / n);
    }
    return ys;
}

} // namespace

TEST(AbelInstance, Validation)
{
    EXPECT_THROW(abel("x+1", "1", 0), std::invalid_argument);
    EXPECT_THROW(abel("x", "1", 0, 1, -1), std::invalid_argument);
    const auto I = abel("x", "1", 0);
    EXPECT_EQ(I.P, P("1/2*x^2-1/2"));
    EXPECT_EQ(I.cyclicity_bound(), 8);
    const Poly c = center_p(P("x^2+3*x"), 0, 2);
    EXPECT_EQ(definite_integral(c, 0, 2), 0);
}

TEST(IntegrateAbel, SpecExamples)
{
    EXPECT_EQ(integrate_abel(abel("x", "1", 1e-3), 0.0, 1e-10), 0.0);
    for (double y : {-0.3, 0.05, 0.1, 0.4}) {
        EXPECT_NEAR(integrate_abel(abel("x", "1", 0), y, 1e-12), y, 1e-11);
    }
    const auto I = abel("3*x^2-1", "x+x^3", 0, -1, 1);
    for (double y : samples(0.1, 20)) {
        EXPECT_LE(std::abs(integrate_abel(I, y, 1e-12) - y), 1e-11);
    }
}

TEST(IntegrateAbel, SeparableClosedForm)
{
    // eps = 1 with p = 0 is excluded, so compare against the eps-expansion instead:
    // for p = x, q = 1 on [-1, 1], G(y) - y = -eps y^3 int 1/(1 - yP) + O(eps^2)
    const auto I = abel("x", "1", 1e-8);
    const double y = 0.2;
    const double d = return_map(I, y, 1e-14).displacement;
    // int_{-1}^{1} dx / (1 - y (x^2 - 1)/2), closed form
    const double c = y / 2, s = std::sqrt(c / (1 + c));
    const double integral = 2.0 / ((1 + c) * s) * std::atanh(s);
    EXPECT_NEAR(d / 1e-8, -y * y * y * integral, 1e-9);
}

TEST(IntegrateAbel, BlowUp)
{
    // eps = 0: 1/y = 1/y_b - P(x) vanishes inside (-1, 1) once y_b <= 1 / min P = -2
    EXPECT_THROW(integrate_abel(abel("x", "1", 0.0), -3.0, 1e-10), BlowUp);
    EXPECT_THROW(integrate_abel(abel("x", "1", 1e-6), -3.0, 1e-10), BlowUp);
    EXPECT_NO_THROW(integrate_abel(abel("x", "1", 0.0), -1.5, 1e-10));
    EXPECT_THROW(integrate_abel(abel("x", "1", 0.0), 2e3, 1e-10), BlowUp);
}

TEST(IntegrateAbel, ToleranceConvergence)
{
    proptest::Gen g(5);
    for (int it = 0; it < 10; ++it) {
        const Poly p = center_p(g.poly(static_cast<int>(g.integer(1, 3)), 5, 2), -1, 1);
        if (p.is_zero()) {
            continue;
        }
        const AbelInstance I(p, g.poly(static_cast<int>(g.integer(0, 4)), 5, 2), -1, 1, 1e-2);
        for (double y : {0.02, 0.05, 0.1}) {
            const double tol = 1e-10;
            EXPECT_LT(std::abs(integrate_abel(I, y, tol) - integrate_abel(I, y, tol / 2)), 10 * tol);
        }
    }
}

TEST(FirstVariation, SpecExamples)
{
    EXPECT_EQ(first_variation_coeffs(abel("x", "1", 0), 0)[0], 2);
    for (const auto& m : first_variation_coeffs(abel("x", "x", 0), 10)) {
        EXPECT_EQ(m, 0);
    }
    EXPECT_EQ(first_variation_coeffs(abel("x", "x^2", 0), 1)[1], make_rational(-2, 15));
}

TEST(VariationConsistency, SpecExamples)
{
    const auto ys = samples(0.2, 20);
    const auto one = variation_consistency(abel("x", "1", 1e-6), ys, 1e-12, 20);
    EXPECT_LT(one.max_deviation, 1e-3);
    EXPECT_EQ(one.sigma, -1);

    const auto center = variation_consistency(abel("x", "x", 1e-6), ys, 1e-12, 20);
    EXPECT_EQ(center.scale, 0);
    EXPECT_LT(center.max_deviation, 1e-6);

    const auto zero = variation_consistency(abel("x", "1", 1e-6), {0.0}, 1e-12, 20);
    EXPECT_EQ(zero.max_deviation, 0);
}

TEST(VariationConsistency, ShrinksWithEpsilon)
{
    const auto ys = samples(0.2, 10);
    const auto I = abel("x", "1+x^2", 0);
    double prev = INFINITY;
    for (double eps : {1e-4, 1e-5, 1e-6}) {
        const double d = variation_consistency(I.with_epsilon(eps), ys, 1e-13, 20).max_deviation;
        EXPECT_LT(d, prev) << eps;
        prev = d;
    }
}

TEST(CountPeriodic, SpecExamples)
{
    const auto pc = count_periodic(abel("x", "1", 1e-3), 0.3, 200);
    EXPECT_LE(pc.count, 8);
    EXPECT_TRUE(pc.within_bound);
    EXPECT_TRUE(pc.blowups.empty());

    // P and Q both functions of x^2 on a symmetric interval
    for (double eps : {1e-3, 1e-2}) {
        const auto c = count_periodic(abel("x^3-x/2", "x+x^3", eps), 0.3, 200);
        EXPECT_EQ(c.count, 0) << eps;
    }
    EXPECT_EQ(count_periodic(abel("x", "1", 0), 0.3, 100).count, 0);
}

TEST(CountPeriodic, FindsConstructedRoot)
{
    // q chosen so that m~_0 = 1, m~_1 = -4: the first variation changes sign near y = 1/4
    const auto I = abel("x", "57/4-165/4*x^2", 1e-4);
    const auto mt = first_variation_coeffs(I, 3);
    ASSERT_EQ(mt[0], 1);
    ASSERT_EQ(mt[1], -4);
    const auto pc = count_periodic(I, 0.5, 300);
    ASSERT_EQ(pc.count, 1);
    EXPECT_NEAR(pc.roots[0].y, 0.25, 0.1);
    for (const auto& r : pc.roots) {
        EXPECT_LE(r.hi - r.lo, 1e-10);
    }
}
