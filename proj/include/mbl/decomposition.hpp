// Critical values and functional decomposition of univariate polynomials.

#ifndef MBL_DECOMPOSITION_HPP
#define MBL_DECOMPOSITION_HPP

#include <optional>
#include <vector>

#include <mbl/polynomial.hpp>
#include <mbl/resultant.hpp>

namespace mbl {

/// Squarefree monic polynomial in t whose roots are exactly the critical values of P.
/// Returns 1 when P has no critical points.
inline Poly critical_values(const Poly& P)
{
    if (P.degree() < 1) {
        throw std::invalid_argument("critical_values requires deg P >= 1");
    }
    const Poly p = derivative(P);
    if (p.degree() < 1) {
        return Poly(Rational(1));
    }
    // Res_w(P'(w), t - P(w)) as a polynomial in t
    std::vector<Poly> dp;
    for (const auto& c : p.coefficients()) {
        dp.emplace_back(c);
    }
    std::vector<Poly> shifted;
    for (int i = 0; i <= P.degree(); ++i) {
        shifted.emplace_back(Rational(-P[i]));
    }
    shifted[0] += Poly::variable();
    const Poly res = resultant(Polynomial<Poly>(std::move(dp)), Polynomial<Poly>(std::move(shifted)));
    return squarefree_part(res);
}

/// Digits of F in base W: F = sum_i digits[i] * W^i with deg digits[i] < deg W.
inline std::vector<Poly> w_adic_digits(Poly F, const Poly& W)
{
    if (W.degree() < 1) {
        throw std::invalid_argument("W-adic expansion needs deg W >= 1");
    }
    std::vector<Poly> digits;
    while (!F.is_zero()) {
        auto [q, r] = divmod(F, W);
        digits.push_back(std::move(r));
        F = std::move(q);
    }
    return digits;
}

/// The outer factor G with F = G(W), if every W-adic digit of F is constant.
inline std::optional<Poly> outer_factor(const Poly& F, const Poly& W)
{
    std::vector<Rational> outer;
    for (const auto& d : w_adic_digits(F, W)) {
        if (d.degree() > 0) {
            return std::nullopt;
        }
        outer.push_back(d.is_zero() ? Rational(0) : d[0]);
    }
    return Poly(std::move(outer));
}

/// Right composition factor of degree d: P = P~(W) with W monic, W(0) = 0.
/// Uses the approximate d-th root of P read off its top coefficients and verifies
/// by W-adic expansion. Returns at most one candidate per degree.
inline std::optional<Poly> right_component(const Poly& P, int d)
{
    const int n = P.degree();
    if (d < 1 || n < 1 || n % d != 0) {
        throw std::invalid_argument("right_component: d must divide deg P");
    }
    const int m = n / d;
    const Poly target = make_monic(P);
    std::vector<Rational> w(static_cast<std::size_t>(d) + 1, Rational(0));
    w[static_cast<std::size_t>(d)] = 1;
    for (int j = 1; j < d; ++j) {
        const Poly current = pow(Poly(w), static_cast<unsigned>(m));
        w[static_cast<std::size_t>(d - j)] = (target[n - j] - current[n - j]) / Rational(m);
    }
    Poly W(std::move(w));
    if (!outer_factor(P, W)) {
        return std::nullopt;
    }
    return W;
}

} // namespace mbl

#endif
