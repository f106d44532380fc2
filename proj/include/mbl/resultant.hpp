// Sylvester resultants over exact rings, by fraction-free elimination.

#ifndef MBL_RESULTANT_HPP
#define MBL_RESULTANT_HPP

#include <stdexcept>
#include <utility>
#include <vector>

#include <mbl/polynomial.hpp>

namespace mbl {

/// Polynomial in an outer variable (y) whose coefficients are polynomials in z.
using BiPolynomial = Polynomial<Poly>;

template <class R>
using Matrix = std::vector<std::vector<R>>;

/// Bareiss determinant over an integral domain with exact division.
template <class R>
R determinant(Matrix<R> m)
{
    const std::size_t n = m.size();
    if (n == 0) {
        return R(1);
    }
    bool negate = false;
    R prev_pivot = R(1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (is_zero(m[k][k])) {
            std::size_t swap_row = k + 1;
            while (swap_row < n && is_zero(m[swap_row][k])) {
                ++swap_row;
            }
            if (swap_row == n) {
                return R(0);
            }
            std::swap(m[k], m[swap_row]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                R v = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                m[i][j] = exact_div(v, prev_pivot);
            }
            m[i][k] = R(0);
        }
        prev_pivot = m[k][k];
    }
    R det = m[n - 1][n - 1];
    return negate ? R(-det) : det;
}

template <class R>
Matrix<R> sylvester_matrix(const Polynomial<R>& a, const Polynomial<R>& b)
{
    const int m = a.degree();
    const int n = b.degree();
    const std::size_t size = static_cast<std::size_t>(m + n);
    Matrix<R> s(size, std::vector<R>(size, R(0)));
    for (int row = 0; row < n; ++row) {
        for (int i = 0; i <= m; ++i) {
            s[static_cast<std::size_t>(row)][static_cast<std::size_t>(row + m - i)] = a[i];
        }
    }
    for (int row = 0; row < m; ++row) {
        for (int i = 0; i <= n; ++i) {
            s[static_cast<std::size_t>(n + row)][static_cast<std::size_t>(row + n - i)] = b[i];
        }
    }
    return s;
}

/// Res_x(a, b) for a, b in R[x]. Throws if either input is identically zero.
template <class R>
R resultant(const Polynomial<R>& a, const Polynomial<R>& b)
{
    if (a.is_zero() || b.is_zero()) {
        throw std::invalid_argument("resultant of the zero polynomial");
    }
    if (a.degree() == 0 && b.degree() == 0) {
        return R(1);
    }
    if (a.degree() == 0) {
        R r(1);
        for (int i = 0; i < b.degree(); ++i) {
            r = r * a.leading();
        }
        return r;
    }
    if (b.degree() == 0) {
        R r(1);
        for (int i = 0; i < a.degree(); ++i) {
            r = r * b.leading();
        }
        return r;
    }
    return determinant(sylvester_matrix(a, b));
}

/// Swaps the roles of the two variables of a bivariate polynomial.
inline BiPolynomial swap_variables(const BiPolynomial& f)
{
    int inner = -1;
    for (const auto& c : f.coefficients()) {
        inner = std::max(inner, c.degree());
    }
    std::vector<Poly> out(static_cast<std::size_t>(inner + 1));
    for (int j = 0; j <= f.degree(); ++j) {
        const Poly& c = f.coefficients()[static_cast<std::size_t>(j)];
        for (int i = 0; i <= c.degree(); ++i) {
            out[static_cast<std::size_t>(i)] += Poly::monomial(c[i], j);
        }
    }
    return BiPolynomial(std::move(out));
}

/// f(z, y) with outer variable y evaluated at a point z0 of the inner variable.
inline Poly evaluate_inner(const BiPolynomial& f, const Rational& z0)
{
    std::vector<Rational> v;
    v.reserve(f.size());
    for (const auto& c : f.coefficients()) {
        v.push_back(c(z0));
    }
    return Poly(std::move(v));
}

/// d/dz of f(z, y) (inner variable).
inline BiPolynomial derivative_inner(const BiPolynomial& f)
{
    std::vector<Poly> v;
    v.reserve(f.size());
    for (const auto& c : f.coefficients()) {
        v.push_back(derivative(c));
    }
    return BiPolynomial(std::move(v));
}

} // namespace mbl

#endif
