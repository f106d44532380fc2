// Multiprecision complex arithmetic, polynomial roots and truncated power series.
//
// Precision is a compile-time parameter of the real type; `with_precision`
// picks the smallest supported type covering a requested bit count.

#ifndef MBL_HIGHPREC_HPP
#define MBL_HIGHPREC_HPP

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/mpfr.hpp>

#include <mbl/polynomial.hpp>

namespace mbl {

template <unsigned Digits10>
using MpReal = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<Digits10>,
                                             boost::multiprecision::et_off>;

/// Working precision in bits of a fixed-digit real type.
template <class Real>
unsigned precision_bits()
{
    return static_cast<unsigned>(std::numeric_limits<Real>::digits);
}

/// Calls f(Real{}) with a real type of at least `bits` bits.
template <class Fn>
decltype(auto) with_precision(unsigned bits, Fn&& f)
{
    if (bits <= 136) {
        return f(MpReal<40>{});
    }
    if (bits <= 270) {
        return f(MpReal<80>{});
    }
    if (bits <= 535) {
        return f(MpReal<160>{});
    }
    if (bits <= 1066) {
        return f(MpReal<320>{});
    }
    throw std::invalid_argument("precision above 1066 bits is not supported");
}

template <class Real>
Real to_real(const Rational& r)
{
    Real x;
    mpfr_set_q(x.backend().data(), r.get_mpq_t(), MPFR_RNDN);
    return x;
}

template <class Real>
struct Complex {
    Real re = 0;
    Real im = 0;

    Complex() = default;
    Complex(Real r) : re(std::move(r)) {}
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    Complex(int r) : re(r) {}

    friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
    friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
    friend Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
    friend Complex operator*(const Complex& a, const Complex& b)
    {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Complex operator/(const Complex& a, const Complex& b)
    {
        const Real d = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
    }
    Complex& operator+=(const Complex& o) { return *this = *this + o; }
    Complex& operator-=(const Complex& o) { return *this = *this - o; }
    Complex& operator*=(const Complex& o) { return *this = *this * o; }
    Complex& operator/=(const Complex& o) { return *this = *this / o; }
    friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }
};

template <class Real>
Real abs(const Complex<Real>& z)
{
    return boost::multiprecision::hypot(z.re, z.im);
}

template <class Real>
bool is_zero(const Complex<Real>& z)
{
    return z.re == 0 && z.im == 0;
}

template <class Real>
Complex<Real> polar(const Real& r, const Real& theta)
{
    return {r * cos(theta), r * sin(theta)};
}

/// Principal n-th root.
template <class Real>
Complex<Real> nth_root(const Complex<Real>& z, int n)
{
    const Real r = pow(abs(z), Real(1) / n);
    const Real th = atan2(z.im, z.re) / n;
    return polar(r, th);
}

template <class Real>
Real pi()
{
    return boost::math::constants::pi<Real>();
}

template <class Real>
Complex<Real> unit_root(int k, int n)
{
    return polar(Real(1), 2 * pi<Real>() * k / n);
}

template <class Real>
Complex<Real> evaluate(const std::vector<Complex<Real>>& c, const Complex<Real>& x)
{
    Complex<Real> acc;
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        acc = acc * x + *it;
    }
    return acc;
}

template <class Real>
std::vector<Complex<Real>> to_complex(const Poly& p)
{
    std::vector<Complex<Real>> c;
    for (const auto& x : p.coefficients()) {
        c.emplace_back(to_real<Real>(x));
    }
    return c;
}

/// All roots of a polynomial with simple roots (Aberth-Ehrlich), to full precision.
/// Converges (slowly) for multiple roots too, which callers avoid.
template <class Real>
std::vector<Complex<Real>> polynomial_roots(std::vector<Complex<Real>> c)
{
    while (!c.empty() && is_zero(c.back())) {
        c.pop_back();
    }
    const int n = static_cast<int>(c.size()) - 1;
    if (n < 1) {
        return {};
    }
    std::vector<Complex<Real>> dc;
    for (int i = 1; i <= n; ++i) {
        dc.push_back(c[static_cast<std::size_t>(i)] * Complex<Real>(Real(i)));
    }
    // initial guesses on a circle of Cauchy-bound radius, slightly rotated
    Real bound = 0;
    const Real lead = abs(c.back());
    for (int i = 0; i < n; ++i) {
        bound = std::max(bound, Real(abs(c[static_cast<std::size_t>(i)]) / lead));
    }
    const Real radius = 1 + bound;
    std::vector<Complex<Real>> z;
    for (int k = 0; k < n; ++k) {
        z.push_back(polar(radius / 2, (2 * pi<Real>() * k + Real(0.4)) / n));
    }
    const Real eps = pow(Real(2), -static_cast<int>(precision_bits<Real>()) + 8);
    for (int iter = 0; iter < 4000; ++iter) {
        bool converged = true;
        for (int i = 0; i < n; ++i) {
            const auto& zi = z[static_cast<std::size_t>(i)];
            const Complex<Real> f = evaluate(c, zi);
            if (is_zero(f)) {
                continue;
            }
            const Complex<Real> ratio = f / evaluate(dc, zi);
            Complex<Real> sum;
            for (int j = 0; j < n; ++j) {
                if (j != i) {
                    sum += Complex<Real>(1) / (zi - z[static_cast<std::size_t>(j)]);
                }
            }
            const Complex<Real> step = ratio / (Complex<Real>(1) - ratio * sum);
            z[static_cast<std::size_t>(i)] -= step;
            if (abs(step) > eps * (1 + abs(z[static_cast<std::size_t>(i)]))) {
                converged = false;
            }
        }
        if (converged) {
            return z;
        }
    }
    throw std::runtime_error("root finder did not converge");
}

/// Truncated power series sum_{k < size} s_k x^k.
template <class Real>
using PowerSeries = std::vector<Complex<Real>>;

template <class Real>
PowerSeries<Real> series_mul(const PowerSeries<Real>& a, const PowerSeries<Real>& b, std::size_t n)
{
    PowerSeries<Real> r(n);
    for (std::size_t i = 0; i < a.size() && i < n; ++i) {
        if (is_zero(a[i])) {
            continue;
        }
        for (std::size_t j = 0; j < b.size() && i + j < n; ++j) {
            r[i + j] += a[i] * b[j];
        }
    }
    return r;
}

template <class Real>
PowerSeries<Real> series_inverse(const PowerSeries<Real>& a, std::size_t n)
{
    if (a.empty() || is_zero(a[0])) {
        throw std::domain_error("series inverse of a non-unit");
    }
    PowerSeries<Real> r(n);
    const Complex<Real> inv0 = Complex<Real>(1) / a[0];
    r[0] = inv0;
    for (std::size_t k = 1; k < n; ++k) {
        Complex<Real> acc;
        for (std::size_t j = 1; j <= k && j < a.size(); ++j) {
            acc += a[j] * r[k - j];
        }
        r[k] = -(acc * inv0);
    }
    return r;
}

/// f(s(x)) for a polynomial f with complex coefficients, truncated to n terms.
template <class Real>
PowerSeries<Real> series_compose(const std::vector<Complex<Real>>& f, const PowerSeries<Real>& s, std::size_t n)
{
    PowerSeries<Real> acc(n);
    for (auto it = f.rbegin(); it != f.rend(); ++it) {
        acc = series_mul(acc, s, n);
        acc[0] += *it;
    }
    return acc;
}

} // namespace mbl

#endif
