// Dense univariate polynomials over an exact coefficient ring.

#ifndef MBL_POLYNOMIAL_HPP
#define MBL_POLYNOMIAL_HPP

#include <algorithm>
#include <cassert>
#include <initializer_list>
#include <limits>
#include <stdexcept>
#include <utility>
#include <type_traits>
#include <vector>

#include <mbl/rational.hpp>

namespace mbl {

/// Degree reported for the zero polynomial.
inline constexpr int kDegreeOfZero = std::numeric_limits<int>::min() / 4;

namespace detail {
template <class T>
bool coeff_is_zero(const T& c)
{
    return is_zero(c);
}
} // namespace detail

/// Coefficients are stored lowest degree first with no trailing zeros.
/// `F` must be a commutative ring with `F(0)`, `F(1)`, `+ - *`, `==` and an
/// `is_zero(F)` overload; field-only operations additionally use `/`.
template <class F>
class Polynomial {
public:
    using coefficient_type = F;

    Polynomial() = default;
    Polynomial(F constant)
    {
        if (!detail::coeff_is_zero(constant)) {
            coeffs_.push_back(std::move(constant));
        }
    }
    template <class I>
        requires std::is_integral_v<I>
    Polynomial(I n) : Polynomial(F(n))
    {
    }
    explicit Polynomial(std::vector<F> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
    Polynomial(std::initializer_list<F> coeffs) : coeffs_(coeffs) { trim(); }

    static Polynomial monomial(F c, int n)
    {
        if (detail::coeff_is_zero(c)) {
            return {};
        }
        std::vector<F> v(static_cast<std::size_t>(n) + 1, F(0));
        v.back() = std::move(c);
        return Polynomial(std::move(v));
    }
    static Polynomial variable() { return monomial(F(1), 1); }

    int degree() const { return coeffs_.empty() ? kDegreeOfZero : static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    bool is_constant() const { return coeffs_.size() <= 1; }
    std::size_t size() const { return coeffs_.size(); }

    /// Coefficient of x^i; zero outside the stored range.
    F operator[](int i) const
    {
        if (i < 0 || i >= static_cast<int>(coeffs_.size())) {
            return F(0);
        }
        return coeffs_[static_cast<std::size_t>(i)];
    }
    const F& leading() const
    {
        assert(!coeffs_.empty());
        return coeffs_.back();
    }
    const std::vector<F>& coefficients() const { return coeffs_; }

    template <class T>
    T operator()(const T& x) const
    {
        T acc = T(0);
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
            acc = acc * x + T(*it);
        }
        return acc;
    }

    Polynomial operator-() const
    {
        Polynomial r = *this;
        for (auto& c : r.coeffs_) {
            c = -c;
        }
        return r;
    }

    Polynomial& operator+=(const Polynomial& o)
    {
        if (o.coeffs_.size() > coeffs_.size()) {
            coeffs_.resize(o.coeffs_.size(), F(0));
        }
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) {
            coeffs_[i] += o.coeffs_[i];
        }
        trim();
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o)
    {
        if (o.coeffs_.size() > coeffs_.size()) {
            coeffs_.resize(o.coeffs_.size(), F(0));
        }
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) {
            coeffs_[i] -= o.coeffs_[i];
        }
        trim();
        return *this;
    }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b)
    {
        if (a.is_zero() || b.is_zero()) {
            return {};
        }
        std::vector<F> out(a.coeffs_.size() + b.coeffs_.size() - 1, F(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (detail::coeff_is_zero(a.coeffs_[i])) {
                continue;
            }
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
                out[i + j] += a.coeffs_[i] * b.coeffs_[j];
            }
        }
        return Polynomial(std::move(out));
    }
    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    Polynomial scaled(const F& s) const
    {
        if (detail::coeff_is_zero(s)) {
            return {};
        }
        Polynomial r = *this;
        for (auto& c : r.coeffs_) {
            c *= s;
        }
        r.trim();
        return r;
    }

    /// Multiplication by x^n.
    Polynomial shifted(int n) const
    {
        if (is_zero() || n == 0) {
            return *this;
        }
        std::vector<F> v(static_cast<std::size_t>(n), F(0));
        v.insert(v.end(), coeffs_.begin(), coeffs_.end());
        return Polynomial(std::move(v));
    }

private:
    void trim()
    {
        while (!coeffs_.empty() && detail::coeff_is_zero(coeffs_.back())) {
            coeffs_.pop_back();
        }
    }

    std::vector<F> coeffs_;
};

template <class F>
bool is_zero(const Polynomial<F>& p)
{
    return p.is_zero();
}

template <class F>
Polynomial<F> operator*(const F& s, const Polynomial<F>& p)
{
    return p.scaled(s);
}

template <class F>
Polynomial<F> derivative(const Polynomial<F>& p)
{
    if (p.degree() < 1) {
        return {};
    }
    std::vector<F> v;
    v.reserve(p.size() - 1);
    for (int i = 1; i <= p.degree(); ++i) {
        v.push_back(p[i] * F(i));
    }
    return Polynomial<F>(std::move(v));
}

/// Antiderivative with zero constant term (requires division by integers).
template <class F>
Polynomial<F> antiderivative(const Polynomial<F>& p)
{
    if (p.is_zero()) {
        return {};
    }
    std::vector<F> v(p.size() + 1, F(0));
    for (int i = 0; i <= p.degree(); ++i) {
        v[static_cast<std::size_t>(i) + 1] = p[i] / F(i + 1);
    }
    return Polynomial<F>(std::move(v));
}

template <class F>
Polynomial<F> pow(const Polynomial<F>& base, unsigned n)
{
    Polynomial<F> result(F(1));
    Polynomial<F> b = base;
    while (n > 0) {
        if (n & 1U) {
            result = result * b;
        }
        n >>= 1U;
        if (n > 0) {
            b = b * b;
        }
    }
    return result;
}

/// p(inner), by Horner's rule.
template <class F>
Polynomial<F> compose(const Polynomial<F>& p, const Polynomial<F>& inner)
{
    Polynomial<F> acc;
    for (int i = p.degree(); i >= 0; --i) {
        acc = acc * inner + Polynomial<F>(p[i]);
    }
    return acc;
}

/// Euclidean division over a field: a = q*b + r, deg r < deg b.
template <class F>
std::pair<Polynomial<F>, Polynomial<F>> divmod(const Polynomial<F>& a, const Polynomial<F>& b)
{
    if (b.is_zero()) {
        throw std::domain_error("polynomial division by zero");
    }
    std::vector<F> rem = a.coefficients();
    const int db = b.degree();
    const int da = a.degree();
    if (da < db) {
        return {Polynomial<F>(), a};
    }
    std::vector<F> quot(static_cast<std::size_t>(da - db) + 1, F(0));
    const F inv_lead = F(1) / b.leading();
    for (int i = da; i >= db; --i) {
        F c = rem[static_cast<std::size_t>(i)] * inv_lead;
        if (is_zero(c)) {
            continue;
        }
        quot[static_cast<std::size_t>(i - db)] = c;
        for (int j = 0; j <= db; ++j) {
            rem[static_cast<std::size_t>(i - db + j)] -= c * b[j];
        }
    }
    rem.resize(static_cast<std::size_t>(db));
    return {Polynomial<F>(std::move(quot)), Polynomial<F>(std::move(rem))};
}

template <class F>
Polynomial<F> operator%(const Polynomial<F>& a, const Polynomial<F>& b)
{
    return divmod(a, b).second;
}

/// Division known to be exact, valid over any ring with `exact_div` on coefficients.
/// Throws if a remainder appears.
template <class F>
Polynomial<F> exact_div(const Polynomial<F>& a, const Polynomial<F>& b)
{
    if (b.is_zero()) {
        throw std::domain_error("polynomial division by zero");
    }
    if (a.is_zero()) {
        return {};
    }
    const int db = b.degree();
    const int da = a.degree();
    if (da < db) {
        throw std::domain_error("inexact polynomial division");
    }
    std::vector<F> rem = a.coefficients();
    std::vector<F> quot(static_cast<std::size_t>(da - db) + 1, F(0));
    for (int i = da; i >= db; --i) {
        const F& top = rem[static_cast<std::size_t>(i)];
        if (is_zero(top)) {
            continue;
        }
        F c = exact_div(top, b.leading());
        for (int j = 0; j <= db; ++j) {
            rem[static_cast<std::size_t>(i - db + j)] -= c * b[j];
        }
        quot[static_cast<std::size_t>(i - db)] = std::move(c);
    }
    for (int i = 0; i < db; ++i) {
        if (!is_zero(rem[static_cast<std::size_t>(i)])) {
            throw std::domain_error("inexact polynomial division");
        }
    }
    return Polynomial<F>(std::move(quot));
}

using Poly = Polynomial<Rational>;
using IntPoly = Polynomial<Integer>;

/// x - c
inline Poly linear_factor(const Rational& root) { return Poly({Rational(-root), Rational(1)}); }

/// Exact value of the integral of f over [a, b], by termwise antiderivative.
inline Rational definite_integral(const Poly& f, const Rational& a, const Rational& b)
{
    const Poly anti = antiderivative(f);
    return anti(b) - anti(a);
}

inline Poly make_monic(const Poly& p)
{
    if (p.is_zero()) {
        return p;
    }
    return p.scaled(Rational(1) / p.leading());
}

inline Integer content(const IntPoly& p)
{
    Integer g = 0;
    for (const auto& c : p.coefficients()) {
        g = gcd(g, c);
        if (g == 1) {
            break;
        }
    }
    return g;
}

/// Primitive part with positive leading coefficient.
inline IntPoly primitive_part(const IntPoly& p)
{
    if (p.is_zero()) {
        return p;
    }
    Integer c = content(p);
    if (sgn(p.leading()) < 0) {
        c = -c;
    }
    if (c == 1) {
        return p;
    }
    std::vector<Integer> v;
    v.reserve(p.size());
    for (const auto& x : p.coefficients()) {
        v.push_back(exact_div(x, c));
    }
    return IntPoly(std::move(v));
}

/// Clears denominators: returns (s, z) with p * s = z integral and primitive, s rational.
inline std::pair<Rational, IntPoly> to_primitive_integer(const Poly& p)
{
    if (p.is_zero()) {
        return {Rational(1), IntPoly()};
    }
    Integer den = 1;
    for (const auto& c : p.coefficients()) {
        den = lcm(den, c.get_den());
    }
    std::vector<Integer> v;
    v.reserve(p.size());
    for (const auto& c : p.coefficients()) {
        v.push_back(exact_div(Integer(c.get_num() * den), Integer(c.get_den())));
    }
    IntPoly z(std::move(v));
    Integer cont = content(z);
    if (sgn(z.leading()) < 0) {
        cont = -cont;
    }
    IntPoly prim = primitive_part(z);
    return {Rational(den) / Rational(cont), prim};
}

inline Poly to_rational(const IntPoly& p)
{
    std::vector<Rational> v;
    v.reserve(p.size());
    for (const auto& c : p.coefficients()) {
        v.emplace_back(c);
    }
    return Poly(std::move(v));
}

/// Pseudo-remainder: lc(b)^(da-db+1) a = q b + r.
inline IntPoly pseudo_remainder(const IntPoly& a, const IntPoly& b)
{
    std::vector<Integer> rem = a.coefficients();
    const int db = b.degree();
    const Integer& lb = b.leading();
    for (int i = a.degree(); i >= db; --i) {
        Integer top = rem[static_cast<std::size_t>(i)];
        for (auto& c : rem) {
            c *= lb;
        }
        if (sgn(top) != 0) {
            for (int j = 0; j <= db; ++j) {
                rem[static_cast<std::size_t>(i - db + j)] -= top * b[j];
            }
        }
        rem.pop_back();
    }
    return IntPoly(std::move(rem));
}

/// gcd over Z[x] (primitive, positive leading coefficient) via the primitive PRS.
inline IntPoly gcd(IntPoly a, IntPoly b)
{
    if (a.is_zero()) {
        return primitive_part(b);
    }
    if (b.is_zero()) {
        return primitive_part(a);
    }
    Integer cg = gcd(content(a), content(b));
    a = primitive_part(a);
    b = primitive_part(b);
    if (a.degree() < b.degree()) {
        std::swap(a, b);
    }
    while (!b.is_zero()) {
        if (b.degree() == 0) {
            return IntPoly(cg);
        }
        IntPoly r = pseudo_remainder(a, b);
        a = std::move(b);
        b = primitive_part(r);
    }
    return a.scaled(cg);
}

/// Monic gcd over Q[x]; gcd(0, 0) = 0.
inline Poly gcd(const Poly& a, const Poly& b)
{
    if (a.is_zero() && b.is_zero()) {
        return {};
    }
    const IntPoly g = gcd(to_primitive_integer(a).second, to_primitive_integer(b).second);
    return make_monic(to_rational(g));
}

inline Poly squarefree_part(const Poly& p)
{
    if (p.degree() < 1) {
        return p.is_zero() ? p : Poly(Rational(1));
    }
    const Poly g = gcd(p, derivative(p));
    return make_monic(exact_div(p, g));
}

/// Yun's algorithm: monic squarefree, pairwise coprime factors f_e with p = lc * prod f_e^e.
inline std::vector<std::pair<Poly, int>> squarefree_decomposition(const Poly& p)
{
    std::vector<std::pair<Poly, int>> out;
    if (p.degree() < 1) {
        return out;
    }
    const Poly f = make_monic(p);
    Poly a = gcd(f, derivative(f));
    Poly b = exact_div(f, a);
    Poly c = exact_div(derivative(f), a);
    Poly d = c - derivative(b);
    for (int e = 1; b.degree() >= 1; ++e) {
        a = gcd(b, d);
        if (a.degree() >= 1) {
            out.emplace_back(a, e);
        }
        b = exact_div(b, a);
        c = exact_div(d, a);
        d = c - derivative(b);
    }
    return out;
}

} // namespace mbl

#endif
