// Reduced quotients of polynomials over Q.

#ifndef MBL_RATIONAL_FUNCTION_HPP
#define MBL_RATIONAL_FUNCTION_HPP

#include <stdexcept>
#include <utility>

#include <mbl/polynomial.hpp>

namespace mbl {

/// num/den with gcd(num, den) = 1 and den monic. Zero is 0/1.
class RationalFunction {
public:
    RationalFunction() : den_(Rational(1)) {}
    RationalFunction(Rational c) : num_(std::move(c)), den_(Rational(1)) {}
    RationalFunction(int c) : RationalFunction(Rational(c)) {}
    RationalFunction(Poly p) : num_(std::move(p)), den_(Rational(1)) {}
    RationalFunction(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den))
    {
        if (den_.is_zero()) {
            throw std::domain_error("rational function with zero denominator");
        }
        normalize();
    }

    /// Skips the gcd when the caller guarantees coprimality.
    static RationalFunction from_coprime(Poly num, Poly den)
    {
        RationalFunction r;
        r.num_ = std::move(num);
        r.den_ = std::move(den);
        if (!r.den_.is_zero() && r.den_.leading() != 1) {
            Rational s = Rational(1) / r.den_.leading();
            r.num_ = r.num_.scaled(s);
            r.den_ = r.den_.scaled(s);
        }
        if (r.num_.is_zero()) {
            r.den_ = Poly(Rational(1));
        }
        return r;
    }

    const Poly& numerator() const { return num_; }
    const Poly& denominator() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.degree() == 0; }

    /// Order of vanishing at t = infinity: deg den - deg num.
    int order_at_infinity() const
    {
        if (num_.is_zero()) {
            return -kDegreeOfZero;
        }
        return den_.degree() - num_.degree();
    }

    Rational operator()(const Rational& x) const
    {
        Rational d = den_(x);
        if (sgn(d) == 0) {
            throw std::domain_error("rational function evaluated at a pole");
        }
        return num_(x) / d;
    }

    RationalFunction operator-() const { return from_coprime(-num_, den_); }

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b)
    {
        if (a.den_ == b.den_) {
            return RationalFunction(a.num_ + b.num_, a.den_);
        }
        return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b)
    {
        if (a.is_zero() || b.is_zero()) {
            return {};
        }
        return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b)
    {
        if (b.is_zero()) {
            throw std::domain_error("rational function division by zero");
        }
        return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
    }
    RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
    RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
    RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
    RationalFunction& operator/=(const RationalFunction& o) { return *this = *this / o; }

    friend bool operator==(const RationalFunction& a, const RationalFunction& b)
    {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }

private:
    void normalize()
    {
        if (num_.is_zero()) {
            den_ = Poly(Rational(1));
            return;
        }
        if (den_.degree() > 0) {
            Poly g = gcd(num_, den_);
            if (g.degree() > 0) {
                num_ = exact_div(num_, g);
                den_ = exact_div(den_, g);
            }
        }
        Rational s = Rational(1) / den_.leading();
        if (s != 1) {
            num_ = num_.scaled(s);
            den_ = den_.scaled(s);
        }
    }

    Poly num_;
    Poly den_;
};

inline bool is_zero(const RationalFunction& f) { return f.is_zero(); }

inline RationalFunction exact_div(const RationalFunction& a, const RationalFunction& b) { return a / b; }

inline RationalFunction derivative(const RationalFunction& f)
{
    const Poly& n = f.numerator();
    const Poly& d = f.denominator();
    return RationalFunction(derivative(n) * d - n * derivative(d), d * d);
}

/// Multiplicity of `root` as a zero of p.
inline int root_multiplicity(Poly p, const Rational& root)
{
    if (p.is_zero()) {
        throw std::domain_error("multiplicity in the zero polynomial");
    }
    const Poly f = linear_factor(root);
    int m = 0;
    while (p.degree() > 0 && sgn(p(root)) == 0) {
        p = exact_div(p, f);
        ++m;
    }
    return m;
}

} // namespace mbl

#endif
