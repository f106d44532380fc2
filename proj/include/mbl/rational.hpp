// Exact rational scalars backed by GMP.

#ifndef MBL_RATIONAL_HPP
#define MBL_RATIONAL_HPP

#include <gmpxx.h>

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mbl {

/// Arbitrary precision rational, always kept canonical (reduced, positive denominator).
using Rational = mpq_class;
using Integer = mpz_class;

class ParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline Rational make_rational(long num, long den = 1)
{
    if (den == 0) {
        throw std::invalid_argument("zero denominator");
    }
    Rational r(num, den);
    r.canonicalize();
    return r;
}

/// Parses "7", "-3/4", "0.125" or "-2.5e-1"-free decimal forms exactly.
inline Rational parse_rational(std::string_view text)
{
    std::string s;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) {
            s.push_back(c);
        }
    }
    // U+2212 minus sign shows up in hand-written instance files
    if (s.rfind("\xE2\x88\x92", 0) == 0) {
        s = "-" + s.substr(3);
    }
    if (s.empty()) {
        throw ParseError("empty rational literal");
    }
    auto digits_only = [](std::string_view v, bool allow_sign) {
        if (v.empty()) {
            return false;
        }
        std::size_t i = 0;
        if (allow_sign && (v[0] == '-' || v[0] == '+')) {
            i = 1;
        }
        if (i == v.size()) {
            return false;
        }
        for (; i < v.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(v[i]))) {
                return false;
            }
        }
        return true;
    };
    auto strip_plus = [](std::string v) { return (!v.empty() && v[0] == '+') ? v.substr(1) : v; };

    if (auto slash = s.find('/'); slash != std::string::npos) {
        std::string num = s.substr(0, slash);
        std::string den = s.substr(slash + 1);
        if (!digits_only(num, true) || !digits_only(den, false)) {
            throw ParseError("malformed rational literal: " + s);
        }
        Integer n(strip_plus(num), 10);
        Integer d(den, 10);
        if (d == 0) {
            throw ParseError("zero denominator in literal: " + s);
        }
        Rational r(n, d);
        r.canonicalize();
        return r;
    }
    if (auto dot = s.find('.'); dot != std::string::npos) {
        std::string whole = s.substr(0, dot);
        std::string frac = s.substr(dot + 1);
        bool negative = !whole.empty() && whole[0] == '-';
        if (!whole.empty() && (whole[0] == '-' || whole[0] == '+')) {
            whole = whole.substr(1);
        }
        if (whole.empty()) {
            whole = "0";
        }
        if (!digits_only(whole, false) || (!frac.empty() && !digits_only(frac, false))) {
            throw ParseError("malformed decimal literal: " + s);
        }
        Integer scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
        Integer n(whole + frac, 10);
        Rational r(negative ? Integer(-n) : n, scale);
        r.canonicalize();
        return r;
    }
    if (!digits_only(s, true)) {
        throw ParseError("malformed rational literal: " + s);
    }
    return Rational(Integer(strip_plus(s), 10));
}

inline std::string to_string(const Rational& r) { return r.get_str(); }
inline std::string to_string(const Integer& z) { return z.get_str(); }

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }
inline bool is_zero(const Integer& z) { return sgn(z) == 0; }

inline Rational pow(const Rational& base, unsigned long exp)
{
    Rational r;
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), exp);
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), exp);
    return r;
}

/// Exact division in a ring where the quotient is known to exist.
inline Rational exact_div(const Rational& a, const Rational& b) { return a / b; }

inline Integer exact_div(const Integer& a, const Integer& b)
{
    Integer q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline Integer gcd(const Integer& a, const Integer& b)
{
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Integer lcm(const Integer& a, const Integer& b)
{
    Integer l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

} // namespace mbl

#endif
