// Hand-rolled generators for property tests.

#ifndef MBL_TEST_SUPPORT_HPP
#define MBL_TEST_SUPPORT_HPP

#include <cstdint>
#include <random>

#include <mbl/polynomial.hpp>

namespace mbl::proptest {

class Gen {
public:
    explicit Gen(std::uint64_t seed) : eng_(seed) {}

    long integer(long lo, long hi)
    {
        std::uniform_int_distribution<long> d(lo, hi);
        return d(eng_);
    }

    Rational rational(long height = 10, long max_den = 10)
    {
        Rational r(integer(-height, height), integer(1, max_den));
        r.canonicalize();
        return r;
    }

    Rational nonzero_rational(long height = 10, long max_den = 10)
    {
        Rational r;
        do {
            r = rational(height, max_den);
        } while (sgn(r) == 0);
        return r;
    }

    /// Polynomial of exact degree d (d >= 0).
    Poly poly(int d, long height = 10, long max_den = 10)
    {
        std::vector<Rational> c;
        for (int i = 0; i < d; ++i) {
            c.push_back(rational(height, max_den));
        }
        c.push_back(nonzero_rational(height, max_den));
        return Poly(std::move(c));
    }

    Poly integer_poly(int d, long height = 10) { return poly(d, height, 1); }

    std::mt19937_64& engine() { return eng_; }

private:
    std::mt19937_64 eng_;
};

inline Rational canonical(Rational r)
{
    r.canonicalize();
    return r;
}

} // namespace mbl::proptest

#endif
