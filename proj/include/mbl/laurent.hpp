// Truncated Laurent expansions in a local parameter x.
//
// At t = infinity the parameter is x = 1/t, so the coefficient of x^k is the
// coefficient of t^(-k). Coefficients are known exactly for k <= valid_to();
// everything below low() is zero.

#ifndef MBL_LAURENT_HPP
#define MBL_LAURENT_HPP

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include <mbl/polynomial.hpp>

namespace mbl {

template <class F>
class LaurentTail {
public:
    LaurentTail() = default;
    /// Zero series known through x^valid_to.
    LaurentTail(int low, int valid_to) : low_(low), hi_(valid_to)
    {
        if (valid_to < low - 1) {
            throw std::invalid_argument("truncation below the lowest exponent");
        }
        coeffs_.assign(static_cast<std::size_t>(hi_ - low_ + 1), F(0));
    }
    LaurentTail(int low, std::vector<F> coeffs, int valid_to) : LaurentTail(low, valid_to)
    {
        for (std::size_t i = 0; i < coeffs.size() && i < coeffs_.size(); ++i) {
            coeffs_[i] = std::move(coeffs[i]);
        }
    }

    int low() const { return low_; }
    int valid_to() const { return hi_; }

    F operator[](int k) const
    {
        if (k > hi_) {
            throw std::out_of_range("coefficient beyond truncation order");
        }
        if (k < low_) {
            return F(0);
        }
        return coeffs_[static_cast<std::size_t>(k - low_)];
    }
    void set(int k, F value)
    {
        if (k < low_ || k > hi_) {
            throw std::out_of_range("coefficient outside stored range");
        }
        coeffs_[static_cast<std::size_t>(k - low_)] = std::move(value);
    }

    /// Least k <= valid_to() with a nonzero coefficient.
    std::optional<int> order() const
    {
        for (int k = low_; k <= hi_; ++k) {
            if (!is_zero(coeffs_[static_cast<std::size_t>(k - low_)])) {
                return k;
            }
        }
        return std::nullopt;
    }
    bool is_zero_to_truncation() const { return !order().has_value(); }

    /// Lowest stored exponent that may be nonzero; highest nonnegative t-power is -this.
    int lowest_nonzero_or(int fallback) const { return order().value_or(fallback); }

    /// Same series with a smaller truncation order.
    LaurentTail truncated(int valid_to) const
    {
        LaurentTail r(low_, std::min(valid_to, hi_));
        for (int k = low_; k <= r.hi_; ++k) {
            r.set(k, (*this)[k]);
        }
        return r;
    }

    /// Multiplication by x^m.
    LaurentTail shifted(int m) const
    {
        LaurentTail r = *this;
        r.low_ += m;
        r.hi_ += m;
        return r;
    }

    LaurentTail scaled(const F& s) const
    {
        LaurentTail r = *this;
        for (auto& c : r.coeffs_) {
            c = c * s;
        }
        return r;
    }

    friend LaurentTail operator+(const LaurentTail& a, const LaurentTail& b)
    {
        const int lo = std::min(a.low_, b.low_);
        const int hi = std::min(a.hi_, b.hi_);
        LaurentTail r(lo, hi);
        for (int k = lo; k <= hi; ++k) {
            r.set(k, a[k] + b[k]);
        }
        return r;
    }
    friend LaurentTail operator-(const LaurentTail& a, const LaurentTail& b) { return a + b.scaled(F(-1)); }

    /// Product; valid through min(a.low + b.hi, b.low + a.hi).
    friend LaurentTail operator*(const LaurentTail& a, const LaurentTail& b)
    {
        const int lo = a.low_ + b.low_;
        const int hi = std::min(a.low_ + b.hi_, b.low_ + a.hi_);
        LaurentTail r(lo, std::max(hi, lo - 1));
        for (int i = a.low_; i <= a.hi_; ++i) {
            const F& ai = a.coeffs_[static_cast<std::size_t>(i - a.low_)];
            if (is_zero(ai)) {
                continue;
            }
            for (int j = b.low_; j <= b.hi_ && i + j <= r.hi_; ++j) {
                r.coeffs_[static_cast<std::size_t>(i + j - lo)] += ai * b.coeffs_[static_cast<std::size_t>(j - b.low_)];
            }
        }
        return r;
    }

    /// d/dx.
    LaurentTail derivative_local() const
    {
        LaurentTail r(low_ - 1, hi_ - 1);
        for (int k = low_; k <= hi_; ++k) {
            r.set(k - 1, (*this)[k] * F(k));
        }
        return r;
    }

    /// d/dt with x = 1/t: the x^k term maps to -k x^(k+1).
    LaurentTail derivative_at_infinity() const
    {
        LaurentTail r(low_ + 1, hi_ + 1);
        for (int k = low_; k <= hi_; ++k) {
            r.set(k + 1, (*this)[k] * F(-k));
        }
        return r;
    }

    /// Multiplication by a polynomial in t = 1/x.
    template <class G>
    LaurentTail times_polynomial_in_t(const Polynomial<G>& c) const
    {
        if (c.is_zero()) {
            return LaurentTail(low_, hi_ - std::max(0, c.degree()));
        }
        const int d = c.degree();
        LaurentTail r(low_ - d, hi_ - d);
        for (int k = r.low_; k <= r.hi_; ++k) {
            F acc = F(0);
            for (int i = 0; i <= d; ++i) {
                const int src = k + i;
                if (src >= low_ && src <= hi_) {
                    acc += F(c.coefficients()[static_cast<std::size_t>(i)]) * coeffs_[static_cast<std::size_t>(src - low_)];
                }
            }
            r.set(k, acc);
        }
        return r;
    }

    friend bool operator==(const LaurentTail& a, const LaurentTail& b)
    {
        if (a.hi_ != b.hi_) {
            return false;
        }
        for (int k = std::min(a.low_, b.low_); k <= a.hi_; ++k) {
            if (!(a[k] == b[k])) {
                return false;
            }
        }
        return true;
    }

private:
    int low_ = 0;
    int hi_ = -1;
    std::vector<F> coeffs_;
};

using ExactTail = LaurentTail<Rational>;

struct SeriesOrder {
    int order;
};
struct SeriesZeroUpTo {
    int truncation;
};
using OrderAtInfinity = std::variant<SeriesOrder, SeriesZeroUpTo>;

/// Least n with a nonzero t^(-n) coefficient, or ZeroUpTo(K).
template <class F>
OrderAtInfinity series_order_at_infinity(const LaurentTail<F>& s)
{
    if (auto o = s.order()) {
        return SeriesOrder{*o};
    }
    return SeriesZeroUpTo{s.valid_to()};
}

/// Expansion of 1/(t - c) at infinity through t^(-K): sum_j c^j t^(-j-1).
inline ExactTail simple_pole_tail(const Rational& c, int K)
{
    ExactTail s(1, K);
    Rational power = 1;
    for (int k = 1; k <= K; ++k) {
        s.set(k, power);
        power *= c;
    }
    return s;
}

} // namespace mbl

#endif
