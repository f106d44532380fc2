// High-precision numeric checks of the annihilator: residual of L on the branches of
// A(z, y) = 0 at random regular points, and fractional orders of the Wronskian of
// the branches of Q(P^{-1}) at infinity and at rational critical values.

#ifndef MBL_NUMERIC_VERIFY_HPP
#define MBL_NUMERIC_VERIFY_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <mbl/annihilator.hpp>
#include <mbl/decomposition.hpp>
#include <mbl/highprec.hpp>

namespace mbl {

struct AnnihilationCheck {
    double max_residual = 0;  ///< max over samples and branches of |L y| / sum_k |c_k y^(k)|
    int samples = 0;
    int resampled = 0;        ///< points rejected as too close to a singular point
    unsigned precision_bits = 0;
};

namespace detail {

template <class Real>
Complex<Real> eval_at(const Poly& f, const Complex<Real>& z)
{
    Complex<Real> acc;
    for (int i = f.degree(); i >= 0; --i) {
        acc = acc * z + Complex<Real>(to_real<Real>(f[i]));
    }
    return acc;
}

/// Taylor expansion of f(z0 + h) through h^(n-1).
template <class Real>
PowerSeries<Real> taylor_shift(const Poly& f, const Complex<Real>& z0, std::size_t n)
{
    return series_compose(to_complex<Real>(f), PowerSeries<Real>{z0, Complex<Real>(1)}, n);
}

template <class Real>
AnnihilationCheck annihilation_residual(const LinearOperator& L, const BiPolynomial& A, int samples, std::uint64_t seed)
{
    const int n = A.degree();
    const int r = L.order();
    const std::size_t terms = static_cast<std::size_t>(r) + 1;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coord(-3000, 3000);
    const Real sep_tol = pow(Real(10), -8);
    AnnihilationCheck out;
    out.precision_bits = precision_bits<Real>();
    Real worst = 0;
    while (out.samples < samples) {
        if (out.resampled > 50 * samples + 100) {
            throw std::runtime_error("could not find regular sample points");
        }
        const Complex<Real> z0(Real(coord(rng)) / 1000, Real(coord(rng)) / 1000);
        std::vector<PowerSeries<Real>> a;
        std::vector<Complex<Real>> a0;
        for (int j = 0; j <= n; ++j) {
            a.push_back(taylor_shift(A[j], z0, terms));
            a0.push_back(a.back()[0]);
        }
        Real cscale = 0;
        std::vector<Complex<Real>> c;
        for (int k = 0; k <= r; ++k) {
            c.push_back(eval_at(L.coeff(k), z0));
            cscale = std::max(cscale, abs(c.back()));
        }
        if (abs(a0.back()) < sep_tol || abs(c.back()) < sep_tol * cscale) {
            ++out.resampled;
            continue;
        }
        const auto ys = polynomial_roots(a0);
        bool regular = true;
        for (int i = 0; i < n && regular; ++i) {
            for (int j = i + 1; j < n; ++j) {
                const Real sc = 1 + abs(ys[static_cast<std::size_t>(i)]) + abs(ys[static_cast<std::size_t>(j)]);
                if (abs(ys[static_cast<std::size_t>(i)] - ys[static_cast<std::size_t>(j)]) < sep_tol * sc) {
                    regular = false;
                    break;
                }
            }
        }
        if (!regular) {
            ++out.resampled;
            continue;
        }
        for (const auto& y0 : ys) {
            // A_y(z0, y0)
            Complex<Real> ay;
            for (int j = n; j >= 1; --j) {
                ay = ay * y0 + a0[static_cast<std::size_t>(j)] * Complex<Real>(Real(j));
            }
            // order-by-order solution of A(z0 + h, Y(h)) = 0
            PowerSeries<Real> Y(terms);
            Y[0] = y0;
            for (std::size_t m = 1; m < terms; ++m) {
                PowerSeries<Real> E(m + 1);
                for (int j = n; j >= 0; --j) {
                    E = series_mul(E, Y, m + 1);
                    for (std::size_t i = 0; i <= m; ++i) {
                        E[i] += a[static_cast<std::size_t>(j)][i];
                    }
                }
                Y[m] = -(E[m] / ay);
            }
            Complex<Real> num;
            Real den = 0;
            Real fact = 1;
            for (int k = 0; k <= r; ++k) {
                if (k > 0) {
                    fact *= k;
                }
                const Complex<Real> term = c[static_cast<std::size_t>(k)] * Y[static_cast<std::size_t>(k)] * Complex<Real>(fact);
                num += term;
                den += abs(term);
            }
            if (den > 0) {
                worst = std::max(worst, Real(abs(num) / den));
            }
        }
        ++out.samples;
    }
    out.max_residual = worst == 0 ? 0.0 : static_cast<double>(worst);
    return out;
}

} // namespace detail

/// Residual of L on every branch of A(z, y) = 0 at `samples` random regular points.
inline AnnihilationCheck verify_annihilation_numeric(const LinearOperator& L, const AlgebraicEquation& eq, int samples,
                                                     unsigned bits = 200, std::uint64_t seed = 1)
{
    return with_precision(bits, [&](auto real) {
        return detail::annihilation_residual<decltype(real)>(L, eq.A, samples, seed);
    });
}

/// Operator with c_r doubled; annihilates nothing nonconstant that L does. Used to test the test.
inline LinearOperator corrupt_operator(const LinearOperator& L)
{
    auto c = L.coefficients();
    c.back() = c.back().scaled(Rational(2));
    return LinearOperator(std::move(c), false);
}

/// Rational roots of p, found numerically and confirmed exactly.
inline std::vector<Rational> rational_roots(const Poly& p)
{
    std::vector<Rational> out;
    if (p.degree() < 1) {
        return out;
    }
    const Poly sf = squarefree_part(p);
    const IntPoly zp = to_primitive_integer(sf).second;
    const Integer lead = abs(zp.leading());
    using Real = MpReal<80>;
    for (const auto& root : polynomial_roots(to_complex<Real>(sf))) {
        if (abs(root.im) > pow(Real(10), -30) * (1 + abs(root.re))) {
            continue;
        }
        // continued-fraction convergents with denominators dividing the leading coefficient
        Real x = root.re;
        Integer h0 = 0, h1 = 1, k0 = 1, k1 = 0;
        for (int it = 0; it < 200; ++it) {
            const Real fl = floor(x);
            Integer a;
            mpfr_get_z(a.get_mpz_t(), fl.backend().data(), MPFR_RNDN);
            Integer h2 = a * h1 + h0, k2 = a * k1 + k0;
            if (k2 > lead) {
                break;
            }
            Rational cand(h2, k2);
            cand.canonicalize();
            if (sgn(sf(cand)) == 0) {
                if (std::find(out.begin(), out.end(), cand) == out.end()) {
                    out.push_back(cand);
                }
                break;
            }
            h0 = h1;
            h1 = h2;
            k0 = k1;
            k1 = k2;
            if (x == fl) {
                break;
            }
            x = 1 / (x - fl);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

enum class OrderStatus {
    determined,     ///< leading coefficient clearly above the zero threshold
    indeterminate,  ///< a coefficient fell within the guard band around the threshold
    zero_in_window, ///< every coefficient in the search window is numerically zero
};

inline const char* to_string(OrderStatus s)
{
    switch (s) {
    case OrderStatus::determined:
        return "determined";
    case OrderStatus::indeterminate:
        return "indeterminate";
    case OrderStatus::zero_in_window:
        return "zero_in_window";
    }
    return "?";
}

/// Fractional order of the Wronskian of r spanning branches at one point.
struct LocalWronskianOrder {
    std::optional<Rational> point; ///< empty at infinity
    Rational order;                ///< valid when status == determined
    Rational bound;                ///< order must be >= bound
    OrderStatus status = OrderStatus::zero_in_window;
    bool pass = false;
    bool strict_pass = false;      ///< order > bound
    int ramification = 1;          ///< uniformizer exponent (lcm of local multiplicities)
    int critical_multiplicity = 0; ///< b = deg P - number of distinct preimages
    int nu = 0;                    ///< min(r, 2b)
};

struct WronskianReport {
    int r = 0;                  ///< order of the minimal annihilator (exact)
    bool rank_consistent = true; ///< r branches independent and r+1 dependent, numerically at infinity
    LocalWronskianOrder at_infinity;
    std::vector<LocalWronskianOrder> at_critical; ///< rational critical values only
    unsigned precision_bits = 0;
    bool pass() const
    {
        bool ok = at_infinity.pass && rank_consistent;
        for (const auto& c : at_critical) {
            ok = ok && (c.pass || c.status != OrderStatus::determined);
        }
        return ok;
    }
};

namespace detail {

/// sum_i c_i s^(low + i)
template <class Real>
struct LocalSeries {
    int low = 0;
    PowerSeries<Real> c;
};

/// Power series psi(x) with sum_j coef_j(x) psi^j = 1 and psi(0) = psi0, by Newton doubling.
template <class Real>
PowerSeries<Real> solve_unit_equation(const std::vector<PowerSeries<Real>>& coef, const Complex<Real>& psi0, std::size_t n)
{
    PowerSeries<Real> psi{psi0};
    std::size_t prec = 1;
    while (prec < n) {
        prec = std::min(2 * prec, n);
        psi.resize(prec);
        PowerSeries<Real> F(prec);
        for (std::size_t j = coef.size(); j-- > 0;) {
            F = series_mul(F, psi, prec);
            for (std::size_t i = 0; i < prec && i < coef[j].size(); ++i) {
                F[i] += coef[j][i];
            }
        }
        // d/dpsi by a second Horner pass
        PowerSeries<Real> D(prec);
        for (std::size_t j = coef.size(); j-- > 1;) {
            D = series_mul(D, psi, prec);
            for (std::size_t i = 0; i < prec && i < coef[j].size(); ++i) {
                D[i] += coef[j][i] * Complex<Real>(Real(static_cast<long>(j)));
            }
        }
        F[0] -= Complex<Real>(1);
        const auto step = series_mul(F, series_inverse(D, prec), prec);
        for (std::size_t i = 0; i < prec; ++i) {
            psi[i] -= step[i];
        }
    }
    psi.resize(n);
    return psi;
}

/// d/dz of a local series. At infinity z = s^(-n): s^k -> -(k/n) s^(k+n).
/// At a finite point z = p + s^E: s^k -> (k/E) s^(k-E).
template <class Real>
LocalSeries<Real> local_derivative(const LocalSeries<Real>& f, bool at_infinity, int n)
{
    LocalSeries<Real> r;
    r.low = at_infinity ? f.low + n : f.low - n;
    r.c.resize(f.c.size());
    for (std::size_t i = 0; i < f.c.size(); ++i) {
        const int k = f.low + static_cast<int>(i);
        Real factor = Real(k) / n;
        if (at_infinity) {
            factor = -factor;
        }
        r.c[i] = f.c[i] * Complex<Real>(factor);
    }
    return r;
}

struct DetectedOrder {
    OrderStatus status;
    int exponent; ///< in the local uniformizer
};

/// Wronskian of the given branches (rows: derivatives) and detection of its leading exponent.
template <class Real>
DetectedOrder wronskian_leading(const std::vector<LocalSeries<Real>>& branches, bool at_infinity, int n, std::size_t window)
{
    const int r = static_cast<int>(branches.size());
    // rows[i][j] = d^i branch_j
    std::vector<std::vector<LocalSeries<Real>>> rows(static_cast<std::size_t>(r));
    rows[0] = branches;
    for (int i = 1; i < r; ++i) {
        for (const auto& f : rows[static_cast<std::size_t>(i) - 1]) {
            rows[static_cast<std::size_t>(i)].push_back(local_derivative(f, at_infinity, n));
        }
    }
    // subset dynamic programme over column sets, expanding along the last row;
    // the absolute-value run bounds the rounding noise of each coefficient
    const std::size_t full = (std::size_t(1) << r);
    std::vector<PowerSeries<Real>> M(full), Mabs(full);
    std::vector<int> low(full, 0);
    M[0] = PowerSeries<Real>(window);
    M[0][0] = Complex<Real>(1);
    Mabs[0] = M[0];
    for (std::size_t S = 1; S < full; ++S) {
        const int k = __builtin_popcountll(S);
        const auto& row = rows[static_cast<std::size_t>(k) - 1];
        PowerSeries<Real> acc(window), accabs(window);
        int pos = 0;
        for (int j = 0; j < r; ++j) {
            if (!(S & (std::size_t(1) << j))) {
                continue;
            }
            const std::size_t rest = S & ~(std::size_t(1) << j);
            low[S] = low[rest] + row[static_cast<std::size_t>(j)].low;
            auto term = series_mul(row[static_cast<std::size_t>(j)].c, M[rest], window);
            PowerSeries<Real> absrow;
            for (const auto& x : row[static_cast<std::size_t>(j)].c) {
                absrow.emplace_back(abs(x));
            }
            auto termabs = series_mul(absrow, Mabs[rest], window);
            const bool negative = ((k - 1) + pos) % 2 == 1;
            for (std::size_t i = 0; i < window; ++i) {
                acc[i] = negative ? acc[i] - term[i] : acc[i] + term[i];
                accabs[i] += termabs[i];
            }
            ++pos;
        }
        M[S] = std::move(acc);
        Mabs[S] = std::move(accabs);
    }
    const auto& W = M[full - 1];
    const auto& Wabs = Mabs[full - 1];
    const int bits = static_cast<int>(precision_bits<Real>());
    const Real rel = pow(Real(2), -bits / 2);
    const Real band = pow(Real(2), bits / 8);
    for (std::size_t i = 0; i < window; ++i) {
        const Real mag = abs(W[i]);
        const Real thr = Wabs[i].re * rel;
        if (mag == 0 || mag < thr / band) {
            continue;
        }
        if (mag <= thr * band) {
            return {OrderStatus::indeterminate, low[full - 1] + static_cast<int>(i)};
        }
        return {OrderStatus::determined, low[full - 1] + static_cast<int>(i)};
    }
    return {OrderStatus::zero_in_window, 0};
}

/// Calls f on every k-subset of {0..n-1} until it returns true.
template <class Fn>
bool for_each_subset(int n, int k, Fn&& f)
{
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        idx[static_cast<std::size_t>(i)] = i;
    }
    for (;;) {
        if (f(idx)) {
            return true;
        }
        int i = k - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) {
            --i;
        }
        if (i < 0) {
            return false;
        }
        ++idx[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j) {
            idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j) - 1] + 1;
        }
    }
}

/// First subset of r branches with a detectably nonzero Wronskian.
template <class Real>
DetectedOrder spanning_wronskian(const std::vector<LocalSeries<Real>>& branches, int r, bool at_infinity, int n,
                                 std::size_t window)
{
    DetectedOrder best{OrderStatus::zero_in_window, 0};
    for_each_subset(static_cast<int>(branches.size()), r, [&](const std::vector<int>& idx) {
        std::vector<LocalSeries<Real>> sel;
        for (int i : idx) {
            sel.push_back(branches[static_cast<std::size_t>(i)]);
        }
        auto d = wronskian_leading(sel, at_infinity, n, window);
        if (d.status == OrderStatus::determined) {
            best = d;
            return true;
        }
        if (d.status == OrderStatus::indeterminate) {
            best = d;
        }
        return false;
    });
    return best;
}

template <class Real>
WronskianReport wronskian_orders(const Poly& P, const Poly& Q, int r)
{
    const int n = P.degree();
    const int dQ = Q.is_zero() ? 0 : std::max(Q.degree(), 0);
    WronskianReport rep;
    rep.r = r;
    rep.precision_bits = precision_bits<Real>();
    // the true order lies below the bound at infinity plus the total critical allowance
    const int slack = (2 * n - 3) * (n - 1) + r * dQ + r * (r - 1) / 2 + 2;
    const auto Qc = to_complex<Real>(Q);

    // infinity: z = s^(-n), w = phi(s)/s with sum_i P_i phi^i s^(n-i) = 1
    {
        const std::size_t window = static_cast<std::size_t>(n * slack + 8);
        std::vector<PowerSeries<Real>> coef;
        for (int i = 0; i <= n; ++i) {
            PowerSeries<Real> ci(static_cast<std::size_t>(n - i) + 1);
            ci[static_cast<std::size_t>(n - i)] = Complex<Real>(to_real<Real>(P[i]));
            coef.push_back(std::move(ci));
        }
        const Complex<Real> base = nth_root(Complex<Real>(Real(1) / to_real<Real>(P.leading())), n);
        std::vector<LocalSeries<Real>> branches;
        for (int j = 0; j < n; ++j) {
            const auto phi = solve_unit_equation(coef, base * unit_root<Real>(j, n), window + static_cast<std::size_t>(dQ));
            // s^dQ Q(phi/s) = sum_k Q_k phi^k s^(dQ-k)
            PowerSeries<Real> g(window);
            PowerSeries<Real> phik(window);
            phik[0] = Complex<Real>(1);
            for (int k = 0; k <= dQ; ++k) {
                if (k > 0) {
                    phik = series_mul(phik, phi, window);
                }
                const std::size_t shift = static_cast<std::size_t>(dQ - k);
                for (std::size_t i = 0; i + shift < window; ++i) {
                    g[i + shift] += phik[i] * Qc[static_cast<std::size_t>(k)];
                }
            }
            branches.push_back({-dQ, std::move(g)});
        }
        auto d = spanning_wronskian(branches, r, true, n, window);
        auto& loc = rep.at_infinity;
        loc.ramification = n;
        loc.bound = make_rational(-r * dQ, n) + make_rational(r * (r - 1), 2);
        loc.status = d.status;
        if (d.status == OrderStatus::determined) {
            loc.order = make_rational(d.exponent, n);
            loc.pass = loc.order >= loc.bound;
            loc.strict_pass = loc.order > loc.bound;
        }
        rep.rank_consistent = d.status == OrderStatus::determined;
        if (r < n) {
            // r + 1 branches must be dependent: no subset may show a nonzero Wronskian
            auto extra = spanning_wronskian(branches, r + 1, true, n, window);
            rep.rank_consistent = rep.rank_consistent && extra.status == OrderStatus::zero_in_window;
        }
    }

    // rational critical values: z = p + s^E
    for (const Rational& p : rational_roots(critical_values(P))) {
        const auto parts = squarefree_decomposition(P - Poly(p));
        int E = 1;
        int distinct = 0;
        for (const auto& [f, e] : parts) {
            E = std::lcm(E, e);
            distinct += f.degree();
        }
        const int b = n - distinct;
        const std::size_t window = static_cast<std::size_t>(E * slack + 8);
        std::vector<LocalSeries<Real>> branches;
        for (const auto& [f, e] : parts) {
            for (const auto& w0 : polynomial_roots(to_complex<Real>(f))) {
                // P(w0 + x) - p = sum_{j >= e} d_j x^j; x = t psi(t), t^e = z - p
                const auto shifted = series_compose(to_complex<Real>(P - Poly(p)), PowerSeries<Real>{w0, Complex<Real>(1)},
                                                    static_cast<std::size_t>(n) + 1);
                std::vector<PowerSeries<Real>> coef;
                for (int j = 0; j <= n; ++j) {
                    if (j < e) {
                        coef.emplace_back();
                        continue;
                    }
                    PowerSeries<Real> cj(static_cast<std::size_t>(j - e) + 1);
                    cj[static_cast<std::size_t>(j - e)] = shifted[static_cast<std::size_t>(j)];
                    coef.push_back(std::move(cj));
                }
                const Complex<Real> base = nth_root(Complex<Real>(1) / shifted[static_cast<std::size_t>(e)], e);
                const int step = E / e;
                const std::size_t tcount = window / static_cast<std::size_t>(step) + 2;
                for (int k = 0; k < e; ++k) {
                    const auto psi = solve_unit_equation(coef, base * unit_root<Real>(k, e), tcount);
                    // w - w0 = t psi(t), t = s^step
                    PowerSeries<Real> x(window);
                    for (std::size_t i = 0; i < psi.size(); ++i) {
                        const std::size_t at = static_cast<std::size_t>(step) * (i + 1);
                        if (at < window) {
                            x[at] = psi[i];
                        }
                    }
                    x[0] = w0;
                    branches.push_back({0, series_compose(Qc, x, window)});
                }
            }
        }
        LocalWronskianOrder loc;
        loc.point = p;
        loc.ramification = E;
        loc.critical_multiplicity = b;
        loc.nu = std::min(r, 2 * b);
        loc.bound = Rational(-r * loc.nu) + make_rational(loc.nu * (loc.nu + 1), 2);
        auto d = spanning_wronskian(branches, r, false, E, window);
        loc.status = d.status;
        if (d.status == OrderStatus::determined) {
            loc.order = make_rational(d.exponent, E);
            loc.pass = loc.order >= loc.bound;
            loc.strict_pass = loc.order > loc.bound;
        }
        rep.at_critical.push_back(loc);
    }
    return rep;
}

} // namespace detail

/// Wronskian orders from numeric Puiseux expansions; r is the annihilator order.
inline WronskianReport wronskian_order_infinity(const Poly& P, const Poly& Q, unsigned bits = 256)
{
    if (bits < 128) {
        throw std::invalid_argument("wronskian_order_infinity needs at least 128 bits");
    }
    const int r = minimal_annihilator(P, Q).order();
    return with_precision(bits, [&](auto real) { return detail::wronskian_orders<decltype(real)>(P, Q, r); });
}

} // namespace mbl

#endif
