// Floating-point companion: the perturbed Abel equation y' = p y^2 + eps q y^3
// on [a, b], its reverse return map G (y(b) -> y(a)), the first eps-variation
// against the exact tilde moments, and a sign-change scan for fixed points of G.
//
// Integration runs in w = 1/y + P(x), where the equation reads
// w' = -eps q / (w - P). At eps = 0 w is constant, so G is the identity to
// rounding. The state actually integrated is the increment w - w(b).

#ifndef MBL_ABEL_HPP
#define MBL_ABEL_HPP

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <boost/numeric/odeint.hpp>

#include <mbl/moments.hpp>

namespace mbl {

class BlowUp : public std::runtime_error {
public:
    explicit BlowUp(double x) : std::runtime_error("solution left |y| <= 1e3 at x = " + std::to_string(x)), at(x) {}
    double at;
};

/// Horner evaluation in double precision.
struct DoublePoly {
    std::vector<double> c;
    DoublePoly() = default;
    explicit DoublePoly(const Poly& p)
    {
        for (const auto& x : p.coefficients()) {
            c.push_back(x.get_d());
        }
    }
    double operator()(double x) const
    {
        double acc = 0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) {
            acc = acc * x + *it;
        }
        return acc;
    }
};

/// p shifted by a constant so that its integral over [a, b] vanishes.
inline Poly center_p(const Poly& p, const Rational& a, const Rational& b)
{
    return p - Poly(definite_integral(p, a, b) / (b - a));
}

struct AbelInstance {
    Poly p;
    Poly q;
    Rational a;
    Rational b;
    double epsilon = 0;
    Poly P; ///< primitive of p with P(a) = P(b) = 0

    AbelInstance() = default;
    AbelInstance(Poly p_, Poly q_, Rational a_, Rational b_, double eps)
        : p(std::move(p_)), q(std::move(q_)), a(std::move(a_)), b(std::move(b_)), epsilon(eps)
    {
        if (!(a < b)) {
            throw std::invalid_argument("Abel instance requires a < b");
        }
        if (p.is_zero()) {
            throw std::invalid_argument("Abel instance requires p != 0");
        }
        if (sgn(definite_integral(p, a, b)) != 0) {
            throw std::invalid_argument("Abel instance requires the integral of p over [a, b] to vanish");
        }
        const Poly anti = antiderivative(p);
        P = anti - Poly(anti(a));
    }

    AbelInstance with_epsilon(double eps) const
    {
        AbelInstance r = *this;
        r.epsilon = eps;
        return r;
    }
    int deg_p() const { return p.degree(); }
    int deg_q() const { return q.is_zero() ? 0 : q.degree(); }
    /// 5 + deg q + 3 (deg p)^2
    int cyclicity_bound() const { return 5 + deg_q() + 3 * deg_p() * deg_p(); }
};

inline constexpr double kBlowUpMagnitude = 1e3;

/// Result of one backward integration: y(a) and the displacement y(a) - y(b), the
/// latter computed without cancellation.
struct ReturnValue {
    double G = 0;
    double displacement = 0;
    int steps = 0;
};

inline ReturnValue return_map(const AbelInstance& inst, double y_b, double tol)
{
    if (y_b == 0) {
        return {};
    }
    if (std::abs(y_b) > kBlowUpMagnitude) {
        throw BlowUp(inst.b.get_d());
    }
    using State = std::array<double, 1>;
    namespace ode = boost::numeric::odeint;
    const DoublePoly P(inst.P);
    const DoublePoly q(inst.q);
    const double wb = 1.0 / y_b;
    const double eps = inst.epsilon;
    const double xa = inst.a.get_d();
    const double xb = inst.b.get_d();
    const double guard = 1.0 / kBlowUpMagnitude;

    auto rhs = [&](const State& s, State& ds, double x) {
        const double v = wb + s[0] - P(x);
        if (std::abs(v) < 1e-3 * guard) {
            throw BlowUp(x);
        }
        ds[0] = -eps * q(x) / v;
    };
    int steps = 0;
    double last_v = wb;
    auto observe = [&](const State& s, double x) {
        const double v = wb + s[0] - P(x);
        if (std::abs(v) < guard || (v > 0) != (last_v > 0)) {
            throw BlowUp(x);
        }
        last_v = v;
        ++steps;
    };

    State s{0.0};
    // error in G is about y^2 times the error in the increment; the absolute
    // tolerance tol on the increment is therefore at least as strict as tol on y.
    // The step cap keeps the pole check of the observer on a fine enough mesh.
    const double max_dt = (xb - xa) / 256;
    // odeint copies the signed cap into dt on rejection, so it carries the direction
    auto stepper = ode::make_controlled(tol, tol, -max_dt, ode::runge_kutta_dopri5<State>());
    try {
        ode::integrate_adaptive(stepper, rhs, s, xb, xa, -max_dt, observe);
    } catch (const ode::step_adjustment_error&) {
        throw BlowUp(xa);
    }
    const double wa = wb + s[0]; // P(a) = 0
    if (std::abs(wa) < guard) {
        throw BlowUp(xa);
    }
    ReturnValue r;
    r.G = 1.0 / wa;
    r.displacement = -s[0] / (wb * wa);
    r.steps = steps;
    return r;
}

/// G(y_b) = y(a) for the solution with y(b) = y_b.
inline double integrate_abel(const AbelInstance& inst, double y_b, double tol)
{
    return return_map(inst, y_b, tol).G;
}

/// m~_0 .. m~_K, m~_k = integral of P^k q over [a, b].
inline std::vector<Rational> first_variation_coeffs(const AbelInstance& inst, int K)
{
    const MomentInstance mi(inst.P, antiderivative(inst.q), inst.a, inst.b);
    MomentSequence seq(mi, MomentKind::tilde);
    std::vector<Rational> out;
    for (int k = 0; k <= K; ++k) {
        out.push_back(seq[k]);
    }
    return out;
}

struct VariationReport {
    int sigma = 0;            ///< +1 or -1, whichever fits better
    double max_deviation = 0; ///< relative to the largest |series| over the samples
    double scale = 0;         ///< that largest |series|; 0 when the series vanishes
    double epsilon = 0;
    int K = 0;
};

/// Compares (G_eps(y) - G_0(y)) / eps with sigma * sum_{k<=K} m~_k y^(k+3).
/// G_0 is the identity (the unperturbed equation is a center), so the left side is
/// the displacement over eps. With a vanishing series the deviation is absolute.
inline VariationReport variation_consistency(const AbelInstance& inst, const std::vector<double>& ys, double tol = 1e-12,
                                             int K = 20)
{
    if (inst.epsilon == 0) {
        throw std::invalid_argument("variation_consistency needs eps != 0");
    }
    const auto mt = first_variation_coeffs(inst, K);
    std::vector<double> coef;
    for (const auto& m : mt) {
        coef.push_back(m.get_d());
    }
    std::vector<double> lhs, rhs;
    double scale = 0;
    for (double y : ys) {
        lhs.push_back(return_map(inst, y, tol).displacement / inst.epsilon);
        double s = 0;
        for (int k = K; k >= 0; --k) {
            s = s * y + coef[static_cast<std::size_t>(k)];
        }
        s *= y * y * y;
        rhs.push_back(s);
        scale = std::max(scale, std::abs(s));
    }
    VariationReport rep;
    rep.epsilon = inst.epsilon;
    rep.K = K;
    rep.scale = scale;
    const double denom = scale > 0 ? scale : 1.0;
    double best = INFINITY;
    for (int sigma : {-1, 1}) {
        double dev = 0;
        for (std::size_t i = 0; i < ys.size(); ++i) {
            dev = std::max(dev, std::abs(lhs[i] - sigma * rhs[i]) / denom);
        }
        if (dev < best) {
            best = dev;
            rep.sigma = sigma;
        }
    }
    rep.max_deviation = best;
    return rep;
}

struct PeriodicRoot {
    double lo = 0, hi = 0; ///< bracket with a verified sign change
    double y = 0;
};

struct PeriodicCount {
    double epsilon = 0;
    double y_max = 0;
    int grid = 0;
    double tol = 0;
    double zero_threshold = 0; ///< |G(y) - y| at or below this counts as no sign
    int count = 0;
    std::vector<PeriodicRoot> roots;
    std::vector<double> blowups; ///< grid points excluded from the scan
    int bound = 0;
    bool within_bound = true;
    /// Sign changes cannot see tangential (even multiplicity) fixed points.
    static constexpr const char* limitation = "tangential fixed points are not detected by sign changes";
};

struct ScanOptions {
    double tol = 1e-12;
    double root_tol = 1e-10;
    /// Displacements up to zero_factor * tol * y^2 are treated as noise.
    double zero_factor = 1e3;
    unsigned jobs = 1;
};

inline PeriodicCount count_periodic(const AbelInstance& inst, double y_max, int grid, const ScanOptions& opt = {})
{
    if (grid < 100) {
        throw std::invalid_argument("count_periodic needs grid >= 100");
    }
    PeriodicCount pc;
    pc.epsilon = inst.epsilon;
    pc.y_max = y_max;
    pc.grid = grid;
    pc.tol = opt.tol;
    pc.zero_threshold = opt.zero_factor * opt.tol;
    pc.bound = inst.cyclicity_bound();

    // the noise floor only decides which grid points carry a sign; bisection inside a
    // bracket uses the raw sign
    auto sign_at = [&](double y, bool raw = false) -> int {
        const double d = return_map(inst, y, opt.tol).displacement;
        const double floor = raw ? 0.0 : pc.zero_threshold * y * y;
        return std::abs(d) <= floor ? 0 : (d > 0 ? 1 : -1);
    };

    std::vector<std::optional<int>> sign(static_cast<std::size_t>(grid));
    auto work = [&](unsigned w, unsigned nw) {
        for (int i = static_cast<int>(w); i < grid; i += static_cast<int>(nw)) {
            const double y = y_max * (i + 1) / grid;
            try {
                sign[static_cast<std::size_t>(i)] = sign_at(y);
            } catch (const BlowUp&) {
            }
        }
    };
    const unsigned nw = std::max(1u, opt.jobs);
    if (nw == 1) {
        work(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < nw; ++w) {
            pool.emplace_back(work, w, nw);
        }
        for (auto& t : pool) {
            t.join();
        }
    }

    int last = 0;
    double last_y = 0;
    for (int i = 0; i < grid; ++i) {
        const double y = y_max * (i + 1) / grid;
        const auto& s = sign[static_cast<std::size_t>(i)];
        if (!s) {
            pc.blowups.push_back(y);
            continue;
        }
        if (*s == 0) {
            continue;
        }
        if (last != 0 && *s != last) {
            PeriodicRoot root{last_y, y, 0};
            while (root.hi - root.lo > opt.root_tol) {
                const double mid = 0.5 * (root.lo + root.hi);
                int sm = 0;
                try {
                    sm = sign_at(mid, true);
                } catch (const BlowUp&) {
                }
                if (sm == 0) {
                    root.lo = root.hi = mid;
                    break;
                }
                (sm == last ? root.lo : root.hi) = mid;
            }
            root.y = 0.5 * (root.lo + root.hi);
            pc.roots.push_back(root);
        }
        last = *s;
        last_y = y;
    }
    pc.count = static_cast<int>(pc.roots.size());
    pc.within_bound = pc.count <= pc.bound;
    return pc;
}

} // namespace mbl

#endif
