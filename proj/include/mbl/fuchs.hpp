// The operator applied to the moment generating series: the rational right-hand
// side R = L H, its pole structure, and the audit of every degree/order bound.

#ifndef MBL_FUCHS_HPP
#define MBL_FUCHS_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <mbl/annihilator.hpp>
#include <mbl/generating_series.hpp>
#include <mbl/parse.hpp>

namespace mbl {

class InsufficientTruncation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// sum_k c_k(t) d^k/dt^k s, truncated conservatively to valid_to(s) - max deg c_k.
inline ExactTail apply_operator(const LinearOperator& L, const ExactTail& s)
{
    const int r = L.order();
    const int out_to = s.valid_to() - L.max_coefficient_degree();
    if (out_to < 2 * r + 5) {
        throw InsufficientTruncation("operator image known only through t^-" + std::to_string(out_to) + ", need "
                                     + std::to_string(2 * r + 5));
    }
    ExactTail acc(s.low() - L.max_coefficient_degree(), out_to);
    ExactTail dk = s;
    for (int k = 0; k <= r; ++k) {
        if (!L.coeff(k).is_zero()) {
            acc = acc + dk.times_polynomial_in_t(L.coeff(k)).truncated(out_to);
        }
        dk = dk.derivative_at_infinity();
    }
    return acc.truncated(out_to);
}

/// Expansion of a rational function at t = infinity through t^-valid_to.
inline ExactTail expand_at_infinity(const RationalFunction& f, int valid_to)
{
    if (f.is_zero()) {
        return ExactTail(1, valid_to);
    }
    const Poly& num = f.numerator();
    const Poly& den = f.denominator();
    const int dn = num.degree();
    const int dd = den.degree();
    const int low = dd - dn;
    // f = x^low * N(x)/D(x) with N, D the reversed polynomials in x = 1/t
    const int len = valid_to - low + 1;
    ExactTail out(low, std::max(valid_to, low - 1));
    if (len <= 0) {
        return out;
    }
    std::vector<Rational> q(static_cast<std::size_t>(len));
    const Rational d0 = den[dd];
    for (int i = 0; i < len; ++i) {
        Rational acc = dn - i >= 0 ? num[dn - i] : Rational(0);
        for (int j = 1; j <= i && j <= dd; ++j) {
            acc -= den[dd - j] * q[static_cast<std::size_t>(i - j)];
        }
        q[static_cast<std::size_t>(i)] = acc / d0;
        out.set(low + i, q[static_cast<std::size_t>(i)]);
    }
    return out;
}

/// (D^r + sum_j c^_j D^j) s with D = t d/dt, through valid_to(s).
inline ExactTail apply_euler_operator(const EulerForm& ef, const ExactTail& s)
{
    const int r = static_cast<int>(ef.c_hat.size());
    auto D = [](const ExactTail& x) {
        ExactTail y = x;
        for (int k = x.low(); k <= x.valid_to(); ++k) {
            y.set(k, x[k] * Rational(-k));
        }
        return y;
    };
    std::vector<ExactTail> powers{s};
    for (int j = 1; j <= r; ++j) {
        powers.push_back(D(powers.back()));
    }
    ExactTail acc = powers[static_cast<std::size_t>(r)];
    for (int j = 0; j < r; ++j) {
        const auto& c = ef.c_hat[static_cast<std::size_t>(j)];
        if (!c.is_zero() && c.order_at_infinity() <= s.valid_to() - s.low()) {
            acc = acc + expand_at_infinity(c, s.valid_to() - s.low()) * powers[static_cast<std::size_t>(j)];
        }
    }
    return acc.truncated(s.valid_to());
}

/// R = B / ((t - p+)^r (t - p-)^r) matched against an operator image.
struct RhsFit {
    Poly numerator;          ///< B
    Poly denominator;        ///< (t - p+)^r (t - p-)^r
    RationalFunction reduced;
    int margin = 0;          ///< coefficients checked beyond the unknowns
    bool collapsed = false;  ///< p+ == p-
    int pole_order_plus = 0; ///< in the reduced denominator
    int pole_order_minus = 0;
    bool pole_orders_ok = false;    ///< each <= r, or <= 2r at a collapsed point
    bool strict_pole_orders_ok = false; ///< each <= r even when collapsed
    bool denominator_divides = false;
};

struct Inconsistent {
    int first_bad_exponent; ///< t^-k coefficient of s * denominator that should vanish
};

using FitResult = std::variant<RhsFit, Inconsistent>;

inline FitResult fit_rational_rhs(const ExactTail& s, const Rational& p_plus, const Rational& p_minus, int r)
{
    const Poly den = pow(linear_factor(p_plus), static_cast<unsigned>(r)) * pow(linear_factor(p_minus), static_cast<unsigned>(r));
    const ExactTail u = s.times_polynomial_in_t(den);
    const int margin = u.valid_to();
    if (margin < 5) {
        throw InsufficientTruncation("fit margin " + std::to_string(margin) + " < 5");
    }
    for (int k = 1; k <= u.valid_to(); ++k) {
        if (sgn(u[k]) != 0) {
            return Inconsistent{k};
        }
    }
    std::vector<Rational> b;
    for (int k = 0; k >= u.low(); --k) {
        b.push_back(u[k]);
    }
    RhsFit fit;
    fit.numerator = Poly(std::move(b));
    fit.denominator = den;
    fit.reduced = RationalFunction(fit.numerator, den);
    fit.margin = margin;
    fit.collapsed = p_plus == p_minus;
    const Poly& rd = fit.reduced.denominator();
    fit.pole_order_plus = root_multiplicity(rd, p_plus);
    fit.pole_order_minus = root_multiplicity(rd, p_minus);
    fit.strict_pole_orders_ok = fit.pole_order_plus <= r && fit.pole_order_minus <= r;
    fit.pole_orders_ok = fit.collapsed ? fit.pole_order_plus <= 2 * r : fit.strict_pole_orders_ok;
    fit.denominator_divides = (den % rd).is_zero();
    return fit;
}

struct KisunkoReport {
    int r = 0;
    int truncation = 0;
    bool h_zero = false;             ///< H vanishes through the truncation
    std::optional<int> ord_H;
    std::optional<int> ord_LH;
    std::optional<RhsFit> fit;       ///< empty when inconsistent
    std::optional<int> inconsistent_at;
    bool r_nonzero_when_h_nonzero = true;
    std::optional<int> ord_R;        ///< ord at infinity of R when R != 0
    bool has_polynomial_part = false; ///< deg num R >= deg den R
    bool ord_R_ok = true;            ///< ord R <= 2r (vacuous with a polynomial part)
    bool ok() const
    {
        return fit.has_value() && fit->pole_orders_ok && fit->denominator_divides && r_nonzero_when_h_nonzero && ord_R_ok;
    }
    /// Fields that must not change when the truncation grows.
    friend bool same_result(const KisunkoReport& a, const KisunkoReport& b)
    {
        if (a.fit.has_value() != b.fit.has_value() || a.r != b.r || a.ord_R != b.ord_R
            || a.has_polynomial_part != b.has_polynomial_part) {
            return false;
        }
        return !a.fit || a.fit->reduced == b.fit->reduced;
    }
};

/// Truncation that leaves a fit margin of at least 5 after applying L.
inline int default_truncation(const LinearOperator& L) { return L.max_coefficient_degree() + 2 * L.order() + 10; }

inline KisunkoReport kisunko_check(const MomentInstance& inst, const LinearOperator& L, int K)
{
    KisunkoReport rep;
    rep.r = L.order();
    rep.truncation = K;
    const ExactTail H = h_series(inst, K);
    rep.h_zero = H.is_zero_to_truncation();
    rep.ord_H = H.order();
    const ExactTail LH = apply_operator(L, H);
    rep.ord_LH = LH.order();
    auto fr = fit_rational_rhs(LH, inst.P(inst.a), inst.P(inst.b), rep.r);
    if (const auto* bad = std::get_if<Inconsistent>(&fr)) {
        rep.inconsistent_at = bad->first_bad_exponent;
        return rep;
    }
    rep.fit = std::get<RhsFit>(fr);
    const auto& R = rep.fit->reduced;
    rep.r_nonzero_when_h_nonzero = rep.h_zero || !R.is_zero();
    if (!R.is_zero()) {
        rep.ord_R = R.order_at_infinity();
        rep.has_polynomial_part = *rep.ord_R <= 0;
        rep.ord_R_ok = rep.has_polynomial_part || *rep.ord_R <= 2 * rep.r;
    }
    return rep;
}

inline KisunkoReport kisunko_check(const MomentInstance& inst, int K)
{
    return kisunko_check(inst, minimal_annihilator(inst.P, inst.Q), K);
}

/// Per-instance record of every computed quantity against its bound.
struct BoundReport {
    std::string id;
    int dP = 0, dQ = 0, dq = 0;
    int r = 0;
    int kmax = 0;
    bool center = false;             ///< all m_k vanish through kmax
    std::optional<int> N;            ///< vanishing index
    int N_bound = 0;                 ///< N < N_bound
    bool N_ok = true;
    std::optional<int> Ntilde;
    int Ntilde_bound = 0;
    bool Ntilde_ok = true;
    bool gap_triggered = false;      ///< m_0..m_{K-1} all vanish
    bool gap_ok = true;              ///< then m_k = 0 through 3K
    int deg_cr = 0;
    Rational deg_cr_bound;
    bool deg_cr_ok = true;
    int ord_u = 0;
    Rational ord_u_bound;
    bool ord_u_ok = true;
    std::optional<int> ord_R;
    bool has_polynomial_part = false;
    bool ord_R_ok = true;
    std::optional<int> ord_H;        ///< N + 1
    Rational ord_H_bound;
    bool ord_H_ok = true;
    bool euler_ok = true;            ///< reconstruction and order monotonicity
    bool tilde_relation_ok = true;
    bool fit_ok = true;
    bool fit_strict = true;          ///< pole orders <= r even at a collapsed endpoint value
    int fit_margin = 0;
    bool stable = true;              ///< identical result at truncation K + 20
    int truncation = 0;
    std::optional<std::string> pcc_witness;
    std::optional<std::string> error; ///< hard error message, if any

    std::vector<std::string> failed_flags() const
    {
        std::vector<std::string> f;
        auto add = [&](bool ok, const char* name) {
            if (!ok) {
                f.emplace_back(name);
            }
        };
        add(N_ok, "N");
        add(Ntilde_ok, "Ntilde");
        add(gap_ok, "gap");
        add(deg_cr_ok, "deg_cr");
        add(ord_u_ok, "ord_u");
        add(ord_R_ok, "ord_R");
        add(ord_H_ok, "ord_H");
        add(euler_ok, "euler");
        add(tilde_relation_ok, "tilde_relation");
        add(fit_ok, "fit");
        add(stable, "stability");
        if (error) {
            f.emplace_back("error");
        }
        return f;
    }
    bool all_pass() const { return failed_flags().empty(); }
};

struct AuditOptions {
    std::optional<int> kmax;       ///< default 3 * bautin_bound
    std::optional<int> truncation; ///< default max deg c_k + 2r + 10
    bool check_stability = true;
};

namespace detail {

inline void audit_moments(const MomentInstance& inst, BoundReport& rep)
{
    const int K = bautin_bound(rep.dP, rep.dQ);
    MomentSequence m(inst, MomentKind::standard);
    auto v = vanishing_index(m, rep.kmax);
    rep.N = finite_index(v);
    rep.center = !rep.N.has_value();
    rep.N_bound = K;
    rep.N_ok = !rep.N || *rep.N < K;
    rep.gap_triggered = !rep.N || *rep.N >= K;
    rep.gap_ok = !rep.N || *rep.N < K || *rep.N > 3 * K;
    if (rep.N) {
        rep.ord_H = *rep.N + 1;
    }

    rep.Ntilde_bound = bautin_bound_tilde(rep.dP, rep.dq);
    const int kmax_tilde = std::max(rep.kmax, 3 * rep.Ntilde_bound);
    rep.Ntilde = finite_index(vanishing_index(inst, kmax_tilde, MomentKind::tilde));
    rep.Ntilde_ok = !rep.Ntilde || *rep.Ntilde < rep.Ntilde_bound;
    rep.tilde_relation_ok = check_tilde_relation(inst, std::min(rep.kmax, 25)).ok();
}

} // namespace detail

inline BoundReport bound_audit(const MomentInstance& inst, const AuditOptions& opt = {})
{
    BoundReport rep;
    rep.id = inst.id;
    rep.dP = inst.deg_P();
    rep.dQ = inst.deg_Q();
    rep.dq = std::max(rep.dQ - 1, 0);
    rep.kmax = opt.kmax.value_or(3 * bautin_bound(rep.dP, rep.dQ));
    try {
        detail::audit_moments(inst, rep);
        if (rep.center) {
            if (auto w = pcc_check(inst); w.holds()) {
                rep.pcc_witness = to_expression(*w.witness);
            }
        }

        const LinearOperator L = minimal_annihilator(inst.P, inst.Q);
        const int r = L.order();
        rep.r = r;
        const Rational slack = make_rational(rep.dQ * r, rep.dP) + Rational(3 * (rep.dP - 1) * (rep.dP - 1));
        rep.deg_cr = L.leading().degree();
        rep.deg_cr_bound = slack - make_rational(r * (r - 1), 2);
        rep.deg_cr_ok = Rational(rep.deg_cr) <= rep.deg_cr_bound;

        const EulerForm ef = euler_form(L);
        rep.ord_u = ef.ord_inf_u;
        rep.ord_u_bound = -(slack - make_rational(r * (r + 1), 2));
        rep.ord_u_ok = Rational(rep.ord_u) >= rep.ord_u_bound;
        rep.ord_H_bound = slack - make_rational(r * (r - 3), 2);
        rep.ord_H_ok = !rep.ord_H || Rational(*rep.ord_H) <= rep.ord_H_bound;

        const int K = opt.truncation.value_or(default_truncation(L));
        rep.truncation = K;
        const KisunkoReport kr = kisunko_check(inst, L, K);
        rep.fit_ok = kr.ok();
        if (kr.fit) {
            rep.fit_strict = kr.fit->strict_pole_orders_ok;
            rep.fit_margin = kr.fit->margin;
        }
        rep.ord_R = kr.ord_R;
        rep.has_polynomial_part = kr.has_polynomial_part;
        rep.ord_R_ok = kr.ord_R_ok;
        if (opt.check_stability) {
            rep.stable = same_result(kr, kisunko_check(inst, L, K + 20));
        }

        // L = u L^ with L^ holomorphic at infinity, so ord L^ H = ord LH - ord u cannot
        // drop below ord H; R is the expansion of LH, so their orders agree
        bool euler = verify_euler_form(L, ef, r + 5);
        if (kr.ord_H && kr.ord_LH) {
            euler = euler && *kr.ord_LH - ef.ord_inf_u >= *kr.ord_H;
        }
        if (kr.ord_R) {
            euler = euler && kr.ord_LH == kr.ord_R;
        }
        rep.euler_ok = euler;
    } catch (const std::exception& e) {
        rep.error = e.what();
    }
    return rep;
}

} // namespace mbl

#endif
