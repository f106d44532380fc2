// Polynomial moment sequences, vanishing indices and the composition condition.

#ifndef MBL_MOMENTS_HPP
#define MBL_MOMENTS_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <mbl/decomposition.hpp>
#include <mbl/polynomial.hpp>

namespace mbl {

/// The data (P, Q, a, b). p = P', q = Q'.
struct MomentInstance {
    Poly P;
    Poly Q;
    Rational a;
    Rational b;
    std::string id;

    MomentInstance() = default;
    MomentInstance(Poly P_, Poly Q_, Rational a_, Rational b_, std::string id_ = {})
        : P(std::move(P_)), Q(std::move(Q_)), a(std::move(a_)), b(std::move(b_)), id(std::move(id_))
    {
        validate();
    }

    void validate() const
    {
        if (P.degree() < 1) {
            throw std::invalid_argument("moment instance requires deg P >= 1");
        }
        if (a == b) {
            throw std::invalid_argument("moment instance requires a != b");
        }
    }

    Poly p() const { return derivative(P); }
    Poly q() const { return derivative(Q); }
    int deg_P() const { return P.degree(); }
    /// deg Q, with 0 reported for the zero polynomial.
    int deg_Q() const { return Q.is_zero() ? 0 : Q.degree(); }
};

enum class MomentKind {
    standard, ///< m_k = int P^k Q p
    tilde,    ///< m~_k = int P^k q
};

inline Poly moment_weight(const MomentInstance& inst, MomentKind kind)
{
    return kind == MomentKind::standard ? inst.Q * inst.p() : inst.q();
}

/// m_k by expanding P^k Q p and integrating termwise.
inline Rational moment(const MomentInstance& inst, int k)
{
    return definite_integral(pow(inst.P, static_cast<unsigned>(k)) * inst.Q * inst.p(), inst.a, inst.b);
}

/// m~_k = int_a^b P^k q.
inline Rational moment_tilde(const MomentInstance& inst, int k)
{
    return definite_integral(pow(inst.P, static_cast<unsigned>(k)) * inst.q(), inst.a, inst.b);
}

/// Lazily computed moment sequence. Works over Z: P^k * weight is kept with integer
/// coefficients and the antiderivative is evaluated at a and b by homogeneous Horner.
class MomentSequence {
public:
    MomentSequence(const MomentInstance& inst, MomentKind kind)
    {
        auto [sp, pint] = to_primitive_integer(inst.P);
        p_int_ = pint;
        p_scale_ = Rational(1) / sp;
        auto [sw, wint] = to_primitive_integer(moment_weight(inst, kind));
        current_ = wint;
        scale_ = Rational(1) / sw;
        a_num_ = inst.a.get_num();
        a_den_ = inst.a.get_den();
        b_num_ = inst.b.get_num();
        b_den_ = inst.b.get_den();
    }

    const Rational& operator[](int k)
    {
        if (k < 0) {
            throw std::out_of_range("negative moment index");
        }
        while (static_cast<int>(values_.size()) <= k) {
            advance();
        }
        return values_[static_cast<std::size_t>(k)];
    }

    int computed() const { return static_cast<int>(values_.size()); }

private:
    void advance()
    {
        if (!values_.empty()) {
            current_ = current_ * p_int_;
            scale_ *= p_scale_;
        }
        values_.push_back(current_.is_zero() ? Rational(0) : integrate_current() * scale_);
    }

    Rational integrate_current()
    {
        // int_a^b T = F(b) - F(a), F = sum_j C_j x^j with C_j = T_{j-1} / j
        const int top = current_.degree() + 1;
        while (lcm_upto_ < top) {
            ++lcm_upto_;
            mpz_lcm_ui(lcm_.get_mpz_t(), lcm_.get_mpz_t(), static_cast<unsigned long>(lcm_upto_));
        }
        std::vector<Integer> c(static_cast<std::size_t>(top) + 1);
        const auto& t = current_.coefficients();
        for (int j = 1; j <= top; ++j) {
            Integer lj;
            mpz_divexact_ui(lj.get_mpz_t(), lcm_.get_mpz_t(), static_cast<unsigned long>(j));
            c[static_cast<std::size_t>(j)] = t[static_cast<std::size_t>(j - 1)] * lj;
        }
        Rational fb = evaluate(c, b_num_, b_den_);
        Rational fa = evaluate(c, a_num_, a_den_);
        Rational r = fb - fa;
        r /= Rational(lcm_);
        return r;
    }

    /// sum_{j>=1} c_j (n/d)^j, exactly.
    static Rational evaluate(const std::vector<Integer>& c, const Integer& n, const Integer& d)
    {
        const int top = static_cast<int>(c.size()) - 1;
        if (sgn(n) == 0) {
            return Rational(0);
        }
        Integer acc = c[static_cast<std::size_t>(top)];
        if (d == 1) {
            for (int j = top - 1; j >= 1; --j) {
                acc *= n;
                acc += c[static_cast<std::size_t>(j)];
            }
            acc *= n;
            return Rational(acc);
        }
        Integer dpow = 1;
        for (int j = top - 1; j >= 1; --j) {
            dpow *= d;
            acc *= n;
            acc += c[static_cast<std::size_t>(j)] * dpow;
        }
        dpow *= d;
        acc *= n;
        Rational r(acc, dpow);
        r.canonicalize();
        return r;
    }

    IntPoly p_int_;
    Rational p_scale_;
    IntPoly current_;
    Rational scale_;
    Integer a_num_, a_den_, b_num_, b_den_;
    Integer lcm_ = 1;
    int lcm_upto_ = 1;
    std::vector<Rational> values_;
};

struct FirstNonzero {
    int index;
    Rational value;
};
struct AllZeroUpTo {
    int kmax;
};
using VanishingResult = std::variant<FirstNonzero, AllZeroUpTo>;

inline VanishingResult vanishing_index(MomentSequence& seq, int kmax)
{
    for (int k = 0; k <= kmax; ++k) {
        const Rational& m = seq[k];
        if (sgn(m) != 0) {
            return FirstNonzero{k, m};
        }
    }
    return AllZeroUpTo{kmax};
}

inline VanishingResult vanishing_index(const MomentInstance& inst, int kmax, MomentKind kind = MomentKind::standard)
{
    if (kmax < 0) {
        throw std::invalid_argument("kmax must be non-negative");
    }
    MomentSequence seq(inst, kind);
    return vanishing_index(seq, kmax);
}

inline std::optional<int> finite_index(const VanishingResult& r)
{
    if (const auto* f = std::get_if<FirstNonzero>(&r)) {
        return f->index;
    }
    return std::nullopt;
}

/// d_Q + 3 (d_P - 1)^2
inline int bautin_bound(int dP, int dQ)
{
    if (dP < 1) {
        throw std::invalid_argument("bautin_bound requires dP >= 1");
    }
    return dQ + 3 * (dP - 1) * (dP - 1);
}

/// 2 + d_q + 3 (d_P - 1)^2
inline int bautin_bound_tilde(int dP, int dq)
{
    if (dP < 1) {
        throw std::invalid_argument("bautin_bound_tilde requires dP >= 1");
    }
    return 2 + dq + 3 * (dP - 1) * (dP - 1);
}

inline int default_kmax(const MomentInstance& inst) { return 3 * bautin_bound(inst.deg_P(), inst.deg_Q()); }

struct TildeRelationReport {
    bool endpoints_equal = false;     ///< Q(a) == Q(b)
    bool first_tilde_matches = false; ///< m~_0 == Q(b) - Q(a)
    /// Q(a) == Q(b) and the boundary term [P^(k+1) Q]_a^b vanishes for every k,
    /// i.e. additionally Q(a) == 0 or P(a) == P(b).
    bool boundary_terms_vanish = false;
    bool relation_checked = false; ///< m~_{k+1} = -(k+1) m_k tested (when boundary_terms_vanish)
    int checked_up_to = -1;
    std::vector<int> violations;  ///< k where m~_{k+1} != -(k+1) m_k + [P^(k+1) Q]_a^b; -1 for the m~_0 test
    /// k where Q(a) == Q(b) but m~_{k+1} != -(k+1) m_k because the boundary term survives
    std::vector<int> boundary_failures;
    bool ok() const { return first_tilde_matches && violations.empty(); }
};

/// Integration by parts: m~_{k+1} = -(k+1) m_k + [P^(k+1) Q]_a^b, checked for k <= kmax.
inline TildeRelationReport check_tilde_relation(const MomentInstance& inst, int kmax)
{
    TildeRelationReport rep;
    MomentSequence m(inst, MomentKind::standard);
    MomentSequence mt(inst, MomentKind::tilde);
    const Rational qa = inst.Q(inst.a);
    const Rational qb = inst.Q(inst.b);
    const Rational pa = inst.P(inst.a);
    const Rational pb = inst.P(inst.b);
    rep.endpoints_equal = qa == qb;
    rep.boundary_terms_vanish = rep.endpoints_equal && (sgn(qa) == 0 || pa == pb);
    rep.first_tilde_matches = mt[0] == qb - qa;
    if (rep.endpoints_equal != (sgn(mt[0]) == 0)) {
        rep.violations.push_back(-1);
    }
    Rational pa_pow = pa;
    Rational pb_pow = pb;
    for (int k = 0; k <= kmax; ++k) {
        const Rational by_parts = -Rational(k + 1) * m[k];
        if (mt[k + 1] != by_parts + pb_pow * qb - pa_pow * qa) {
            rep.violations.push_back(k);
        }
        if (rep.endpoints_equal && mt[k + 1] != by_parts) {
            rep.boundary_failures.push_back(k);
        }
        pa_pow *= pa;
        pb_pow *= pb;
    }
    rep.relation_checked = rep.boundary_terms_vanish;
    rep.checked_up_to = kmax;
    return rep;
}

/// Instance with P = P~(W), Q = Q~(W). Requires W(a) == W(b).
inline MomentInstance pcc_compose(const Poly& Ptil, const Poly& Qtil, const Poly& W, const Rational& a,
                                  const Rational& b, std::string id = {})
{
    if (W(a) != W(b)) {
        throw std::invalid_argument("pcc_compose: W(a) != W(b)");
    }
    return MomentInstance(compose(Ptil, W), compose(Qtil, W), a, b, std::move(id));
}

/// Holds(W) when a witness was found; NotFound is not a proof of absence.
struct PccResult {
    std::optional<Poly> witness;
    bool holds() const { return witness.has_value(); }
};

inline PccResult pcc_check(const MomentInstance& inst)
{
    const int n = inst.deg_P();
    for (int d = 2; d <= n; ++d) {
        if (n % d != 0) {
            continue;
        }
        auto W = right_component(inst.P, d);
        if (!W || (*W)(inst.a) != (*W)(inst.b)) {
            continue;
        }
        if (outer_factor(inst.Q, *W)) {
            return PccResult{W};
        }
    }
    return PccResult{};
}

} // namespace mbl

#endif
