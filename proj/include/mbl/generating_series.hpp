// Moment generating functions H(t) = sum m_k t^-(k+1) and H~(t) at t = infinity.

#ifndef MBL_GENERATING_SERIES_HPP
#define MBL_GENERATING_SERIES_HPP

#include <optional>

#include <mbl/laurent.hpp>
#include <mbl/moments.hpp>

namespace mbl {

/// Tail with coefficient of t^-(k+1) equal to the k-th moment of `seq`, k < K.
inline ExactTail generating_series(MomentSequence& seq, int K)
{
    if (K < 1) {
        throw std::invalid_argument("series truncation must be positive");
    }
    ExactTail s(1, K);
    for (int k = 0; k < K; ++k) {
        s.set(k + 1, seq[k]);
    }
    return s;
}

inline ExactTail h_series(const MomentInstance& inst, int K)
{
    MomentSequence seq(inst, MomentKind::standard);
    return generating_series(seq, K);
}

inline ExactTail ht_series(const MomentInstance& inst, int K)
{
    MomentSequence seq(inst, MomentKind::tilde);
    return generating_series(seq, K);
}

struct DerivativeIdentityReport {
    bool holds = true;
    std::optional<int> first_mismatch; ///< exponent n of t^-n
    int checked_up_to = 0;
};

/// dH/dt = Q(a)/(t-P(a)) - Q(b)/(t-P(b)) + H~(t), coefficientwise through t^-K.
inline DerivativeIdentityReport derivative_identity_check(const MomentInstance& inst, int K)
{
    const ExactTail lhs = h_series(inst, K).derivative_at_infinity();
    const ExactTail rhs = simple_pole_tail(inst.P(inst.a), K).scaled(inst.Q(inst.a))
        - simple_pole_tail(inst.P(inst.b), K).scaled(inst.Q(inst.b)) + ht_series(inst, K);
    DerivativeIdentityReport rep;
    rep.checked_up_to = K;
    for (int n = 1; n <= K; ++n) {
        if (lhs[n] != rhs[n]) {
            rep.holds = false;
            rep.first_mismatch = n;
            break;
        }
    }
    return rep;
}

} // namespace mbl

#endif
