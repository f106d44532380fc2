// Deterministic instance corpora and the per-instance verification pipeline.

#ifndef MBL_CORPUS_HPP
#define MBL_CORPUS_HPP

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <mbl/fuchs.hpp>
#include <mbl/moments.hpp>

namespace mbl {

inline constexpr const char* kToolVersion = "1.0.0";

class InfeasibleFamily : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CorpusSpec {
    int random = 0;
    int pcc_center = 0;
    int near_vanishing = 0;
    int dP_min = 1, dP_max = 6;
    int dQ_min = 1, dQ_max = 8;
    long height = 10;  ///< numerators in [-height, height]
    long max_den = 10; ///< denominators in [1, max_den]
    std::vector<std::pair<Rational, Rational>> endpoints{{Rational(-1), Rational(1)}, {Rational(0), Rational(1)},
                                                         {Rational(-1), Rational(2)}, {make_rational(-1, 2), Rational(1)}};
    std::uint64_t seed = 42;

    int total() const { return random + pcc_center + near_vanishing; }
};

class CorpusRng {
public:
    explicit CorpusRng(std::uint64_t seed) : eng_(seed) {}
    long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(eng_); }
    Rational rational(long height, long max_den) { return make_rational(integer(-height, height), integer(1, max_den)); }
    Rational nonzero(long height, long max_den)
    {
        for (;;) {
            Rational r = rational(height, max_den);
            if (sgn(r) != 0) {
                return r;
            }
        }
    }
    Poly poly(int d, long height, long max_den)
    {
        std::vector<Rational> c;
        for (int i = 0; i < d; ++i) {
            c.push_back(rational(height, max_den));
        }
        c.push_back(nonzero(height, max_den));
        return Poly(std::move(c));
    }

private:
    std::mt19937_64 eng_;
};

/// Basis of the right kernel of a rational matrix, one vector per free column, by
/// reduced row echelon form. Vector j has a 1 at its free column and 0 at the others.
inline std::vector<std::pair<int, std::vector<Rational>>> rational_kernel(std::vector<std::vector<Rational>> m, int cols)
{
    std::vector<int> pivot_col;
    int row = 0;
    for (int c = 0; c < cols && row < static_cast<int>(m.size()); ++c) {
        int piv = -1;
        for (int i = row; i < static_cast<int>(m.size()); ++i) {
            if (sgn(m[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)]) != 0) {
                piv = i;
                break;
            }
        }
        if (piv < 0) {
            continue;
        }
        std::swap(m[static_cast<std::size_t>(row)], m[static_cast<std::size_t>(piv)]);
        auto& pr = m[static_cast<std::size_t>(row)];
        const Rational inv = 1 / pr[static_cast<std::size_t>(c)];
        for (auto& x : pr) {
            x *= inv;
        }
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (static_cast<int>(i) == row || sgn(m[i][static_cast<std::size_t>(c)]) == 0) {
                continue;
            }
            const Rational f = m[i][static_cast<std::size_t>(c)];
            for (int k = 0; k < cols; ++k) {
                m[i][static_cast<std::size_t>(k)] -= f * pr[static_cast<std::size_t>(k)];
            }
        }
        pivot_col.push_back(c);
        ++row;
    }
    std::vector<std::pair<int, std::vector<Rational>>> out;
    for (int f = 0; f < cols; ++f) {
        if (std::find(pivot_col.begin(), pivot_col.end(), f) != pivot_col.end()) {
            continue;
        }
        std::vector<Rational> v(static_cast<std::size_t>(cols));
        v[static_cast<std::size_t>(f)] = 1;
        for (std::size_t i = 0; i < pivot_col.size(); ++i) {
            v[static_cast<std::size_t>(pivot_col[i])] = -m[i][static_cast<std::size_t>(f)];
        }
        out.emplace_back(f, std::move(v));
    }
    return out;
}

/// Q of exact degree dQ with m_0 = ... = m_j = 0 for the given P on [a, b].
/// Among the kernel vectors of the linear conditions, the one whose free column is
/// z^dQ is taken, scaled to a primitive integer polynomial with positive leading term.
inline Poly near_vanishing_Q(const Poly& P, int dQ, int j, const Rational& a, const Rational& b)
{
    if (dQ < 1 || j < 0) {
        throw std::invalid_argument("near_vanishing_Q needs dQ >= 1 and j >= 0");
    }
    // columns z^0 .. z^dQ; row k holds int_a^b P^k z^i p
    std::vector<std::vector<Rational>> rows;
    Poly Pk(Rational(1));
    const Poly p = derivative(P);
    for (int k = 0; k <= j; ++k) {
        std::vector<Rational> row;
        Poly w = Pk * p;
        for (int i = 0; i <= dQ; ++i) {
            row.push_back(definite_integral(w, a, b));
            w = w.shifted(1);
        }
        rows.push_back(std::move(row));
        Pk = Pk * P;
    }
    for (auto& [free, v] : rational_kernel(std::move(rows), dQ + 1)) {
        if (free == dQ) {
            auto [s, ip] = to_primitive_integer(Poly(std::move(v)));
            (void)s;
            Poly Q = to_rational(ip);
            if (sgn(Q.leading()) < 0) {
                Q = -Q;
            }
            return Q;
        }
    }
    throw InfeasibleFamily("no Q of degree " + std::to_string(dQ) + " annihilates m_0..m_" + std::to_string(j));
}

/// Instances in the order random, pcc-center, near-vanishing; ids are "<family>-<index>".
inline std::vector<MomentInstance> generate_corpus(const CorpusSpec& spec)
{
    if (spec.dP_min < 1 || spec.dP_min > spec.dP_max || spec.dQ_min < 0 || spec.dQ_min > spec.dQ_max
        || spec.endpoints.empty() || spec.height < 1 || spec.max_den < 1) {
        throw std::invalid_argument("invalid corpus ranges");
    }
    CorpusRng rng(spec.seed);
    const long h = spec.height, md = spec.max_den;
    auto endpoints = [&]() -> const std::pair<Rational, Rational>& {
        return spec.endpoints[static_cast<std::size_t>(rng.integer(0, static_cast<long>(spec.endpoints.size()) - 1))];
    };
    auto poly_or_zero = [&](int d) { return d == 0 ? Poly(rng.rational(h, md)) : rng.poly(d, h, md); };

    std::vector<MomentInstance> out;
    for (int i = 0; i < spec.random; ++i) {
        const int dP = static_cast<int>(rng.integer(spec.dP_min, spec.dP_max));
        const int dQ = static_cast<int>(rng.integer(spec.dQ_min, spec.dQ_max));
        const auto& [a, b] = endpoints();
        out.emplace_back(rng.poly(dP, h, md), poly_or_zero(dQ), a, b, "random-" + std::to_string(i));
    }

    // P = Pt(W), Q = Qt(W) with deg W >= 2 dividing deg P and W(a) = W(b)
    const int pcc_dP_min = std::max(spec.dP_min, 2);
    const bool pcc_possible = pcc_dP_min <= spec.dP_max && spec.dQ_max >= 2;
    for (int i = 0; i < spec.pcc_center && pcc_possible; ++i) {
        int dP = 0;
        std::vector<int> divisors;
        while (divisors.empty()) {
            dP = static_cast<int>(rng.integer(pcc_dP_min, spec.dP_max));
            for (int d = 2; d <= std::min(dP, spec.dQ_max); ++d) {
                if (dP % d == 0) {
                    divisors.push_back(d);
                }
            }
        }
        const int w = divisors[static_cast<std::size_t>(rng.integer(0, static_cast<long>(divisors.size()) - 1))];
        const auto& [a, b] = endpoints();
        Poly W = rng.poly(w, h, md);
        W -= Poly({Rational(0), Rational((W(b) - W(a)) / (b - a))});
        const int dQt_max = spec.dQ_max / w;
        const int dQt = static_cast<int>(rng.integer(std::min((std::max(spec.dQ_min, 1) + w - 1) / w, dQt_max), dQt_max));
        out.push_back(pcc_compose(rng.poly(dP / w, h, md), rng.poly(dQt, h, md), W, a, b, "pcc-center-" + std::to_string(i)));
    }

    // redraws on InfeasibleFamily stay deterministic: they consume the same stream
    const int nv_dQ_min = std::max(spec.dQ_min, 1);
    for (int i = 0; i < spec.near_vanishing && nv_dQ_min <= spec.dQ_max; ++i) {
        for (int attempt = 0;; ++attempt) {
            const int dP = static_cast<int>(rng.integer(spec.dP_min, spec.dP_max));
            const int dQ = static_cast<int>(rng.integer(nv_dQ_min, spec.dQ_max));
            const int j = static_cast<int>(rng.integer(0, dQ - 1));
            const auto& [a, b] = endpoints();
            const Poly P = rng.poly(dP, h, md);
            try {
                out.emplace_back(P, near_vanishing_Q(P, dQ, j, a, b), a, b, "near-vanishing-" + std::to_string(i));
                break;
            } catch (const InfeasibleFamily&) {
                if (attempt > 100) {
                    throw;
                }
            }
        }
    }
    return out;
}

struct PipelineOptions {
    AuditOptions audit;
    unsigned jobs = 0; ///< 0: MBL_JOBS, else 1
};

inline unsigned resolve_jobs(unsigned requested)
{
    if (requested > 0) {
        return requested;
    }
    if (const char* env = std::getenv("MBL_JOBS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) {
            return static_cast<unsigned>(v);
        }
    }
    return 1;
}

struct RunReport {
    CorpusSpec spec;
    bool has_spec = false;
    std::vector<BoundReport> reports;
    int passed = 0;
    int failed = 0; ///< at least one bound flag failed
    int errors = 0; ///< hard errors
    double wall_seconds = 0;
    std::string version = kToolVersion;
};

/// Runs bound_audit (which covers moments, series, annihilator, Euler form and the
/// right-hand-side fit) on every instance; results keep the input order.
inline RunReport run_pipeline(const std::vector<MomentInstance>& instances, const PipelineOptions& opt = {})
{
    const auto t0 = std::chrono::steady_clock::now();
    RunReport rep;
    rep.reports.resize(instances.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < instances.size(); i = next++) {
            try {
                rep.reports[i] = bound_audit(instances[i], opt.audit);
            } catch (const std::exception& e) {
                rep.reports[i].id = instances[i].id;
                rep.reports[i].error = e.what();
            }
        }
    };
    const unsigned jobs = std::min<unsigned>(resolve_jobs(opt.jobs), static_cast<unsigned>(std::max<std::size_t>(instances.size(), 1)));
    if (jobs <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < jobs; ++w) {
            pool.emplace_back(work);
        }
        for (auto& t : pool) {
            t.join();
        }
    }
    for (const auto& r : rep.reports) {
        if (r.error) {
            ++rep.errors;
        } else if (r.all_pass()) {
            ++rep.passed;
        } else {
            ++rep.failed;
        }
    }
    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

inline RunReport run_corpus(const CorpusSpec& spec, const PipelineOptions& opt = {})
{
    RunReport rep = run_pipeline(generate_corpus(spec), opt);
    rep.spec = spec;
    rep.has_spec = true;
    return rep;
}

} // namespace mbl

#endif
