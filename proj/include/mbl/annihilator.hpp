// Minimal linear differential operator annihilating the branches of Q(P^{-1}(z)),
// its Euler form at infinity, and the branch trace.

#ifndef MBL_ANNIHILATOR_HPP
#define MBL_ANNIHILATOR_HPP

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <mbl/polynomial.hpp>
#include <mbl/rational_function.hpp>
#include <mbl/resultant.hpp>

namespace mbl {

/// c_r(z) d^r + ... + c_0(z), integer coefficients, no common polynomial or
/// integer factor, positive leading coefficient of c_r.
class LinearOperator {
public:
    LinearOperator() = default;
    explicit LinearOperator(std::vector<Poly> coeffs, bool normalize_now = true) : coeffs_(std::move(coeffs))
    {
        while (!coeffs_.empty() && coeffs_.back().is_zero()) {
            coeffs_.pop_back();
        }
        if (coeffs_.empty()) {
            throw std::invalid_argument("operator with all coefficients zero");
        }
        if (normalize_now) {
            normalize();
        }
    }

    int order() const { return static_cast<int>(coeffs_.size()) - 1; }
    const Poly& coeff(int k) const { return coeffs_.at(static_cast<std::size_t>(k)); }
    const std::vector<Poly>& coefficients() const { return coeffs_; }
    const Poly& leading() const { return coeffs_.back(); }

    int max_coefficient_degree() const
    {
        int d = 0;
        for (const auto& c : coeffs_) {
            d = std::max(d, c.is_zero() ? 0 : c.degree());
        }
        return d;
    }

    /// L f for a polynomial f.
    Poly apply(const Poly& f) const
    {
        Poly acc;
        Poly dk = f;
        for (const auto& c : coeffs_) {
            acc += c * dk;
            dk = derivative(dk);
        }
        return acc;
    }

    /// L f for a rational function f.
    RationalFunction apply(const RationalFunction& f) const
    {
        RationalFunction acc;
        RationalFunction dk = f;
        for (const auto& c : coeffs_) {
            acc += RationalFunction(c) * dk;
            dk = derivative(dk);
        }
        return acc;
    }

    friend bool operator==(const LinearOperator& a, const LinearOperator& b) { return a.coeffs_ == b.coeffs_; }

private:
    void normalize()
    {
        std::vector<IntPoly> ints;
        Integer den = 1;
        for (const auto& c : coeffs_) {
            for (const auto& x : c.coefficients()) {
                den = lcm(den, x.get_den());
            }
        }
        for (const auto& c : coeffs_) {
            std::vector<Integer> v;
            for (const auto& x : c.coefficients()) {
                v.push_back(exact_div(Integer(x.get_num() * den), Integer(x.get_den())));
            }
            ints.emplace_back(std::move(v));
        }
        IntPoly g = primitive_part(ints.back());
        for (auto it = ints.rbegin() + 1; it != ints.rend() && g.degree() > 0; ++it) {
            if (!it->is_zero()) {
                g = gcd(g, *it);
            }
        }
        Integer cont = 0;
        for (auto& c : ints) {
            if (g.degree() > 0 && !c.is_zero()) {
                c = exact_div(c, g);
            }
            cont = gcd(cont, content(c));
        }
        if (sgn(ints.back().leading()) < 0) {
            cont = -cont;
        }
        coeffs_.clear();
        for (const auto& c : ints) {
            std::vector<Rational> v;
            for (const auto& x : c.coefficients()) {
                v.emplace_back(exact_div(x, cont));
            }
            coeffs_.emplace_back(std::move(v));
        }
    }

    std::vector<Poly> coeffs_;
};

/// Power sums p_0..p_N of the roots w_i of P(w) = t, as polynomials in t.
inline std::vector<Poly> root_power_sums(const Poly& P, int N)
{
    const int n = P.degree();
    if (n < 1) {
        throw std::invalid_argument("root_power_sums requires deg P >= 1");
    }
    const Rational inv = Rational(1) / P.leading();
    // elementary symmetric e_j = (-1)^j [w^(n-j)] of the monic P(w) - t
    std::vector<Poly> e(static_cast<std::size_t>(n) + 1);
    e[0] = Poly(Rational(1));
    for (int j = 1; j <= n; ++j) {
        Poly c(P[n - j] * inv);
        if (j == n) {
            c -= Poly({Rational(0), inv});
        }
        e[static_cast<std::size_t>(j)] = (j % 2 == 0) ? c : -c;
    }
    std::vector<Poly> ps(static_cast<std::size_t>(N) + 1);
    ps[0] = Poly(Rational(n));
    for (int k = 1; k <= N; ++k) {
        Poly acc;
        for (int i = 1; i < k && i <= n; ++i) {
            Poly term = e[static_cast<std::size_t>(i)] * ps[static_cast<std::size_t>(k - i)];
            acc += (i % 2 == 1) ? term : -term;
        }
        if (k <= n) {
            Poly term = e[static_cast<std::size_t>(k)].scaled(Rational(k));
            acc += (k % 2 == 1) ? term : -term;
        }
        ps[static_cast<std::size_t>(k)] = std::move(acc);
    }
    return ps;
}

/// S(t) = sum over roots of P(w) = t of Q(w); a polynomial in t.
inline Poly branch_trace(const Poly& P, const Poly& Q)
{
    if (Q.is_zero()) {
        return {};
    }
    const auto ps = root_power_sums(P, Q.degree());
    Poly s;
    for (int j = 0; j <= Q.degree(); ++j) {
        s += ps[static_cast<std::size_t>(j)].scaled(Q[j]);
    }
    return s;
}

/// A(z, y) = 0 defining g(z) = Q(P^{-1}(z)), squarefree and monic in y.
struct AlgebraicEquation {
    BiPolynomial A;                ///< outer variable y, coefficients in z
    int branch_count = 0;          ///< deg_y A
    bool reduced_from_resultant = false; ///< the raw product had repeated factors
    std::optional<Poly> P;         ///< parametrization z = P(w), y = Q(w), when known
    std::optional<Poly> Q;
};

namespace detail {

/// Monic y-polynomial with coefficients in Q(z) to one with coefficients in Q[z].
inline BiPolynomial to_bipolynomial(const Polynomial<RationalFunction>& f)
{
    std::vector<Poly> v;
    for (const auto& c : f.coefficients()) {
        if (!c.is_polynomial()) {
            throw std::logic_error("expected polynomial coefficients in z");
        }
        v.push_back(c.numerator().scaled(Rational(1) / c.denominator().leading()));
    }
    return BiPolynomial(std::move(v));
}

inline Polynomial<RationalFunction> to_rf_poly(const BiPolynomial& f)
{
    std::vector<RationalFunction> v;
    for (const auto& c : f.coefficients()) {
        v.emplace_back(c);
    }
    return Polynomial<RationalFunction>(std::move(v));
}

template <class F>
Polynomial<F> monic(const Polynomial<F>& p)
{
    return p.scaled(F(1) / p.leading());
}

/// Extended Euclid over a field: returns (g, s) with s*a = g mod b, g monic.
template <class F>
std::pair<Polynomial<F>, Polynomial<F>> extended_gcd(Polynomial<F> a, Polynomial<F> b)
{
    Polynomial<F> s0(F(1)), s1;
    while (!b.is_zero()) {
        auto [q, r] = divmod(a, b);
        Polynomial<F> s2 = s0 - q * s1;
        a = std::move(b);
        b = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    const F inv = F(1) / a.leading();
    return {a.scaled(inv), s0.scaled(inv)};
}

template <class F>
Polynomial<F> field_gcd(Polynomial<F> a, Polynomial<F> b)
{
    while (!b.is_zero()) {
        auto r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.is_zero() ? a : monic(a);
}

inline BiPolynomial squarefree_in_y(const BiPolynomial& A, bool& reduced)
{
    reduced = false;
    // a nonconstant gcd at a sample point is necessary for a nontrivial generic gcd
    static const std::array<long, 3> probes = {7919, -3571, 104729};
    const BiPolynomial dA = derivative(A);
    for (long z0 : probes) {
        Poly a0 = evaluate_inner(A, Rational(z0));
        Poly d0 = evaluate_inner(dA, Rational(z0));
        if (a0.degree() == A.degree() && gcd(a0, d0).degree() == 0) {
            return A;
        }
    }
    auto Af = to_rf_poly(A);
    auto g = field_gcd(Af, to_rf_poly(dA));
    if (g.degree() <= 0) {
        return A;
    }
    reduced = true;
    auto sf = monic(divmod(Af, g).first);
    return to_bipolynomial(sf);
}

} // namespace detail

/// Equation of Q(P^{-1}) from the power sums of the branch values: the product
/// of (y - Q(w_i)) over the roots of P(w) = z, then its squarefree part in y.
/// Q constant is rejected unless `allow_constant` (g constant, handled as d/dz).
inline AlgebraicEquation algebraic_resultant(const Poly& P, const Poly& Q, bool allow_constant = false)
{
    const int n = P.degree();
    if (n < 1) {
        throw std::invalid_argument("algebraic_resultant requires deg P >= 1");
    }
    if (Q.degree() < 1 && !allow_constant) {
        throw std::invalid_argument("algebraic_resultant: Q is constant");
    }
    std::vector<Poly> s(static_cast<std::size_t>(n) + 1);
    Poly Qk(Rational(1));
    for (int k = 1; k <= n; ++k) {
        Qk = Qk * Q;
        s[static_cast<std::size_t>(k)] = branch_trace(P, Qk);
    }
    std::vector<Poly> e(static_cast<std::size_t>(n) + 1);
    e[0] = Poly(Rational(1));
    for (int j = 1; j <= n; ++j) {
        Poly acc;
        for (int i = 1; i <= j; ++i) {
            Poly term = e[static_cast<std::size_t>(j - i)] * s[static_cast<std::size_t>(i)];
            acc += (i % 2 == 1) ? term : -term;
        }
        e[static_cast<std::size_t>(j)] = acc.scaled(make_rational(1, j));
    }
    std::vector<Poly> coeffs(static_cast<std::size_t>(n) + 1);
    for (int j = 0; j <= n; ++j) {
        coeffs[static_cast<std::size_t>(n - j)] = (j % 2 == 0) ? e[static_cast<std::size_t>(j)] : -e[static_cast<std::size_t>(j)];
    }
    AlgebraicEquation eq;
    eq.A = detail::squarefree_in_y(BiPolynomial(std::move(coeffs)), eq.reduced_from_resultant);
    eq.branch_count = eq.A.degree();
    eq.P = P;
    eq.Q = Q;
    return eq;
}

/// Res_w(P(w) - z, y - Q(w)) via the Sylvester matrix over Q[z][y] (not reduced).
inline BiPolynomial algebraic_resultant_sylvester(const Poly& P, const Poly& Q)
{
    const Poly z = Poly::variable();
    std::vector<BiPolynomial> a;
    for (int i = 0; i <= P.degree(); ++i) {
        a.emplace_back(Poly(P[i]));
    }
    a[0] -= BiPolynomial(z);
    std::vector<BiPolynomial> b;
    for (int i = 0; i <= std::max(Q.degree(), 0); ++i) {
        b.emplace_back(Poly(-Q[i]));
    }
    b[0] += BiPolynomial({Poly(), Poly(Rational(1))});
    return resultant(Polynomial<BiPolynomial>(std::move(a)), Polynomial<BiPolynomial>(std::move(b)));
}

namespace detail {

/// Rank of the leading columns of a rational matrix, for each prefix length.
inline std::vector<int> prefix_ranks(std::vector<std::vector<Rational>> cols)
{
    std::vector<int> ranks;
    std::vector<std::vector<Rational>> basis; // echelon columns
    std::vector<int> pivots;
    for (auto& v : cols) {
        for (std::size_t b = 0; b < basis.size(); ++b) {
            const auto piv = static_cast<std::size_t>(pivots[b]);
            if (sgn(v[piv]) != 0) {
                Rational f = v[piv] / basis[b][piv];
                for (std::size_t i = 0; i < v.size(); ++i) {
                    v[i] -= f * basis[b][i];
                }
            }
        }
        int piv = -1;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (sgn(v[i]) != 0) {
                piv = static_cast<int>(i);
                break;
            }
        }
        if (piv >= 0) {
            basis.push_back(v);
            pivots.push_back(piv);
        }
        ranks.push_back(static_cast<int>(basis.size()));
    }
    return ranks;
}

/// Rows (of an n x r rational matrix) forming a nonsingular r x r block.
inline std::optional<std::vector<int>> independent_rows(const std::vector<std::vector<Rational>>& cols, int r)
{
    const int n = static_cast<int>(cols.empty() ? 0 : cols[0].size());
    std::vector<std::vector<Rational>> rows_basis;
    std::vector<int> pivots;
    std::vector<int> chosen;
    for (int i = 0; i < n && static_cast<int>(chosen.size()) < r; ++i) {
        std::vector<Rational> row(static_cast<std::size_t>(r));
        for (int k = 0; k < r; ++k) {
            row[static_cast<std::size_t>(k)] = cols[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)];
        }
        for (std::size_t b = 0; b < rows_basis.size(); ++b) {
            const auto piv = static_cast<std::size_t>(pivots[b]);
            if (sgn(row[piv]) != 0) {
                Rational f = row[piv] / rows_basis[b][piv];
                for (std::size_t j = 0; j < row.size(); ++j) {
                    row[j] -= f * rows_basis[b][j];
                }
            }
        }
        for (int j = 0; j < r; ++j) {
            if (sgn(row[static_cast<std::size_t>(j)]) != 0) {
                rows_basis.push_back(row);
                pivots.push_back(j);
                chosen.push_back(i);
                break;
            }
        }
    }
    if (static_cast<int>(chosen.size()) < r) {
        return std::nullopt;
    }
    return chosen;
}

} // namespace detail

/// Minimal operator for g = Q(w), z = P(w), built in the field Q(w), which is the
/// degree-deg P extension Q(z)[w]/(P(w) - z) of Q(z). With p = P' one has
/// d/dz = (1/p(w)) d/dw, so the k-th derivative of g is N_k(w)/p(w)^(2k-1).
/// Writing each derivative in the basis 1, w, ..., w^(n-1) over Q(z) (via P-adic
/// expansion) turns the search for the first Q(z)-linear dependency into
/// polynomial linear algebra; the relation found is verified exactly.
inline LinearOperator minimal_annihilator(const Poly& P, const Poly& Q)
{
    const int n = P.degree();
    if (n < 1) {
        throw std::invalid_argument("minimal_annihilator requires deg P >= 1");
    }
    if (Q.degree() < 1) {
        return LinearOperator({Poly(), Poly(Rational(1))});
    }
    const Poly p = derivative(P);
    const Poly dp = derivative(p);
    const int common = 2 * n - 1;

    std::vector<Poly> numer(static_cast<std::size_t>(n) + 1);
    numer[0] = Q;
    numer[1] = derivative(Q);
    for (int k = 1; k < n; ++k) {
        const Poly& N = numer[static_cast<std::size_t>(k)];
        numer[static_cast<std::size_t>(k) + 1] = derivative(N) * p - N.scaled(Rational(2 * k - 1)) * dp;
    }
    std::vector<Poly> p_pow(static_cast<std::size_t>(common) + 1);
    p_pow[0] = Poly(Rational(1));
    for (int i = 1; i <= common; ++i) {
        p_pow[static_cast<std::size_t>(i)] = p_pow[static_cast<std::size_t>(i) - 1] * p;
    }

    // columns mu_k in Z[z]^n, up to a rational scale per column
    std::vector<std::vector<IntPoly>> mu;
    std::vector<Rational> scale;
    for (int k = 0; k <= n; ++k) {
        const int e = k == 0 ? 0 : 2 * k - 1;
        const Poly M = numer[static_cast<std::size_t>(k)] * p_pow[static_cast<std::size_t>(common - e)];
        std::vector<std::vector<Rational>> entries(static_cast<std::size_t>(n));
        Poly rest = M;
        int i = 0;
        while (!rest.is_zero()) {
            auto [q, r] = divmod(rest, P);
            for (int j = 0; j < n; ++j) {
                auto& ej = entries[static_cast<std::size_t>(j)];
                ej.resize(static_cast<std::size_t>(i) + 1, Rational(0));
                ej[static_cast<std::size_t>(i)] = r[j];
            }
            rest = std::move(q);
            ++i;
        }
        Integer den = 1;
        for (const auto& ej : entries) {
            for (const auto& x : ej) {
                den = lcm(den, x.get_den());
            }
        }
        std::vector<IntPoly> col;
        for (const auto& ej : entries) {
            std::vector<Integer> v;
            for (const auto& x : ej) {
                v.push_back(exact_div(Integer(x.get_num() * den), Integer(x.get_den())));
            }
            col.emplace_back(std::move(v));
        }
        mu.push_back(std::move(col));
        scale.emplace_back(den);
    }

    auto evaluate_columns = [&](const Integer& z0, int count) {
        std::vector<std::vector<Rational>> cols;
        for (int k = 0; k < count; ++k) {
            std::vector<Rational> v;
            for (const auto& e : mu[static_cast<std::size_t>(k)]) {
                v.emplace_back(e(z0));
            }
            cols.push_back(std::move(v));
        }
        return cols;
    };

    const std::array<long, 6> probes = {1000003, -917503, 65537, -131071, 524287, 7};
    int candidate = 0;
    for (;;) {
        // smallest k whose prefix looks dependent at every probe
        std::vector<int> best(static_cast<std::size_t>(n) + 1, 0);
        for (std::size_t t = 0; t < 2; ++t) {
            auto ranks = detail::prefix_ranks(evaluate_columns(Integer(probes[(t + candidate) % probes.size()]), n + 1));
            for (std::size_t k = 0; k < ranks.size(); ++k) {
                best[k] = std::max(best[k], ranks[k]);
            }
        }
        int r = -1;
        for (int k = std::max(candidate, 1); k <= n; ++k) {
            if (best[static_cast<std::size_t>(k)] <= k) {
                r = k;
                break;
            }
        }
        if (r < 0) {
            throw std::logic_error("minimal_annihilator: no dependency found up to order deg P");
        }
        std::optional<std::vector<int>> rows;
        for (long z0 : probes) {
            rows = detail::independent_rows(evaluate_columns(Integer(z0), r), r);
            if (rows) {
                break;
            }
        }
        if (!rows) {
            candidate = r + 1;
            continue;
        }
        std::vector<IntPoly> c(static_cast<std::size_t>(r) + 1);
        for (int k = 0; k <= r; ++k) {
            Matrix<IntPoly> minor;
            for (int row : *rows) {
                std::vector<IntPoly> line;
                for (int col = 0; col <= r; ++col) {
                    if (col != k) {
                        line.push_back(mu[static_cast<std::size_t>(col)][static_cast<std::size_t>(row)]);
                    }
                }
                minor.push_back(std::move(line));
            }
            IntPoly d = determinant(std::move(minor));
            c[static_cast<std::size_t>(k)] = (k % 2 == 0) ? d : -d;
        }
        bool ok = !c[static_cast<std::size_t>(r)].is_zero();
        for (int row = 0; row < n && ok; ++row) {
            IntPoly acc;
            for (int k = 0; k <= r; ++k) {
                acc += c[static_cast<std::size_t>(k)] * mu[static_cast<std::size_t>(k)][static_cast<std::size_t>(row)];
            }
            ok = acc.is_zero();
        }
        if (!ok) {
            candidate = r + 1;
            if (candidate > n) {
                throw std::logic_error("minimal_annihilator: inconsistent dependency");
            }
            continue;
        }
        std::vector<Poly> coeffs;
        for (int k = 0; k <= r; ++k) {
            coeffs.push_back(to_rational(c[static_cast<std::size_t>(k)]).scaled(scale[static_cast<std::size_t>(k)]));
        }
        return LinearOperator(std::move(coeffs));
    }
}

/// Minimal operator for the branches of a squarefree curve A(z, y) = 0 monic in y,
/// by derivation in the reduced algebra Q(z)[y]/(A) with y' = -A_z / A_y.
inline LinearOperator annihilator_from_curve(const BiPolynomial& A)
{
    using RFPoly = Polynomial<RationalFunction>;
    const int n = A.degree();
    if (n < 1) {
        throw std::invalid_argument("annihilator_from_curve requires deg_y A >= 1");
    }
    const RFPoly Af = detail::monic(detail::to_rf_poly(A));
    const RFPoly Ay = derivative(Af);
    const RFPoly Az = detail::to_rf_poly(derivative_inner(A)).scaled(RationalFunction(Rational(1)) / detail::to_rf_poly(A).leading());
    auto [g, inv] = detail::extended_gcd(Ay, Af);
    if (g.degree() != 0) {
        throw std::invalid_argument("annihilator_from_curve: A is not squarefree in y");
    }
    const RFPoly yprime = (-(Az * inv)) % Af;

    auto derive = [&](const RFPoly& h) {
        std::vector<RationalFunction> v;
        for (const auto& c : h.coefficients()) {
            v.push_back(derivative(c));
        }
        return (RFPoly(std::move(v)) + derivative(h) * yprime) % Af;
    };
    auto as_vector = [&](const RFPoly& h) {
        std::vector<RationalFunction> v(static_cast<std::size_t>(n));
        for (int j = 0; j <= h.degree(); ++j) {
            v[static_cast<std::size_t>(j)] = h[j];
        }
        return v;
    };

    std::vector<std::vector<RationalFunction>> vs;
    RFPoly cur = RFPoly({RationalFunction(), RationalFunction(Rational(1))}) % Af;
    for (int k = 0; k <= n; ++k) {
        vs.push_back(as_vector(cur));
        // solve sum_{i<k} x_i v_i = -v_k by elimination on the augmented system
        std::vector<std::vector<RationalFunction>> rows(static_cast<std::size_t>(n), std::vector<RationalFunction>(static_cast<std::size_t>(k) + 1));
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j <= k; ++j) {
                rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = vs[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
            }
        }
        std::vector<int> pivot_col;
        std::size_t prow = 0;
        bool dependent = true;
        for (int col = 0; col <= k && prow < rows.size(); ++col) {
            std::size_t sel = prow;
            while (sel < rows.size() && rows[sel][static_cast<std::size_t>(col)].is_zero()) {
                ++sel;
            }
            if (sel == rows.size()) {
                if (col == k) {
                    break;
                }
                continue;
            }
            if (col == k) {
                dependent = false;
                break;
            }
            std::swap(rows[prow], rows[sel]);
            RationalFunction inv_p = RationalFunction(Rational(1)) / rows[prow][static_cast<std::size_t>(col)];
            for (auto& x : rows[prow]) {
                x *= inv_p;
            }
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (i != prow && !rows[i][static_cast<std::size_t>(col)].is_zero()) {
                    RationalFunction f = rows[i][static_cast<std::size_t>(col)];
                    for (int j = col; j <= k; ++j) {
                        rows[i][static_cast<std::size_t>(j)] -= f * rows[prow][static_cast<std::size_t>(j)];
                    }
                }
            }
            pivot_col.push_back(col);
            ++prow;
        }
        if (dependent && static_cast<int>(pivot_col.size()) < k + 1 && (pivot_col.empty() || pivot_col.back() != k)) {
            // coefficients: c_k = 1, c_{pivot} = -rows[.][k], free columns 0
            std::vector<RationalFunction> c(static_cast<std::size_t>(k) + 1);
            c[static_cast<std::size_t>(k)] = RationalFunction(Rational(1));
            for (std::size_t i = 0; i < pivot_col.size(); ++i) {
                c[static_cast<std::size_t>(pivot_col[i])] = -rows[i][static_cast<std::size_t>(k)];
            }
            Poly den(Rational(1));
            for (const auto& x : c) {
                den = den * exact_div(x.denominator(), gcd(den, x.denominator()));
            }
            std::vector<Poly> coeffs;
            for (const auto& x : c) {
                coeffs.push_back(x.numerator() * exact_div(den, x.denominator()));
            }
            return LinearOperator(std::move(coeffs));
        }
        cur = derive(cur);
    }
    throw std::logic_error("annihilator_from_curve: no dependency up to order deg_y A");
}

inline LinearOperator minimal_annihilator(const AlgebraicEquation& eq)
{
    if (eq.P && eq.Q) {
        return minimal_annihilator(*eq.P, *eq.Q);
    }
    return annihilator_from_curve(eq.A);
}

/// Signed Stirling numbers of the first kind: D(D-1)...(D-k+1) = sum_j s(k,j) D^j.
inline std::vector<std::vector<Integer>> stirling_first(int kmax)
{
    std::vector<std::vector<Integer>> s(static_cast<std::size_t>(kmax) + 1);
    s[0] = {Integer(1)};
    for (int k = 1; k <= kmax; ++k) {
        auto& row = s[static_cast<std::size_t>(k)];
        const auto& prev = s[static_cast<std::size_t>(k) - 1];
        row.assign(static_cast<std::size_t>(k) + 1, Integer(0));
        for (int j = 0; j < k; ++j) {
            row[static_cast<std::size_t>(j) + 1] += prev[static_cast<std::size_t>(j)];
            row[static_cast<std::size_t>(j)] -= Integer(k - 1) * prev[static_cast<std::size_t>(j)];
        }
    }
    return s;
}

class NonFuchsianAtInfinity : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// L = u * (D^r + c^_{r-1} D^(r-1) + ... + c^_0) with D = t d/dt.
struct EulerForm {
    RationalFunction u;
    std::vector<RationalFunction> c_hat; ///< c^_0 .. c^_{r-1}
    int ord_inf_u = 0;                   ///< r - deg c_r
};

inline EulerForm euler_form(const LinearOperator& L)
{
    const int r = L.order();
    const auto s = stirling_first(r);
    const Poly& cr = L.leading();
    EulerForm ef;
    ef.u = RationalFunction(cr, Poly::monomial(Rational(1), r));
    ef.ord_inf_u = r - cr.degree();
    for (int j = 0; j < r; ++j) {
        Poly num;
        for (int k = j; k <= r; ++k) {
            const Integer& sk = s[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
            if (sgn(sk) != 0 && !L.coeff(k).is_zero()) {
                num += L.coeff(k).shifted(r - k).scaled(Rational(sk));
            }
        }
        if (!num.is_zero() && num.degree() > cr.degree()) {
            throw NonFuchsianAtInfinity("coefficient of D^" + std::to_string(j) + " has a pole at infinity");
        }
        ef.c_hat.emplace_back(num, cr);
    }
    return ef;
}

/// Checks u * L^ (t^-n) == L (t^-n) exactly for n = 1..nmax. After clearing t^-(n+r) both
/// sides are polynomials: sum_k c_k (-n)(-n-1)...(-n-k+1) t^(r-k) against
/// c_r (-n)^r + sum_j c_r c^_j (-n)^j.
inline bool verify_euler_form(const LinearOperator& L, const EulerForm& ef, int nmax)
{
    const int r = L.order();
    const Poly& cr = L.leading();
    if (static_cast<int>(ef.c_hat.size()) != r || ef.u != RationalFunction(cr, Poly::monomial(Rational(1), r))) {
        return false;
    }
    std::vector<Poly> num;
    for (const auto& c : ef.c_hat) {
        const auto [q, rem] = divmod(cr, c.denominator());
        if (!rem.is_zero()) {
            return false;
        }
        num.push_back(c.numerator() * q);
    }
    for (int n = 1; n <= nmax; ++n) {
        Poly lhs;
        Rational ff = 1;
        for (int k = 0; k <= r; ++k) {
            lhs += L.coeff(k).shifted(r - k).scaled(ff);
            ff *= Rational(-n - k);
        }
        Poly rhs = cr.scaled(pow(Rational(-n), static_cast<unsigned long>(r)));
        Rational pw = 1;
        for (int j = 0; j < r; ++j) {
            rhs += num[static_cast<std::size_t>(j)].scaled(pw);
            pw *= Rational(-n);
        }
        if (lhs != rhs) {
            return false;
        }
    }
    return true;
}

} // namespace mbl

#endif
