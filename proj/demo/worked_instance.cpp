// Walk one instance through the whole chain: moments, series, operator,
// right-hand side, bounds.

#include <iostream>

#include <mbl/mbl.hpp>

int main(int argc, char** argv)
{
    using namespace mbl;
    const Poly P = parse_polynomial(argc > 1 ? argv[1] : "z^3-3*z");
    const Poly Q = parse_polynomial(argc > 2 ? argv[2] : "z+z^2");
    const MomentInstance inst(P, Q, -1, 1);

    MomentSequence m(inst, MomentKind::standard);
    std::cout << "moments:";
    for (int k = 0; k < 6; ++k) {
        std::cout << ' ' << m[k];
    }
    std::cout << "\n";

    const auto L = minimal_annihilator(P, Q);
    std::cout << "operator of order " << L.order() << ":\n";
    for (int k = 0; k <= L.order(); ++k) {
        std::cout << "  c_" << k << " = " << to_expression(L.coeff(k)) << "\n";
    }

    const auto k = kisunko_check(inst, L, default_truncation(L));
    if (k.fit) {
        std::cout << "L H = (" << to_expression(k.fit->reduced.numerator(), 't') << ") / ("
                  << to_expression(k.fit->reduced.denominator(), 't') << "), checked on " << k.fit->margin
                  << " extra coefficients\n";
    }

    const auto rep = bound_audit(inst);
    std::cout << bound_report_to_json(rep).dump(2) << "\n";
    return rep.all_pass() ? 0 : 1;
}
