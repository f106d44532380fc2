// Return map of y' = p y^2 + eps q y^3 on [-1, 1]: first variation against the
// exact tilde moments, then a fixed-point count for a few eps.

#include <cstdio>

#include <mbl/abel.hpp>
#include <mbl/parse.hpp>

int main()
{
    using namespace mbl;
    // q chosen so that the first two tilde moments are 1 and -4
    const AbelInstance base(parse_polynomial("x"), parse_polynomial("57/4-165/4*x^2"), -1, 1, 0.0);

    const auto mt = first_variation_coeffs(base, 4);
    std::printf("tilde moments:");
    for (const auto& v : mt) {
        std::printf(" %s", v.get_str().c_str());
    }
    std::printf("\n");

    const auto var = variation_consistency(base.with_epsilon(1e-6), {0.05, 0.1, 0.15, 0.2});
    std::printf("first variation: sign %+d, deviation %.2e\n", var.sigma, var.max_deviation);

    for (double eps : {1e-2, 1e-3, 1e-4}) {
        const auto pc = count_periodic(base.with_epsilon(eps), 0.5, 300);
        std::printf("eps %.0e: %d fixed point(s) in (0, 0.5], bound %d\n", eps, pc.count, pc.bound);
        for (const auto& r : pc.roots) {
            std::printf("  y = %.10f\n", r.y);
        }
    }
}
