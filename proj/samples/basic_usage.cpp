// Evaluates a few of the library's closed forms and representations and
// prints them side by side.

#include <cmath>
#include <cstdio>

#include "bernmeans/bernmeans.hpp"

int main()
{
    using namespace bernmeans;

    const PositivePair pair(2.0, 1.0);
    std::printf("G(2+t, 1+t) at t = 1:        %.15g\n", geometric_shifted(pair, Shift(1.0)));
    std::printf("  by its integral form:      %.15g\n", geometric_rep(pair, 1.0).value);

    std::printf("h(1) = sqrt(2):              %.15g\n", h_kernel(1.0));
    std::printf("  by its Stieltjes form:     %.15g\n", h_rep(1.0).value);
    std::printf("h''(1) from coefficients:    %.15g\n", h_derivative(2, 1.0));

    const auto row = triangle_by_closed_form(TriangleKind::A, 4).row(4);
    std::printf("a_{4,k}:                     ");
    for (const auto& v : row)
        std::printf("%s ", v.str().c_str());
    std::printf("\n");

    const auto report = check_completely_monotonic(target_h(), 30);
    std::printf("h completely monotonic to order 30: %s\n", to_string(report.overall()));

    const auto density = stieltjes_invert(shipped_function(ShippedFunction::h), {0.25, 0.5, 0.75});
    for (std::size_t k = 0; k < density.u_grid.size(); ++k)
        std::printf("density(%.2f) = %.9f (exact %.9f)\n", density.u_grid[k], density.density[k],
                    analytic_density(ShippedFunction::h, density.u_grid[k]));
    return 0;
}
