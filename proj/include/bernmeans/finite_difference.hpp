#ifndef BERNMEANS_FINITE_DIFFERENCE_HPP
#define BERNMEANS_FINITE_DIFFERENCE_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace bernmeans {

/// Highest derivative order estimated by finite differences.
inline constexpr int finite_difference_max_order = 6;

struct FiniteDifference
{
    double value;
    double noise; // estimated rounding error of `value`
    double step;
};

namespace detail {

inline double binomial(int n, int k)
{
    double r = 1.0;
    for (int j = 1; j <= k; ++j)
        r = r * (n - k + j) / j;
    return r;
}

struct StencilRange
{
    double max_abs = 0.0;
    double lowest = std::numeric_limits<double>::infinity();
    double highest = -std::numeric_limits<double>::infinity();
};

// n-th central difference quotient with spacing h; records the range of f
// met on the stencil.
template <class F>
double central_quotient(F& f, int n, double t, double h, StencilRange& range)
{
    double sum = 0.0;
    for (int j = 0; j <= n; ++j)
    {
        const double fx = f(t + (0.5 * n - j) * h);
        range.max_abs = std::max(range.max_abs, std::abs(fx));
        range.lowest = std::min(range.lowest, fx);
        range.highest = std::max(range.highest, fx);
        sum += ((j % 2 == 0) ? 1.0 : -1.0) * binomial(n, j) * fx;
    }
    return sum / std::pow(h, n);
}

} // namespace detail

/// n-th derivative of f at t by Richardson-extrapolated central differences,
/// (4 D(h) - D(2h)) / 3 with h = d (1e-16)^{1/(n+2)}, where d is the distance
/// from t to the nearest end of the domain. The stencil reaches n h from t.
/// `absolute_floor` adds a value-independent rounding level (use 1 for
/// logarithms, whose absolute error does not shrink with |ln f|).
template <class F>
FiniteDifference central_derivative(F&& f, int n, double t, double d, double absolute_floor = 0.0)
{
    if (n < 0 || n > finite_difference_max_order)
        throw std::invalid_argument("finite-difference order must lie in [0, 6]");
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (n == 0)
    {
        const double v = f(t);
        return {v, eps * (std::abs(v) + absolute_floor), 0.0};
    }
    const double h = d * std::pow(1e-16, 1.0 / (n + 2));
    detail::StencilRange range;
    const double fine = detail::central_quotient(f, n, t, h, range);
    const double coarse = detail::central_quotient(f, n, t, 2.0 * h, range);
    const double value = (4.0 * fine - coarse) / 3.0;
    // rounding of each sample: relative error of f plus the rounded abscissa
    // moving f by |t| eps |f'|, with |f'| bounded by the slope across the stencil
    const double slope = (range.highest - range.lowest) / (2.0 * n * h);
    const double per_sample = range.max_abs + absolute_floor + std::abs(t) * slope;
    const double level = 16.0 * eps * per_sample * std::ldexp(1.0, n);
    const double noise = (4.0 * level / std::pow(h, n) + level / std::pow(2.0 * h, n)) / 3.0;
    return {value, noise, h};
}

} // namespace bernmeans

#endif // BERNMEANS_FINITE_DIFFERENCE_HPP
