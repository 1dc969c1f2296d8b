#ifndef BERNMEANS_QUADRATURE_HPP
#define BERNMEANS_QUADRATURE_HPP

// Globally adaptive Gauss-Kronrod (10/21-point) quadrature for real- or
// complex-valued integrands. Complex integrands share nodes between their
// real and imaginary parts; the error norm is the complex modulus.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <queue>
#include <string>
#include <type_traits>
#include <vector>

#include "bernmeans/errors.hpp"

namespace bernmeans {

template <class V>
struct QuadratureResult
{
    V value{};
    double error_estimate = 0.0;
    std::size_t evaluations = 0;
    std::size_t subdivisions = 0;
    bool converged = true;
};

struct QuadratureOptions
{
    double abs_tol = 1e-10;
    double rel_tol = 0.0;
    std::size_t max_subdivisions = 4000;
};

namespace detail {

// Abscissae of the 21-point Kronrod rule on [-1, 1], descending; odd indices
// (1, 3, 5, 7, 9) are the 10-point Gauss nodes.
inline constexpr std::array<double, 11> kronrod21_nodes = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};

inline constexpr std::array<double, 11> kronrod21_weights = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208643474919, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

inline constexpr std::array<double, 5> gauss10_weights = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

template <class V>
struct Panel
{
    double a;
    double b;
    V value;
    double error;
};

template <class V, class F>
Panel<V> gauss_kronrod21(F& f, double a, double b)
{
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const V f_center = f(center);
    V kronrod = f_center * kronrod21_weights[10];
    V gauss{};
    double abs_sum = std::abs(f_center) * kronrod21_weights[10];
    for (std::size_t j = 0; j < 10; ++j)
    {
        const double dx = half * kronrod21_nodes[j];
        const V f1 = f(center - dx);
        const V f2 = f(center + dx);
        kronrod += (f1 + f2) * kronrod21_weights[j];
        abs_sum += (std::abs(f1) + std::abs(f2)) * kronrod21_weights[j];
        if (j % 2 == 1)
            gauss += (f1 + f2) * gauss10_weights[j / 2];
    }
    kronrod *= half;
    gauss *= half;
    const double abs_integral = std::abs(half) * abs_sum;
    double error = std::abs(kronrod - gauss);
    // floor on what double precision can resolve for this panel
    error = std::max(error, 50.0 * std::numeric_limits<double>::epsilon() * abs_integral);
    return Panel<V>{a, b, kronrod, error};
}

} // namespace detail

/// Integrates f over [a, b] until the summed panel error estimate is at most
/// max(abs_tol, rel_tol |value|) or the subdivision budget is exhausted, in
/// which case `converged` is false. Summation is in left-endpoint order, so
/// results are reproducible.
template <class F>
auto integrate(F&& f, double a, double b, const QuadratureOptions& options = {})
    -> QuadratureResult<std::decay_t<std::invoke_result_t<F&, double>>>
{
    using V = std::decay_t<std::invoke_result_t<F&, double>>;
    QuadratureResult<V> result;
    if (a == b)
        return result;

    std::vector<detail::Panel<V>> panels;
    panels.push_back(detail::gauss_kronrod21<V>(f, a, b));
    result.evaluations = 21;

    auto by_error = [&panels](std::size_t lhs, std::size_t rhs) {
        if (panels[lhs].error != panels[rhs].error)
            return panels[lhs].error < panels[rhs].error;
        return panels[lhs].a > panels[rhs].a;
    };
    std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(by_error)> queue(by_error);
    queue.push(0);

    V total = panels[0].value;
    double total_error = panels[0].error;
    const double min_width = 8.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(a), std::abs(b));

    auto target = [&] { return std::max(options.abs_tol, options.rel_tol * std::abs(total)); };

    while (total_error > target())
    {
        if (queue.empty() || result.subdivisions >= options.max_subdivisions)
        {
            result.converged = false;
            break;
        }
        const std::size_t worst = queue.top();
        queue.pop();
        const detail::Panel<V> parent = panels[worst];
        const double mid = 0.5 * (parent.a + parent.b);
        if (std::abs(parent.b - parent.a) <= min_width || mid == parent.a || mid == parent.b)
            continue; // cannot be refined further; its error stays in the total

        detail::Panel<V> left = detail::gauss_kronrod21<V>(f, parent.a, mid);
        detail::Panel<V> right = detail::gauss_kronrod21<V>(f, mid, parent.b);
        result.evaluations += 42;
        ++result.subdivisions;

        total += left.value + right.value - parent.value;
        total_error += left.error + right.error - parent.error;

        panels[worst] = left;
        panels.push_back(right);
        queue.push(worst);
        queue.push(panels.size() - 1);
    }

    std::sort(panels.begin(), panels.end(), [](const auto& l, const auto& r) { return l.a < r.a; });
    result.value = V{};
    result.error_estimate = 0.0;
    for (const auto& p : panels)
    {
        result.value += p.value;
        result.error_estimate += p.error;
    }
    if (result.error_estimate <= target())
        result.converged = true;
    return result;
}

/// Integrates f over [a, infinity) through u = a + scale (1 - w)/w, w in (0, 1].
/// `scale` should be comparable to the decay length of f.
template <class F>
auto integrate_to_infinity(F&& f, double a, const QuadratureOptions& options = {}, double scale = 1.0)
{
    auto mapped = [&f, a, scale](double w) {
        using V = std::decay_t<std::invoke_result_t<F&, double>>;
        if (w <= 0.0)
            return V{};
        const double u = a + scale * (1.0 - w) / w;
        const V value = f(u);
        if (value == V{})
            return V{};
        return value * (scale / (w * w));
    };
    return integrate(mapped, 0.0, 1.0, options);
}

/// Throws ConvergenceError unless the result met its tolerance.
template <class V>
const QuadratureResult<V>& require_converged(const QuadratureResult<V>& result, const std::string& what)
{
    if (!result.converged)
        throw ConvergenceError(what + ": quadrature did not reach the requested tolerance",
                               result.error_estimate, result.evaluations);
    return result;
}

} // namespace bernmeans

#endif // BERNMEANS_QUADRATURE_HPP
