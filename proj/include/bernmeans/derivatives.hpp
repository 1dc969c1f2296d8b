#ifndef BERNMEANS_DERIVATIVES_HPP
#define BERNMEANS_DERIVATIVES_HPP

// Closed-form derivatives of every order for the kernel h(t) = sqrt(1 + 1/t),
// its reciprocal, H(t) = h(t) + 1/h(t), f(u) = (sqrt(u) + 1/sqrt(u)) / 2, and
// the shifted geometric mean's derivative G'_{x,y}(t) = H((y + t)/(x - y)) / 2.

#include <cmath>
#include <utility>
#include <vector>

#include "bernmeans/coefficients.hpp"
#include "bernmeans/errors.hpp"
#include "bernmeans/means.hpp"

namespace bernmeans {

inline double h_kernel(double t)
{
    detail::require(t > 0.0, "h(t) requires t > 0");
    return std::sqrt(1.0 + 1.0 / t);
}

inline double h_reciprocal(double t)
{
    detail::require(t > 0.0, "1/h(t) requires t > 0");
    return std::sqrt(t / (1.0 + t));
}

/// H(t) = h(t) + 1/h(t) = (1 + 2t) / sqrt(t (1 + t)).
inline double H_kernel(double t)
{
    const double h = h_kernel(t);
    return h + 1.0 / h;
}

namespace detail {

inline double horner(const std::vector<double>& coeffs, double t)
{
    double acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
        acc = acc * t + *it;
    return acc;
}

// ln P(t) for a polynomial with positive coefficients, without overflow for t > 1.
inline double log_positive_poly(const std::vector<double>& coeffs, double t)
{
    if (t <= 1.0)
        return std::log(horner(coeffs, t));
    double acc = 0.0;
    const double s = 1.0 / t;
    for (double c : coeffs)
        acc = acc * s + c;
    return std::log(acc) + static_cast<double>(coeffs.size() - 1) * std::log(t);
}

// sign * P(t) / (2^i t^{t_power} (1+t)^{one_plus_t_power} h(t))
inline double kernel_derivative(TriangleKind kind, int i, double t, int sign, int t_power, int one_plus_t_power)
{
    const auto table = cached_rows(kind, static_cast<std::size_t>(i));
    const std::vector<double>& coeffs = table->rows[static_cast<std::size_t>(i) - 1];
    const double h = h_kernel(t);

    const double poly = horner(coeffs, t);
    const double denom = std::ldexp(std::pow(t, t_power) * std::pow(1.0 + t, one_plus_t_power) * h, i);
    const double value = poly / denom;
    if (std::isfinite(poly) && std::isnormal(denom) && std::isnormal(value))
        return sign * value;

    const double log_value = log_positive_poly(coeffs, t) - i * std::log(2.0) - t_power * std::log(t) -
                             one_plus_t_power * std::log1p(t) - std::log(h);
    return sign * std::exp(log_value);
}

inline int alternating_sign(int i) { return i % 2 == 0 ? 1 : -1; }

inline void require_order(int i) { require(i >= 0, "derivative order must be nonnegative"); }

} // namespace detail

/// h^{(i)}(t) for t > 0.
inline double h_derivative(int i, double t)
{
    detail::require_order(i);
    detail::require(t > 0.0, "h derivatives require t > 0");
    if (i == 0)
        return h_kernel(t);
    return detail::kernel_derivative(TriangleKind::A, i, t, detail::alternating_sign(i), i + 1, i - 1);
}

/// (1/h)^{(i)}(t) for t > 0.
inline double h_reciprocal_derivative(int i, double t)
{
    detail::require_order(i);
    detail::require(t > 0.0, "1/h derivatives require t > 0");
    if (i == 0)
        return h_reciprocal(t);
    return detail::kernel_derivative(TriangleKind::B, i, t, -detail::alternating_sign(i), i, i);
}

/// H^{(i)}(t) for t > 0.
inline double H_kernel_derivative(int i, double t)
{
    detail::require_order(i);
    detail::require(t > 0.0, "H derivatives require t > 0");
    if (i == 0)
        return H_kernel(t);
    return detail::kernel_derivative(TriangleKind::C, i, t, detail::alternating_sign(i), i + 1, i);
}

inline double f_u(double u)
{
    detail::require(u > 0.0 && u < 1.0, "f(u) is evaluated on 0 < u < 1");
    const double r = std::sqrt(u);
    return 0.5 * (r + 1.0 / r);
}

/// f^{(i)}(u) = (-1)^i (2i-3)!! / 2^{i+1} u^{-(2i-1)/2} ((2i-1)/u - 1), 0 < u < 1.
inline double f_u_derivative(int i, double u)
{
    detail::require_order(i);
    detail::require(u > 0.0 && u < 1.0, "f(u) derivatives are evaluated on 0 < u < 1");
    if (i == 0)
        return f_u(u);
    const double df = double_factorial(2L * i - 3).convert_to<double>();
    const double magnitude = std::ldexp(df, -(i + 1)) * std::pow(u, -(i - 0.5)) * ((2.0 * i - 1.0) / u - 1.0);
    return detail::alternating_sign(i) * magnitude;
}

/// i-th derivative of G'_{x,y}(t): H^{(i)}((y + t)/(x - y)) / (2 (x - y)^i) with
/// x > y; the arguments are swapped when x < y since G is symmetric.
inline double G_shifted_derivative_order(int i, const PositivePair& pair, Shift shift)
{
    detail::require_order(i);
    detail::require(!pair.equal(), "G' derivative formula requires x != y");
    shifted(pair, shift); // domain check
    const double hi = pair.max();
    const double lo = pair.min();
    const double gap = hi - lo;
    const double arg = (lo + shift.t) / gap;
    return H_kernel_derivative(i, arg) / (2.0 * std::pow(gap, i));
}

} // namespace bernmeans

#endif // BERNMEANS_DERIVATIVES_HPP
