#ifndef BERNMEANS_REPRESENTATIONS_HPP
#define BERNMEANS_REPRESENTATIONS_HPP

// Integral representations of h(z), 1/h(z), H(z), the shifted harmonic and
// geometric means, and the auxiliary identities (Frullani, Gamma kernel,
// log-integral form of the exponential mean). Each evaluator returns a
// QuadratureResult whose value is the full right-hand side, so it can be
// compared directly with the closed form.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "bernmeans/errors.hpp"
#include "bernmeans/means.hpp"
#include "bernmeans/quadrature.hpp"

namespace bernmeans {

using Complex = std::complex<double>;

inline constexpr double default_single_tol = 1e-10;
inline constexpr double default_nested_tol = 1e-6;

/// Upper bound of rho on [0, infinity): 0 <= rho(s) <= integral of q over (0, 1/2) = 1.
inline constexpr double rho_max = 1.0;

// ---------------------------------------------------------------------------
// Complex closed forms, principal branch.

inline bool on_cut(Complex z, double left_of = 0.0)
{
    return z.imag() == 0.0 && z.real() <= left_of;
}

/// sqrt(1 + 1/z); the lower half-plane is obtained by reflection so that
/// h(conj z) = conj h(z) holds bit for bit.
inline Complex h_complex(Complex z)
{
    detail::require(!on_cut(z), "h(z) is analytic off (-inf, 0]");
    if (std::signbit(z.imag()))
        return std::conj(std::sqrt(1.0 + 1.0 / std::conj(z)));
    return std::sqrt(1.0 + 1.0 / z);
}

inline Complex h_reciprocal_complex(Complex z) { return 1.0 / h_complex(z); }

inline Complex H_complex(Complex z)
{
    const Complex h = h_complex(z);
    return h + 1.0 / h;
}

// ---------------------------------------------------------------------------
// q and rho

/// q(u) = sqrt(1/u - 1) - 1/sqrt(1/u - 1) = (1 - 2u) / sqrt(u (1 - u)).
inline double q(double u)
{
    detail::require(u > 0.0 && u < 1.0, "q(u) requires 0 < u < 1");
    return (1.0 - 2.0 * u) / std::sqrt(u * (1.0 - u));
}

/// The defining expression of q, kept for cross-checking the simplified form.
inline double q_defining_form(double u)
{
    detail::require(u > 0.0 && u < 1.0, "q(u) requires 0 < u < 1");
    const double r = std::sqrt(1.0 / u - 1.0);
    return r - 1.0 / r;
}

namespace detail {

// (1 - e^{-x}) / x, continuous at x = 0.
inline double one_minus_exp_over(double x)
{
    if (x == 0.0)
        return 1.0;
    return -std::expm1(-x) / x;
}

// 1 - e^{-w} for complex w without cancellation when |w| is small.
inline Complex one_minus_exp(Complex w)
{
    const double a = w.real();
    const double b = w.imag();
    const double decay = std::exp(-a);
    const double half_sin = std::sin(0.5 * b);
    return {-std::expm1(-a) + decay * 2.0 * half_sin * half_sin, decay * std::sin(b)};
}

inline void require_s(double s)
{
    require(std::isfinite(s) && s >= 0.0, "rho(s) requires finite s >= 0");
}

inline QuadratureOptions tolerance(double tol)
{
    require(tol > 0.0 && std::isfinite(tol), "tolerance must be positive");
    QuadratureOptions options;
    options.abs_tol = tol;
    return options;
}

inline const double sqrt_half = std::sqrt(0.5);

} // namespace detail

/// rho(s) = int_0^{1/2} q(u) [1 - e^{-(1-2u)s}] e^{-us} du, via u = v^2.
inline QuadratureResult<double> rho(double s, double tol = default_single_tol)
{
    detail::require_s(s);
    const auto options = detail::tolerance(tol);
    if (s == 0.0)
        return {};
    auto integrand = [s](double v) {
        const double u = v * v;
        const double w = 1.0 - 2.0 * u;
        return 2.0 * w / std::sqrt(1.0 - u) * -std::expm1(-w * s) * std::exp(-u * s);
    };
    return require_converged(integrate(integrand, 0.0, detail::sqrt_half, options), "rho");
}

/// The symmetric form int_0^{1/2} q(1/2 - u) (e^{us} - e^{-us}) e^{-s/2} du,
/// via 1/2 - u = v^2.
inline QuadratureResult<double> rho_second_form(double s, double tol = default_single_tol)
{
    detail::require_s(s);
    const auto options = detail::tolerance(tol);
    if (s == 0.0)
        return {};
    auto integrand = [s](double v) {
        const double v2 = v * v;
        const double weight = 2.0 * (1.0 - 2.0 * v2) / std::sqrt(1.0 - v2);
        // (e^{us} - e^{-us}) e^{-s/2} with u = 1/2 - v^2
        return weight * (std::exp(-v2 * s) - std::exp(-(1.0 - v2) * s));
    };
    return require_converged(integrate(integrand, 0.0, detail::sqrt_half, options), "rho (second form)");
}

/// rho(s) / s, finite at s = 0 where it equals pi/4.
inline QuadratureResult<double> rho_over_s(double s, double tol = default_single_tol)
{
    detail::require_s(s);
    const auto options = detail::tolerance(tol);
    auto integrand = [s](double v) {
        const double u = v * v;
        const double w = 1.0 - 2.0 * u;
        return 2.0 * w * w / std::sqrt(1.0 - u) * detail::one_minus_exp_over(w * s) * std::exp(-u * s);
    };
    return require_converged(integrate(integrand, 0.0, detail::sqrt_half, options), "rho(s)/s");
}

// ---------------------------------------------------------------------------
// h, 1/h and H

/// Integrand of the h representation in the original variable u:
/// sqrt(1/u - 1) / (u + z).
inline double h_rep_integrand(double u, double z)
{
    detail::require(u > 0.0 && u < 1.0, "the representing integrand lives on 0 < u < 1");
    return std::sqrt(1.0 / u - 1.0) / (u + z);
}

namespace detail {

template <class Z>
QuadratureResult<Z> h_rep_impl(Z z, double tol, bool reciprocal)
{
    require(!on_cut(Complex(z)), "z must lie off the cut (-inf, 0]");
    const auto options = tolerance(tol);
    // h:   u = sin^2(theta)  gives  2 cos^2(theta) / (sin^2(theta) + z)
    // 1/h: u = cos^2(theta)  gives  2 cos^2(theta) / (cos^2(theta) + z)
    auto integrand = [z, reciprocal](double theta) -> Z {
        const double c = std::cos(theta);
        const double s = std::sin(theta);
        const double c2 = c * c;
        return (2.0 * c2) / ((reciprocal ? c2 : s * s) + z);
    };
    auto result = require_converged(integrate(integrand, 0.0, 0.5 * std::numbers::pi, options),
                                     reciprocal ? "1/h representation" : "h representation");
    const double sign = reciprocal ? -1.0 : 1.0;
    result.value = Z(1.0) + sign * result.value / std::numbers::pi;
    result.error_estimate /= std::numbers::pi;
    return result;
}

} // namespace detail

/// h(z) = 1 + (1/pi) int_0^1 sqrt(1/u - 1) du / (u + z), z off (-inf, 0].
inline QuadratureResult<Complex> h_rep(Complex z, double tol = default_single_tol)
{
    return detail::h_rep_impl<Complex>(z, tol, false);
}

inline QuadratureResult<double> h_rep(double z, double tol = default_single_tol)
{
    return detail::h_rep_impl<double>(z, tol, false);
}

/// 1/h(z) = 1 - (1/pi) int_0^1 [1/sqrt(1/u - 1)] du / (u + z), z off (-inf, 0].
inline QuadratureResult<Complex> h_reciprocal_rep(Complex z, double tol = default_single_tol)
{
    return detail::h_rep_impl<Complex>(z, tol, true);
}

inline QuadratureResult<double> h_reciprocal_rep(double z, double tol = default_single_tol)
{
    return detail::h_rep_impl<double>(z, tol, true);
}

namespace detail {

template <class Z>
QuadratureResult<Z> H_rep_impl(Z z, double tol)
{
    const double re = Complex(z).real();
    require(re > 0.0, "the Laplace form of H(z) is evaluated for Re z > 0");
    require(tol > 0.0 && std::isfinite(tol), "tolerance must be positive");
    // (1/pi) int_S^inf rho(s) e^{-zs} ds <= rho_max e^{-Re z S} / (pi Re z) <= tol/10
    const double S = std::max(1.0, std::log(10.0 * rho_max / (std::numbers::pi * re * tol)) / re);
    // error in rho contributes at most inner_tol / (pi Re z) after integration
    const double inner_tol = std::max(tol * std::numbers::pi * re / 4.0, 1e-15);

    auto integrand = [z, inner_tol](double s) -> Z {
        return rho(s, inner_tol).value * std::exp(-z * s);
    };
    QuadratureOptions options;
    options.abs_tol = 0.5 * tol * std::numbers::pi;
    auto result = require_converged(integrate(integrand, 0.0, S, options), "H representation");
    result.value = Z(2.0) + result.value / std::numbers::pi;
    result.error_estimate = result.error_estimate / std::numbers::pi +
                            rho_max * std::exp(-re * S) / (std::numbers::pi * re) +
                            inner_tol / (std::numbers::pi * re);
    return result;
}

} // namespace detail

/// H(z) = h(z) + 1/h(z) = 2 + (1/pi) int_0^inf rho(s) e^{-zs} ds, Re z > 0.
inline QuadratureResult<Complex> H_rep(Complex z, double tol = 1e-9)
{
    return detail::H_rep_impl<Complex>(z, tol);
}

inline QuadratureResult<double> H_rep(double z, double tol = 1e-9)
{
    return detail::H_rep_impl<double>(z, tol);
}

// ---------------------------------------------------------------------------
// Harmonic mean

/// int_0^inf (1 - e^{-tu}) e^{-cu} du = t / (c (c + t)).
inline double harmonic_kernel_closed_form(double c, double t) { return t / (c * (c + t)); }

/// H(x + t, y + t) = H(x, y) + t + ((x - y)^2 / 4) t / (c (c + t)), c = (x + y)/2.
inline double harmonic_rep_closed_form(const PositivePair& pair, Shift shift)
{
    detail::require(shift.t >= 0.0, "the harmonic representation is verified for t >= 0");
    const double c = 0.5 * (pair.x + pair.y);
    const double d = pair.x - pair.y;
    return harmonic(pair) + shift.t + 0.25 * d * d * harmonic_kernel_closed_form(c, shift.t);
}

/// H(x, y) + t + ((x - y)^2 / 4) int_0^inf (1 - e^{-tu}) e^{-(x+y)u/2} du, t >= 0.
inline QuadratureResult<double> harmonic_rep(const PositivePair& pair, Shift shift,
                                             double tol = default_single_tol)
{
    detail::require(shift.t >= 0.0, "the harmonic representation is verified for t >= 0");
    const double c = 0.5 * (pair.x + pair.y);
    const double d = pair.x - pair.y;
    const double weight = 0.25 * d * d;
    QuadratureResult<double> result;
    if (weight > 0.0 && shift.t > 0.0)
    {
        const double t = shift.t;
        auto integrand = [t, c](double u) { return -std::expm1(-t * u) * std::exp(-c * u); };
        const auto options = detail::tolerance(tol / weight);
        result = require_converged(integrate_to_infinity(integrand, 0.0, options, 1.0 / c), "harmonic representation");
    }
    else
    {
        detail::tolerance(tol);
    }
    result.value = harmonic(pair) + shift.t + weight * result.value;
    result.error_estimate *= weight;
    return result;
}

/// A(x, y) - (x - y)^2 / (2 (x + y)), the t -> infinity form of the representation.
inline double harmonic_from_arithmetic(const PositivePair& pair)
{
    const double d = pair.x - pair.y;
    return arithmetic(pair) - d * d / (2.0 * (pair.x + pair.y));
}

/// s + (y^2 / 4) int_0^inf (1 - e^{-su}) e^{-yu/2} du, which equals H(s, y + s).
inline QuadratureResult<double> harmonic_zero_limit(double s, double y, double tol = default_single_tol)
{
    detail::require(std::isfinite(s) && s > 0.0 && std::isfinite(y) && y > 0.0,
                    "harmonic_zero_limit requires s > 0 and y > 0");
    const double c = 0.5 * y;
    const double weight = 0.25 * y * y;
    auto integrand = [s, c](double u) { return -std::expm1(-s * u) * std::exp(-c * u); };
    auto result = require_converged(
        integrate_to_infinity(integrand, 0.0, detail::tolerance(tol / weight), 1.0 / c), "harmonic zero limit");
    result.value = s + weight * result.value;
    result.error_estimate *= weight;
    return result;
}

// ---------------------------------------------------------------------------
// Geometric mean

namespace detail {

struct GeometricSetup
{
    double delta; // x - y > 0
    double low;   // y = min(x, y)
    double G;
};

inline GeometricSetup geometric_setup(const PositivePair& pair)
{
    require(!pair.equal(), "the geometric representation requires x != y");
    return {pair.max() - pair.min(), pair.min(), geometric(pair)};
}

} // namespace detail

/// G(x + z, y + z) = G(x, y) + z + ((x - y) / (2 pi)) int_0^inf (rho((x - y)s)/s) e^{-ys} (1 - e^{-sz}) ds
/// for x > y (arguments are swapped otherwise) and Re z > -min(x, y).
inline QuadratureResult<Complex> geometric_rep(const PositivePair& pair, Complex z, double tol = default_nested_tol)
{
    const auto g = detail::geometric_setup(pair);
    detail::require(tol > 0.0 && std::isfinite(tol), "tolerance must be positive");
    detail::require(z.real() > -g.low, "the geometric representation is evaluated for Re z > -min(x, y)");
    if (z == Complex(0.0))
        return {Complex(g.G), 0.0, 0, 0, true};

    const double m = std::min(g.low, g.low + z.real());
    const double prefactor = g.delta / (2.0 * std::numbers::pi);
    // |integrand| <= delta (pi/4) (e^{-ys} + e^{-(y + Re z)s})
    const double tail_coeff = prefactor * g.delta * 0.25 * std::numbers::pi * (1.0 / g.low + 1.0 / (g.low + z.real()));
    const double S = std::max(1.0, std::log(std::max(10.0 * tail_coeff / tol, 2.0)) / m);
    const double inner_tol = std::max(tol * std::numbers::pi * m / (4.0 * g.delta * g.delta), 1e-14);

    auto integrand = [&g, z, inner_tol](double s) -> Complex {
        const double kernel = g.delta * rho_over_s(g.delta * s, inner_tol).value;
        return kernel * std::exp(-g.low * s) * detail::one_minus_exp(s * z);
    };
    QuadratureOptions options;
    options.abs_tol = 0.5 * tol / prefactor;
    auto result = require_converged(integrate(integrand, 0.0, S, options), "geometric representation");
    result.value = g.G + z + prefactor * result.value;
    result.error_estimate = prefactor * result.error_estimate + 0.1 * tol;
    return result;
}

inline QuadratureResult<double> geometric_rep(const PositivePair& pair, double z, double tol = default_nested_tol)
{
    const auto c = geometric_rep(pair, Complex(z), tol);
    return {c.value.real(), c.error_estimate, c.evaluations, c.subdivisions, c.converged};
}

/// ((x - y) / (2 pi)) int_0^inf (rho((x - y)s)/s) e^{-ys} ds, which equals A(x, y) - G(x, y).
inline QuadratureResult<double> ag_gap_rep(const PositivePair& pair, double tol = default_nested_tol)
{
    const auto g = detail::geometric_setup(pair);
    detail::require(tol > 0.0 && std::isfinite(tol), "tolerance must be positive");
    const double prefactor = g.delta / (2.0 * std::numbers::pi);
    const double tail_coeff = prefactor * g.delta * 0.25 * std::numbers::pi / g.low;
    const double S = std::max(1.0, std::log(std::max(10.0 * tail_coeff / tol, 2.0)) / g.low);
    const double inner_tol = std::max(tol * std::numbers::pi * g.low / (2.0 * g.delta * g.delta), 1e-14);

    auto integrand = [&g, inner_tol](double s) {
        return g.delta * rho_over_s(g.delta * s, inner_tol).value * std::exp(-g.low * s);
    };
    QuadratureOptions options;
    options.abs_tol = 0.5 * tol / prefactor;
    auto result = require_converged(integrate(integrand, 0.0, S, options), "A - G representation");
    result.value *= prefactor;
    result.error_estimate = prefactor * result.error_estimate + 0.1 * tol;
    return result;
}

// ---------------------------------------------------------------------------
// Auxiliary identities

/// int_0^inf (e^{-au} - e^{-bu}) / u du, which equals ln(b/a).
inline QuadratureResult<double> frullani_log(double a, double b, double tol = default_single_tol)
{
    detail::require(std::isfinite(a) && std::isfinite(b) && a > 0.0 && b > 0.0, "Frullani requires a, b > 0");
    const auto options = detail::tolerance(tol);
    if (a == b)
        return {};
    if (b < a)
    {
        auto r = frullani_log(b, a, tol);
        r.value = -r.value;
        return r;
    }
    const double d = b - a;
    auto integrand = [a, d](double u) {
        if (u == 0.0)
            return d;
        return std::exp(-a * u) * -std::expm1(-d * u) / u;
    };
    return require_converged(integrate_to_infinity(integrand, 0.0, options, 1.0 / a), "Frullani integral");
}

/// (1 / Gamma(w)) int_0^inf t^{w-1} e^{-zt} dt, which equals z^{-w}; evaluated
/// through t = v^{1/w}, which turns the integrand into e^{-z v^{1/w}} / w.
inline QuadratureResult<double> gamma_kernel_check(double z, double w, double tol = default_single_tol)
{
    detail::require(std::isfinite(z) && std::isfinite(w) && z > 0.0 && w > 0.0, "requires z > 0 and w > 0");
    const auto options = detail::tolerance(tol * std::tgamma(w));
    auto integrand = [z, w](double v) { return std::exp(-z * std::pow(v, 1.0 / w)) / w; };
    const double scale = std::pow(z, -w);
    auto result = require_converged(integrate_to_infinity(integrand, 0.0, options, scale), "Gamma kernel");
    const double gamma = std::tgamma(w);
    result.value /= gamma;
    result.error_estimate /= gamma;
    return result;
}

/// exp((1 / (y - x)) int_x^y ln u du), the log-integral form of I(x, y).
inline QuadratureResult<double> exponential_mean_rep(const PositivePair& pair, double tol = default_single_tol)
{
    const auto options = detail::tolerance(tol);
    if (pair.equal())
        return {pair.x, 0.0, 0, 0, true};
    auto integrand = [](double u) { return std::log(u); };
    auto result = require_converged(integrate(integrand, pair.x, pair.y, options), "exponential mean");
    const double gap = pair.y - pair.x;
    result.value = std::exp(result.value / gap);
    result.error_estimate = result.value * result.error_estimate / std::abs(gap);
    return result;
}

} // namespace bernmeans

#endif // BERNMEANS_REPRESENTATIONS_HPP
