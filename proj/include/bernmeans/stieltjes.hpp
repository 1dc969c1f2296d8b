#ifndef BERNMEANS_STIELTJES_HPP
#define BERNMEANS_STIELTJES_HPP

// Boundary values Im f(-t + i eps) on the cut, their eps -> 0+ limits, and
// numerical Stieltjes-Perron inversion
//   density(u) = -(1/pi) lim_{eps -> 0+} Im f(-u + i eps)
// for functions of the form f(x) = a/x + b + int density(u) / (u + x) du.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bernmeans/errors.hpp"
#include "bernmeans/quadrature.hpp"
#include "bernmeans/representations.hpp"

namespace bernmeans {

/// Im h(-t + i eps) by principal-branch complex arithmetic.
inline double boundary_imag_h(double t, double eps)
{
    detail::require(t > 0.0 && eps > 0.0, "boundary values need t > 0 and eps > 0");
    return h_complex(Complex(-t, eps)).imag();
}

/// Im [1/h(-t + i eps)] by principal-branch complex arithmetic.
inline double boundary_imag_h_reciprocal(double t, double eps)
{
    detail::require(t > 0.0 && eps > 0.0, "boundary values need t > 0 and eps > 0");
    return h_reciprocal_complex(Complex(-t, eps)).imag();
}

namespace detail {

// Argument of 1 + 1/(-t + i eps) = a - i b, b > 0, by the sign of
// a = (t^2 + eps^2 - t) / (t^2 + eps^2); its modulus is p(t, eps).
struct BoundaryPolar
{
    double p;
    double angle;
};

inline BoundaryPolar boundary_polar(double t, double eps)
{
    require(t > 0.0 && eps > 0.0, "boundary values need t > 0 and eps > 0");
    const double norm = t * t + eps * eps;
    const double a = (norm - t) / norm;
    const double b = eps / norm;
    const double p = std::sqrt(a * a + b * b);
    double angle;
    if (a > 0.0)
        angle = -std::atan(b / a);
    else if (a < 0.0)
        angle = std::atan(b / -a) - std::numbers::pi;
    else
        angle = -0.5 * std::numbers::pi;
    return {p, angle};
}

} // namespace detail

/// Im h(-t + i eps) from the three-case polar formula sqrt(p) sin(angle / 2).
inline double boundary_imag_h_cases(double t, double eps)
{
    const auto polar = detail::boundary_polar(t, eps);
    return std::sqrt(polar.p) * std::sin(0.5 * polar.angle);
}

/// Im [1/h(-t + i eps)] from the three-case polar formula -sin(angle / 2) / sqrt(p).
inline double boundary_imag_h_reciprocal_cases(double t, double eps)
{
    const auto polar = detail::boundary_polar(t, eps);
    return -std::sin(0.5 * polar.angle) / std::sqrt(polar.p);
}

/// lim_{eps -> 0+} Im h(-t + i eps): -sqrt(1/t - 1) on (0, 1) and 0 for t >= 1.
inline double boundary_limit_h(double t)
{
    detail::require(t > 0.0, "boundary limits need t > 0");
    return t < 1.0 ? -std::sqrt(1.0 / t - 1.0) : 0.0;
}

/// lim_{eps -> 0+} Im [1/h(-t + i eps)]: sqrt(t / (1 - t)) on (0, 1), +inf at 1, 0 beyond.
inline double boundary_limit_h_reciprocal(double t)
{
    detail::require(t > 0.0, "boundary limits need t > 0");
    if (t == 1.0)
        return std::numeric_limits<double>::infinity();
    return t < 1.0 ? std::sqrt(t / (1.0 - t)) : 0.0;
}

// ---------------------------------------------------------------------------
// eps -> 0+ extrapolation

struct LadderLimit
{
    double value;
    bool blow_up;
};

/// Two-point Richardson extrapolation on the last two ladder entries, linear
/// in eps. Values whose magnitude grows by more than 2x at every step down the
/// ladder are reported as a blow-up, with an infinite value of their sign.
inline LadderLimit extrapolate_ladder(const std::vector<double>& eps, const std::vector<double>& values)
{
    if (eps.size() != values.size() || eps.size() < 2)
        throw std::invalid_argument("extrapolation needs at least two ladder samples");
    bool growing = true;
    for (std::size_t k = 1; k < values.size(); ++k)
        growing = growing && std::abs(values[k]) > 2.0 * std::abs(values[k - 1]);
    if (growing)
        return {std::copysign(std::numeric_limits<double>::infinity(), values.back()), true};
    const std::size_t n = eps.size();
    const double e1 = eps[n - 2], e2 = eps[n - 1];
    const double g1 = values[n - 2], g2 = values[n - 1];
    return {(e1 * g2 - e2 * g1) / (e1 - e2), false};
}

inline void require_ladder(const std::vector<double>& ladder)
{
    detail::require(ladder.size() >= 2, "the eps ladder needs at least two entries");
    for (std::size_t k = 0; k < ladder.size(); ++k)
    {
        detail::require(ladder[k] > 0.0 && std::isfinite(ladder[k]), "eps ladder entries must be positive");
        detail::require(k == 0 || ladder[k] < ladder[k - 1], "eps ladder must be strictly decreasing");
    }
}

inline std::vector<double> default_eps_ladder() { return {1e-4, 1e-5, 1e-6}; }

/// Sampled boundary values on a t-grid and their extrapolated limits.
struct BoundaryTrace
{
    std::vector<double> t_grid;
    std::vector<double> epsilon_ladder;
    std::vector<std::vector<double>> samples; // samples[j][k] at t_grid[j], epsilon_ladder[k]
    std::vector<double> extrapolated;
    std::vector<bool> blow_up;
};

/// Samples `imag_boundary(t, eps)` for every t and eps and extrapolates eps -> 0+.
inline BoundaryTrace boundary_trace(const std::function<double(double, double)>& imag_boundary,
                                    std::vector<double> t_grid, std::vector<double> ladder)
{
    require_ladder(ladder);
    BoundaryTrace trace;
    trace.t_grid = std::move(t_grid);
    trace.epsilon_ladder = std::move(ladder);
    for (double t : trace.t_grid)
    {
        detail::require(t > 0.0, "t-grid entries must be positive");
        std::vector<double> row;
        row.reserve(trace.epsilon_ladder.size());
        for (double eps : trace.epsilon_ladder)
            row.push_back(imag_boundary(t, eps));
        const LadderLimit limit = extrapolate_ladder(trace.epsilon_ladder, row);
        trace.samples.push_back(std::move(row));
        trace.extrapolated.push_back(limit.value);
        trace.blow_up.push_back(limit.blow_up);
    }
    return trace;
}

// ---------------------------------------------------------------------------
// Stieltjes-Perron inversion

using ComplexFunction = std::function<Complex(Complex)>;

/// Representing data recovered from boundary values.
struct RecoveredDensity
{
    std::vector<double> u_grid;
    std::vector<double> density;
    std::vector<bool> blow_up;
    double a_scalar = 0.0; // lim_{x -> 0+} x f(x)
    double b_scalar = 0.0; // lim_{x -> inf} f(x)
    bool atom_suspected = false;
};

namespace detail {

// The ladder is shrunk near the origin so that eps stays small relative to u.
inline double local_scale(double u) { return std::min(1.0, u); }

} // namespace detail

/// -(1/pi) lim Im f(-u + i eps) at a single point, with the ladder multiplied
/// by `scale` (min(1, u) when not given).
inline LadderLimit density_at(const ComplexFunction& f, double u, const std::vector<double>& ladder,
                              std::optional<double> ladder_scale = std::nullopt)
{
    detail::require(u > 0.0 && std::isfinite(u), "inversion points must be positive");
    const double scale = ladder_scale.value_or(detail::local_scale(u));
    detail::require(scale > 0.0, "ladder scale must be positive");
    std::vector<double> eps(ladder.size());
    std::vector<double> values(ladder.size());
    for (std::size_t k = 0; k < ladder.size(); ++k)
    {
        eps[k] = ladder[k] * scale;
        values[k] = f(Complex(-u, eps[k])).imag();
    }
    LadderLimit limit = extrapolate_ladder(eps, values);
    limit.value = -limit.value / std::numbers::pi;
    return limit;
}

/// lim_{x -> 0+} x f(x), linear extrapolation from x in {1e-14, 1e-16}.
inline double stieltjes_a_scalar(const ComplexFunction& f)
{
    const double x1 = 1e-14, x2 = 1e-16;
    const double g1 = x1 * f(Complex(x1, 0.0)).real();
    const double g2 = x2 * f(Complex(x2, 0.0)).real();
    return (x1 * g2 - x2 * g1) / (x1 - x2);
}

/// lim_{x -> inf} f(x), linear extrapolation in 1/x from x in {1e14, 1e16}.
inline double stieltjes_b_scalar(const ComplexFunction& f)
{
    const double e1 = 1e-14, e2 = 1e-16;
    const double g1 = f(Complex(1.0 / e1, 0.0)).real();
    const double g2 = f(Complex(1.0 / e2, 0.0)).real();
    return (e1 * g2 - e2 * g1) / (e1 - e2);
}

/// Recovers the representing density of f on `u_grid`. Points where the
/// boundary values diverge are flagged and mark the measure as having an atom;
/// no density value is fabricated there (it is reported as +inf or -inf).
inline RecoveredDensity stieltjes_invert(const ComplexFunction& f, std::vector<double> u_grid,
                                         const std::vector<double>& ladder = default_eps_ladder())
{
    require_ladder(ladder);
    RecoveredDensity out;
    out.u_grid = std::move(u_grid);
    for (double u : out.u_grid)
    {
        const LadderLimit limit = density_at(f, u, ladder);
        out.density.push_back(limit.value);
        out.blow_up.push_back(limit.blow_up);
        out.atom_suspected = out.atom_suspected || limit.blow_up;
    }
    out.a_scalar = stieltjes_a_scalar(f);
    out.b_scalar = stieltjes_b_scalar(f);
    return out;
}

/// a/x + b + int_0^{support_end} density(u) / (u + x) du with the density
/// recovered from f at the quadrature nodes. The substitution
/// u = support_end sin^2(theta) absorbs inverse square-root behaviour at both
/// ends, and the ladder is scaled by the distance to the nearer end.
inline QuadratureResult<double> reconstruct_from_density(const ComplexFunction& f, double x, double a, double b,
                                                         const std::vector<double>& ladder = default_eps_ladder(),
                                                         double support_end = 1.0, double tol = 1e-9)
{
    detail::require(x > 0.0, "reconstruction needs x > 0");
    require_ladder(ladder);
    auto integrand = [&](double theta) {
        const double s = std::sin(theta);
        const double c = std::cos(theta);
        const double u = support_end * s * s;
        if (u <= 0.0 || u >= support_end)
            return 0.0;
        const double jacobian = 2.0 * support_end * s * c;
        const LadderLimit d = density_at(f, u, ladder, std::min({1.0, u, support_end - u}));
        if (d.blow_up)
            throw ConvergenceError("density diverges inside the reconstruction interval", 0.0, 0);
        return d.value * jacobian / (u + x);
    };
    QuadratureOptions options;
    options.abs_tol = tol;
    auto result = require_converged(integrate(integrand, 0.0, 0.5 * std::numbers::pi, options),
                                    "Stieltjes reconstruction");
    result.value += b + a / x;
    return result;
}

// ---------------------------------------------------------------------------
// Functions shipped for inversion

enum class ShippedFunction
{
    h,                    // sqrt(1 + 1/z)
    h_reciprocal,         // 1/h(z)
    one_minus_reciprocal, // 1 - 1/h(z)
    H_kernel,             // h(z) + 1/h(z)
    simple_pole,          // 1/(1 + z), a point mass at u = 1
};

inline ShippedFunction parse_shipped_function(std::string_view name)
{
    if (name == "h")
        return ShippedFunction::h;
    if (name == "hrecip")
        return ShippedFunction::h_reciprocal;
    if (name == "one_minus_hrecip")
        return ShippedFunction::one_minus_reciprocal;
    if (name == "Hkernel")
        return ShippedFunction::H_kernel;
    if (name == "pole")
        return ShippedFunction::simple_pole;
    throw DomainError("unknown function '" + std::string(name) + "'");
}

inline const char* to_string(ShippedFunction fn)
{
    switch (fn)
    {
    case ShippedFunction::h: return "h";
    case ShippedFunction::h_reciprocal: return "hrecip";
    case ShippedFunction::one_minus_reciprocal: return "one_minus_hrecip";
    case ShippedFunction::H_kernel: return "Hkernel";
    case ShippedFunction::simple_pole: return "pole";
    }
    return "?";
}

inline ComplexFunction shipped_function(ShippedFunction fn)
{
    switch (fn)
    {
    case ShippedFunction::h: return [](Complex z) { return h_complex(z); };
    case ShippedFunction::h_reciprocal: return [](Complex z) { return h_reciprocal_complex(z); };
    case ShippedFunction::one_minus_reciprocal: return [](Complex z) { return 1.0 - h_reciprocal_complex(z); };
    case ShippedFunction::H_kernel: return [](Complex z) { return H_complex(z); };
    case ShippedFunction::simple_pole: return [](Complex z) { return 1.0 / (1.0 + z); };
    }
    throw std::logic_error("unknown shipped function");
}

/// Exact density -(1/pi) lim Im f(-u + i0) of a shipped function; NaN where the
/// measure has an atom.
inline double analytic_density(ShippedFunction fn, double u)
{
    detail::require(u > 0.0, "densities are defined for u > 0");
    const double inv_pi = 1.0 / std::numbers::pi;
    const bool inside = u < 1.0;
    switch (fn)
    {
    case ShippedFunction::h: return inside ? inv_pi * std::sqrt(1.0 / u - 1.0) : 0.0;
    case ShippedFunction::h_reciprocal:
        if (u == 1.0)
            return -std::numeric_limits<double>::infinity();
        return inside ? -inv_pi * std::sqrt(u / (1.0 - u)) : 0.0;
    case ShippedFunction::one_minus_reciprocal:
        if (u == 1.0)
            return std::numeric_limits<double>::infinity();
        return inside ? inv_pi * std::sqrt(u / (1.0 - u)) : 0.0;
    case ShippedFunction::H_kernel:
        if (u == 1.0)
            return -std::numeric_limits<double>::infinity();
        return inside ? inv_pi * (std::sqrt(1.0 / u - 1.0) - std::sqrt(u / (1.0 - u))) : 0.0;
    case ShippedFunction::simple_pole: return u == 1.0 ? std::numeric_limits<double>::quiet_NaN() : 0.0;
    }
    return std::numeric_limits<double>::quiet_NaN();
}

} // namespace bernmeans

#endif // BERNMEANS_STIELTJES_HPP
