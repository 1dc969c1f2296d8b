#ifndef BERNMEANS_MEANS_HPP
#define BERNMEANS_MEANS_HPP

// Two-variable means, their shifted versions M(x + t, y + t), and the
// closed-form first derivatives in t of the shifted harmonic and geometric
// means.

#include <algorithm>
#include <cmath>

#include "bernmeans/errors.hpp"

namespace bernmeans {

/// Two positive reals (x, y), the arguments of every mean.
struct PositivePair
{
    double x;
    double y;

    PositivePair(double x_, double y_) : x(x_), y(y_)
    {
        detail::require(std::isfinite(x) && std::isfinite(y) && x > 0.0 && y > 0.0,
                        "mean arguments must be finite and positive");
    }

    double min() const noexcept { return std::min(x, y); }
    double max() const noexcept { return std::max(x, y); }
    bool equal() const noexcept { return x == y; }
};

/// Offset applied to both arguments of a pair.
struct Shift
{
    double t = 0.0;

    Shift() = default;
    explicit Shift(double t_) : t(t_) {}
};

/// Parameters (r, s) of the extended mean value E(r, s; x, y).
struct StolarskyParams
{
    double r;
    double s;
};

/// Returns (x + t, y + t); throws unless t > -min(x, y).
inline PositivePair shifted(const PositivePair& pair, Shift shift)
{
    detail::require(std::isfinite(shift.t) && shift.t > -pair.min(),
                    "shift must satisfy t > -min(x, y)");
    return PositivePair(pair.x + shift.t, pair.y + shift.t);
}

inline double arithmetic(const PositivePair& p) { return 0.5 * p.x + 0.5 * p.y; }

inline double geometric(const PositivePair& p) { return std::sqrt(p.x) * std::sqrt(p.y); }

inline double harmonic(const PositivePair& p) { return 2.0 * p.x * p.y / (p.x + p.y); }

/// L(x, y) = (y - x) / (ln y - ln x), with L(x, x) = x.
inline double logarithmic(const PositivePair& p)
{
    if (p.equal())
        return p.x;
    const double d = (p.y - p.x) / p.x;
    return p.x * d / std::log1p(d);
}

/// Exponential (identric) mean I(x, y) = e^{-1} (x^x / y^y)^{1/(x - y)}, with I(x, x) = x.
inline double exponential_mean(const PositivePair& p)
{
    if (p.equal())
        return p.x;
    const double d = (p.y - p.x) / p.x;
    return p.x * std::exp((1.0 + d) * std::log1p(d) / d - 1.0);
}

/// Power mean M_r(x, y) = ((x^r + y^r) / 2)^{1/r}; M_0 = G.
inline double power_mean(const PositivePair& p, double r)
{
    if (r == 0.0 || p.equal())
        return r == 0.0 ? geometric(p) : p.x;
    const double w = r * std::log(p.y / p.x);
    // ln((1 + e^w) / 2), evaluated without overflow for large |w|
    const double log_half_sum = w > 0.0 ? w + std::log1p(std::exp(-w)) - std::log(2.0)
                                        : std::log1p(std::expm1(w) * 0.5);
    return p.x * std::exp(log_half_sum / r);
}

enum class StolarskyBranch
{
    equal_arguments, // x = y
    geometric,       // r = s = 0
    one_zero,        // exactly one of r, s is zero
    diagonal,        // r = s != 0
    generic,
};

namespace detail {

// ln |expm1(a l) / a| for a != 0, and ln |l| at a = 0.
inline double log_phi(double a, double l)
{
    if (a == 0.0)
        return std::log(std::abs(l));
    const double al = a * l;
    const double log_num = al > 30.0 ? al + std::log1p(-std::exp(-al))
                                     : std::log(std::abs(std::expm1(al)));
    return log_num - std::log(std::abs(a));
}

// (w / (1 - e^{-w}) - 1) / w, with its Bernoulli series near w = 0.
inline double diagonal_kernel(double w)
{
    if (std::abs(w) < 1e-2)
    {
        const double w2 = w * w;
        return 0.5 + w / 12.0 - w * w2 / 720.0 + w * w2 * w2 / 30240.0;
    }
    return (w / -std::expm1(-w) - 1.0) / w;
}

} // namespace detail

/// Selects which of the five defining formulas of E(r, s; x, y) applies.
/// Parameters within `threshold * (1 + |r| + |s|)` of a degenerate case are
/// routed to the limiting formula.
inline StolarskyBranch stolarsky_branch(const StolarskyParams& p, const PositivePair& pair,
                                        double threshold = 1e-8)
{
    if (pair.equal())
        return StolarskyBranch::equal_arguments;
    const double scale = threshold * (1.0 + std::abs(p.r) + std::abs(p.s));
    const bool r_zero = std::abs(p.r) < scale;
    const bool s_zero = std::abs(p.s) < scale;
    if (r_zero && s_zero)
        return StolarskyBranch::geometric;
    if (std::abs(p.r - p.s) < scale)
        return StolarskyBranch::diagonal;
    if (r_zero || s_zero)
        return StolarskyBranch::one_zero;
    return StolarskyBranch::generic;
}

/// Extended mean value E(r, s; x, y).
inline double stolarsky_mean(const StolarskyParams& p, const PositivePair& pair,
                             double threshold = 1e-8)
{
    detail::require(std::isfinite(p.r) && std::isfinite(p.s), "Stolarsky parameters must be finite");
    const double l = std::log(pair.y / pair.x);
    switch (stolarsky_branch(p, pair, threshold))
    {
    case StolarskyBranch::equal_arguments:
        return pair.x;
    case StolarskyBranch::geometric:
        return geometric(pair);
    case StolarskyBranch::diagonal:
    {
        // E(r, r; x, y) = I(x^r, y^r)^{1/r}
        const double r = 0.5 * (p.r + p.s);
        return pair.x * std::exp(l * detail::diagonal_kernel(r * l));
    }
    case StolarskyBranch::one_zero:
    {
        // E(r, 0; x, y) = L(x^r, y^r)^{1/r}
        const double r = std::abs(p.r) > std::abs(p.s) ? p.r : p.s;
        return pair.x * std::exp((detail::log_phi(r, l) - std::log(std::abs(l))) / r);
    }
    case StolarskyBranch::generic:
        break;
    }
    return pair.x * std::exp((detail::log_phi(p.s, l) - detail::log_phi(p.r, l)) / (p.s - p.r));
}

inline double arithmetic_shifted(const PositivePair& pair, Shift shift)
{
    return arithmetic(shifted(pair, shift));
}

/// H(x + t, y + t) = 2 (x + t)(y + t) / (x + y + 2t).
inline double harmonic_shifted(const PositivePair& pair, Shift shift)
{
    const PositivePair q = shifted(pair, shift);
    return 2.0 * q.x * q.y / (q.x + q.y);
}

/// G(x + t, y + t) = sqrt((x + t)(y + t)).
inline double geometric_shifted(const PositivePair& pair, Shift shift)
{
    return geometric(shifted(pair, shift));
}

inline double logarithmic_shifted(const PositivePair& pair, Shift shift)
{
    return logarithmic(shifted(pair, shift));
}

inline double exponential_shifted(const PositivePair& pair, Shift shift)
{
    return exponential_mean(shifted(pair, shift));
}

/// d/dt H(x + t, y + t) = 1 + (x - y)^2 / (x + y + 2t)^2.
inline double harmonic_derivative(const PositivePair& pair, Shift shift)
{
    const PositivePair q = shifted(pair, shift);
    const double ratio = (pair.x - pair.y) / (q.x + q.y);
    return 1.0 + ratio * ratio;
}

/// d/dt G(x + t, y + t) = (sqrt(u) + 1/sqrt(u)) / 2 with u = (x + t)/(y + t).
inline double geometric_derivative(const PositivePair& pair, Shift shift)
{
    const PositivePair q = shifted(pair, shift);
    const double root_u = std::sqrt(q.x / q.y);
    return 0.5 * (root_u + 1.0 / root_u);
}

} // namespace bernmeans

#endif // BERNMEANS_MEANS_HPP
