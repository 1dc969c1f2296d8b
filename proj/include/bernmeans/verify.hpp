#ifndef BERNMEANS_VERIFY_HPP
#define BERNMEANS_VERIFY_HPP

// Numerical predicates for completely monotonic (CM), Bernstein,
// logarithmically completely monotonic (LCM) and Stieltjes functions.
//
// A function is checked order by order on a grid. Where closed-form
// derivatives exist (h, 1/h, H, f(u), G' and hence G) signs are decided
// exactly; elsewhere Richardson finite differences up to order 6 are used
// and a verdict can be "inconclusive" at the last order.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "bernmeans/derivatives.hpp"
#include "bernmeans/errors.hpp"
#include "bernmeans/finite_difference.hpp"
#include "bernmeans/means.hpp"
#include "bernmeans/representations.hpp"
#include "bernmeans/stieltjes.hpp"

namespace bernmeans {

/// Open interval (lower, upper); `scale` is the natural length used for grids.
struct Domain
{
    double lower = 0.0;
    double upper = std::numeric_limits<double>::infinity();
    double scale = 1.0;

    bool contains(double t) const { return t > lower && t < upper; }
};

using RealFunction = std::function<double(double)>;
using DerivativeFunction = std::function<double(int, double)>;

struct Target
{
    std::string name;
    RealFunction f;
    Domain domain;
    DerivativeFunction exact; // n-th derivative in closed form, if available
};

enum class Verdict
{
    pass,
    fail,
    inconclusive,
};

inline const char* to_string(Verdict v)
{
    switch (v)
    {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

inline Verdict combine(Verdict a, Verdict b)
{
    if (a == Verdict::fail || b == Verdict::fail)
        return Verdict::fail;
    if (a == Verdict::inconclusive || b == Verdict::inconclusive)
        return Verdict::inconclusive;
    return Verdict::pass;
}

enum class Method
{
    exact_coefficients,
    finite_difference,
};

inline const char* to_string(Method m)
{
    return m == Method::exact_coefficients ? "exact-coefficients" : "finite-difference";
}

struct OrderVerdict
{
    int order = 0;
    Verdict verdict = Verdict::pass;
    double worst_margin = std::numeric_limits<double>::infinity(); // min of the signed quantity
    double worst_point = std::numeric_limits<double>::quiet_NaN();
    double tolerance_at_worst = 0.0;
    std::vector<double> failures; // grid points with a fail
};

struct MonotonicityReport
{
    std::string target;
    std::string property; // "CM", "Bernstein" or "LCM"
    int max_order = 0;
    int requested_order = 0;
    Method method = Method::finite_difference;
    std::vector<double> grid;
    std::vector<OrderVerdict> verdicts;

    Verdict overall() const
    {
        Verdict v = Verdict::pass;
        for (const auto& o : verdicts)
            v = combine(v, o.verdict);
        return v;
    }
    bool has_failure() const { return overall() == Verdict::fail; }
};

// ---------------------------------------------------------------------------
// Grids

/// Log-spaced points at `per_decade` per decade: lower + d with d from
/// 1e-3 scale to 1e3 scale on half-lines, and mirrored from both ends of a
/// bounded interval up to its midpoint.
inline std::vector<double> standard_grid(const Domain& domain, int per_decade = 25)
{
    detail::require(per_decade > 0 && domain.scale > 0.0, "grid parameters must be positive");
    const double first = 1e-3 * domain.scale;
    std::vector<double> grid;
    if (std::isinf(domain.upper))
    {
        const double last = 1e3 * domain.scale;
        const int steps = static_cast<int>(std::lround(std::log10(last / first) * per_decade));
        for (int k = 0; k <= steps; ++k)
            grid.push_back(domain.lower + first * std::pow(10.0, static_cast<double>(k) / per_decade));
        return grid;
    }
    const double half = 0.5 * (domain.upper - domain.lower);
    detail::require(half > first, "interval too short for the standard grid");
    const int steps = static_cast<int>(std::floor(std::log10(half / first) * per_decade));
    for (int k = 0; k <= steps; ++k)
    {
        const double d = first * std::pow(10.0, static_cast<double>(k) / per_decade);
        grid.push_back(domain.lower + d);
        grid.push_back(domain.upper - d);
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

inline std::vector<double> standard_grid(const Target& target) { return standard_grid(target.domain); }

// ---------------------------------------------------------------------------
// Targets

namespace detail {

inline double distance_to_boundary(const Domain& d, double t)
{
    return std::min(t - d.lower, d.upper - t);
}

inline PositivePair parse_pair(std::string_view args)
{
    const auto comma = args.find(',');
    require(comma != std::string_view::npos, "expected parameters of the form x,y");
    try
    {
        const double x = std::stod(std::string(args.substr(0, comma)));
        const double y = std::stod(std::string(args.substr(comma + 1)));
        return PositivePair(x, y);
    }
    catch (const std::logic_error& e)
    {
        if (dynamic_cast<const DomainError*>(&e))
            throw;
        throw DomainError("could not parse the pair '" + std::string(args) + "'");
    }
}

inline Domain shift_domain(const PositivePair& p) { return {-p.min(), std::numeric_limits<double>::infinity(), p.min()}; }

inline std::string pair_name(std::string_view base, const PositivePair& p)
{
    std::ostringstream os;
    os.precision(17);
    os << base << ':' << p.x << ',' << p.y;
    return os.str();
}

} // namespace detail

inline Target target_h()
{
    return {"h", [](double t) { return h_kernel(t); }, {}, [](int n, double t) { return h_derivative(n, t); }};
}

inline Target target_h_reciprocal()
{
    return {"hrecip", [](double t) { return h_reciprocal(t); }, {},
            [](int n, double t) { return h_reciprocal_derivative(n, t); }};
}

inline Target target_one_minus_h_reciprocal()
{
    return {"one_minus_hrecip", [](double t) { return 1.0 - h_reciprocal(t); }, {},
            [](int n, double t) { return n == 0 ? 1.0 - h_reciprocal(t) : -h_reciprocal_derivative(n, t); }};
}

inline Target target_H_kernel()
{
    return {"Hkernel", [](double t) { return H_kernel(t); }, {},
            [](int n, double t) { return H_kernel_derivative(n, t); }};
}

inline Target target_f_u()
{
    return {"fu", [](double u) { return f_u(u); }, {0.0, 1.0, 1.0},
            [](int n, double u) { return f_u_derivative(n, u); }};
}

inline Target target_identity() { return {"identity", [](double t) { return t; }, {}, {}}; }

inline Target target_constant() { return {"constant", [](double) { return 1.0; }, {}, {}}; }

inline Target target_harmonic(const PositivePair& p)
{
    return {detail::pair_name("harmonic", p), [p](double t) { return harmonic_shifted(p, Shift(t)); },
            detail::shift_domain(p), {}};
}

inline Target target_arithmetic(const PositivePair& p)
{
    return {detail::pair_name("arithmetic", p), [p](double t) { return arithmetic_shifted(p, Shift(t)); },
            detail::shift_domain(p), {}};
}

/// G_{x,y}(t); its derivatives of order n >= 1 are those of G', known exactly.
inline Target target_geometric(const PositivePair& p)
{
    DerivativeFunction exact;
    if (!p.equal())
        exact = [p](int n, double t) {
            return n == 0 ? geometric_shifted(p, Shift(t)) : G_shifted_derivative_order(n - 1, p, Shift(t));
        };
    return {detail::pair_name("geometric", p), [p](double t) { return geometric_shifted(p, Shift(t)); },
            detail::shift_domain(p), exact};
}

inline Target target_G_prime(const PositivePair& p)
{
    detail::require(!p.equal(), "G' target requires x != y");
    return {detail::pair_name("Gprime", p), [p](double t) { return geometric_derivative(p, Shift(t)); },
            detail::shift_domain(p), [p](int n, double t) { return G_shifted_derivative_order(n, p, Shift(t)); }};
}

inline Target target_logarithmic(const PositivePair& p)
{
    return {detail::pair_name("logmean", p), [p](double t) { return logarithmic_shifted(p, Shift(t)); },
            detail::shift_domain(p), {}};
}

inline Target target_exponential(const PositivePair& p)
{
    return {detail::pair_name("expmean", p), [p](double t) { return exponential_shifted(p, Shift(t)); },
            detail::shift_domain(p), {}};
}

/// 1/f for a positive target, evaluated by finite differences.
inline Target reciprocal_of(const Target& base)
{
    RealFunction f = base.f;
    return {"recip_" + base.name, [f](double t) { return 1.0 / f(t); }, base.domain, {}};
}

/// Parses h | hrecip | one_minus_hrecip | Hkernel | fu | identity | constant |
/// harmonic:x,y | arithmetic:x,y | geometric:x,y | Gprime:x,y | logmean:x,y |
/// expmean:x,y, optionally prefixed by "recip_".
inline Target make_target(std::string_view spec)
{
    if (spec.starts_with("recip_"))
        return reciprocal_of(make_target(spec.substr(6)));
    if (spec == "h")
        return target_h();
    if (spec == "hrecip")
        return target_h_reciprocal();
    if (spec == "one_minus_hrecip")
        return target_one_minus_h_reciprocal();
    if (spec == "Hkernel")
        return target_H_kernel();
    if (spec == "fu")
        return target_f_u();
    if (spec == "identity")
        return target_identity();
    if (spec == "constant")
        return target_constant();
    const auto colon = spec.find(':');
    if (colon != std::string_view::npos)
    {
        const auto kind = spec.substr(0, colon);
        const PositivePair p = detail::parse_pair(spec.substr(colon + 1));
        if (kind == "harmonic")
            return target_harmonic(p);
        if (kind == "arithmetic")
            return target_arithmetic(p);
        if (kind == "geometric")
            return target_geometric(p);
        if (kind == "Gprime")
            return target_G_prime(p);
        if (kind == "logmean")
            return target_logarithmic(p);
        if (kind == "expmean")
            return target_exponential(p);
    }
    throw DomainError("unknown target '" + std::string(spec) + "'");
}

// ---------------------------------------------------------------------------
// Sign checks

namespace detail {

/// Checks sign(n) * f^{(n)} >= 0 for n = first_order .. max_order, where
/// f^{(n)} comes from `derivative` (exact) or finite differences of `g`.
struct SignCheck
{
    std::string target;
    std::string property;
    RealFunction g;              // function differentiated by finite differences
    DerivativeFunction exact;    // used instead when set
    Domain domain;
    double absolute_floor = 0.0; // rounding level independent of |g|
    std::function<double(int)> sign;
};

inline MonotonicityReport run_sign_check(const SignCheck& check, int first_order, int max_order,
                                         const std::vector<double>& grid)
{
    require(max_order >= first_order, "max_order is below the first checked order");
    MonotonicityReport report;
    report.target = check.target;
    report.property = check.property;
    report.requested_order = max_order;
    report.method = check.exact ? Method::exact_coefficients : Method::finite_difference;
    report.max_order = check.exact ? max_order : std::min(max_order, finite_difference_max_order);
    report.grid = grid;
    for (double t : grid)
        require(check.domain.contains(t), "grid point outside the target's domain");

    for (int n = first_order; n <= report.max_order; ++n)
    {
        OrderVerdict ov;
        ov.order = n;
        for (double t : grid)
        {
            double margin;
            double tol = 0.0;
            Verdict v;
            if (check.exact)
            {
                margin = check.sign(n) * check.exact(n, t);
                v = margin >= 0.0 ? Verdict::pass : Verdict::fail;
            }
            else
            {
                const double d = distance_to_boundary(check.domain, t);
                const FiniteDifference fd = central_derivative(check.g, n, t, d, check.absolute_floor);
                margin = check.sign(n) * fd.value;
                tol = 1e-4 * std::abs(check.g(t)) + fd.noise;
                if (n == finite_difference_max_order)
                    v = margin >= 0.0 ? Verdict::pass : (margin >= -tol ? Verdict::inconclusive : Verdict::fail);
                else
                    v = margin >= -tol ? Verdict::pass : Verdict::fail;
            }
            if (margin < ov.worst_margin)
            {
                ov.worst_margin = margin;
                ov.worst_point = t;
                ov.tolerance_at_worst = tol;
            }
            if (v == Verdict::fail)
                ov.failures.push_back(t);
            ov.verdict = combine(ov.verdict, v);
        }
        report.verdicts.push_back(std::move(ov));
    }
    return report;
}

inline double alternating(int n) { return n % 2 == 0 ? 1.0 : -1.0; }

} // namespace detail

/// (-1)^n f^{(n)} >= 0 for n = 0 .. max_order.
inline MonotonicityReport check_completely_monotonic(const Target& target, int max_order,
                                                     const std::vector<double>& grid)
{
    detail::SignCheck check{target.name, "CM", target.f, target.exact, target.domain, 0.0,
                            [](int n) { return detail::alternating(n); }};
    return detail::run_sign_check(check, 0, max_order, grid);
}

inline MonotonicityReport check_completely_monotonic(const Target& target, int max_order)
{
    return check_completely_monotonic(target, max_order, standard_grid(target));
}

/// f >= 0 and f' completely monotonic: (-1)^{n-1} f^{(n)} >= 0 for n = 1 .. max_order.
/// Order 0 in the report is the nonnegativity of f itself.
inline MonotonicityReport check_bernstein(const Target& target, int max_order, const std::vector<double>& grid)
{
    detail::SignCheck check{target.name, "Bernstein", target.f, target.exact, target.domain, 0.0,
                            [](int n) { return n == 0 ? 1.0 : -detail::alternating(n); }};
    return detail::run_sign_check(check, 0, max_order, grid);
}

inline MonotonicityReport check_bernstein(const Target& target, int max_order)
{
    return check_bernstein(target, max_order, standard_grid(target));
}

/// f > 0 and (-1)^k [ln f]^{(k)} >= 0 for k = 1 .. max_order, by finite differences.
/// Order 0 in the report is the positivity of f.
inline MonotonicityReport check_log_completely_monotonic(const Target& target, int max_order,
                                                         const std::vector<double>& grid)
{
    RealFunction f = target.f;
    detail::SignCheck check{target.name, "LCM", [f](double t) { return std::log(f(t)); }, {}, target.domain, 1.0,
                            [](int n) { return detail::alternating(n); }};
    MonotonicityReport report = detail::run_sign_check(check, 1, max_order, grid);

    OrderVerdict positivity;
    positivity.order = 0;
    for (double t : grid)
    {
        const double v = f(t);
        if (v < positivity.worst_margin)
        {
            positivity.worst_margin = v;
            positivity.worst_point = t;
        }
        if (!(v > 0.0))
        {
            positivity.failures.push_back(t);
            positivity.verdict = Verdict::fail;
        }
    }
    report.verdicts.insert(report.verdicts.begin(), positivity);
    return report;
}

inline MonotonicityReport check_log_completely_monotonic(const Target& target, int max_order)
{
    return check_log_completely_monotonic(target, max_order, standard_grid(target));
}

// ---------------------------------------------------------------------------
// Log-derivative identities

struct LogDerivativeIdentities
{
    double harmonic_closed;    // [ln H_{x,y}(t)]'
    double harmonic_numeric;   // finite difference of ln H(x + t, y + t)
    double geometric_closed;   // [ln G_{x,y}(t)]'
    double geometric_numeric;  // finite difference of ln G(x + t, y + t)

    double max_discrepancy() const
    {
        return std::max(std::abs(harmonic_closed - harmonic_numeric), std::abs(geometric_closed - geometric_numeric));
    }
};

/// [ln H_{x,y}(t)]' = (x^2 + y^2 + 2(x + y)t + 2t^2) / ((x + t)(y + t)(x + y + 2t)) and
/// [ln G_{x,y}(t)]' = (1/(x + t) + 1/(y + t)) / 2, each with a finite-difference estimate.
inline LogDerivativeIdentities check_log_derivative_identities(const PositivePair& pair, Shift shift)
{
    const PositivePair q = shifted(pair, shift);
    const double t = shift.t;
    const double x = pair.x, y = pair.y;
    LogDerivativeIdentities out{};
    out.harmonic_closed = (x * x + y * y + 2.0 * (x + y) * t + 2.0 * t * t) / (q.x * q.y * (q.x + q.y));
    out.geometric_closed = 0.5 * (1.0 / q.x + 1.0 / q.y);
    const double d = q.min();
    out.harmonic_numeric =
        central_derivative([&](double s) { return std::log(harmonic_shifted(pair, Shift(s))); }, 1, t, d, 1.0).value;
    out.geometric_numeric =
        central_derivative([&](double s) { return std::log(geometric_shifted(pair, Shift(s))); }, 1, t, d, 1.0).value;
    return out;
}

// ---------------------------------------------------------------------------
// Stieltjes check

struct StieltjesReport
{
    std::string target;
    Verdict verdict = Verdict::pass;
    bool has_representation = false;
    double max_representation_error = 0.0; // representation vs closed form
    double min_representing_density = 0.0; // over the u-sample
    double max_density_error = 0.0;        // inverted vs representing density on (0.05, 0.95)
    double max_outside_density = 0.0;      // |inverted density| for u > 1
    double max_reconstruction_error = 0.0; // b + a/x + int density/(u + x) vs f(x)
    double a_scalar = 0.0;
    double b_scalar = 0.0;
    bool atom_suspected = false;
    std::vector<std::string> notes;
};

namespace detail {

inline std::vector<double> linear_grid(double a, double b, int n)
{
    std::vector<double> g;
    for (int k = 0; k < n; ++k)
        g.push_back(a + (b - a) * k / (n - 1));
    return g;
}

} // namespace detail

/// Checks f(x) = a/x + b + int_0^1 density(u)/(u + x) du with a, b >= 0 and
/// density >= 0. For h and 1 - 1/h the representation is evaluated by
/// quadrature and compared with the closed form, its density is checked for
/// nonnegativity, and the density recovered by Stieltjes-Perron inversion is
/// compared with it. For the other shipped functions only the inversion is
/// available; an atom yields "inconclusive".
inline StieltjesReport check_stieltjes(ShippedFunction fn)
{
    StieltjesReport r;
    r.target = to_string(fn);
    const ComplexFunction f = shipped_function(fn);
    const std::vector<double> xs = {0.1, 0.5, 1.0, 2.0, 10.0};

    std::function<double(double)> rep;
    if (fn == ShippedFunction::h)
        rep = [](double x) { return h_rep(x, 1e-11).value; };
    else if (fn == ShippedFunction::one_minus_reciprocal)
        rep = [](double x) { return 1.0 - h_reciprocal_rep(x, 1e-11).value; };
    r.has_representation = static_cast<bool>(rep);
    if (rep)
        for (double x : xs)
            r.max_representation_error = std::max(r.max_representation_error, std::abs(rep(x) - f(x).real()));

    const std::vector<double> inner = detail::linear_grid(0.05, 0.95, 19);
    r.min_representing_density = std::numeric_limits<double>::infinity();
    for (double u : inner)
        r.min_representing_density = std::min(r.min_representing_density, analytic_density(fn, u));

    const RecoveredDensity inverted = stieltjes_invert(f, inner);
    for (std::size_t k = 0; k < inner.size(); ++k)
        r.max_density_error = std::max(r.max_density_error, std::abs(inverted.density[k] - analytic_density(fn, inner[k])));
    const RecoveredDensity outside = stieltjes_invert(f, {1.5, 2.0, 5.0});
    for (double v : outside.density)
        r.max_outside_density = std::max(r.max_outside_density, std::abs(v));
    // the end of the support is probed separately: divergence there is either
    // an integrable singularity or an atom, told apart by the reconstruction
    const RecoveredDensity edge = stieltjes_invert(f, {1.0});
    r.atom_suspected = inverted.atom_suspected || outside.atom_suspected || edge.atom_suspected;
    r.a_scalar = inverted.a_scalar;
    r.b_scalar = inverted.b_scalar;
    bool reconstruction_failed = false;
    for (double x : {0.5, 1.0, 5.0})
    {
        try
        {
            const double value = reconstruct_from_density(f, x, r.a_scalar, r.b_scalar).value;
            r.max_reconstruction_error = std::max(r.max_reconstruction_error, std::abs(value - f(x).real()));
        }
        catch (const ConvergenceError&)
        {
            reconstruction_failed = true;
        }
    }
    reconstruction_failed = reconstruction_failed || r.max_reconstruction_error > 1e-6;

    double min_inverted = std::numeric_limits<double>::infinity();
    for (double v : inverted.density)
        min_inverted = std::min(min_inverted, v);

    auto fail = [&r](const std::string& why) {
        r.verdict = Verdict::fail;
        r.notes.push_back(why);
    };
    if (r.has_representation && r.max_representation_error > 1e-9)
        fail("representation disagrees with the closed form");
    if (r.min_representing_density < 0.0 || min_inverted < -1e-6)
        fail("representing density takes negative values");
    if (r.max_density_error > 1e-3)
        fail("inverted density disagrees with the representing density");
    if (r.max_outside_density > 1e-6)
        fail("density does not vanish beyond u = 1");
    if (r.a_scalar < -1e-6 || r.b_scalar < -1e-6)
        fail("a or b is negative");
    if (reconstruction_failed)
    {
        if (r.verdict == Verdict::pass && r.atom_suspected)
        {
            r.verdict = Verdict::inconclusive;
            r.notes.push_back("the density does not reproduce f and the boundary values diverge: an atom is "
                              "suspected, which the density check cannot certify");
        }
        else
        {
            fail("the recovered density does not reproduce f");
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// Class inclusions

struct InclusionEntry
{
    std::string claim;
    Verdict verdict;
    std::string detail;
};

struct ClassInclusionReport
{
    std::vector<InclusionEntry> entries;

    Verdict overall() const
    {
        Verdict v = Verdict::pass;
        for (const auto& e : entries)
            v = combine(v, e.verdict);
        return v;
    }
};

namespace detail {

inline std::string describe(const MonotonicityReport& r)
{
    std::ostringstream os;
    os << r.property << " " << to_string(r.method) << " orders 0.." << r.max_order;
    for (const auto& v : r.verdicts)
        if (v.verdict != Verdict::pass)
            os << "; order " << v.order << " " << to_string(v.verdict) << " (worst margin " << v.worst_margin << " at "
               << v.worst_point << ")";
    return os.str();
}

inline void add(ClassInclusionReport& out, std::string claim, const MonotonicityReport& r)
{
    out.entries.push_back({std::move(claim), r.overall(), describe(r)});
}

} // namespace detail

/// Walks the inclusions S ⊂ LCM ⊂ CM for the Stieltjes functions h and 1 - 1/h,
/// and "positive Bernstein implies reciprocal LCM" for 1/h, A_{x,y}, H_{x,y}
/// and G_{x,y} on each pair with x != y.
inline ClassInclusionReport check_class_inclusions(const std::vector<PositivePair>& pairs = {PositivePair(1.0, 2.0)},
                                                   int exact_order = 30)
{
    ClassInclusionReport out;
    for (ShippedFunction fn : {ShippedFunction::h, ShippedFunction::one_minus_reciprocal})
    {
        const Target target = fn == ShippedFunction::h ? target_h() : target_one_minus_h_reciprocal();
        const StieltjesReport s = check_stieltjes(fn);
        std::string notes;
        for (const auto& n : s.notes)
            notes += n + "; ";
        out.entries.push_back({target.name + " is Stieltjes", s.verdict, notes});
        detail::add(out, target.name + " is LCM", check_log_completely_monotonic(target, finite_difference_max_order));
        detail::add(out, target.name + " is CM", check_completely_monotonic(target, exact_order));
    }

    detail::add(out, "hrecip is Bernstein", check_bernstein(target_h_reciprocal(), exact_order));
    detail::add(out, "h = 1/hrecip is LCM",
                check_log_completely_monotonic(reciprocal_of(target_h_reciprocal()), finite_difference_max_order));

    for (const PositivePair& p : pairs)
    {
        for (const Target& t : {target_arithmetic(p), target_harmonic(p), target_geometric(p)})
        {
            const int order = t.exact ? exact_order : finite_difference_max_order;
            detail::add(out, t.name + " is Bernstein", check_bernstein(t, order));
            detail::add(out, "recip_" + t.name + " is LCM",
                        check_log_completely_monotonic(reciprocal_of(t), finite_difference_max_order));
        }
    }
    return out;
}

} // namespace bernmeans

#endif // BERNMEANS_VERIFY_HPP
