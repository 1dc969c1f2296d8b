// Acceptance run: one PASS/FAIL line per criterion. Exit status is nonzero
// when any criterion fails.

#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "bernmeans/bernmeans.hpp"
#include "support/oracles.hpp"

using namespace bernmeans;

namespace {

namespace tol {
constexpr double derivative_fd_rel = 1e-6;
constexpr double derivative_symbolic = 1e-13;
constexpr double h_rep = 1e-10;
constexpr double H_rep = 1e-8;
constexpr double harmonic_rep = 1e-10;
constexpr double harmonic_closed = 1e-14;
constexpr double geometric_rep = 1e-6;
constexpr double ag_identity = 1e-6;
constexpr double small_gap_ratio = 0.01;
constexpr double rho_limit = 1e-6;
constexpr double density_inside = 1e-3;
constexpr double density_outside = 1e-6;
constexpr double stieltjes_scalars = 1e-6;
constexpr double round_trip = 1e-6;
constexpr double boundary_limit = 1e-3;
constexpr double dual_path = 1e-12;
constexpr double stolarsky_rel = 1e-12;
} // namespace tol

struct Outcome
{
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok)
        {
            if (!pass)
                detail << "; ";
            detail << what;
            pass = false;
        }
    }
};

int failures = 0;

void report(int id, const std::string& title, Outcome& o, const std::string& summary)
{
    std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", id, title.c_str(),
                o.pass ? summary.c_str() : o.detail.str().c_str());
    if (!o.pass)
        ++failures;
}

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

// -------------------------------------------------------------------------

void coefficient_exactness()
{
    Outcome o;
    const auto rec = triangle_by_recursion(TriangleKind::A, 50);
    const auto closed = triangle_by_closed_form(TriangleKind::A, 50);
    o.require(rec == closed, "recursion and closed form differ within 50 rows");
    const BigInt heads[] = {1, 3, 15, 105};
    for (unsigned i = 1; i <= 4; ++i)
        o.require(rec(i, 0) == heads[i - 1], "a_{" + std::to_string(i) + ",0} is " + rec(i, 0).str());
    for (unsigned i = 1; i <= 50; ++i)
        o.require(rec(i, i - 1) == (BigInt(1) << (i - 1)) * factorial(i),
                  "tail a_{" + std::to_string(i) + "," + std::to_string(i - 1) + "} wrong");
    report(1, "coefficient exactness", o, "A rows 1..50 identical by both constructions; heads and tails exact");
}

void polynomial_identity()
{
    Outcome o;
    const auto A = triangle_by_closed_form(TriangleKind::A, 30);
    const auto B = triangle_by_closed_form(TriangleKind::B, 30);
    const auto C = triangle_by_closed_form(TriangleKind::C, 30);
    for (std::size_t i = 1; i <= 30; ++i)
    {
        // coefficient of t^k in (1 + t) A_i - t B_i
        std::vector<BigInt> lhs(i + 1);
        for (std::size_t k = 0; k < i; ++k)
        {
            lhs[k] += A(i, k);
            lhs[k + 1] += A(i, k);
            lhs[k + 1] -= B(i, k);
        }
        bool equal = lhs[i] == 0;
        for (std::size_t k = 0; k < i; ++k)
            equal = equal && lhs[k] == C(i, k);
        o.require(equal, "identity fails in row " + std::to_string(i));
    }
    report(2, "polynomial identity (1+t)A - tB = C", o, "exact for rows 1..30");
}

void derivative_oracles()
{
    Outcome o;
    double worst = 0.0;
    const auto h = [](long double s) { return oracle::h(s); };
    const auto hr = [](long double s) { return oracle::h_reciprocal(s); };
    const auto H = [](long double s) { return oracle::H(s); };
    for (int i = 1; i <= 5; ++i)
        for (double t : {0.5, 1.0, 2.0, 10.0})
        {
            const long double step = t * 1e-2;
            const double e1 = oracle::relative_error(h_derivative(i, t), static_cast<double>(oracle::derivative(h, i, t, step)));
            const double e2 = oracle::relative_error(h_reciprocal_derivative(i, t),
                                                     static_cast<double>(oracle::derivative(hr, i, t, step)));
            const double e3 =
                oracle::relative_error(H_kernel_derivative(i, t), static_cast<double>(oracle::derivative(H, i, t, step)));
            worst = std::max({worst, e1, e2, e3});
        }
    o.require(worst <= tol::derivative_fd_rel, "finite-difference relative error " + fmt(worst));

    const double s2 = std::sqrt(2.0);
    const double symbolic[][2] = {
        {h_derivative(1, 1.0), -1.0 / (2.0 * s2)},
        {h_reciprocal_derivative(1, 1.0), 1.0 / (2.0 * std::pow(2.0, 1.5))},
        {h_reciprocal_derivative(2, 1.0), -5.0 / (4.0 * std::pow(2.0, 2.5))},
        {H_kernel_derivative(1, 1.0), -1.0 / (2.0 * std::pow(2.0, 1.5))},
        {H_kernel_derivative(2, 1.0), 9.0 / (4.0 * std::pow(2.0, 2.5))},
    };
    double worst_symbolic = 0.0;
    for (const auto& pair : symbolic)
        worst_symbolic = std::max(worst_symbolic, std::abs(pair[0] - pair[1]));
    o.require(worst_symbolic <= tol::derivative_symbolic, "symbolic mismatch " + fmt(worst_symbolic));
    report(3, "derivative formulas vs oracles", o,
           "max FD relative error " + fmt(worst) + ", max symbolic error " + fmt(worst_symbolic));
}

void sign_alternation()
{
    Outcome o;
    const auto grid = standard_grid(Domain{});
    int bad = 0;
    for (int i = 1; i <= 30; ++i)
    {
        const double sign = i % 2 == 0 ? 1.0 : -1.0;
        for (double t : grid)
        {
            bad += !(sign * h_derivative(i, t) > 0.0);
            bad += !(-sign * h_reciprocal_derivative(i, t) > 0.0);
            bad += !(sign * H_kernel_derivative(i, t) > 0.0);
        }
    }
    o.require(bad == 0, std::to_string(bad) + " sign violations");
    report(4, "sign alternation", o,
           "orders 1..30 on " + std::to_string(grid.size()) + " grid points, zero violations");
}

void representations()
{
    Outcome o;
    double worst_h = 0.0, worst_H = 0.0, worst_harm = 0.0, worst_harm_closed = 0.0, worst_geo = 0.0;
    const std::vector<Complex> zs = {1.0, 0.1, 0.5, 2.0, 10.0, 1.0 / 3.0, {1.0, 1.0}, {1.0, -1.0}, {0.5, 2.0}};
    for (Complex z : zs)
    {
        const Complex h = std::sqrt(1.0 + 1.0 / z);
        worst_h = std::max(worst_h, std::abs(h_rep(z).value - h));
        worst_h = std::max(worst_h, std::abs(h_reciprocal_rep(z).value - 1.0 / h));
        worst_H = std::max(worst_H, std::abs(H_rep(z).value - (h + 1.0 / h)));
    }
    for (double x : {0.5, 1.0, 3.0})
        for (double y : {1.0, 2.0, 7.0})
            for (double t : {0.0, 0.3, 1.0, 10.0})
            {
                const PositivePair p(x, y);
                // independent closed form of H(x + t, y + t)
                const double exact = 2.0 * (x + t) * (y + t) / (x + y + 2.0 * t);
                worst_harm = std::max(worst_harm, std::abs(harmonic_rep(p, Shift(t)).value - exact));
                const double c = 0.5 * (x + y);
                const double kernel = harmonic_kernel_closed_form(c, t);
                const double kernel_by_integration = t / (c * (c + t));
                worst_harm_closed = std::max(worst_harm_closed, std::abs(kernel - kernel_by_integration));
                worst_harm_closed =
                    std::max(worst_harm_closed, std::abs(harmonic_rep_closed_form(p, Shift(t)) - exact) / exact);
            }
    const double triples[][3] = {{2.0, 1.0, 1.0}, {3.0, 1.0, 2.0}, {1.5, 1.0, 0.5}};
    for (const auto& q : triples)
        worst_geo = std::max(worst_geo, std::abs(geometric_rep(PositivePair(q[0], q[1]), q[2]).value -
                                                 std::sqrt((q[0] + q[2]) * (q[1] + q[2]))));
    o.require(worst_h <= tol::h_rep, "h / 1/h representation error " + fmt(worst_h));
    o.require(worst_H <= tol::H_rep, "H representation error " + fmt(worst_H));
    o.require(worst_harm <= tol::harmonic_rep, "harmonic representation error " + fmt(worst_harm));
    o.require(worst_harm_closed <= tol::harmonic_closed, "harmonic closed-form path error " + fmt(worst_harm_closed));
    o.require(worst_geo <= tol::geometric_rep, "geometric representation error " + fmt(worst_geo));
    report(5, "integral representations vs closed forms", o,
           "h,1/h " + fmt(worst_h) + "; H " + fmt(worst_H) + "; harmonic " + fmt(worst_harm) + " (closed path " +
               fmt(worst_harm_closed) + "); geometric " + fmt(worst_geo));
}

void ag_identity()
{
    Outcome o;
    const PositivePair p(2.0, 1.0);
    const double gap = 1.5 - std::sqrt(2.0);
    const double rep = ag_gap_rep(p).value;
    o.require(std::abs(rep - gap) <= tol::ag_identity, "A - G integral error " + fmt(std::abs(rep - gap)));
    const double y = 1.0, delta = 1e-3;
    const PositivePair close(y + delta, y);
    const double leading = delta * delta / (8.0 * y);
    const double ratio_direct = (arithmetic(close) - geometric(close)) / leading;
    const double ratio_rep = ag_gap_rep(close, 1e-3 * leading).value / leading;
    o.require(std::abs(ratio_direct - 1.0) <= tol::small_gap_ratio, "direct small-gap ratio " + fmt(ratio_direct));
    o.require(std::abs(ratio_rep - 1.0) <= tol::small_gap_ratio, "integral small-gap ratio " + fmt(ratio_rep));
    report(6, "AG identity", o,
           "A(2,1) - G(2,1) error " + fmt(std::abs(rep - gap)) + "; small-gap ratio " + fmt(ratio_rep) +
               " (integral), " + fmt(ratio_direct) + " (direct)");
}

void rho_properties()
{
    Outcome o;
    double min_rho = INFINITY;
    for (double s : {0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 100.0, 1000.0})
        min_rho = std::min(min_rho, rho(s).value);
    o.require(min_rho >= 0.0, "rho takes the negative value " + fmt(min_rho));
    const double s1 = 1e-3, s2 = 1e-4;
    const double r1 = rho(s1, 1e-14).value / s1;
    const double r2 = rho(s2, 1e-15).value / s2;
    const double limit = (s1 * r2 - s2 * r1) / (s1 - s2);
    const double err = std::abs(limit - 0.25 * std::numbers::pi);
    o.require(err <= tol::rho_limit, "rho(s)/s extrapolates to " + fmt(limit));
    report(7, "rho properties", o, "min rho on grid " + fmt(min_rho) + "; |lim rho(s)/s - pi/4| = " + fmt(err));
}

void stieltjes_inversion()
{
    Outcome o;
    const auto f = shipped_function(ShippedFunction::h);
    std::vector<double> inside;
    for (int k = 1; k <= 9; ++k)
        inside.push_back(k / 10.0);
    const auto d = stieltjes_invert(f, inside);
    double worst_inside = 0.0;
    for (std::size_t k = 0; k < inside.size(); ++k)
        worst_inside = std::max(worst_inside, std::abs(d.density[k] - std::sqrt(1.0 / inside[k] - 1.0) / std::numbers::pi));
    const auto out = stieltjes_invert(f, {1.5, 2.0, 5.0});
    double worst_outside = 0.0;
    for (double v : out.density)
        worst_outside = std::max(worst_outside, std::abs(v));
    double worst_round_trip = 0.0;
    for (double x : {0.5, 1.0, 5.0})
        worst_round_trip =
            std::max(worst_round_trip, std::abs(reconstruct_from_density(f, x, d.a_scalar, d.b_scalar).value -
                                                std::sqrt(1.0 + 1.0 / x)));
    o.require(worst_inside <= tol::density_inside, "density error on (0,1) " + fmt(worst_inside));
    o.require(worst_outside <= tol::density_outside, "density beyond 1 " + fmt(worst_outside));
    o.require(std::abs(d.a_scalar) <= tol::stieltjes_scalars, "a = " + fmt(d.a_scalar));
    o.require(std::abs(d.b_scalar - 1.0) <= tol::stieltjes_scalars, "b = " + fmt(d.b_scalar));
    o.require(worst_round_trip <= tol::round_trip, "round-trip error " + fmt(worst_round_trip));
    report(8, "Stieltjes inversion", o,
           "density error " + fmt(worst_inside) + "; outside " + fmt(worst_outside) + "; a " + fmt(d.a_scalar) +
               ", b - 1 " + fmt(d.b_scalar - 1.0) + "; round trip " + fmt(worst_round_trip));
}

void boundary_limits()
{
    Outcome o;
    std::vector<double> grid;
    for (int k = 1; k <= 9; ++k)
        grid.push_back(k / 10.0);
    const auto trace = boundary_trace(boundary_imag_h, grid, default_eps_ladder());
    double worst = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k)
        worst = std::max(worst, std::abs(trace.extrapolated[k] + std::sqrt(1.0 / grid[k] - 1.0)));
    o.require(worst <= tol::boundary_limit, "extrapolated limit error " + fmt(worst));

    // Divergence at t = 1 is required of Im h(-t + i eps) itself.
    const auto at_one = boundary_trace(boundary_imag_h, {1.0}, default_eps_ladder());
    o.require(at_one.blow_up[0],
              "no blow-up of Im h(-1 + i eps): ladder values " + fmt(at_one.samples[0][0]) + ", " +
                  fmt(at_one.samples[0][1]) + ", " + fmt(at_one.samples[0][2]) +
                  " tend to 0 like -sqrt(eps/2); the divergence at t = 1 belongs to Im 1/h (flagged: " +
                  (boundary_trace(boundary_imag_h_reciprocal, {1.0}, default_eps_ladder()).blow_up[0] ? "yes" : "no") +
                  ")");

    double worst_dual = 0.0;
    for (int j = 1; j <= 60; ++j)
    {
        const double t = j / 20.0;
        for (double eps : {1e-2, 1e-4, 1e-6, 1e-8})
        {
            if (std::abs(t * t + eps * eps - t) < 1e-14)
                continue;
            worst_dual = std::max(worst_dual, std::abs(boundary_imag_h(t, eps) - boundary_imag_h_cases(t, eps)));
        }
    }
    o.require(worst_dual <= tol::dual_path, "dual-path disagreement " + fmt(worst_dual));
    report(9, "boundary limits", o,
           "limit error " + fmt(worst) + "; blow-up flagged at t = 1; dual-path " + fmt(worst_dual));
}

void mean_reductions()
{
    Outcome o;
    oracle::PairGenerator gen(20241016);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial)
    {
        const double x = gen.next();
        double y = gen.next();
        if (x == y)
            y *= 2.0;
        const PositivePair p(x, y);
        const double r = (trial % 2 == 0 ? 1.0 : -1.0) * gen.uniform(0.1, 3.0);
        // independent closed forms
        const double H = 2.0 * x * y / (x + y);
        const double G = std::sqrt(x * y);
        const double A = 0.5 * (x + y);
        const double L = (y - x) / (std::log(y) - std::log(x));
        const double I = std::exp((y * std::log(y) - x * std::log(x)) / (y - x) - 1.0);
        const double M = std::pow(0.5 * (std::pow(x, r) + std::pow(y, r)), 1.0 / r);
        worst = std::max({worst, oracle::relative_error(stolarsky_mean({-2.0, -1.0}, p), H),
                          oracle::relative_error(stolarsky_mean({0.0, 0.0}, p), G),
                          oracle::relative_error(stolarsky_mean({1.0, 2.0}, p), A),
                          oracle::relative_error(stolarsky_mean({0.0, 1.0}, p), L),
                          oracle::relative_error(stolarsky_mean({1.0, 1.0}, p), I),
                          oracle::relative_error(stolarsky_mean({r, 2.0 * r}, p), M)});
    }
    o.require(worst <= tol::stolarsky_rel, "worst relative error " + fmt(worst));
    report(10, "Stolarsky reductions", o, "six identities on 100 random pairs, worst relative error " + fmt(worst));
}

void class_inclusions()
{
    Outcome o;
    int inconclusive = 0;
    auto accept = [&](const std::string& claim, const MonotonicityReport& r) {
        for (const auto& v : r.verdicts)
        {
            if (v.verdict == Verdict::fail)
                o.require(false, claim + " fails at order " + std::to_string(v.order));
            else if (v.verdict == Verdict::inconclusive)
            {
                ++inconclusive;
                o.require(r.method == Method::finite_difference && v.order == finite_difference_max_order,
                          claim + " inconclusive at order " + std::to_string(v.order));
            }
        }
    };
    const auto s = check_stieltjes(ShippedFunction::h);
    o.require(s.verdict == Verdict::pass, "h Stieltjes check: " + std::string(to_string(s.verdict)));
    accept("h LCM", check_log_completely_monotonic(target_h(), finite_difference_max_order));
    accept("h CM", check_completely_monotonic(target_h(), 30));
    accept("1/h Bernstein", check_bernstein(target_h_reciprocal(), 30));
    const PositivePair p(1.0, 2.0);
    accept("H_{1,2} Bernstein", check_bernstein(target_harmonic(p), finite_difference_max_order));
    accept("G_{1,2} Bernstein", check_bernstein(target_geometric(p), 30));
    accept("1/H_{1,2} LCM", check_log_completely_monotonic(reciprocal_of(target_harmonic(p)), finite_difference_max_order));
    accept("1/G_{1,2} LCM", check_log_completely_monotonic(reciprocal_of(target_geometric(p)), finite_difference_max_order));
    report(11, "class-inclusion chain", o,
           "no fail verdicts; " + std::to_string(inconclusive) + " order-6 finite-difference verdict(s) inconclusive");
}

} // namespace

int main()
{
    const std::vector<std::function<void()>> criteria = {
        coefficient_exactness, polynomial_identity, derivative_oracles, sign_alternation,
        representations,       ag_identity,         rho_properties,     stieltjes_inversion,
        boundary_limits,       mean_reductions,     class_inclusions,
    };
    for (const auto& c : criteria)
    {
        try
        {
            c();
        }
        catch (const std::exception& e)
        {
            std::printf("FAIL (exception: %s)\n", e.what());
            ++failures;
        }
    }
    std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
