#ifndef BERNMEANS_TOOLS_CLI_HPP
#define BERNMEANS_TOOLS_CLI_HPP

// Command-line front end. `run` parses argv, dispatches to a subcommand and
// returns the process exit code: 0 on success, 1 when a verification fails,
// 2 on usage or domain errors.

#include <charconv>
#include <cmath>
#include <complex>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bernmeans/bernmeans.hpp"

namespace bernmeans::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_verification_failed = 1;
inline constexpr int exit_usage = 2;

inline constexpr int json_schema = 1;

using nlohmann::ordered_json;

/// Shortest decimal that reads back to the same double; "inf", "-inf", "nan" otherwise.
inline std::string format_number(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

/// Non-finite values become strings so that the output stays valid JSON.
inline ordered_json json_number(double v)
{
    if (std::isfinite(v))
        return v;
    return format_number(v);
}

inline ordered_json json_complex(Complex z) { return ordered_json::array({json_number(z.real()), json_number(z.imag())}); }

/// Parses "a:b:n" into n evenly spaced points from a to b.
inline std::vector<double> parse_grid(const std::string& text)
{
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':'))
        parts.push_back(item);
    detail::require(parts.size() == 3, "grid must have the form start:stop:count");
    double a, b;
    long n;
    try
    {
        a = std::stod(parts[0]);
        b = std::stod(parts[1]);
        n = std::stol(parts[2]);
    }
    catch (const std::exception&)
    {
        throw DomainError("could not parse grid '" + text + "'");
    }
    detail::require(n >= 1 && n <= 1000000, "grid count must lie in [1, 1e6]");
    std::vector<double> grid;
    for (long k = 0; k < n; ++k)
        grid.push_back(n == 1 ? a : a + (b - a) * static_cast<double>(k) / static_cast<double>(n - 1));
    return grid;
}

/// Parses a comma-separated list of numbers.
inline std::vector<double> parse_list(const std::string& text)
{
    std::vector<double> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
    {
        try
        {
            values.push_back(std::stod(item));
        }
        catch (const std::exception&)
        {
            throw DomainError("could not parse number '" + item + "'");
        }
    }
    return values;
}

struct Options
{
    // eval
    std::string mean;
    double x = 1.0, y = 1.0, t = 0.0, r = 0.0, s = 0.0, p = 1.0;
    // coeffs
    std::string kind = "A";
    int rows = 1;
    std::string method = "closed";
    // derivatives
    std::string func = "h";
    int order = 1;
    // verify-rep
    std::string which;
    double z = 1.0, zim = 0.0, a = 1.0, b = 2.0, w = 1.0;
    double tol = 1e-10;
    // verify-cm
    std::string target;
    int max_order = 6;
    std::string check = "auto";
    int per_decade = 25;
    // invert-stieltjes and table
    std::string grid;
    std::string eps = "1e-4,1e-5,1e-6";
    std::string format;
};

// ---------------------------------------------------------------------------
// Subcommands

inline int cmd_eval(const Options& o, std::ostream& out)
{
    const PositivePair pair(o.x, o.y);
    const Shift shift(o.t);
    double value;
    if (o.mean == "arithmetic")
        value = arithmetic_shifted(pair, shift);
    else if (o.mean == "geometric")
        value = geometric_shifted(pair, shift);
    else if (o.mean == "harmonic")
        value = harmonic_shifted(pair, shift);
    else if (o.mean == "logarithmic")
        value = logarithmic_shifted(pair, shift);
    else if (o.mean == "exponential")
        value = exponential_shifted(pair, shift);
    else if (o.mean == "power")
        value = power_mean(shifted(pair, shift), o.p);
    else if (o.mean == "stolarsky")
        value = stolarsky_mean({o.r, o.s}, shifted(pair, shift));
    else
        throw DomainError("unknown mean '" + o.mean + "'");

    if (o.format == "json")
    {
        ordered_json j;
        j["schema"] = json_schema;
        j["mean"] = o.mean;
        j["x"] = o.x;
        j["y"] = o.y;
        j["t"] = o.t;
        if (o.mean == "power")
            j["p"] = o.p;
        if (o.mean == "stolarsky")
        {
            j["r"] = o.r;
            j["s"] = o.s;
        }
        j["value"] = json_number(value);
        out << j.dump() << '\n';
    }
    else
    {
        out << format_number(value) << '\n';
    }
    return exit_ok;
}

inline TriangleKind parse_kind(const std::string& kind)
{
    if (kind == "A")
        return TriangleKind::A;
    if (kind == "B")
        return TriangleKind::B;
    if (kind == "C")
        return TriangleKind::C;
    throw DomainError("unknown triangle kind '" + kind + "'");
}

inline int cmd_coeffs(const Options& o, std::ostream& out)
{
    detail::require(o.rows >= 1, "--rows must be at least 1");
    const TriangleKind kind = parse_kind(o.kind);
    const CoefficientTriangle tri = o.method == "recursion" ? triangle_by_recursion(kind, static_cast<std::size_t>(o.rows))
                                                            : triangle_by_closed_form(kind, static_cast<std::size_t>(o.rows));
    ordered_json rows = ordered_json::array();
    for (const auto& row : tri.rows())
    {
        ordered_json r = ordered_json::array();
        for (const BigInt& v : row)
            r.push_back(v.str());
        rows.push_back(std::move(r));
    }
    ordered_json j;
    j["schema"] = json_schema;
    j["kind"] = o.kind;
    j["rows"] = std::move(rows);
    out << j.dump() << '\n';
    return exit_ok;
}

inline int cmd_derivatives(const Options& o, std::ostream& out)
{
    detail::require(o.order >= 0, "--order must be nonnegative");
    std::function<double(int)> eval;
    if (o.func == "h")
        eval = [&](int i) { return h_derivative(i, o.t); };
    else if (o.func == "hrecip")
        eval = [&](int i) { return h_reciprocal_derivative(i, o.t); };
    else if (o.func == "Hkernel")
        eval = [&](int i) { return H_kernel_derivative(i, o.t); };
    else if (o.func == "fu")
        eval = [&](int i) { return f_u_derivative(i, o.t); };
    else if (o.func == "Gprime")
    {
        const PositivePair pair(o.x, o.y);
        eval = [pair, &o](int i) { return G_shifted_derivative_order(i, pair, Shift(o.t)); };
    }
    else
        throw DomainError("unknown function '" + o.func + "'");

    ordered_json values = ordered_json::array();
    for (int i = 0; i <= o.order; ++i)
        values.push_back({{"order", i}, {"value", json_number(eval(i))}});
    ordered_json j;
    j["schema"] = json_schema;
    j["func"] = o.func;
    j["t"] = o.t;
    if (o.func == "Gprime")
    {
        j["x"] = o.x;
        j["y"] = o.y;
    }
    j["derivatives"] = std::move(values);
    out << j.dump() << '\n';
    return exit_ok;
}

inline int cmd_verify_rep(const Options& o, std::ostream& out)
{
    const double tol = o.tol;
    ordered_json j;
    j["schema"] = json_schema;
    j["which"] = o.which;
    j["tol"] = tol;

    const Complex z(o.z, o.zim);
    const bool complex_z = o.zim != 0.0;
    Complex closed, quad;
    double error_estimate = 0.0;
    std::size_t evaluations = 0;
    bool converged = true;
    auto take = [&](const auto& res) {
        quad = Complex(res.value);
        error_estimate = res.error_estimate;
        evaluations = res.evaluations;
        converged = res.converged;
    };

    if (o.which == "h")
    {
        closed = h_complex(z);
        take(h_rep(z, tol));
        j["z"] = json_complex(z);
    }
    else if (o.which == "hrecip")
    {
        closed = h_reciprocal_complex(z);
        take(h_reciprocal_rep(z, tol));
        j["z"] = json_complex(z);
    }
    else if (o.which == "H")
    {
        closed = H_complex(z);
        take(H_rep(z, tol));
        j["z"] = json_complex(z);
    }
    else if (o.which == "harmonic")
    {
        const PositivePair pair(o.x, o.y);
        closed = harmonic_shifted(pair, Shift(o.t));
        take(harmonic_rep(pair, Shift(o.t), tol));
        j["x"] = o.x;
        j["y"] = o.y;
        j["t"] = o.t;
        j["kernel_closed_form"] = json_number(harmonic_rep_closed_form(pair, Shift(o.t)));
    }
    else if (o.which == "geometric")
    {
        const PositivePair pair(o.x, o.y);
        detail::require(z.real() > -pair.min(), "geometric representation requires Re z > -min(x, y)");
        closed = std::sqrt((pair.x + z) * (pair.y + z));
        take(geometric_rep(pair, z, tol));
        j["x"] = o.x;
        j["y"] = o.y;
        j["z"] = json_complex(z);
    }
    else if (o.which == "agap")
    {
        const PositivePair pair(o.x, o.y);
        closed = arithmetic(pair) - geometric(pair);
        take(ag_gap_rep(pair, tol));
        j["x"] = o.x;
        j["y"] = o.y;
    }
    else if (o.which == "frullani")
    {
        closed = std::log(o.b / o.a);
        take(frullani_log(o.a, o.b, tol));
        j["a"] = o.a;
        j["b"] = o.b;
    }
    else if (o.which == "gamma")
    {
        closed = std::pow(o.z, -o.w);
        take(gamma_kernel_check(o.z, o.w, tol));
        j["z"] = o.z;
        j["w"] = o.w;
    }
    else if (o.which == "expmean")
    {
        const PositivePair pair(o.x, o.y);
        closed = exponential_mean(pair);
        take(exponential_mean_rep(pair, tol));
        j["x"] = o.x;
        j["y"] = o.y;
    }
    else if (o.which == "rho")
    {
        detail::require(o.s >= 0.0, "rho requires s >= 0");
        closed = rho_second_form(o.s, tol).value;
        take(rho(o.s, tol));
        j["s"] = o.s;
    }
    else
    {
        throw DomainError("unknown representation '" + o.which + "'");
    }

    const double abs_err = std::abs(quad - closed);
    const bool pass = converged && abs_err <= std::max(tol, 10.0 * error_estimate);
    const bool as_complex = complex_z && (o.which == "h" || o.which == "hrecip" || o.which == "H" || o.which == "geometric");
    j["closed_form"] = as_complex ? json_complex(closed) : json_number(closed.real());
    j["quadrature"] = as_complex ? json_complex(quad) : json_number(quad.real());
    j["abs_err"] = json_number(abs_err);
    j["error_estimate"] = json_number(error_estimate);
    j["evaluations"] = evaluations;
    j["pass"] = pass;
    out << j.dump() << '\n';
    return pass ? exit_ok : exit_verification_failed;
}

inline std::string default_check(const Target& t)
{
    if (t.name.starts_with("recip_") || t.name == "constant")
        return "lcm";
    const auto colon = t.name.find(':');
    const std::string kind = t.name.substr(0, colon);
    if (kind == "hrecip" || kind == "harmonic" || kind == "geometric" || kind == "arithmetic" || kind == "logmean" ||
        kind == "expmean")
        return "bernstein";
    return "cm";
}

inline ordered_json report_json(const MonotonicityReport& r)
{
    ordered_json verdicts = ordered_json::array();
    for (const auto& v : r.verdicts)
    {
        ordered_json failures = ordered_json::array();
        for (double t : v.failures)
            failures.push_back(t);
        verdicts.push_back({{"order", v.order},
                            {"verdict", to_string(v.verdict)},
                            {"worst_margin", json_number(v.worst_margin)},
                            {"worst_point", json_number(v.worst_point)},
                            {"tolerance_at_worst", json_number(v.tolerance_at_worst)},
                            {"failures", std::move(failures)}});
    }
    ordered_json j;
    j["schema"] = json_schema;
    j["target"] = r.target;
    j["property"] = r.property;
    j["method"] = to_string(r.method);
    j["requested_order"] = r.requested_order;
    j["max_order"] = r.max_order;
    j["grid_points"] = r.grid.size();
    j["grid_min"] = json_number(r.grid.empty() ? NAN : r.grid.front());
    j["grid_max"] = json_number(r.grid.empty() ? NAN : r.grid.back());
    j["overall"] = to_string(r.overall());
    j["verdicts"] = std::move(verdicts);
    return j;
}

inline int cmd_verify_cm(const Options& o, std::ostream& out)
{
    detail::require(o.max_order >= 1, "--max-order must be at least 1");
    const Target target = make_target(o.target);
    const std::string check = o.check == "auto" ? default_check(target) : o.check;
    const std::vector<double> grid = o.grid.empty() ? standard_grid(target.domain, o.per_decade) : parse_grid(o.grid);
    MonotonicityReport report;
    if (check == "cm")
        report = check_completely_monotonic(target, o.max_order, grid);
    else if (check == "bernstein")
        report = check_bernstein(target, o.max_order, grid);
    else if (check == "lcm")
        report = check_log_completely_monotonic(target, o.max_order, grid);
    else
        throw DomainError("unknown check '" + check + "'");
    out << report_json(report).dump() << '\n';
    return report.has_failure() ? exit_verification_failed : exit_ok;
}

inline int cmd_invert(const Options& o, std::ostream& out)
{
    const ShippedFunction fn = parse_shipped_function(o.func);
    const std::vector<double> grid = parse_grid(o.grid.empty() ? "0.05:0.95:19" : o.grid);
    const std::vector<double> ladder = parse_list(o.eps);
    require_ladder(ladder);
    const RecoveredDensity rec = stieltjes_invert(shipped_function(fn), grid, ladder);

    if (o.format == "json")
    {
        ordered_json rows = ordered_json::array();
        for (std::size_t k = 0; k < grid.size(); ++k)
        {
            const double exact = analytic_density(fn, grid[k]);
            rows.push_back({{"u", grid[k]},
                            {"density", json_number(rec.density[k])},
                            {"analytic", json_number(exact)},
                            {"abs_err", json_number(std::abs(rec.density[k] - exact))},
                            {"blow_up", static_cast<bool>(rec.blow_up[k])}});
        }
        ordered_json j;
        j["schema"] = json_schema;
        j["func"] = o.func;
        j["eps"] = ladder;
        j["a"] = json_number(rec.a_scalar);
        j["b"] = json_number(rec.b_scalar);
        j["atom_suspected"] = rec.atom_suspected;
        j["rows"] = std::move(rows);
        out << j.dump() << '\n';
        return exit_ok;
    }
    out << "u,density,analytic,abs_err\n";
    for (std::size_t k = 0; k < grid.size(); ++k)
    {
        const double exact = analytic_density(fn, grid[k]);
        out << format_number(grid[k]) << ',' << format_number(rec.density[k]) << ',' << format_number(exact) << ','
            << format_number(std::abs(rec.density[k] - exact)) << '\n';
    }
    return exit_ok;
}

inline int cmd_table(const Options& o, std::ostream& out)
{
    detail::require(o.order >= 0, "--orders must be nonnegative");
    const Target target = make_target(o.target);
    detail::require(target.exact || o.order <= finite_difference_max_order,
                    "finite-difference tables are limited to order 6");
    const std::vector<double> grid = o.grid.empty() ? standard_grid(target.domain, 5) : parse_grid(o.grid);
    out << "t,value";
    for (int n = 1; n <= o.order; ++n)
        out << ",d" << n;
    out << '\n';
    for (double t : grid)
    {
        detail::require(target.domain.contains(t), "table point outside the target's domain");
        out << format_number(t) << ',' << format_number(target.f(t));
        for (int n = 1; n <= o.order; ++n)
        {
            const double d = target.exact ? target.exact(n, t)
                                          : central_derivative(target.f, n, t,
                                                               std::min(t - target.domain.lower, target.domain.upper - t))
                                                .value;
            out << ',' << format_number(d);
        }
        out << '\n';
    }
    return exit_ok;
}

// ---------------------------------------------------------------------------

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Shifted means, the kernel sqrt(1 + 1/t), and their monotonicity structure", "bernmeans"};
    app.require_subcommand(1);
    Options o;

    auto* eval = app.add_subcommand("eval", "evaluate a shifted mean M(x + t, y + t)");
    eval->add_option("--mean", o.mean, "arithmetic|geometric|harmonic|logarithmic|exponential|power|stolarsky")
        ->required();
    eval->add_option("--x", o.x, "first argument")->required();
    eval->add_option("--y", o.y, "second argument")->required();
    eval->add_option("--t", o.t, "shift (default 0)");
    eval->add_option("--r", o.r, "Stolarsky parameter r");
    eval->add_option("--s", o.s, "Stolarsky parameter s");
    eval->add_option("--p", o.p, "power-mean exponent");
    eval->add_option("--format", o.format, "text|json")->check(CLI::IsMember({"text", "json"}));

    auto* coeffs = app.add_subcommand("coeffs", "dump an exact coefficient triangle as JSON decimal strings");
    coeffs->add_option("--kind", o.kind, "A|B|C")->required()->check(CLI::IsMember({"A", "B", "C"}));
    coeffs->add_option("--rows", o.rows, "number of rows")->required()->check(CLI::Range(1, 500));
    coeffs->add_option("--method", o.method, "closed|recursion")->check(CLI::IsMember({"closed", "recursion"}));

    auto* derivs = app.add_subcommand("derivatives", "derivatives of orders 0..N from the closed forms");
    derivs->add_option("--func", o.func, "h|hrecip|Hkernel|fu|Gprime")->required();
    derivs->add_option("--order", o.order, "highest order")->required()->check(CLI::Range(0, 2000));
    derivs->add_option("--t", o.t, "evaluation point")->required();
    derivs->add_option("--x", o.x, "first mean argument (Gprime)");
    derivs->add_option("--y", o.y, "second mean argument (Gprime)");

    auto* rep = app.add_subcommand("verify-rep", "compare an integral representation with its closed form");
    rep->add_option("--which", o.which, "h|hrecip|H|harmonic|geometric|agap|frullani|gamma|expmean|rho")->required();
    rep->add_option("--z", o.z, "real part of z (or z for gamma)");
    rep->add_option("--zim", o.zim, "imaginary part of z");
    rep->add_option("--x", o.x, "first mean argument");
    rep->add_option("--y", o.y, "second mean argument");
    rep->add_option("--t", o.t, "shift");
    rep->add_option("--s", o.s, "rho argument");
    rep->add_option("--a", o.a, "Frullani a");
    rep->add_option("--b", o.b, "Frullani b");
    rep->add_option("--w", o.w, "Gamma-kernel exponent");
    rep->add_option("--tol", o.tol, "absolute tolerance")->check(CLI::PositiveNumber);

    auto* cm = app.add_subcommand("verify-cm", "check complete monotonicity, Bernstein or LCM structure");
    cm->add_option("--target", o.target,
                   "h|hrecip|one_minus_hrecip|Hkernel|fu|identity|constant|harmonic:x,y|arithmetic:x,y|"
                   "geometric:x,y|Gprime:x,y|logmean:x,y|expmean:x,y, optionally prefixed by recip_")
        ->required();
    cm->add_option("--max-order", o.max_order, "highest derivative order")->check(CLI::Range(1, 2000));
    cm->add_option("--check", o.check, "auto|cm|bernstein|lcm")->check(CLI::IsMember({"auto", "cm", "bernstein", "lcm"}));
    cm->add_option("--grid", o.grid, "start:stop:count (default: log-spaced standard grid)");
    cm->add_option("--per-decade", o.per_decade, "standard-grid density")->check(CLI::Range(1, 1000));

    auto* inv = app.add_subcommand("invert-stieltjes", "recover the representing density from boundary values");
    inv->add_option("--func", o.func, "h|hrecip|one_minus_hrecip|Hkernel|pole")->required();
    inv->add_option("--grid", o.grid, "start:stop:count");
    inv->add_option("--eps", o.eps, "strictly decreasing eps ladder, comma separated");
    inv->add_option("--format", o.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));

    auto* table = app.add_subcommand("table", "CSV of a target and its derivatives over a grid");
    table->add_option("--target", o.target, "as for verify-cm")->required();
    table->add_option("--grid", o.grid, "start:stop:count");
    table->add_option("--orders", o.order, "derivative columns")->check(CLI::Range(0, 200));

    o.order = 1;
    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp& e)
    {
        return app.exit(e, out, err);
    }
    catch (const CLI::ParseError& e)
    {
        app.exit(e, out, err);
        return exit_usage;
    }

    try
    {
        if (eval->parsed())
            return cmd_eval(o, out);
        if (coeffs->parsed())
            return cmd_coeffs(o, out);
        if (derivs->parsed())
            return cmd_derivatives(o, out);
        if (rep->parsed())
            return cmd_verify_rep(o, out);
        if (cm->parsed())
            return cmd_verify_cm(o, out);
        if (inv->parsed())
            return cmd_invert(o, out);
        if (table->parsed())
        {
            if (table->count("--orders") == 0)
                o.order = 0;
            return cmd_table(o, out);
        }
    }
    catch (const DomainError& e)
    {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
    catch (const ConvergenceError& e)
    {
        err << "verification failed: " << e.what() << '\n';
        return exit_verification_failed;
    }
    err << "error: no subcommand\n";
    return exit_usage;
}

} // namespace bernmeans::cli

#endif // BERNMEANS_TOOLS_CLI_HPP
