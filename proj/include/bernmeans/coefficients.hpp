#ifndef BERNMEANS_COEFFICIENTS_HPP
#define BERNMEANS_COEFFICIENTS_HPP

// Exact integer coefficient triangles for the i-th derivatives of
//   h(t) = sqrt(1 + 1/t),   1/h(t),   H(t) = h(t) + 1/h(t).
//
// Row i (i >= 1) holds the i coefficients of a polynomial P_i(t) of degree
// i - 1, such that
//   h^{(i)}(t)     = (-1)^i     P^A_i(t) / (2^i t^{i+1} (1+t)^{i-1} h(t))
//   (1/h)^{(i)}(t) = (-1)^{i+1} P^B_i(t) / (2^i t^i     (1+t)^i     h(t))
//   H^{(i)}(t)     = (-1)^i     P^C_i(t) / (2^i t^{i+1} (1+t)^i     h(t))

#include <algorithm>
#include <array>
#include <cstddef>
#include <memory>
#include <mutex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace bernmeans {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

enum class TriangleKind
{
    A, // h
    B, // 1/h
    C, // H = h + 1/h
};

inline const char* to_string(TriangleKind kind)
{
    switch (kind)
    {
    case TriangleKind::A: return "A";
    case TriangleKind::B: return "B";
    case TriangleKind::C: return "C";
    }
    return "?";
}

inline BigInt factorial(unsigned n)
{
    BigInt result = 1;
    for (unsigned k = 2; k <= n; ++k)
        result *= k;
    return result;
}

/// n!! = n (n - 2) (n - 4) ...; (-1)!! = 0!! = 1.
inline BigInt double_factorial(long n)
{
    if (n < -1)
        throw std::invalid_argument("double factorial undefined below -1");
    BigInt result = 1;
    for (long k = n; k > 1; k -= 2)
        result *= k;
    return result;
}

class CoefficientTriangle
{
  public:
    CoefficientTriangle(TriangleKind kind, std::vector<std::vector<BigInt>> rows)
      : kind_(kind), rows_(std::move(rows))
    {
        for (std::size_t i = 0; i < rows_.size(); ++i)
        {
            if (rows_[i].size() != i + 1)
                throw std::logic_error("coefficient row " + std::to_string(i + 1) + " has wrong length");
            for (const BigInt& entry : rows_[i])
                if (entry <= 0)
                    throw std::logic_error("coefficient triangle entries must be positive");
        }
    }

    TriangleKind kind() const noexcept { return kind_; }
    std::size_t max_row() const noexcept { return rows_.size(); }

    /// Row i, 1-based; entries k = 0 .. i-1.
    std::span<const BigInt> row(std::size_t i) const { return rows_.at(i - 1); }

    const BigInt& operator()(std::size_t i, std::size_t k) const { return rows_.at(i - 1).at(k); }

    const std::vector<std::vector<BigInt>>& rows() const noexcept { return rows_; }

    friend bool operator==(const CoefficientTriangle&, const CoefficientTriangle&) = default;

  private:
    TriangleKind kind_;
    std::vector<std::vector<BigInt>> rows_;
};

namespace detail {

inline BigInt exact_quotient(const BigInt& numerator, const BigInt& denominator)
{
    BigInt q, r;
    boost::multiprecision::divide_qr(numerator, denominator, q, r);
    if (r != 0)
        throw std::logic_error("coefficient closed form is not integral");
    return q;
}

using Poly = std::vector<BigInt>; // ascending powers of t

inline Poly poly_add(Poly a, const Poly& b)
{
    if (a.size() < b.size())
        a.resize(b.size());
    for (std::size_t k = 0; k < b.size(); ++k)
        a[k] += b[k];
    return a;
}

inline Poly poly_scale(Poly a, const BigInt& c)
{
    for (auto& v : a)
        v *= c;
    return a;
}

/// Multiplies by (1 + t).
inline Poly poly_times_one_plus_t(const Poly& a)
{
    Poly out(a.size() + 1);
    for (std::size_t k = 0; k < a.size(); ++k)
    {
        out[k] += a[k];
        out[k + 1] += a[k];
    }
    return out;
}

/// Multiplies by t.
inline Poly poly_times_t(const Poly& a)
{
    Poly out(a.size() + 1);
    for (std::size_t k = 0; k < a.size(); ++k)
        out[k + 1] = a[k];
    return out;
}

/// Drops trailing coefficients, which must be zero, down to `length`.
inline Poly poly_truncate_exact(Poly a, std::size_t length)
{
    for (std::size_t k = length; k < a.size(); ++k)
        if (a[k] != 0)
            throw std::logic_error("polynomial identity left a nonzero leading term");
    a.resize(length);
    return a;
}

} // namespace detail

/// Entry (i, k), 0 <= k < i, of the requested triangle from its factorial closed form.
inline BigInt coefficient_closed_form(TriangleKind kind, unsigned i, unsigned k)
{
    if (i < 1 || k >= i)
        throw std::out_of_range("coefficient index outside the triangle");
    const BigInt power_of_two = BigInt(1) << k;
    switch (kind)
    {
    case TriangleKind::A:
        return detail::exact_quotient(factorial(i - 1) * factorial(i) * double_factorial(2L * i - 2L * k - 1) *
                                          power_of_two,
                                      factorial(i - k - 1) * factorial(i - k) * factorial(k));
    case TriangleKind::B:
        return detail::exact_quotient(factorial(i - 1) * factorial(i) * double_factorial(2L * i - 2L * k - 3) *
                                          power_of_two,
                                      factorial(i - k - 1) * factorial(i - k) * factorial(k));
    case TriangleKind::C:
        return detail::exact_quotient(factorial(i - 1) * factorial(i + 1) * double_factorial(2L * i - 2L * k - 1) *
                                          power_of_two,
                                      factorial(i - k - 1) * factorial(i - k + 1) * factorial(k));
    }
    throw std::logic_error("unknown triangle kind");
}

inline CoefficientTriangle triangle_by_closed_form(TriangleKind kind, std::size_t max_row)
{
    if (max_row < 1)
        throw std::invalid_argument("max_row must be at least 1");
    std::vector<std::vector<BigInt>> rows(max_row);
    for (unsigned i = 1; i <= max_row; ++i)
    {
        rows[i - 1].reserve(i);
        for (unsigned k = 0; k < i; ++k)
            rows[i - 1].push_back(coefficient_closed_form(kind, i, k));
    }
    return CoefficientTriangle(kind, std::move(rows));
}

namespace detail {

// Rows 1 .. n of the A triangle from a_{1,0} = 1 and
//   a_{i+1,0} = (1 + 2i) a_{i,0}
//   a_{i+1,i} = 2(i + 1) a_{i,i-1}
//   a_{i+1,k} = [1 + 2(i - k)] a_{i,k} + 2(2i - k + 1) a_{i,k-1},  0 < k < i
inline std::vector<Poly> a_rows_by_recursion(std::size_t n)
{
    std::vector<Poly> rows;
    rows.reserve(n);
    rows.push_back(Poly{1});
    for (std::size_t i = 1; i < n; ++i)
    {
        const Poly& prev = rows.back();
        Poly next(i + 1);
        next[0] = (1 + 2 * i) * prev[0];
        next[i] = 2 * (i + 1) * prev[i - 1];
        for (std::size_t k = 1; k < i; ++k)
            next[k] = (1 + 2 * (i - k)) * prev[k] + 2 * (2 * i - k + 1) * prev[k - 1];
        rows.push_back(std::move(next));
    }
    return rows;
}

} // namespace detail

/// Builds a triangle from the recurrences that generate it: the three-case
/// recursion for A; the Leibniz expansion of (1/h) = -2 t^2 h' for B,
///   P^B_i = 4i (1+t) P^A_i - P^A_{i+1} - 4i(i-1) (1+t)^2 P^A_{i-1};
/// and the sum of the h and 1/h formulas for C,
///   P^C_i = (1+t) P^A_i - t P^B_i.
inline CoefficientTriangle triangle_by_recursion(TriangleKind kind, std::size_t max_row)
{
    using detail::Poly;
    if (max_row < 1)
        throw std::invalid_argument("max_row must be at least 1");
    const std::size_t a_needed = kind == TriangleKind::A ? max_row : max_row + 1;
    std::vector<Poly> a = detail::a_rows_by_recursion(a_needed);
    if (kind == TriangleKind::A)
        return CoefficientTriangle(kind, std::move(a));

    std::vector<Poly> b;
    b.reserve(max_row);
    for (std::size_t i = 1; i <= max_row; ++i)
    {
        const BigInt four_i = 4 * BigInt(i);
        Poly row = detail::poly_scale(detail::poly_times_one_plus_t(a[i - 1]), four_i);
        row = detail::poly_add(std::move(row), detail::poly_scale(a[i], -1));
        if (i >= 2)
        {
            const Poly sq = detail::poly_times_one_plus_t(detail::poly_times_one_plus_t(a[i - 2]));
            row = detail::poly_add(std::move(row), detail::poly_scale(sq, -four_i * (i - 1)));
        }
        b.push_back(detail::poly_truncate_exact(std::move(row), i));
    }
    if (kind == TriangleKind::B)
        return CoefficientTriangle(kind, std::move(b));

    std::vector<Poly> c;
    c.reserve(max_row);
    for (std::size_t i = 1; i <= max_row; ++i)
    {
        Poly row = detail::poly_add(detail::poly_times_one_plus_t(a[i - 1]),
                                    detail::poly_scale(detail::poly_times_t(b[i - 1]), -1));
        c.push_back(detail::poly_truncate_exact(std::move(row), i));
    }
    return CoefficientTriangle(kind, std::move(c));
}

/// mu_k = (2k - 1)!! / ((k - 1)! k!), k = 1 .. n; a_{i,i-k} = mu_k (i-1)!/(i-k)! 2^{i-k} i!.
inline std::vector<BigRational> lambda_sequence(std::size_t n)
{
    std::vector<BigRational> mu;
    mu.reserve(n);
    for (unsigned k = 1; k <= n; ++k)
        mu.emplace_back(double_factorial(2L * k - 1), factorial(k - 1) * factorial(k));
    return mu;
}

/// Coefficient rows in floating point for derivative evaluation, backed by
/// the exact triangle they were rounded from.
struct EvaluationRows
{
    CoefficientTriangle exact;
    std::vector<std::vector<double>> rows;
};

namespace detail {

inline std::shared_ptr<const EvaluationRows> build_evaluation_rows(TriangleKind kind, std::size_t n)
{
    CoefficientTriangle exact = triangle_by_closed_form(kind, n);
    std::vector<std::vector<double>> rows;
    rows.reserve(n);
    for (const auto& row : exact.rows())
    {
        std::vector<double> r;
        r.reserve(row.size());
        for (const BigInt& v : row)
            r.push_back(v.convert_to<double>());
        rows.push_back(std::move(r));
    }
    return std::make_shared<const EvaluationRows>(EvaluationRows{std::move(exact), std::move(rows)});
}

} // namespace detail

/// Memoized triangle with at least `min_rows` rows. Completed triangles are
/// immutable and shared; growth replaces the cached pointer under a lock.
inline std::shared_ptr<const EvaluationRows> cached_rows(TriangleKind kind, std::size_t min_rows)
{
    static std::mutex mutex;
    static std::array<std::shared_ptr<const EvaluationRows>, 3> cache;
    const std::size_t slot = static_cast<std::size_t>(kind);
    std::lock_guard lock(mutex);
    auto& entry = cache[slot];
    if (!entry || entry->exact.max_row() < min_rows)
    {
        const std::size_t current = entry ? entry->exact.max_row() : 0;
        entry = detail::build_evaluation_rows(kind, std::max({min_rows, 2 * current, std::size_t{32}}));
    }
    return entry;
}

} // namespace bernmeans

#endif // BERNMEANS_COEFFICIENTS_HPP
