#ifndef BERNMEANS_TESTS_ORACLES_HPP
#define BERNMEANS_TESTS_ORACLES_HPP

// Reference values computed independently of the library: long double
// finite differences and direct closed forms.

#include <cmath>
#include <cstdint>
#include <random>

namespace oracle {

/// n-th derivative by central differences in long double, with two rounds of
/// Richardson extrapolation over the spacings h, 2h, 4h (error O(h^6)).
template <class F>
long double derivative(F f, int n, long double t, long double h)
{
    auto quotient = [&](long double step) {
        long double sum = 0.0L;
        long double binom = 1.0L;
        for (int j = 0; j <= n; ++j)
        {
            sum += ((j % 2 == 0) ? 1.0L : -1.0L) * binom * f(t + (0.5L * n - j) * step);
            binom = binom * (n - j) / (j + 1);
        }
        return sum / std::pow(step, static_cast<long double>(n));
    };
    const long double d1 = quotient(h), d2 = quotient(2 * h), d4 = quotient(4 * h);
    const long double r1 = (4 * d1 - d2) / 3, r2 = (4 * d2 - d4) / 3;
    return (16 * r1 - r2) / 15;
}

inline long double h(long double t) { return std::sqrt(1.0L + 1.0L / t); }
inline long double h_reciprocal(long double t) { return std::sqrt(t / (1.0L + t)); }
inline long double H(long double t) { return (1.0L + 2.0L * t) / std::sqrt(t * (1.0L + t)); }

/// Deterministic generator of positive pairs, log-uniform on [lo, hi].
class PairGenerator
{
  public:
    explicit PairGenerator(std::uint64_t seed, double lo = 1e-3, double hi = 1e3)
      : rng_(seed), dist_(std::log(lo), std::log(hi))
    {
    }
    double next() { return std::exp(dist_(rng_)); }
    double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng_); }

  private:
    std::mt19937_64 rng_;
    std::uniform_real_distribution<double> dist_;
};

inline double relative_error(double value, double reference)
{
    return std::abs(value - reference) / std::max(std::abs(reference), 1e-300);
}

} // namespace oracle

#endif // BERNMEANS_TESTS_ORACLES_HPP
