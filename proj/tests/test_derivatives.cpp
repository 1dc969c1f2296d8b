#include <cmath>

#include <gtest/gtest.h>

#include "bernmeans/derivatives.hpp"
#include "support/oracles.hpp"

using namespace bernmeans;

namespace {

const double sqrt2 = std::sqrt(2.0);

std::vector<double> log_grid()
{
    std::vector<double> g;
    for (int k = -60; k <= 60; ++k)
        g.push_back(std::pow(10.0, k / 20.0));
    return g;
}

} // namespace

TEST(Kernels, OrderZero)
{
    EXPECT_NEAR(h_derivative(0, 1.0), sqrt2, 1e-15);
    EXPECT_NEAR(h_reciprocal_derivative(0, 1.0), 1.0 / sqrt2, 1e-15);
    EXPECT_NEAR(H_kernel_derivative(0, 1.0), 3.0 / sqrt2, 1e-15);
}

TEST(Kernels, SymbolicLowOrders)
{
    EXPECT_NEAR(h_derivative(1, 1.0), -1.0 / (2.0 * sqrt2), 1e-13);
    EXPECT_NEAR(h_reciprocal_derivative(1, 1.0), 1.0 / (2.0 * std::pow(2.0, 1.5)), 1e-13);
    EXPECT_NEAR(h_reciprocal_derivative(2, 1.0), -5.0 / (4.0 * std::pow(2.0, 2.5)), 1e-13);
    EXPECT_NEAR(H_kernel_derivative(1, 1.0), -1.0 / (2.0 * std::pow(2.0, 1.5)), 1e-13);
    EXPECT_NEAR(H_kernel_derivative(2, 1.0), 9.0 / (4.0 * std::pow(2.0, 2.5)), 1e-13);
}

TEST(Kernels, SymbolicFirstDerivativesEverywhere)
{
    for (double t : log_grid())
    {
        const double h = std::sqrt(1.0 + 1.0 / t);
        EXPECT_LE(oracle::relative_error(h_derivative(1, t), -1.0 / (2.0 * t * t * h)), 1e-13) << t;
        EXPECT_LE(oracle::relative_error(h_reciprocal_derivative(1, t), 0.5 / (std::sqrt(t) * std::pow(1.0 + t, 1.5))),
                  1e-13)
            << t;
        EXPECT_LE(oracle::relative_error(H_kernel_derivative(1, t), -0.5 / std::pow(t * (1.0 + t), 1.5)), 1e-13) << t;
    }
}

TEST(Kernels, AgreeWithFiniteDifferences)
{
    for (int i = 1; i <= 5; ++i)
        for (double t : {0.5, 1.0, 2.0, 10.0})
        {
            const long double step = t * 1e-2;
            const auto h = [](long double s) { return oracle::h(s); };
            const auto hr = [](long double s) { return oracle::h_reciprocal(s); };
            const auto H = [](long double s) { return oracle::H(s); };
            EXPECT_LE(oracle::relative_error(h_derivative(i, t), static_cast<double>(oracle::derivative(h, i, t, step))), 1e-6)
                << "h order " << i << " t " << t;
            EXPECT_LE(oracle::relative_error(h_reciprocal_derivative(i, t),
                                             static_cast<double>(oracle::derivative(hr, i, t, step))),
                      1e-6)
                << "1/h order " << i << " t " << t;
            EXPECT_LE(oracle::relative_error(H_kernel_derivative(i, t), static_cast<double>(oracle::derivative(H, i, t, step))),
                      1e-6)
                << "H order " << i << " t " << t;
        }
}

TEST(Kernels, HIsSumOfHAndReciprocalAtEveryOrder)
{
    for (int i = 0; i <= 30; ++i)
        for (double t : {0.01, 0.3, 1.0, 7.0, 200.0})
        {
            const double sum = h_derivative(i, t) + h_reciprocal_derivative(i, t);
            const double scale = std::abs(h_derivative(i, t)) + std::abs(h_reciprocal_derivative(i, t));
            EXPECT_NEAR(H_kernel_derivative(i, t), sum, 1e-13 * scale) << i << " " << t;
        }
}

TEST(Kernels, SignsAlternateThroughOrderThirty)
{
    for (int i = 1; i <= 30; ++i)
    {
        const double sign = i % 2 == 0 ? 1.0 : -1.0;
        for (double t : log_grid())
        {
            EXPECT_GT(sign * h_derivative(i, t), 0.0) << i << " " << t;
            EXPECT_GT(-sign * h_reciprocal_derivative(i, t), 0.0) << i << " " << t;
            EXPECT_GT(sign * H_kernel_derivative(i, t), 0.0) << i << " " << t;
        }
    }
}

TEST(Kernels, HighOrdersKeepSignWithoutNaN)
{
    for (double t : {1e-3, 1.0, 1e3})
    {
        EXPECT_GT(h_derivative(60, t), 0.0);
        EXPECT_LT(h_derivative(61, t), 0.0);
        EXPECT_FALSE(std::isnan(H_kernel_derivative(80, t)));
    }
}

TEST(Kernels, RejectBadArguments)
{
    EXPECT_THROW(h_derivative(1, 0.0), DomainError);
    EXPECT_THROW(h_derivative(1, -1.0), DomainError);
    EXPECT_THROW(h_reciprocal_derivative(2, 0.0), DomainError);
    EXPECT_THROW(H_kernel_derivative(-1, 1.0), DomainError);
}

TEST(FofU, FirstDerivativeExample)
{
    EXPECT_NEAR(f_u_derivative(1, 0.25), -1.5, 1e-14);
    EXPECT_NEAR(f_u_derivative(1, 1.0 - 1e-12), 0.0, 1e-11);
}

TEST(FofU, MatchesFiniteDifferences)
{
    const auto f = [](long double u) { return 0.5L * (std::sqrt(u) + 1.0L / std::sqrt(u)); };
    for (int i = 1; i <= 5; ++i)
        for (double u : {0.1, 0.3, 0.5, 0.8})
            EXPECT_LE(oracle::relative_error(f_u_derivative(i, u),
                                             static_cast<double>(oracle::derivative(f, i, u, 1e-2L * u))),
                      1e-6)
                << i << " " << u;
}

TEST(FofU, SignsAlternateOnTheUnitInterval)
{
    for (int i = 1; i <= 20; ++i)
        for (int k = 1; k < 100; ++k)
        {
            const double u = k / 100.0;
            EXPECT_GT((i % 2 == 0 ? 1.0 : -1.0) * f_u_derivative(i, u), 0.0) << i << " " << u;
        }
}

TEST(FofU, Domain)
{
    EXPECT_THROW(f_u_derivative(1, 0.0), DomainError);
    EXPECT_THROW(f_u_derivative(1, 1.0), DomainError);
    EXPECT_THROW(f_u(1.5), DomainError);
}

TEST(GPrime, Examples)
{
    const PositivePair p(2.0, 1.0);
    EXPECT_NEAR(G_shifted_derivative_order(0, p, Shift(0.0)), 3.0 / (2.0 * sqrt2), 1e-14);
    EXPECT_NEAR(G_shifted_derivative_order(0, p, Shift(0.0)), geometric_derivative(p, Shift(0.0)), 1e-15);
    EXPECT_NEAR(G_shifted_derivative_order(1, p, Shift(0.0)), -1.0 / (4.0 * std::pow(2.0, 1.5)), 1e-14);
    EXPECT_THROW(G_shifted_derivative_order(1, PositivePair(1.0, 1.0), Shift(0.0)), DomainError);
    EXPECT_THROW(G_shifted_derivative_order(1, p, Shift(-1.0)), DomainError);
}

TEST(GPrime, SymmetricInArgumentsAndCompletelyMonotonic)
{
    oracle::PairGenerator gen(5);
    for (int trial = 0; trial < 50; ++trial)
    {
        const double x = gen.next(), y = gen.next();
        if (x == y)
            continue;
        const double t = -std::min(x, y) + gen.next();
        for (int i = 1; i <= 12; ++i)
        {
            const double a = G_shifted_derivative_order(i, PositivePair(x, y), Shift(t));
            const double b = G_shifted_derivative_order(i, PositivePair(y, x), Shift(t));
            EXPECT_EQ(a, b);
            EXPECT_GT((i % 2 == 0 ? 1.0 : -1.0) * a, 0.0);
        }
    }
}

TEST(GPrime, MatchesFiniteDifferencesOfG)
{
    const PositivePair p(3.0, 1.0);
    const auto G = [](long double s) { return std::sqrt((3.0L + s) * (1.0L + s)); };
    for (double t : {-0.5, 0.0, 2.0})
        for (int i = 0; i <= 3; ++i)
        {
            const double reference = static_cast<double>(oracle::derivative(G, i + 1, t, 1e-2L * (1.0 + t)));
            EXPECT_LE(oracle::relative_error(G_shifted_derivative_order(i, p, Shift(t)), reference), 1e-6)
                << i << " " << t;
        }
}
