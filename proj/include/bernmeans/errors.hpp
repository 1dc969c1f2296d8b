#ifndef BERNMEANS_ERRORS_HPP
#define BERNMEANS_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bernmeans {

/// Raised when an argument lies outside the domain of the requested function.
class DomainError : public std::domain_error
{
  public:
    using std::domain_error::domain_error;
};

/// Raised by integral evaluators when the adaptive scheme exhausts its
/// subdivision budget before meeting the requested tolerance.
class ConvergenceError : public std::runtime_error
{
  public:
    ConvergenceError(const std::string& what, double error_estimate, std::size_t evaluations)
      : std::runtime_error(what + " (error estimate " + std::to_string(error_estimate) + ")"),
        error_estimate_(error_estimate),
        evaluations_(evaluations)
    {
    }

    double error_estimate() const noexcept { return error_estimate_; }
    std::size_t evaluations() const noexcept { return evaluations_; }

  private:
    double error_estimate_;
    std::size_t evaluations_;
};

namespace detail {

inline void require(bool condition, const char* message)
{
    if (!condition)
        throw DomainError(message);
}

} // namespace detail

} // namespace bernmeans

#endif // BERNMEANS_ERRORS_HPP
