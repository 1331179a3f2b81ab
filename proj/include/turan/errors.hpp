#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace turan {

// Configuration violates the feasibility conditions of the chosen recursion.
struct ConfigInfeasible : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Random mode failed to meet the size bound within max_resamples attempts.
struct ResampleExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Enumeration or materialization would exceed the configured budget.
struct InstanceTooLarge : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// mu is undefined for the given (beta, c, R): the denominator of the
// density expression is not positive.
struct DenominatorNonpositive : std::domain_error {
  using std::domain_error::domain_error;
};

// Root bracketing failed (should not happen for R >= 1).
struct NoRootFound : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Exact search ran out of nodes; carries the bounds proven so far.
struct BudgetExhausted : std::runtime_error {
  BudgetExhausted(const std::string& msg, std::uint64_t upper, std::uint64_t lower)
      : std::runtime_error(msg), best_upper(upper), proven_lower(lower) {}
  std::uint64_t best_upper;
  std::uint64_t proven_lower;
};

// Malformed system file.
struct SystemFileError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace turan
