#include "turan/constants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "turan/errors.hpp"

namespace turan {

namespace {

constexpr double kRelMargin = 1e-9;

// f(c) = c - (R+1) ln(1+c); the largest root of e^c = (c+1)^{R+1}.
// f(R) < 0 for every R >= 1, and f -> +inf, so the largest root is the
// unique sign change right of c = R.
//
// Solved in long double: at R = 10^6 the root sits near 1.7e7, where plain
// double bisection plus the cancellation in c - (R+1)ln(1+c) cannot measure
// residuals below ~1e-9 - the precision the residual fields promise.
long double root_fn(long double c, int R) {
  return c - (R + 1) * std::log1p(c);
}

}  // namespace

double mu_of(double beta, double c, int R) {
  if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("mu_of: beta must be in (0,1)");
  if (!(c > 0.0)) throw std::invalid_argument("mu_of: c must be positive");
  if (R < 1) throw std::invalid_argument("mu_of: R must be >= 1");
  double den = std::pow(beta, R) - std::exp(-c) * std::pow(beta / (1.0 - beta), R);
  if (!(den > 0.0))
    throw DenominatorNonpositive("mu_of: e^{-c} >= (1-beta)^R, density expression undefined");
  return c / den;
}

FeasibilityReport check_feasibility_main(double beta, double c, double mu) {
  if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("feasibility: beta must be in (0,1)");
  if (!(c > 0.0)) throw std::invalid_argument("feasibility: c must be > 0");
  if (!(mu > 0.0)) throw std::invalid_argument("feasibility: mu must be > 0");
  FeasibilityReport rep;
  rep.side_slack = std::floor(beta * mu) - c;
  // the rule's own hypotheses ask for c > 1 and mu > 1; values at or below
  // are evaluable but infeasible, not a usage error
  bool side_ok = rep.side_slack >= 0.0 && c > 1.0 && mu > 1.0;
  bool main_ok = false;
  if (beta * mu > 1.0) {
    double lhs = c / (beta * mu - 1.0) + std::exp(-c) / (1.0 - beta);
    rep.residual = 1.0 - lhs;
    main_ok = lhs <= 1.0 + kRelMargin;
  } else {
    rep.residual = -1.0;
  }
  rep.ok = side_ok && main_ok;
  return rep;
}

FeasibilityReport check_feasibility_general(double beta, double c, double mu, int R) {
  if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("feasibility: beta must be in (0,1)");
  if (!(c > 0.0)) throw std::invalid_argument("feasibility: c must be > 0");
  if (!(mu > 0.0)) throw std::invalid_argument("feasibility: mu must be > 0");
  if (R < 1) throw std::invalid_argument("feasibility: R must be >= 1");
  FeasibilityReport rep;
  double decay = std::pow(1.0 - beta, R);
  double ec = std::exp(-c);
  rep.side_slack = decay - ec;
  bool side_ok = ec < decay;
  double lhs = c / std::pow(beta, R) + ec * mu / decay;
  rep.residual = mu - lhs;
  bool main_ok = lhs <= mu * (1.0 + kRelMargin);
  rep.ok = side_ok && main_ok;
  return rep;
}

CorollaryBounds corollary_bounds(int R) {
  if (R < 3) throw std::invalid_argument("corollary_bounds: R must be >= 3");
  double lr = std::log(static_cast<double>(R));
  double llr = std::log(lr);
  CorollaryBounds b;
  b.lower = R * (lr + llr);
  b.upper = R * (lr + 2.0 * llr);
  b.mu_cap = R * (lr + 3.0 * llr);
  return b;
}

ConstantsReport solve_c0(int R, double tol) {
  if (R < 1) throw std::invalid_argument("solve_c0: R must be >= 1");
  if (!(tol > 0.0)) throw std::invalid_argument("solve_c0: tol must be positive");
  long double lo = static_cast<long double>(R);  // f(R) < 0 always
  long double hi;
  if (R >= 3) {
    CorollaryBounds b = corollary_bounds(R);
    if (root_fn(b.lower, R) < 0.0L) lo = b.lower;
    hi = b.upper;
  } else {
    hi = 10.0L * R + 10.0L;
  }
  int guard = 0;
  while (root_fn(hi, R) <= 0.0L) {
    hi *= 2.0L;
    if (++guard > 200) throw NoRootFound("solve_c0: expanding bracket failed");
  }
  // Bisect until the bracket is tight at working precision (or the caller's
  // coarser target); ~90 halvings always suffice for long double.
  const long double width_goal =
      std::min(static_cast<long double>(tol), 16 * std::numeric_limits<long double>::epsilon());
  for (int it = 0; it < 400 && (hi - lo) > width_goal * std::max(1.0L, hi); ++it) {
    long double mid = 0.5L * (lo + hi);
    if (root_fn(mid, R) < 0.0L) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const long double c0 = 0.5L * (lo + hi);
  ConstantsReport rep;
  rep.R = R;
  rep.c0 = static_cast<double>(c0);
  rep.beta0 = static_cast<double>(c0 / (1.0L + c0));
  // log-space evaluation; (c0+1)^{R+1} overflows a double for large R
  long double log_pow = (R + 1) * std::log1p(c0);
  rep.mu = static_cast<double>(std::exp(log_pow - R * std::log(c0)));
  // Residuals measure the solver's own root before presentation rounding.
  rep.residual_rel = static_cast<double>(std::abs(std::expm1(root_fn(c0, R))));
  if (log_pow < 700.0L) {
    rep.residual = static_cast<double>(std::exp(c0) - std::exp(log_pow));
  } else {
    rep.residual = std::numeric_limits<double>::quiet_NaN();
  }
  rep.feasible_general =
      check_feasibility_general(rep.beta0, rep.c0, rep.mu * (1.0 + 1e-12), R).ok;
  if (R >= 3) {
    CorollaryBounds b = corollary_bounds(R);
    rep.sandwich_lower = b.lower;
    rep.sandwich_upper = b.upper;
    rep.mu_cap = b.mu_cap;
  } else {
    rep.sandwich_lower = rep.sandwich_upper = rep.mu_cap =
        std::numeric_limits<double>::quiet_NaN();
  }
  return rep;
}

}  // namespace turan
