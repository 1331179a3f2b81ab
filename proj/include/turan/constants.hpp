#pragma once

#include <cstdint>

namespace turan {

// Everything here is double-precision real analysis; exact arithmetic is
// not needed because all consumers re-check their own exact bounds.

// mu as a function of (beta, c) for a given gap R:
//   mu = c / (beta^R - e^{-c} * (beta / (1 - beta))^R).
// Throws DenominatorNonpositive when the denominator is <= 0, i.e. when
// e^{-c} >= (1 - beta)^R. Requires beta in (0, 1), c > 0, R >= 1.
double mu_of(double beta, double c, int R);

struct FeasibilityReport {
  bool ok = false;
  // Slack of the side condition: floor(beta*mu) - c for the one-step
  // recursion, (1-beta)^R - e^{-c} for the general one. Positive is good.
  double side_slack = 0.0;
  // Slack of the main inequality (rhs - lhs). Positive is good.
  double residual = 0.0;
};

// Conditions for the one-step recursion (s = r + 1):
//   c > 1, mu > 1, floor(beta * mu) >= c, and
//   c/(beta*mu - 1) + e^{-c}/(1-beta) <= 1.
// A relative safety margin of 1e-9 is applied to the <= comparison.
// Requires beta in (0,1), c > 0, mu > 0; c or mu at or below 1 reports
// infeasible rather than erroring.
FeasibilityReport check_feasibility_main(double beta, double c, double mu);

// Conditions for the general-gap recursion:
//   e^{-c} < (1-beta)^R   and   c/beta^R + e^{-c}*mu/(1-beta)^R <= mu.
// Same 1e-9 relative margin on the <= comparison. Requires beta in (0,1),
// c > 0, mu > 0, R >= 1.
FeasibilityReport check_feasibility_general(double beta, double c, double mu, int R);

struct CorollaryBounds {
  double lower;   // R ln R + R ln ln R
  double upper;   // R ln R + 2 R ln ln R
  double mu_cap;  // R ln R + 3 R ln ln R
};

// Asymptotic sandwich for c0 and the matching cap on mu. Requires R >= 3
// (ln ln R must be positive).
CorollaryBounds corollary_bounds(int R);

struct ConstantsReport {
  int R = 1;
  double c0 = 0.0;     // largest root of e^c = (c+1)^{R+1}
  double beta0 = 0.0;  // c0 / (1 + c0)
  double mu = 0.0;     // (c0+1)^{R+1} / c0^R, evaluated in log space
  // e^{c0} - (c0+1)^{R+1}; NaN when either side overflows a double.
  double residual = 0.0;
  // |e^{c0} / (c0+1)^{R+1} - 1|; computable at every R.
  double residual_rel = 0.0;
  bool feasible_general = false;
  // corollary_bounds when R >= 3, NaN otherwise
  double sandwich_lower = 0.0;
  double sandwich_upper = 0.0;
  double mu_cap = 0.0;
};

// Finds the largest root of c = (R+1) ln(1+c) by bisection and derives the
// optimal (beta0, mu). tol is a relative width target for the bracket; the
// solver may converge tighter. Internally runs in extended precision so the
// reported residuals stay meaningful even when the root is ~1e7 (R = 10^6);
// the residual fields describe the internal root, whose double rounding is
// what the c0 field carries.
ConstantsReport solve_c0(int R, double tol = 1e-13);

}  // namespace turan
