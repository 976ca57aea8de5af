#pragma once

// Log-log exponent fitting and the uniform Gronwall bound.

#include <vector>

namespace thinshell {

struct Fit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // max |log v - (intercept + slope log eps)|
};

// Least squares in log-log space. Needs >= 2 samples (>= 3 for a meaningful
// residual) and positive values; throws std::domain_error otherwise.
Fit fit_exponent(const std::vector<double>& eps, const std::vector<double>& values);

struct GronwallResult {
  double bound = 0.0;
  double z_t2 = 0.0;
  bool holds = false;
};

// Samples on the uniform grid t_k = t0 + k dt. Integrals over [t1, t2] by
// the trapezoid rule with linear interpolation at the ends.
GronwallResult gronwall_bound(const std::vector<double>& z, const std::vector<double>& xi,
                              const std::vector<double>& zeta, double t0, double dt, double t1, double t2);

// Trapezoid integral of uniformly sampled data over [a, b].
double trapezoid(const std::vector<double>& f, double t0, double dt, double a, double b);

}  // namespace thinshell
