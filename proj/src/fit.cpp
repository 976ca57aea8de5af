#include "thinshell/fit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace thinshell {

Fit fit_exponent(const std::vector<double>& eps, const std::vector<double>& values) {
  if (eps.size() != values.size()) throw std::invalid_argument("fit_exponent: size mismatch");
  if (eps.size() < 2) throw std::invalid_argument("fit_exponent: need at least 2 samples");
  const size_t n = eps.size();
  std::vector<double> x(n), y(n);
  for (size_t i = 0; i < n; ++i) {
    if (!(values[i] > 0.0) || !(eps[i] > 0.0) || !std::isfinite(values[i]))
      throw std::domain_error("fit_exponent: nonpositive sample");
    x[i] = std::log(eps[i]);
    y[i] = std::log(values[i]);
  }
  double mx = 0.0, my = 0.0;
  for (size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_exponent: all eps equal");
  Fit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  for (size_t i = 0; i < n; ++i) f.residual = std::max(f.residual, std::abs(y[i] - f.intercept - f.slope * x[i]));
  return f;
}

double trapezoid(const std::vector<double>& f, double t0, double dt, double a, double b) {
  if (f.size() < 2 || dt <= 0.0) throw std::invalid_argument("trapezoid: need >= 2 samples and dt > 0");
  const double tmax = t0 + dt * (f.size() - 1);
  if (a < t0 - 1e-12 * dt || b > tmax + 1e-12 * dt || a > b)
    throw std::invalid_argument("trapezoid: interval outside the sample range");
  auto at = [&](double t) {
    const double s = std::clamp((t - t0) / dt, 0.0, static_cast<double>(f.size() - 1));
    const size_t k = std::min(static_cast<size_t>(s), f.size() - 2);
    const double w = s - k;
    return (1.0 - w) * f[k] + w * f[k + 1];
  };
  // Breakpoints: a, grid points strictly inside, b.
  double sum = 0.0, prev_t = a, prev_f = at(a);
  const long k0 = static_cast<long>(std::floor((a - t0) / dt)) + 1;
  for (long k = std::max(0L, k0); k < static_cast<long>(f.size()); ++k) {
    const double t = t0 + k * dt;
    if (t >= b) break;
    if (t <= a) continue;
    sum += 0.5 * (t - prev_t) * (prev_f + f[k]);
    prev_t = t;
    prev_f = f[k];
  }
  sum += 0.5 * (b - prev_t) * (prev_f + at(b));
  return sum;
}

GronwallResult gronwall_bound(const std::vector<double>& z, const std::vector<double>& xi,
                              const std::vector<double>& zeta, double t0, double dt, double t1, double t2) {
  if (!(t1 < t2)) throw std::invalid_argument("gronwall_bound: need t1 < t2");
  if (z.size() != xi.size() || z.size() != zeta.size()) throw std::invalid_argument("gronwall_bound: size mismatch");
  GronwallResult r;
  const double Iz = trapezoid(z, t0, dt, t1, t2);
  const double Ixi = trapezoid(xi, t0, dt, t1, t2);
  const double Izeta = trapezoid(zeta, t0, dt, t1, t2);
  r.bound = (Iz / (t2 - t1) + Izeta) * std::exp(Ixi);
  const double s = (t2 - t0) / dt;
  const size_t k = std::min(static_cast<size_t>(s), z.size() - 2);
  r.z_t2 = (1.0 - (s - k)) * z[k] + (s - k) * z[k + 1];
  r.holds = r.z_t2 <= r.bound * (1.0 + 1e-12);
  return r;
}

}  // namespace thinshell
