#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "thinshell/fit.hpp"

using namespace thinshell;

namespace {

std::vector<double> grid(double t0, double dt, int n, double (*f)(double)) {
  std::vector<double> v(n);
  for (int k = 0; k < n; ++k) v[k] = f(t0 + k * dt);
  return v;
}

}  // namespace

TEST_SUITE("fit") {
  TEST_CASE("exact lines") {
    const std::vector<double> eps{0.1, 0.05, 0.025};
    Fit f = fit_exponent(eps, {0.1, 0.05, 0.025});
    CHECK(f.slope == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(f.residual <= 1e-14);
    f = fit_exponent(eps, {7.0, 7.0, 7.0});
    CHECK(std::abs(f.slope) <= 1e-14);
    CHECK(std::exp(f.intercept) == doctest::Approx(7.0).epsilon(1e-14));
    std::vector<double> v;
    for (double e : eps) v.push_back(3.0 * std::sqrt(e));
    CHECK(std::abs(fit_exponent(eps, v).slope - 0.5) <= 1e-12);
  }

  TEST_CASE("random power laws") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> U(-2.0, 2.0), C(0.1, 10.0);
    for (int t = 0; t < 50; ++t) {
      const double a = U(rng), c = C(rng);
      std::vector<double> eps, v;
      for (double e = 0.3; e > 0.01; e /= 1.7) {
        eps.push_back(e);
        v.push_back(c * std::pow(e, a));
      }
      const Fit f = fit_exponent(eps, v);
      CHECK(std::abs(f.slope - a) <= 1e-11);
      CHECK(f.residual <= 1e-11);
    }
  }

  TEST_CASE("residual measures the worst deviation") {
    const std::vector<double> eps{0.1, 0.05, 0.025, 0.0125};
    std::vector<double> v{0.1, 0.05, 0.025, 0.0125};
    v[2] *= std::exp(0.3);
    const Fit f = fit_exponent(eps, v);
    CHECK(f.residual > 0.1);
    CHECK(f.residual < 0.3);
  }

  TEST_CASE("bad samples") {
    CHECK_THROWS_AS(fit_exponent({0.1, 0.05, 0.025}, {1.0, 0.0, 1.0}), std::domain_error);
    CHECK_THROWS_AS(fit_exponent({0.1, 0.05, 0.025}, {1.0, -1.0, 1.0}), std::domain_error);
    CHECK_THROWS_AS(fit_exponent({0.1, 0.05, 0.025}, {1.0, NAN, 1.0}), std::domain_error);
    CHECK_THROWS(fit_exponent({0.1}, {1.0}));
    CHECK_THROWS(fit_exponent({0.1, 0.1, 0.1}, {1.0, 2.0, 3.0}));
  }

  TEST_CASE("trapezoid") {
    const auto f = grid(0.0, 0.25, 9, [](double t) { return 2.0 * t + 1.0; });
    CHECK(trapezoid(f, 0.0, 0.25, 0.0, 2.0) == doctest::Approx(6.0).epsilon(1e-14));
    CHECK(trapezoid(f, 0.0, 0.25, 0.1, 1.3) == doctest::Approx(1.3 * 1.3 + 1.3 - 0.01 - 0.1).epsilon(1e-14));
    CHECK_THROWS(trapezoid(f, 0.0, 0.25, 0.0, 3.0));
  }

  TEST_CASE("uniform Gronwall bound") {
    const double dt = 1e-3;
    const int n = 2001;
    {
      const auto z = grid(0.0, dt, n, [](double) { return 1.0; });
      const auto zero = grid(0.0, dt, n, [](double) { return 0.0; });
      const GronwallResult r = gronwall_bound(z, zero, zero, 0.0, dt, 0.5, 1.5);
      CHECK(r.bound == doctest::Approx(1.0).epsilon(1e-14));
      CHECK(r.holds);
    }
    {
      const auto z = grid(0.0, dt, n, [](double t) { return std::exp(t); });
      const auto one = grid(0.0, dt, n, [](double) { return 1.0; });
      const auto zero = grid(0.0, dt, n, [](double) { return 0.0; });
      const GronwallResult r = gronwall_bound(z, one, zero, 0.0, dt, 0.0, 1.0);
      CHECK(r.bound == doctest::Approx((std::exp(1.0) - 1.0) * std::exp(1.0)).epsilon(1e-6));
      CHECK(r.z_t2 == doctest::Approx(std::exp(1.0)).epsilon(1e-12));
      CHECK(r.holds);
    }
    {
      const auto z = grid(0.0, dt, n, [](double t) { return t; });
      const auto one = grid(0.0, dt, n, [](double) { return 1.0; });
      const auto zero = grid(0.0, dt, n, [](double) { return 0.0; });
      const GronwallResult r = gronwall_bound(z, zero, one, 0.0, dt, 0.0, 1.0);
      CHECK(r.bound == doctest::Approx(1.5).epsilon(1e-12));
      CHECK(r.holds);
    }
    {
      // z grows faster than the bound allows when xi underestimates the rate
      const auto z = grid(0.0, dt, n, [](double t) { return std::exp(5.0 * t); });
      const auto zero = grid(0.0, dt, n, [](double) { return 0.0; });
      const GronwallResult r = gronwall_bound(z, zero, zero, 0.0, dt, 0.0, 1.0);
      CHECK_FALSE(r.holds);
    }
    const std::vector<double> z(10, 1.0);
    CHECK_THROWS(gronwall_bound(z, z, z, 0.0, 0.1, 0.5, 0.5));
  }
}
