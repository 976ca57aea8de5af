#include <doctest.h>

#include <cmath>
#include <numbers>

#include "thinshell/errors.hpp"
#include "thinshell/families.hpp"
#include "thinshell/norms.hpp"
#include "thinshell/operators.hpp"

using namespace thinshell;

namespace {

constexpr double kPi = std::numbers::pi;

ShellConfig unit_shell(const Surface& S, double eps) {
  ShellConfig c = default_shell(S, eps);
  c.g0 = ThicknessFn::parse("const:0");
  c.g1 = ThicknessFn::parse("const:1");
  return c;
}

SField constant_one() {
  return make_surface_field("1", 1, [](const SurfaceJets&) { return V3<JS>{JS(1.0), JS(), JS()}; });
}

VField scaled(VField u, double s) {
  return make_volume_field("s*u", u->dim(), [u, s](const PointCtx& p) {
    V3<JV> v = u->eval(p);
    for (int i = 0; i < 3; ++i) v[i] = v[i] * s;
    return v;
  });
}

}  // namespace

TEST_SUITE("norms") {
  TEST_CASE("surface norms of constants") {
    const auto S = make_sphere();
    const auto ctx = global_context_cache().get(*S, unit_shell(*S, 0.1));
    CHECK(surface_lp_norm(*ctx, *constant_one()) == doctest::Approx(std::sqrt(4.0 * kPi)).epsilon(1e-12));
    CHECK(surface_wmp_norm(*ctx, *constant_one(), 2) == doctest::Approx(std::sqrt(4.0 * kPi)).epsilon(1e-12));
    CHECK(surface_lp_norm(*ctx, *constant_one(), 4.0) == doctest::Approx(std::pow(4.0 * kPi, 0.25)).epsilon(1e-12));
    CHECK(surf_lp(*ctx, [](const Column&) { return 1.0; }) == doctest::Approx(std::sqrt(4.0 * kPi)).epsilon(1e-12));
  }

  TEST_CASE("volume norm of a constant extension") {
    const auto S = make_perturbed_sphere();
    const SField eta = tangential_scalar(0, 1);
    for (double eps : {0.1, 0.05, 0.025}) {
      const auto ctx = global_context_cache().get(*S, unit_shell(*S, eps));
      const double q = lp_norm(*ctx, *constant_extension(eta)) / surface_lp_norm(*ctx, *eta);
      const double c = 2.0 * S->max_abs_kappa;
      CHECK(q >= std::sqrt(eps * (1.0 - c * eps)));
      CHECK(q <= std::sqrt(eps * (1.0 + c * eps)));
    }
  }

  TEST_CASE("homogeneity and ordering") {
    for (const char* name : {"sphere", "torus"}) {
      const auto S = make_surface(name);
      const auto ctx = global_context_cache().get(*S, default_shell(*S, 0.1));
      for (int m = 0; m < 3; ++m) {
        const VField u = unconstrained_vector(m, 1);
        const VField u2 = scaled(u, 2.0);
        const NormParts a = volume_norms(*ctx, *u, 2), b = volume_norms(*ctx, *u2, 2);
        for (int k = 0; k <= 2; ++k) CHECK(b.w(k) == doctest::Approx(2.0 * a.w(k)).epsilon(1e-12));
        CHECK(a.w(0) <= a.w(1));
        CHECK(a.w(1) <= a.w(2));
        CHECK(lp_norm(*ctx, *u2, 3.0) == doctest::Approx(2.0 * lp_norm(*ctx, *u, 3.0)).epsilon(1e-12));
        CHECK(boundary_lp_norm(*ctx, *u2, 1) == doctest::Approx(2.0 * boundary_lp_norm(*ctx, *u, 1)).epsilon(1e-12));
        CHECK(linf_norm(*ctx, *u2) == doctest::Approx(2.0 * linf_norm(*ctx, *u)).epsilon(1e-12));
        CHECK(lp_norm(*ctx, *u) == doctest::Approx(a.w(0)).epsilon(1e-12));
        CHECK(wmp_norm(*ctx, *u, 1) == doctest::Approx(a.w(1)).epsilon(1e-12));
      }
      const SField v = tangential_vector(0, 2);
      const NormParts s = surface_norms(*ctx, *v, 2);
      CHECK(s.w(0) <= s.w(1));
      CHECK(s.w(1) <= s.w(2));
    }
  }

  TEST_CASE("sup norm bounds the L2 average") {
    const auto S = make_sphere();
    const auto ctx = global_context_cache().get(*S, unit_shell(*S, 0.1));
    const VField u = unconstrained_scalar(0, 1);
    const double vol = 4.0 * kPi / 3.0 * (1.331 - 1.0);
    CHECK(lp_norm(*ctx, *u) <= linf_norm(*ctx, *u) * std::sqrt(vol) * (1.0 + 1e-12));
    const VField one = constant_extension(constant_one());
    CHECK(linf_norm(*ctx, *one) == 1.0);
    CHECK(vol_sup(*ctx, [](const PointCtx& p) { return p.r.value(); }) == doctest::Approx(0.1).epsilon(1e-14));
  }

  TEST_CASE("boundary norms") {
    const auto S = make_sphere();
    const auto ctx = global_context_cache().get(*S, unit_shell(*S, 0.1));
    const VField one = constant_extension(constant_one());
    CHECK(boundary_lp_norm(*ctx, *one, 0) == doctest::Approx(std::sqrt(4.0 * kPi)).epsilon(1e-12));
    CHECK(boundary_lp_norm(*ctx, *one, 1) == doctest::Approx(1.1 * std::sqrt(4.0 * kPi)).epsilon(1e-12));
  }

  TEST_CASE("finite-difference adapter") {
    const auto S = make_torus();
    const auto ctx = global_context_cache().get(*S, default_shell(*S, 0.1));
    const VField fd = fd_adapter("fd", 1, [](const V3d& x) { return V3d(std::sin(x[0]) * x[2] + x[1] * x[1], 0, 0); });
    const VField an = make_volume_field("an", 1, [](const PointCtx& p) {
      return V3<JV>{sin(p.x[0]) * p.x[2] + p.x[1] * p.x[1], JV(), JV()};
    });
    CHECK(wmp_norm(*ctx, *fd, 1) == doctest::Approx(wmp_norm(*ctx, *an, 1)).epsilon(1e-8));
    CHECK_THROWS_AS(wmp_norm(*ctx, *fd, 2), CapabilityError);
    CHECK_THROWS_AS(volume_norms(*ctx, *fd, 2), CapabilityError);
  }
}
