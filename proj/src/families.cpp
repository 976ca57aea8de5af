#include "thinshell/families.hpp"

#include <cmath>
#include <numbers>

#include "thinshell/errors.hpp"
#include "thinshell/operators.hpp"
#include "thinshell/quadrature.hpp"

namespace thinshell {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

// Harmonic polynomials of degree <= 2.
template <class T>
std::array<T, 8> harmonic_basis(const V3<T>& y) {
  return {y[0], y[1], y[2], y[0] * y[1], y[1] * y[2], y[0] * y[2], y[0] * y[0] - y[1] * y[1],
          y[1] * y[1] - y[2] * y[2]};
}

bool is_sphere(const Surface& S) { return S.name == "sphere"; }

}  // namespace

std::string tags_string(unsigned tags) {
  static const std::pair<unsigned, const char*> names[] = {
      {kScalar, "scalar"},           {kVector, "vector"},    {kSurface, "surface"}, {kTangential, "tangential"},
      {kImpermeable, "impermeable"}, {kDivFree, "divfree"}, {kSlip, "slip"},       {kOrthogonal, "orthogonal"}};
  std::string s;
  for (const auto& [bit, nm] : names)
    if (tags & bit) s += (s.empty() ? "" : "+") + std::string(nm);
  return s;
}

const std::vector<FamilyInfo>& family_catalog() {
  static const std::vector<FamilyInfo> cat = {
      {"unconstrained_scalar", kScalar},
      {"unconstrained_smooth", kVector},
      {"tangential_scalar", kScalar | kSurface},
      {"tangential_harmonics", kVector | kSurface | kTangential},
      {"killing_sphere", kVector | kSurface | kTangential},
      {"impermeable_generic", kVector | kImpermeable},
      {"divfree_impermeable", kVector | kImpermeable | kDivFree},
      {"slip_shell", kVector | kImpermeable | kDivFree | kSlip},
      {"slip_shell_orth", kVector | kImpermeable | kDivFree | kSlip | kOrthogonal},
      {"rigid_rotation", kVector | kImpermeable | kDivFree | kSlip},
  };
  return cat;
}

const FamilyInfo& family_info(const std::string& name) {
  for (const auto& f : family_catalog())
    if (f.name == name) return f;
  throw ConfigError("unknown field family '" + name + "'");
}

ParamStream::ParamStream(std::uint64_t seed, const std::string& family, int member)
    : rng_(fnv1a(family) ^ seed ^ (static_cast<std::uint64_t>(member) * 0x9E3779B97F4A7C15ull)) {}

double ParamStream::uniform() {
  return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
}

V3d ParamStream::vec(double a, double b) {
  const double x = uniform(a, b), y = uniform(a, b), z = uniform(a, b);
  return V3d(x, y, z);
}

SField tangential_scalar(int member, std::uint64_t seed) {
  std::array<double, 8> coef{};
  if (member == 0) {
    coef[2] = 1.0;
  } else {
    ParamStream ps(seed, "tangential_scalar", member);
    for (auto& c : coef) c = ps.uniform(-1.0, 1.0);
  }
  return make_surface_field("tangential_scalar#" + std::to_string(member), 1, [coef](const SurfaceJets& sj) {
    const auto b = harmonic_basis(truncate<2>(sj.mu));
    JS s;
    for (int i = 0; i < 8; ++i) s += b[i] * coef[i];
    return V3<JS>(s, JS(0.0), JS(0.0));
  });
}

SField tangential_vector(int member, std::uint64_t seed) {
  ParamStream ps(seed, "tangential_harmonics", member);
  const V3d a = ps.vec(-1.0, 1.0), c = ps.vec(-1.0, 1.0);
  M3d B;
  for (auto& e : B.a) e = ps.uniform(-1.0, 1.0);
  return make_surface_field("tangential_harmonics#" + std::to_string(member), 3, [a, B, c](const SurfaceJets& sj) {
    const V3<JS> y = truncate<2>(sj.mu);
    const V3<JS> w = cross(lift<JS>(a), y) + lift<JS>(B) * y + lift<JS>(c);
    return projector<2>(sj) * w;
  });
}

SField killing_vector(const Surface& S, int member, std::uint64_t seed) {
  ParamStream ps(seed, "killing_sphere", member);
  V3d a = ps.vec(-1.0, 1.0);
  if (S.name == "torus")
    a = V3d(0.0, 0.0, a[2]);
  else if (!is_sphere(S))
    throw UnsupportedConfiguration("killing fields are only generated on spheres and tori");
  return make_surface_field("killing_sphere#" + std::to_string(member), 3, [a](const SurfaceJets& sj) {
    return cross(lift<JS>(a), truncate<2>(sj.mu));
  });
}

VField unconstrained_scalar(int member, std::uint64_t seed) {
  ParamStream ps(seed, "unconstrained_scalar", member);
  const V3d k = ps.vec(-1.2, 1.2);
  const double c = ps.uniform(0.0, kTwoPi), b = ps.uniform(-1.0, 1.0);
  return make_volume_field("unconstrained_scalar#" + std::to_string(member), 1, [k, c, b](const PointCtx& p) {
    const JV f = sin(dot(lift<JV>(k), p.x) + c) + p.r * b;
    return V3<JV>(f, JV(0.0), JV(0.0));
  });
}

VField unconstrained_vector(int member, std::uint64_t seed) {
  ParamStream ps(seed, "unconstrained_smooth", member);
  std::array<V3d, 3> k;
  std::array<double, 3> c{}, b{};
  for (int i = 0; i < 3; ++i) {
    k[i] = ps.vec(-1.2, 1.2);
    c[i] = ps.uniform(0.0, kTwoPi);
    b[i] = ps.uniform(-1.0, 1.0);
  }
  V3d o = ps.vec(-1.0, 1.0);
  o = o * (2.5 / norm(o));
  return make_volume_field("unconstrained_smooth#" + std::to_string(member), 3, [k, c, b, o](const PointCtx& p) {
    V3<JV> u;
    for (int i = 0; i < 3; ++i) u[i] = sin(dot(lift<JV>(k[i]), p.x) + c[i]) + p.r * b[i] + o[i];
    return u;
  });
}

VField impermeable_generic(int member, std::uint64_t seed) {
  const SField v = tangential_vector(member + 101, seed);
  const SField q = tangential_scalar(member + 101, seed);
  return make_volume_field("impermeable_generic#" + std::to_string(member), 3, [v, q](const PointCtx& p) {
    const Column& c = *p.col;
    const double eps = c.ctx->eps();
    const JV chi = (p.r - lift(p, c.g0) * eps) * (lift(p, c.g1) * eps - p.r);
    const JV qb = lift(p, q->eval(c)[0]);
    return impermeable_extension_at(p, v->eval(c)) + scale(nbar(p), chi * qb);
  });
}

VField divfree_impermeable(int member, std::uint64_t seed) {
  ParamStream ps(seed, "divfree_impermeable", member);
  const V3d k = ps.vec(-1.5, 1.5);
  const double c0 = ps.uniform(0.0, kTwoPi);
  return make_volume_field("divfree_impermeable#" + std::to_string(member), 3, [k, c0](const PointCtx& p) {
    const Column& c = *p.col;
    const double eps = c.ctx->eps();
    const V3<JV> gphi = scale(lift<JV>(k), cos(dot(lift<JV>(k), p.x) + c0));
    const M3<JV> Binv = inverse(identity<JV>() - scale(Wbar(p), p.r));
    const V3<JV> gg0 = Binv * lift(p, c.gradg[0]);
    const V3<JV> gg1 = Binv * lift(p, c.gradg[1]);
    const JV ig = recip(lift(p, c.g));
    const JV psi = (p.r - lift(p, c.g0) * eps) * ig;
    const V3<JV> gpsi = scale(nbar(p) - gg0 * eps - scale(gg1 - gg0, psi), ig);
    return cross(gphi, gpsi);
  });
}

SlipProfile slip_profile(double R0, double L, double gamma0, double gamma1, double nu, double kappa, bool orthogonal) {
  const double k0 = gamma0 / nu, k1 = gamma1 / nu;
  const double c3 = kappa / L;
  const double den = 2.0 * L + k1 * L * L;
  // c2 = c2a * alpha + c2b
  const double c2a = (-k1 * (1.0 + k0 * L) - k0) / den;
  const double c2b = (-k1 * c3 * L * L * L - 3.0 * c3 * L * L) / den;
  double alpha = 1.0;
  if (orthogonal) {
    const Rule1D gl = gauss_legendre(6, 0.0, L);
    double A = 0.0, B = 0.0;
    for (size_t j = 0; j < gl.nodes.size(); ++j) {
      const double t = gl.nodes[j], w4 = std::pow(R0 + t, 4) * gl.weights[j];
      A += w4 * (1.0 + k0 * t + c2a * t * t);
      B += w4 * (c2b * t * t + c3 * t * t * t);
    }
    alpha = -B / A;
  }
  SlipProfile s;
  s.alpha = alpha;
  s.beta = k0 * alpha;
  s.c2 = c2a * alpha + c2b;
  s.c3 = c3;
  s.R0 = R0;
  s.L = L;
  return s;
}

VField slip_shell(const ShellContext& ctx, int member, std::uint64_t seed, bool orthogonal) {
  const Surface& S = ctx.surface();
  const ShellConfig& cfg = ctx.config();
  if (!is_sphere(S) || !cfg.g0.is_constant() || !cfg.g1.is_constant())
    throw UnsupportedConfiguration("slip_shell needs a sphere with constant thickness functions");
  const std::string fam = orthogonal ? "slip_shell_orth" : "slip_shell";
  ParamStream ps(seed, fam, member);
  const V3d a = ps.vec(-1.0, 1.0);
  const double kappa = (ps.uniform() < 0.5 ? -1.0 : 1.0) * ps.uniform(0.5, 1.5);
  const double R = S.params.at("R");
  const double R0 = R + cfg.eps * cfg.g0.a, L = cfg.eps * (cfg.g1.a - cfg.g0.a);
  const SlipProfile sp = slip_profile(R0, L, cfg.gamma0, cfg.gamma1, cfg.nu, kappa, orthogonal);
  return make_volume_field(fam + "#" + std::to_string(member), 3, [a, sp](const PointCtx& p) {
    const JV t = sqrt(dot(p.x, p.x)) - sp.R0;
    const JV f = sp.alpha + t * (sp.beta + t * (sp.c2 + t * sp.c3));
    return scale(cross(lift<JV>(a), p.x), f);
  });
}

VField rigid_rotation(const ShellContext& ctx, int member, std::uint64_t seed) {
  const Surface& S = ctx.surface();
  const ShellConfig& cfg = ctx.config();
  ParamStream ps(seed, "rigid_rotation", member);
  V3d a = ps.vec(-1.0, 1.0);
  auto axisym = [](const ThicknessFn& g) {
    return g.is_constant() || g.kind == ThicknessFn::Kind::LinearZ;
  };
  if (S.name == "torus" && axisym(cfg.g0) && axisym(cfg.g1)) {
    a = V3d(0.0, 0.0, a[2] < 0 ? a[2] - 0.5 : a[2] + 0.5);
  } else if (!(is_sphere(S) && cfg.g0.is_constant() && cfg.g1.is_constant())) {
    throw UnsupportedConfiguration("no rigid rotation is tangent to this shell's boundary");
  }
  return make_volume_field("rigid_rotation#" + std::to_string(member), 3,
                           [a](const PointCtx& p) { return cross(lift<JV>(a), p.x); });
}

SField surface_member(const std::string& family, const Surface& S, int member, std::uint64_t seed) {
  if (family == "tangential_scalar") return tangential_scalar(member, seed);
  if (family == "tangential_harmonics") return tangential_vector(member, seed);
  if (family == "killing_sphere") return killing_vector(S, member, seed);
  family_info(family);
  throw ConfigError("family '" + family + "' does not produce surface fields");
}

VField volume_member(const std::string& family, const ShellContext& ctx, int member, std::uint64_t seed) {
  if (family == "unconstrained_scalar") return unconstrained_scalar(member, seed);
  if (family == "unconstrained_smooth") return unconstrained_vector(member, seed);
  if (family == "impermeable_generic") return impermeable_generic(member, seed);
  if (family == "divfree_impermeable") return divfree_impermeable(member, seed);
  if (family == "slip_shell") return slip_shell(ctx, member, seed, false);
  if (family == "slip_shell_orth") return slip_shell(ctx, member, seed, true);
  if (family == "rigid_rotation") return rigid_rotation(ctx, member, seed);
  family_info(family);
  throw ConfigError("family '" + family + "' does not produce volume fields");
}

double tag_violation(const ShellContext& ctx, const VolumeField& u, unsigned tags) {
  double worst = 0.0;
  if (tags & kImpermeable) {
    double m = 0.0, s = 0.0;
    for (const auto& c : ctx.columns())
      for (int i = 0; i < 2; ++i) {
        const V3d v = value(u.eval(c.boundary(i)));
        m = std::max(m, std::abs(dot(v, boundary_normal(c, i))));
        s = std::max(s, norm(v));
      }
    worst = std::max(worst, s > 0 ? m / s : m);
  }
  if (tags & (kDivFree | kSlip)) {
    double dmax = 0.0, gmax = 0.0, smax = 0.0, umax = 0.0;
    const double nu = ctx.config().nu;
    for (const auto& c : ctx.columns()) {
      for (int j = 0; j < c.n_radial; ++j) {
        const PointCtx& p = c.radial(j);
        const V3<JV> v = u.eval(p);
        dmax = std::max(dmax, std::abs(div(p, v).value()));
        gmax = std::max(gmax, frob(value(grad(p, v))));
      }
      if (tags & kSlip)
        for (int i = 0; i < 2; ++i) {
          const PointCtx& p = c.boundary(i);
          const V3<JV> v = u.eval(p);
          const M3d D = value(strain_rate(p, v));
          const V3d n = boundary_normal(c, i);
          const M3d P = identity<double>() - outer(n, n);
          const V3d res = P * (D * n) * (2.0 * nu) + value(v) * ctx.gamma(i);
          smax = std::max(smax, norm(res));
          umax = std::max(umax, norm(value(v)));
        }
    }
    const double scale = std::max(gmax, umax);
    if (tags & kDivFree) worst = std::max(worst, gmax > 0 ? dmax / gmax : dmax);
    if (tags & kSlip) worst = std::max(worst, scale > 0 ? smax / scale : smax);
  }
  return worst;
}

}  // namespace thinshell
