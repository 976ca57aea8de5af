#include "thinshell/registry.hpp"

#include <cmath>
#include <numbers>

#include "thinshell/errors.hpp"
#include "thinshell/families.hpp"
#include "thinshell/fit.hpp"
#include "thinshell/norms.hpp"
#include "thinshell/operators.hpp"
#include "thinshell/quadrature.hpp"

namespace thinshell {

namespace {

using Edit = std::function<void(ShellConfig&)>;
using CtxPtr = std::shared_ptr<const ShellContext>;

// ---- small helpers ----------------------------------------------------------

// Family member, honouring the env's override for the check's primary family.
const std::string& family_for(const CheckEnv& env, const std::string& deflt) {
  return !env.family_override.empty() && deflt == env.family_default ? env.family_override : deflt;
}
VField vfield(const CheckEnv& env, const ShellContext& ctx, const std::string& deflt, int m) {
  return volume_member(family_for(env, deflt), ctx, m, env.seed);
}
SField sfield(const CheckEnv& env, const std::string& deflt, int m) {
  return surface_member(family_for(env, deflt), *env.S, m, env.seed);
}

M3d Qmat(const V3d& n) { return outer(n, n); }
M3d Pmat(const V3d& n) { return identity<double>() - outer(n, n); }

template <int K>
V3<Jet<3, K - 1>> curl_k(const PointCtx& p, const V3<Jet<3, K>>& u) {
  const auto G = grad(p, u);
  return {G(1, 2) - G(2, 1), G(2, 0) - G(0, 2), G(0, 1) - G(1, 0)};
}

V3d curl_of(const M3d& G) { return V3d(G(1, 2) - G(2, 1), G(2, 0) - G(0, 2), G(0, 1) - G(1, 0)); }

// Visits interior quadrature points.
template <class F>
void each_interior(const ShellContext& ctx, F&& f) {
  for (const auto& c : ctx.columns())
    for (int j = 0; j < c.n_radial; ++j) f(c, c.radial(j));
}

// Visits interior and boundary points of every column.
template <class F>
void each_point(const ShellContext& ctx, F&& f) {
  for (const auto& c : ctx.columns())
    for (int j = 0; j < c.n_radial + 2; ++j) f(c, c.pts[j]);
}

double vnorm(const ShellContext& ctx, const VolumeField& f, int m) { return volume_norms(ctx, f, m).w(m); }

// Constant thickness functions with the preset offsets; friction gamma_i = fric * eps.
Edit slip_edit(double fric) {
  return [fric](ShellConfig& c) {
    ThicknessFn g0, g1;
    g0.kind = g1.kind = ThicknessFn::Kind::Const;
    g0.a = c.g0.a;
    g1.a = c.g1.a;
    c.g0 = g0;
    c.g1 = g1;
    c.gamma0 = c.gamma1 = fric * c.eps;
  };
}

Edit friction_edit(double fric) {
  return [fric](ShellConfig& c) { c.gamma0 = c.gamma1 = fric * c.eps; };
}

std::string sphere_only(const Surface& S) {
  return S.name == "sphere" ? "" : "slip_shell family exists only on the sphere";
}

std::string sphere_or_torus(const Surface& S) {
  return S.name == "sphere" || S.name == "torus" ? "" : "no slip field (slip_shell or rigid_rotation) on this surface";
}

// Slip field on the sphere, axial rotation on the torus.
std::pair<CtxPtr, VField> slip_field(const CheckEnv& env, double eps, int m, double fric, bool orth,
                                     bool sample = false) {
  if (env.S->name == "sphere") {
    CtxPtr ctx = sample ? env.sample_context(eps, slip_edit(fric)) : env.context(eps, slip_edit(fric));
    return {ctx, slip_shell(*ctx, m, env.seed, orth)};
  }
  if (fric != 0.0) throw UnsupportedConfiguration("rigid rotations do not satisfy slip with friction");
  CtxPtr ctx = sample ? env.sample_context(eps) : env.context(eps);
  return {ctx, rigid_rotation(*ctx, m, env.seed)};
}

CheckDef make(std::string name, std::string family, CheckKind kind, double expected, double tol,
              std::string desc, MeasureFn fn) {
  CheckDef d;
  d.name = std::move(name);
  d.family = std::move(family);
  d.kind = kind;
  d.expected = expected;
  d.tol = tol;
  d.description = std::move(desc);
  d.measure = std::move(fn);
  return d;
}

CheckDef ident_check(std::string name, std::string family, double tol, std::string desc, MeasureFn fn) {
  return make(std::move(name), std::move(family), CheckKind::Identity, 0.0, tol, std::move(desc), std::move(fn));
}
CheckDef upper(std::string name, std::string family, double e, std::string desc, MeasureFn fn, double slack = 0.05) {
  return make(std::move(name), std::move(family), CheckKind::Upper, e, slack, std::move(desc), std::move(fn));
}
CheckDef two_sided(std::string name, std::string family, double e, std::string desc, MeasureFn fn) {
  return make(std::move(name), std::move(family), CheckKind::TwoSided, e, 0.05, std::move(desc), std::move(fn));
}
CheckDef bounded(std::string name, std::string family, std::string desc, MeasureFn fn) {
  return make(std::move(name), std::move(family), CheckKind::Bounded, 0.0, 0.0, std::move(desc), std::move(fn));
}

CheckDef& pointwise(CheckDef& d, int members = -1) {
  d.pointwise = true;
  if (members > 0) d.members = members;
  return d;
}

// ---- thin rectangle used for the 2D Ladyzhenskaya check --------------------

Sample ladyzhenskaya_rectangle(double eps, int member, int refine) {
  // phi = sin^2(k pi s1) sin^2(pi s2 / eps) on (0,1) x (0,eps); periodic trapezoid is exact here.
  const int n = 64 * refine;
  const double k = member + 1, pi = std::numbers::pi;
  double s2 = 0.0, s4 = 0.0, sg = 0.0;
  const double w = (1.0 / n) * (eps / n);
  for (int a = 0; a < n; ++a) {
    const double x = (a + 0.5) / n;
    const double sx = std::sin(k * pi * x), cx = std::cos(k * pi * x);
    for (int b = 0; b < n; ++b) {
      const double y = (b + 0.5) / n;  // scaled: s2 = eps * y
      const double sy = std::sin(pi * y), cy = std::cos(pi * y);
      const double f = sx * sx * sy * sy;
      const double fx = 2.0 * k * pi * sx * cx * sy * sy;
      const double fy = 2.0 * (pi / eps) * sy * cy * sx * sx;
      s2 += w * f * f;
      s4 += w * f * f * f * f;
      sg += w * (fx * fx + fy * fy);
    }
  }
  const double l4 = std::pow(s4, 0.25), l2 = std::sqrt(s2), g2 = std::sqrt(sg);
  return {l4, std::sqrt(2.0) * std::sqrt(l2) * std::sqrt(g2)};
}

// ---- registry ---------------------------------------------------------------

std::vector<CheckDef> build_registry() {
  std::vector<CheckDef> R;

  // ===== identities =====

  {
    auto d = ident_check("det_identity", "-", 1e-6, "determinant of the shell parametrization vs eps g J sqrt(det theta)",
                      [](const CheckEnv& env, double eps, int) {
                        return Sample{determinant_identity_check(*env.S, default_shell(*env.S, eps), 100), 1.0};
                      });
    R.push_back(pointwise(d, 1));
  }

  {
    auto d = ident_check("cov_volume", "-", 1e-8, "shell volume by change of variables vs closed form or refinement",
                      [](const CheckEnv& env, double eps, int) {
                        const CtxPtr fine = env.refined(2).context(eps);
                        const double v1 = shell_volume(*env.context(eps)), v2 = shell_volume(*fine);
                        double worst = std::abs(v1 - v2) / v2;
                        if (env.S->name == "sphere") {
                          const double R0 = env.S->params.at("R");
                          const CtxPtr c = env.context(eps, [](ShellConfig& cfg) {
                            cfg.g0 = ThicknessFn::parse("const:0");
                            cfg.g1 = ThicknessFn::parse("const:1");
                          });
                          const double exact = sphere_shell_volume(R0, eps, 0.0, 1.0);
                          worst = std::max(worst, std::abs(shell_volume(*c) - exact) / exact);
                        }
                        return Sample{worst, 1.0};
                      });
    d.members = 1;
    R.push_back(d);
  }

  {
    auto d = ident_check("ave_exact", "tangential_scalar", 1e-12, "average of a constant extension returns the function",
                      [](const CheckEnv& env, double eps, int m) {
                        const CtxPtr ctx = env.context(eps);
                        const SField eta = sfield(env, "tangential_scalar", m);
                        const VField ext = constant_extension(eta);
                        double err = 0.0, sc = 0.0;
                        for (const auto& c : ctx->columns()) {
                          const double e = eta->eval(c)[0].value();
                          err = std::max(err, std::abs(average(*ext, c)[0].value() - e));
                          sc = std::max(sc, std::abs(e));
                        }
                        return Sample{err, sc};
                      });
    R.push_back(d);
  }

  {
    auto d = ident_check(
        "ave_der", "unconstrained_scalar", 1e-6, "tangential gradient of the average vs chart differences",
        [](const CheckEnv& env, double eps, int m) {
          const CtxPtr ctx = env.context(eps);
          const VField phi = vfield(env, *ctx, "unconstrained_scalar", m);
          const double h = 1e-3;
          const auto& cols = ctx->columns();
          const size_t stride = std::max<size_t>(1, cols.size() / 24);
          double err = 0.0, sc = 0.0;
          Column tmp;
          for (size_t k = 0; k < cols.size(); k += stride) {
            const Column& c = cols[k];
            const Chart& ch = env.S->chart(c.p.chart);
            auto Mphi = [&](int a, double off) {
              ChartPoint q = c.p;
              q.s[a] += off;
              q.s = ch.wrap(q.s);
              ctx->column_at(q, tmp);
              return average(*phi, tmp)[0].value();
            };
            bool inside = true;
            for (int a = 0; a < 2; ++a)
              if (!ch.periodic[a] && (c.p.s[a] - 2 * h < ch.lo[a] || c.p.s[a] + 2 * h > ch.hi[a])) inside = false;
            if (!inside) continue;
            double dM[2];
            for (int a = 0; a < 2; ++a)
              dM[a] = (-Mphi(a, 2 * h) + 8.0 * Mphi(a, h) - 8.0 * Mphi(a, -h) + Mphi(a, -2 * h)) / (12.0 * h);
            V3d fd;
            for (int a = 0; a < 2; ++a)
              for (int b = 0; b < 2; ++b) fd += value(c.t[b]) * (c.Ginv[a][b].value() * dM[a]);
            const V3d formula = average_gradient(*phi, c);
            err = std::max(err, norm(formula - fd));
            sc = std::max(sc, norm(formula));
          }
          return Sample{err, sc};
        });
    R.push_back(d);
  }

  {
    auto d = ident_check("eximp_bo", "tangential_harmonics", 1e-10, "impermeable extension has zero normal flux",
                      [](const CheckEnv& env, double eps, int m) {
                        const CtxPtr ctx = env.context(eps);
                        const SField v = sfield(env, "tangential_harmonics", m);
                        const VField E = impermeable_extension(v);
                        double err = 0.0, sc = 0.0;
                        for (const auto& c : ctx->columns()) {
                          sc = std::max(sc, norm(value(v->eval(c))));
                          for (int i = 0; i < 2; ++i)
                            err = std::max(err, std::abs(dot(value(E->eval(c.boundary(i))), boundary_normal(c, i))));
                        }
                        return Sample{err, sc};
                      });
    R.push_back(d);
  }

  {
    auto d = ident_check("exp_bo", "impermeable_generic", 1e-10, "u.nbar = eps u.tau on each boundary piece",
                      [](const CheckEnv& env, double eps, int m) {
                        const CtxPtr ctx = env.context(eps);
                        const VField u = vfield(env, *ctx, "impermeable_generic", m);
                        double err = 0.0, sc = 0.0;
                        for (const auto& c : ctx->columns())
                          for (int i = 0; i < 2; ++i) {
                            const V3d uv = value(u->eval(c.boundary(i)));
                            const V3d n = value(c.n), tau = value(c.tau[i]);
                            err = std::max(err, std::abs(dot(uv, n) - eps * dot(uv, tau)));
                            sc = std::max(sc, norm(uv));
                          }
                        return Sample{err, sc};
                      });
    R.push_back(d);
  }

  auto nsl = [](double fric) {
    return [fric](const CheckEnv& env, double eps, int m) {
      auto [ctx, u] = slip_field(env, eps, m, fric, false);
      const double nu = ctx->config().nu;
      double err = 0.0, sc = 0.0;
      for (const auto& c : ctx->columns())
        for (int i = 0; i < 2; ++i) {
          const PointCtx& p = c.boundary(i);
          const V3<JV> uj = u->eval(p);
          const V3d uv = value(uj);
          const M3d G = value(grad(p, uj));
          const V3d n = boundary_normal(c, i);
          const V3d res = Pmat(n) * (transpose(G) * n) + weingarten_boundary(c, i) * uv + uv * (ctx->gamma(i) / nu);
          err = std::max(err, norm(res));
          sc = std::max({sc, frob(G), norm(uv)});
        }
      return Sample{err, sc};
    };
  };
  {
    auto d = ident_check("nsl_identity", "slip_shell|rigid_rotation", 1e-8,
                      "P_eps (n_eps.grad) u = -W_eps u - (gamma/nu) u for slip fields, gamma = 0", nsl(0.0));
    d.applicable = sphere_or_torus;
    R.push_back(d);
  }
  {
    auto d = ident_check("nsl_identity_friction", "slip_shell", 1e-8,
                      "P_eps (n_eps.grad) u = -W_eps u - (gamma/nu) u for slip fields, gamma = eps", nsl(1.0));
    d.applicable = sphere_only;
    R.push_back(d);
  }

  {
    auto d = ident_check("curl_exp", "unconstrained_smooth", 1e-9, "curl from an orthonormal frame expansion",
                      [](const CheckEnv& env, double eps, int m) {
                        const CtxPtr ctx = env.context(eps);
                        const VField u = vfield(env, *ctx, "unconstrained_smooth", m);
                        double err = 0.0, sc = 0.0;
                        each_interior(*ctx, [&](const Column& c, const PointCtx& p) {
                          const M3d G = value(grad(p, u->eval(p)));
                          V3d E[3];
                          E[2] = value(c.n);
                          E[0] = value(c.t[0]);
                          E[0] = E[0] * (1.0 / norm(E[0]));
                          E[1] = cross(E[2], E[0]);
                          auto dd = [&](int a, int b) { return dot(E[a], G * E[b]); };
                          const V3d rec = E[0] * (dd(1, 2) - dd(2, 1)) + E[1] * (dd(2, 0) - dd(0, 2)) +
                                          E[2] * (dd(0, 1) - dd(1, 0));
                          err = std::max(err, norm(rec - curl_of(G)));
                          sc = std::max(sc, frob(G));
                        });
                        return Sample{err, sc};
                      });
    R.push_back(pointwise(d));
  }

  {
    auto d = ident_check("trilinear_split", "unconstrained_smooth", 1e-10,
                      "(u.grad)u = curl u x u + grad(|u|^2)/2 pointwise", [](const CheckEnv& env, double eps, int m) {
                        const CtxPtr ctx = env.context(eps);
                        const VField u = vfield(env, *ctx, "unconstrained_smooth", m);
                        double err = 0.0, sc = 0.0;
                        each_interior(*ctx, [&](const Column&, const PointCtx& p) {
                          const V3<JV> uj = u->eval(p);
                          const V3d uv = value(uj);
                          const M3d G = value(grad(p, uj));
                          const V3d lhs = transpose(G) * uv;
                          const V3d rhs = cross(curl_of(G), uv) + G * uv;
                          err = std::max(err, norm(lhs - rhs));
                          sc = std::max(sc, norm(uv) * frob(G));
                        });
                        return Sample{err, sc};
                      });
    R.push_back(pointwise(d));
  }

  {
    auto d = ident_check(
        "ibp_st", "unconstrained_smooth+impermeable_generic", 1e-6,
        "int (lap u1 + grad div u1).u2 = -2 int D(u1):D(u2) + 2 int_bdry (D(u1) n).u2",
        [](const CheckEnv& env, double eps, int m) {
          const CtxPtr ctx = env.context(eps);
          const VField u1 = vfield(env, *ctx, "unconstrained_smooth", m);
          const VField u2 = vfield(env, *ctx, "impermeable_generic", m);
          double lhs = 0.0, vol = 0.0, bd = 0.0;
          each_interior(*ctx, [&](const Column&, const PointCtx& p) {
            const Local L1 = local_values(p, u1->eval(p), 3, 2);
            const Local L2 = local_values(p, u2->eval(p), 3, 1);
            V3d lap, gdiv;
            for (int j = 0; j < 3; ++j)
              for (int i = 0; i < 3; ++i) {
                lap[j] += L1.H[j](i, i);
                gdiv[i] += L1.H[j](i, j);
              }
            const M3d D1 = (L1.G + transpose(L1.G)) * 0.5, D2 = (L2.G + transpose(L2.G)) * 0.5;
            double dd = 0.0;
            for (int k = 0; k < 9; ++k) dd += D1.a[k] * D2.a[k];
            lhs += p.weight * dot(lap + gdiv, L2.v);
            vol += p.weight * dd;
          });
          for (const auto& c : ctx->columns())
            for (int i = 0; i < 2; ++i) {
              const PointCtx& p = c.boundary(i);
              const Local L1 = local_values(p, u1->eval(p), 3, 1);
              const M3d D1 = (L1.G + transpose(L1.G)) * 0.5;
              bd += p.bweight * dot(D1 * boundary_normal(c, i), value(u2->eval(p)));
            }
          const double rhs = -2.0 * vol + 2.0 * bd;
          return Sample{std::abs(lhs - rhs), std::abs(lhs) + 2.0 * std::abs(vol) + 2.0 * std::abs(bd)};
        });
    R.push_back(d);
  }

  {
    auto d = ident_check("ibp_st_slip", "slip_shell+impermeable_generic", 1e-6,
                      "nu int lap u1.u2 = -2 nu int D(u1):D(u2) - sum gamma_i int_bdry u1.u2 for slip u1",
                      [](const CheckEnv& env, double eps, int m) {
                        auto [ctx, u1] = slip_field(env, eps, m, 1.0, false);
                        const VField u2 = vfield(env, *ctx, "impermeable_generic", m);
                        const double nu = ctx->config().nu;
                        double lhs = 0.0, vol = 0.0, bd = 0.0;
                        each_interior(*ctx, [&](const Column&, const PointCtx& p) {
                          const Local L1 = local_values(p, u1->eval(p), 3, 2);
                          const Local L2 = local_values(p, u2->eval(p), 3, 1);
                          V3d lap;
                          for (int j = 0; j < 3; ++j)
                            for (int i = 0; i < 3; ++i) lap[j] += L1.H[j](i, i);
                          const M3d D1 = (L1.G + transpose(L1.G)) * 0.5, D2 = (L2.G + transpose(L2.G)) * 0.5;
                          double dd = 0.0;
                          for (int k = 0; k < 9; ++k) dd += D1.a[k] * D2.a[k];
                          lhs += p.weight * nu * dot(lap, L2.v);
                          vol += p.weight * dd;
                        });
                        for (const auto& c : ctx->columns())
                          for (int i = 0; i < 2; ++i) {
                            const PointCtx& p = c.boundary(i);
                            bd += ctx->gamma(i) * p.bweight * dot(value(u1->eval(p)), value(u2->eval(p)));
                          }
                        const double rhs = -2.0 * nu * vol - bd;
                        return Sample{std::abs(lhs - rhs), std::abs(lhs) + 2.0 * nu * std::abs(vol) + std::abs(bd)};
                      });
    d.applicable = sphere_only;
    R.push_back(d);
  }

  {
    auto d = ident_check(
        "ibp_curl", "slip_shell|rigid_rotation+unconstrained_smooth", 1e-6,
        "int curl curl u.Phi = -int curl G(u).Phi + int (curl u + G(u)).curl Phi for slip u",
        [](const CheckEnv& env, double eps, int m) {
          const double fric = env.S->name == "sphere" ? 1.0 : 0.0;
          auto [ctx, u] = slip_field(env, eps, m, fric, false);
          const VField Gu = g_vector(u);
          const VField Phi = vfield(env, *ctx, "unconstrained_smooth", m);
          double A = 0.0, B = 0.0, C = 0.0;
          each_interior(*ctx, [&](const Column&, const PointCtx& p) {
            const V3<JV> uj = u->eval(p);
            const V3<J31> cu = curl_k(p, uj);
            const V3d ccu = value(curl_k(p, cu));
            const V3<J31> g = truncate<1>(Gu->eval(p));
            const V3d cg = value(curl_k(p, g));
            const V3<JV> ph = Phi->eval(p);
            const V3d phv = value(ph), cph = value(curl_k(p, ph));
            A += p.weight * dot(ccu, phv);
            B += -p.weight * dot(cg, phv);
            C += p.weight * dot(value(cu) + value(g), cph);
          });
          return Sample{std::abs(A - B - C), std::abs(A) + std::abs(B) + std::abs(C)};
        });
    d.applicable = sphere_or_torus;
    R.push_back(d);
  }

  {
    auto d = ident_check("grad_orth", "unconstrained_smooth+divfree_impermeable", 1e-6,
                      "int grad(|u|^2).v = 0 for divergence-free impermeable v",
                      [](const CheckEnv& env, double eps, int m) {
                        const CtxPtr ctx = env.context(eps);
                        const VField u = vfield(env, *ctx, "unconstrained_smooth", m);
                        const VField v = vfield(env, *ctx, "divfree_impermeable", m);
                        double I = 0.0, a2 = 0.0, b2 = 0.0;
                        each_interior(*ctx, [&](const Column&, const PointCtx& p) {
                          const V3<JV> uj = u->eval(p);
                          const V3d gu = value(grad(p, uj)) * value(uj) * 2.0;
                          const V3d vv = value(v->eval(p));
                          I += p.weight * dot(gu, vv);
                          a2 += p.weight * norm2(gu);
                          b2 += p.weight * norm2(vv);
                        });
                        return Sample{std::abs(I), std::sqrt(a2 * b2)};
                      });
    R.push_back(d);
  }

  {
    auto d = ident_check("gronwall_cases", "-", 1e-6, "uniform Gronwall bound on three closed-form cases",
                      [](const CheckEnv&, double, int) {
                        const int n = 10001;
                        const double dt = 1.0 / (n - 1);
                        std::vector<double> one(n, 1.0), zero(n, 0.0), et(n), t(n);
                        for (int k = 0; k < n; ++k) {
                          t[k] = k * dt;
                          et[k] = std::exp(t[k]);
                        }
                        const double e = std::exp(1.0);
                        double err = 0.0;
                        const auto a = gronwall_bound(one, zero, zero, 0.0, dt, 0.0, 1.0);
                        err = std::max(err, std::abs(a.bound - 1.0));
                        const auto b = gronwall_bound(et, one, zero, 0.0, dt, 0.0, 1.0);
                        err = std::max(err, std::abs(b.bound - (e - 1.0) * e) / ((e - 1.0) * e));
                        const auto c = gronwall_bound(t, zero, one, 0.0, dt, 0.0, 1.0);
                        err = std::max(err, std::abs(c.bound - 1.5) / 1.5);
                        if (!a.holds || !b.holds || !c.holds) err = INFINITY;
                        return Sample{err, 1.0};
                      });
    R.push_back(pointwise(d, 1));
  }

  // ===== two-sided scalings =====

  R.push_back(two_sided("con_lp_p2", "tangential_scalar", 0.5, "||ext eta||_L2(shell) / ||eta||_L2(surface)",
                        [](const CheckEnv& env, double eps, int m) {
                          const CtxPtr ctx = env.context(eps);
                          const SField eta = sfield(env, "tangential_scalar", m);
                          return Sample{lp_norm(*ctx, *constant_extension(eta)), surface_lp_norm(*ctx, *eta)};
                        }));
  R.push_back(two_sided("con_w1p_p2", "tangential_scalar", 0.5, "||ext eta||_H1(shell) / ||eta||_H1(surface)",
                        [](const CheckEnv& env, double eps, int m) {
                          const CtxPtr ctx = env.context(eps);
                          const SField eta = sfield(env, "tangential_scalar", m);
                          return Sample{wmp_norm(*ctx, *constant_extension(eta), 1), surface_wmp_norm(*ctx, *eta, 1)};
                        }));
  R.push_back(two_sided("ave_lp_surf", "unconstrained_scalar", -0.5, "||M phi||_L2(surface) / ||phi||_L2(shell)",
                        [](const CheckEnv& env, double eps, int m) {
                          const CtxPtr ctx = env.context(eps);
                          const VField phi = vfield(env, *ctx, "unconstrained_scalar", m);
                          const double a = surf_lp(*ctx, [&](const Column& c) { return average(*phi, c)[0].value(); });
                          return Sample{a, lp_norm(*ctx, *phi)};
                        }));

  // ===== upper bounds: pointwise geometry =====

  auto geo_max = [](std::function<double(const Column&, const PointCtx&)> f, bool bdry_only) {
    return [f, bdry_only](const CheckEnv& env, double eps, int) {
      const CtxPtr ctx = env.sample_context(eps);
      double mx = 0.0;
      for (const auto& c : ctx->columns()) {
        if (bdry_only) {
          for (int i = 0; i < 2; ++i) mx = std::max(mx, f(c, c.boundary(i)));
        } else {
          for (int j = 0; j < c.n_radial + 2; ++j) mx = std::max(mx, f(c, c.pts[j]));
        }
      }
      return Sample{mx, 1.0};
    };
  };
  auto sgn = [](int i) { return i == 0 ? -1.0 : 1.0; };

  {
    auto d = upper("jac_diff", "-", 1.0, "max |J - 1| over the shell",
                   geo_max([](const Column&, const PointCtx& p) { return std::abs(p.J - 1.0); }, false));
    R.push_back(pointwise(d, 1));
  }
  {
    auto d = upper("tau_diff", "-", 1.0, "max |tau_i - grad g_i|",
                   geo_max(
                       [](const Column& c, const PointCtx& p) {
                         const int i = p.boundary_index();
                         return norm(value(c.tau[i]) - value(c.gradg[i]));
                       },
                       true));
    R.push_back(pointwise(d, 1));
  }
  {
    auto d = upper("comp_n", "-", 2.0, "max |n_eps - (+-)(n - eps grad g_i)|",
                   geo_max(
                       [sgn](const Column& c, const PointCtx& p) {
                         const int i = p.boundary_index();
                         const double e = c.ctx->eps();
                         const V3d ref = (value(c.n) - value(c.gradg[i]) * e) * sgn(i);
                         return norm(boundary_normal(c, i) - ref);
                       },
                       true),
                   0.1);
    R.push_back(pointwise(d, 1));
  }
  {
    auto d = upper("comp_n_re", "-", 1.0, "max |n_eps - (+-)n|",
                   geo_max(
                       [sgn](const Column& c, const PointCtx& p) {
                         const int i = p.boundary_index();
                         return norm(boundary_normal(c, i) - value(c.n) * sgn(i));
                       },
                       true));
    R.push_back(pointwise(d, 1));
  }
  {
    auto d = upper("comp_p", "-", 1.0, "max |P_eps - P|",
                   geo_max(
                       [](const Column& c, const PointCtx& p) {
                         return frob(Pmat(boundary_normal(c, p.boundary_index())) - Pmat(value(c.n)));
                       },
                       true));
    R.push_back(pointwise(d, 1));
  }
  {
    auto d = upper("comp_w", "-", 1.0, "max |W_eps - (+-)W|",
                   geo_max(
                       [sgn](const Column& c, const PointCtx& p) {
                         const int i = p.boundary_index();
                         return frob(weingarten_boundary(c, i) - value(c.W) * sgn(i));
                       },
                       true));
    R.push_back(pointwise(d, 1));
  }
  {
    auto d = upper("exaux_bound", "-", 1.0, "max |Psi| over the shell",
                   geo_max([](const Column&, const PointCtx& p) { return norm(value(Psi(p))); }, false));
    R.push_back(pointwise(d, 1));
  }
  {
    auto d = upper("exaux_tnder", "-", 1.0, "max of |P grad Psi| and |d_n Psi - grad g / g|",
                   geo_max(
                       [](const Column& c, const PointCtx& p) {
                         const M3d G = value(grad(p, Psi(p)));
                         const V3d n = value(c.n);
                         const V3d gg = (value(c.gradg[1]) - value(c.gradg[0])) * (1.0 / c.g.value());
                         return std::max(frob(Pmat(n) * G), norm(transpose(G) * n - gg));
                       },
                       false));
    R.push_back(pointwise(d, 1));
  }

  // ===== upper bounds: extensions and averages =====

  R.push_back(upper("eximp_wmp", "tangential_harmonics", 0.5, "||E v||_H2(shell) / ||v||_H2(surface)",
                    [](const CheckEnv& env, double eps, int m) {
                      const CtxPtr ctx = env.context(eps);
                      const SField v = sfield(env, "tangential_harmonics", m);
                      return Sample{vnorm(*ctx, *impermeable_extension(v), 2), surface_wmp_norm(*ctx, *v, 2)};
                    }));

  auto eximp_pt = [](bool divergence) {
    return [divergence](const CheckEnv& env, double eps, int m) {
      const CtxPtr ctx = env.sample_context(eps);
      const SField v = sfield(env, "tangential_harmonics", m);
      const VField E = impermeable_extension(v);
      double q = 0.0;
      for (const auto& c : ctx->columns()) {
        const V3<JS> vj = v->eval(c);
        const V3d vv = value(vj);
        const M3d Dv = value(tgrad(c, vj));
        const V3d n = value(c.n);
        const V3d gg = value(c.gradg[1]) - value(c.gradg[0]);
        const double g = c.g.value();
        const double sc = norm(vv) + frob(Dv);
        if (sc == 0.0) continue;
        const double divgv = tdiv(c, scale(vj, c.g)).value();
        for (int j = 0; j < c.n_radial; ++j) {
          const PointCtx& p = c.radial(j);
          const M3d G = value(grad(p, E->eval(p)));
          double err;
          if (divergence)
            err = std::abs(trace(G) - divgv / g);
          else
            err = frob(G - (Dv + Qmat(n) * (dot(vv, gg) / g)));
          q = std::max(q, err / sc);
        }
      }
      return Sample{q, 1.0};
    };
  };
  {
    auto d = upper("eximp_grad", "tangential_harmonics", 1.0,
                   "sup |grad E v - {grad_G v + (v.grad g / g) Q}| / (|v| + |grad_G v|)", eximp_pt(false));
    R.push_back(pointwise(d));
  }
  {
    auto d = upper("eximp_div", "tangential_harmonics", 1.0, "sup |div E v - div_G(g v) / g| / (|v| + |grad_G v|)",
                   eximp_pt(true));
    R.push_back(pointwise(d));
  }

  R.push_back(upper("ave_diff_dom", "unconstrained_scalar", 1.0, "||phi - ext M phi||_L2 / ||d_n phi||_L2",
                    [](const CheckEnv& env, double eps, int m) {
                      const CtxPtr ctx = env.context(eps);
                      const VField phi = vfield(env, *ctx, "unconstrained_scalar", m);
                      double a = 0.0, b = 0.0;
                      for (const auto& c : ctx->columns()) {
                        const double M = average(*phi, c)[0].value();
                        for (int j = 0; j < c.n_radial; ++j) {
                          const PointCtx& p = c.radial(j);
                          const JV f = phi->eval(p)[0];
                          a += p.weight * std::pow(f.value() - M, 2);
                          b += p.weight * std::pow(normal_derivative(p, f).value(), 2);
                        }
                      }
                      return Sample{std::sqrt(a), std::sqrt(b)};
                    }));

  R.push_back(upper("ave_diff_bo", "unconstrained_scalar", 0.5, "||phi - ext M phi||_L2(bdry) / ||d_n phi||_L2",
                    [](const CheckEnv& env, double eps, int m) {
                      const CtxPtr ctx = env.context(eps);
                      const VField phi = vfield(env, *ctx, "unconstrained_scalar", m);
                      double a[2] = {0.0, 0.0}, b = 0.0;
                      for (const auto& c : ctx->columns()) {
                        const double M = average(*phi, c)[0].value();
                        for (int j = 0; j < c.n_radial; ++j) {
                          const PointCtx& p = c.radial(j);
                          b += p.weight * std::pow(normal_derivative(p, phi->eval(p)[0]).value(), 2);
                        }
                        for (int i = 0; i < 2; ++i) {
                          const PointCtx& p = c.boundary(i);
                          a[i] += p.bweight * std::pow(phi->eval(p)[0].value() - M, 2);
                        }
                      }
                      return Sample{std::sqrt(std::max(a[0], a[1])), std::sqrt(b)};
                    }));

  R.push_back(upper("poin_nor", "impermeable_generic", 1.0, "||u.nbar||_L2 / ||u||_H1",
                    [](const CheckEnv& env, double eps, int m) {
                      const CtxPtr ctx = env.context(eps);
                      const VField u = vfield(env, *ctx, "impermeable_generic", m);
                      const double a =
                          vol_lp(*ctx, [&](const PointCtx& p) { return dot(value(u->eval(p)), value(p.col->n)); });
                      return Sample{a, vnorm(*ctx, *u, 1)};
                    }));

  R.push_back(upper("poin_dnor", "impermeable_generic", 1.0, "||P grad(u.nbar)||_L2 / ||u||_H2",
                    [](const CheckEnv& env, double eps, int m) {
                      const CtxPtr ctx = env.context(eps);
                      const VField u = vfield(env, *ctx, "impermeable_generic", m);
                      const double a = vol_lp(*ctx, [&](const PointCtx& p) {
                        const V3d g = value(grad(p, dot(u->eval(p), nbar(p))));
                        return norm(Pmat(value(p.col->n)) * g);
                      });
                      return Sample{a, vnorm(*ctx, *u, 2)};
                    }));

  {
    auto d = upper("pdnu_wu", "slip_shell", 1.0, "||P d_n u + W u||_L2 / ||u||_H2 for slip u, gamma = eps",
                   [](const CheckEnv& env, double eps, int m) {
                     auto [ctx, u] = slip_field(env, eps, m, 1.0, false);
                     const double a = vol_lp(*ctx, [&](const PointCtx& p) {
                       const V3<JV> uj = u->eval(p);
                       const V3d n = value(p.col->n);
                       const V3d dn = transpose(value(grad(p, uj))) * n;
                       return norm(Pmat(n) * dn + value(p.col->W) * value(uj));
                     });
                     return Sample{a, vnorm(*ctx, *u, 2)};
                   });
    d.applicable = sphere_only;
    R.push_back(d);
  }

  R.push_back(upper("ave_n_lp", "impermeable_generic", 0.5, "||M u.n||_L2(surface) / ||u||_H1",
                    [](const CheckEnv& env, double eps, int m) {
                      const CtxPtr ctx = env.context(eps);
                      const VField u = vfield(env, *ctx, "impermeable_generic", m);
                      const double a =
                          surf_lp(*ctx, [&](const Column& c) { return dot(value(average(*u, c)), value(c.n)); });
                      return Sample{a, vnorm(*ctx, *u, 1)};
                    }));

  R.push_back(upper("ave_n_w1p", "impermeable_generic", 0.5, "||M u.n||_H1(surface) / ||u||_H2",
                    [](const CheckEnv& env, double eps, int m) {
                      const CtxPtr ctx = env.context(eps);
                      const VField u = vfield(env, *ctx, "impermeable_generic", m);
                      double s = 0.0;
                      for (const auto& c : ctx->columns()) {
                        const JS f = dot(average(*u, c), truncate<2>(c.n));
                        s += c.area_weight * (f.value() * f.value() + norm2(value(tgrad(c, f))));
                      }
                      return Sample{std::sqrt(s), vnorm(*ctx, *u, 2)};
                    }));

  R.push_back(upper("avet_diff_dom", "impermeable_generic", 1.0, "||u - ext M_t u||_L2 / ||u||_H1",
                    [](const CheckEnv& env, double eps, int m) {
                      const CtxPtr ctx = env.context(eps);
                      const VField u = vfield(env, *ctx, "impermeable_generic", m);
                      double a = 0.0;
                      for (const auto& c : ctx->columns()) {
                        const V3d M = value(average_tangential(*u, c));
                        for (int j = 0; j < c.n_radial; ++j) {
                          const PointCtx& p = c.radial(j);
                          a += p.weight * norm2(value(u->eval(p)) - M);
                        }
                      }
                      return Sample{std::sqrt(a), vnorm(*ctx, *u, 1)};
                    }));

  auto inner_defect = [](bool vector) {
    return [vector](const CheckEnv& env, double eps, int m) {
      const CtxPtr ctx = env.context(eps);
      const VField f1 = vector ? vfield(env, *ctx, "unconstrained_smooth", m) : vfield(env, *ctx, "unconstrained_scalar", m);
      const VField f2 = vector ? vfield(env, *ctx, "unconstrained_smooth", m + 1) : vfield(env, *ctx, "unconstrained_scalar", m + 1);
      double a = 0.0, b = 0.0, n1 = 0.0, n2 = 0.0;
      for (const auto& c : ctx->columns()) {
        const V3d M1 = value(vector ? average_tangential(*f1, c) : average(*f1, c));
        const V3d M2 = value(vector ? average_tangential(*f2, c) : average(*f2, c));
        for (int j = 0; j < c.n_radial; ++j) {
          const PointCtx& p = c.radial(j);
          const V3d v1 = value(f1->eval(p)), v2 = value(f2->eval(p));
          a += p.weight * dot(M1, v2);
          b += p.weight * dot(v1, M2);
          n1 += p.weight * norm2(v1);
          n2 += p.weight * norm2(v2);
        }
      }
      return Sample{std::abs(a - b), std::sqrt(n1 * n2)};
    };
  };
  R.push_back(upper("ave_inner", "unconstrained_scalar", 1.0,
                    "|(ext M phi1, phi2) - (phi1, ext M phi2)| / (||phi1|| ||phi2||)", inner_defect(false)));
  R.push_back(upper("avet_inner", "unconstrained_smooth", 1.0,
                    "|(ext M_t u1, u2) - (u1, ext M_t u2)| / (||u1|| ||u2||)", inner_defect(true)));

  auto add = [](bool boundary) {
    return [boundary](const CheckEnv& env, double eps, int m) {
      const CtxPtr ctx = env.context(eps);
      const VField phi = vfield(env, *ctx, "unconstrained_scalar", m);
      double a[3] = {0.0, 0.0, 0.0};
      for (const auto& c : ctx->columns()) {
        const V3d gM = value(tgrad(c, average(*phi, c)[0]));
        const M3d P = Pmat(value(c.n));
        auto diff = [&](const PointCtx& p) { return norm2(P * value(grad(p, phi->eval(p)[0])) - gM); };
        if (boundary) {
          for (int i = 0; i < 2; ++i) a[i] += c.boundary(i).bweight * diff(c.boundary(i));
        } else {
          for (int j = 0; j < c.n_radial; ++j) a[2] += c.radial(j).weight * diff(c.radial(j));
        }
      }
      const double lhs = std::sqrt(boundary ? std::max(a[0], a[1]) : a[2]);
      return Sample{lhs, vnorm(*ctx, *phi, 2)};
    };
  };
  R.push_back(upper("add_dom", "unconstrained_scalar", 1.0, "||P grad phi - ext grad_G M phi||_L2 / ||phi||_H2",
                    add(false)));
  R.push_back(upper("add_bo", "unconstrained_scalar", 0.5,
                    "||P grad phi - ext grad_G M phi||_L2(bdry) / ||phi||_H2", add(true)));

  auto ave_div = [](bool tangential, bool w1) {
    return [tangential, w1](const CheckEnv& env, double eps, int m) {
      const CtxPtr ctx = env.context(eps);
      const VField u = vfield(env, *ctx, "divfree_impermeable", m);
      double s = 0.0;
      for (const auto& c : ctx->columns()) {
        const V3<JS> M = tangential ? average_tangential(*u, c) : average(*u, c);
        const J21 dv = tdiv(c, scale(M, c.g));
        s += c.area_weight * dv.value() * dv.value();
        if (w1) s += c.area_weight * norm2(value(tgrad(c, dv)));
      }
      return Sample{std::sqrt(s), vnorm(*ctx, *u, w1 ? 2 : 1)};
    };
  };
  R.push_back(upper("ave_div_lp", "divfree_impermeable", 0.5, "||div_G(g M u)||_L2(surface) / ||u||_H1",
                    ave_div(false, false)));
  R.push_back(upper("ave_div_w1p", "divfree_impermeable", 0.5, "||div_G(g M u)||_H1(surface) / ||u||_H2",
                    ave_div(false, true)));
  R.push_back(upper("adiv_tan", "divfree_impermeable", 0.5, "||div_G(g M_t u)||_L2(surface) / ||u||_H1",
                    ave_div(true, false)));

  R.push_back(upper("dnu_n_ave", "divfree_impermeable", 1.0,
                    "||d_n u.nbar - ext M_t u.grad g / g||_L2 / ||u||_H2", [](const CheckEnv& env, double eps, int m) {
                      const CtxPtr ctx = env.context(eps);
                      const VField u = vfield(env, *ctx, "divfree_impermeable", m);
                      double a = 0.0;
                      for (const auto& c : ctx->columns()) {
                        const V3d M = value(average_tangential(*u, c));
                        const V3d n = value(c.n);
                        const double ref = dot(M, value(c.gradg[1]) - value(c.gradg[0])) / c.g.value();
                        for (int j = 0; j < c.n_radial; ++j) {
                          const PointCtx& p = c.radial(j);
                          const double dn = dot(transpose(value(grad(p, u->eval(p)))) * n, n);
                          a += p.weight * std::pow(dn - ref, 2);
                        }
                      }
                      return Sample{std::sqrt(a), vnorm(*ctx, *u, 2)};
                    }));

  R.push_back(upper("po_ur", "impermeable_generic", 1.0, "||u^r||_L2 / ||u^r||_H1",
                    [](const CheckEnv& env, double eps, int m) {
                      const CtxPtr ctx = env.context(eps);
                      const Decomposition d = decompose(vfield(env, *ctx, "impermeable_generic", m));
                      const NormParts np = volume_norms(*ctx, *d.ur, 1);
                      return Sample{np.l[0], np.w(1)};
                    }));

  // ===== bounded constants =====

  R.push_back(bounded("la_surf", "tangential_scalar", "||eta||_L4 / (||eta||_L2^(1/2) ||eta||_H1^(1/2)) on the surface",
                      [](const CheckEnv& env, double eps, int m) {
                        const CtxPtr ctx = env.context(eps);
                        const SField eta = sfield(env, "tangential_scalar", m);
                        const NormParts np = surface_norms(*ctx, *eta, 1);
                        return Sample{surface_lp_norm(*ctx, *eta, 4.0), std::sqrt(np.l[0] * np.w(1))};
                      }));

  {
    auto d = bounded("la_r2", "-", "||phi||_L4 / (sqrt2 ||phi||_L2^(1/2) ||grad phi||_L2^(1/2)) on (0,1)x(0,eps)",
                     [](const CheckEnv& env, double eps, int m) { return ladyzhenskaya_rectangle(eps, m, env.refine); });
    d.fixed_ceiling = 1.0;
    R.push_back(pointwise(d));
  }

  R.push_back(bounded(
      "agmon", "unconstrained_scalar",
      "||phi||_inf / (eps^-1/2 ||phi||^1/4 ||phi||_H2^1/2 (||phi|| + eps||d_n phi|| + eps^2||d_n^2 phi||)^1/4)",
      [](const CheckEnv& env, double eps, int m) {
        const CtxPtr ctx = env.context(eps);
        const VField phi = vfield(env, *ctx, "unconstrained_scalar", m);
        const NormParts np = volume_norms(*ctx, *phi, 2);
        double d1 = 0.0, d2 = 0.0;
        each_interior(*ctx, [&](const Column& c, const PointCtx& p) {
          const Local L = local_values(p, phi->eval(p), 1, 2);
          const V3d n = value(c.n);
          d1 += p.weight * std::pow(dot(n, V3d(L.G(0, 0), L.G(1, 0), L.G(2, 0))), 2);
          d2 += p.weight * std::pow(dot(n, L.H[0] * n), 2);
        });
        const double sup = linf_norm(*ctx, *phi);
        const double mix = np.l[0] + eps * std::sqrt(d1) + eps * eps * std::sqrt(d2);
        const double rhs = std::pow(eps, -0.5) * std::pow(np.l[0], 0.25) * std::sqrt(np.w(2)) * std::pow(mix, 0.25);
        return Sample{sup, rhs};
      }));

  auto poincare = [](bool domain) {
    return [domain](const CheckEnv& env, double eps, int m) {
      const CtxPtr ctx = env.context(eps);
      const VField phi = vfield(env, *ctx, "unconstrained_scalar", m);
      const double l2 = lp_norm(*ctx, *phi);
      const double dn = vol_lp(*ctx, [&](const PointCtx& p) { return normal_derivative(p, phi->eval(p)[0]).value(); });
      double q = 0.0;
      Sample worst;
      for (int i = 0; i < 2; ++i) {
        const double b = boundary_lp_norm(*ctx, *phi, i);
        const Sample s = domain ? Sample{l2, std::sqrt(eps) * b + eps * dn} : Sample{b, l2 / std::sqrt(eps) + std::sqrt(eps) * dn};
        if (s.ratio() >= q) {
          q = s.ratio();
          worst = s;
        }
      }
      return worst;
    };
  };
  R.push_back(bounded("poin_dom", "unconstrained_scalar",
                      "||phi||_L2 / (eps^1/2 ||phi||_L2(bdry) + eps ||d_n phi||_L2)", poincare(true)));
  R.push_back(bounded("poin_bo", "unconstrained_scalar",
                      "||phi||_L2(bdry) / (eps^-1/2 ||phi||_L2 + eps^1/2 ||d_n phi||_L2)", poincare(false)));

  R.push_back(bounded("cov_surf", "unconstrained_scalar",
                      "max of ||phi||_L2(bdry) / ||phi pulled back||_L2(surface) and its inverse",
                      [](const CheckEnv& env, double eps, int m) {
                        const CtxPtr ctx = env.context(eps);
                        const VField phi = vfield(env, *ctx, "unconstrained_scalar", m);
                        double q = 0.0;
                        for (int i = 0; i < 2; ++i) {
                          const double a = boundary_lp_norm(*ctx, *phi, i);
                          const double b = surf_lp(*ctx, [&](const Column& c) {
                            return phi->eval(c.boundary(i))[0].value();
                          });
                          q = std::max({q, a / b, b / a});
                        }
                        return Sample{q, 1.0};
                      }));

  R.push_back(bounded("prod_surf", "tangential_scalar+unconstrained_scalar",
                      "||ext eta phi||_L2 / (||eta||^1/2 ||eta||_H1^1/2 ||phi||^1/2 ||phi||_H1^1/2)",
                      [](const CheckEnv& env, double eps, int m) {
                        const CtxPtr ctx = env.context(eps);
                        const SField eta = sfield(env, "tangential_scalar", m);
                        const VField phi = vfield(env, *ctx, "unconstrained_scalar", m);
                        const double a = vol_lp(*ctx, [&](const PointCtx& p) {
                          return eta->eval(*p.col)[0].value() * phi->eval(p)[0].value();
                        });
                        const NormParts ne = surface_norms(*ctx, *eta, 1);
                        const NormParts nf = volume_norms(*ctx, *phi, 1);
                        return Sample{a, std::sqrt(ne.l[0] * ne.w(1) * nf.l[0] * nf.w(1))};
                      }));

  auto prod_ua = [](bool gradient) {
    return [gradient](const CheckEnv& env, double eps, int m) {
      const CtxPtr ctx = env.context(eps);
      const VField phi = vfield(env, *ctx, "unconstrained_scalar", m);
      const VField u = vfield(env, *ctx, "unconstrained_smooth", m);
      const Decomposition d = decompose(u);
      const double a = vol_lp(*ctx, [&](const PointCtx& p) {
        const V3<JV> ua = d.ua->eval(p);
        const double mag = gradient ? frob(value(grad(p, ua))) : norm(value(ua));
        return mag * phi->eval(p)[0].value();
      });
      const NormParts nf = volume_norms(*ctx, *phi, 1);
      const NormParts nu = volume_norms(*ctx, *u, gradient ? 2 : 1);
      const double uu = gradient ? nu.w(1) * nu.w(2) : nu.l[0] * nu.w(1);
      return Sample{a, std::sqrt(nf.l[0] * nf.w(1) * uu) / std::sqrt(eps)};
    };
  };
  R.push_back(bounded("prod_ua", "unconstrained_scalar+unconstrained_smooth",
                      "|| |u^a| phi ||_L2 / (eps^-1/2 ||phi||^1/2 ||phi||_H1^1/2 ||u||^1/2 ||u||_H1^1/2)",
                      prod_ua(false)));
  R.push_back(bounded("prod_grad_ua", "unconstrained_scalar+unconstrained_smooth",
                      "|| |grad u^a| phi ||_L2 / (eps^-1/2 ||phi||^1/2 ||phi||_H1^1/2 ||u||_H1^1/2 ||u||_H2^1/2)",
                      prod_ua(true)));

  {
    auto d = bounded("tan_curl_ua", "unconstrained_smooth", "sup |P curl u^a| / (|ext M u| + eps |ext grad_G M u|)",
                     [](const CheckEnv& env, double eps, int m) {
                       const CtxPtr ctx = env.sample_context(eps);
                       const VField u = vfield(env, *ctx, "unconstrained_smooth", m);
                       const Decomposition d = decompose(u);
                       double q = 0.0;
                       for (const auto& c : ctx->columns()) {
                         const V3<JS> M = average(*u, c);
                         const double den = norm(value(M)) + eps * frob(value(tgrad(c, M)));
                         const M3d P = Pmat(value(c.n));
                         for (int j = 0; j < c.n_radial; ++j) {
                           const PointCtx& p = c.radial(j);
                           q = std::max(q, norm(P * value(curl(p, d.ua->eval(p)))) / den);
                         }
                       }
                       return Sample{q, 1.0};
                     });
    R.push_back(pointwise(d));
  }

  {
    auto d = bounded("g_bound", "unconstrained_smooth", "sup of |G(u)|/|u| and |grad G(u)|/(|u| + |grad u|), gamma = eps",
                     [](const CheckEnv& env, double eps, int m) {
                       const CtxPtr ctx = env.sample_context(eps, friction_edit(1.0));
                       const VField u = vfield(env, *ctx, "unconstrained_smooth", m);
                       const VField G = g_vector(u);
                       double q = 0.0;
                       each_interior(*ctx, [&](const Column&, const PointCtx& p) {
                         const V3<JV> uj = u->eval(p);
                         const double uv = norm(value(uj)), gu = frob(value(grad(p, uj)));
                         const V3<J31> g = truncate<1>(G->eval(p));
                         const double a = norm(value(g)), b = frob(value(grad(p, g)));
                         q = std::max({q, a / uv, b / (uv + gu)});
                       });
                       return Sample{q, 1.0};
                     });
    R.push_back(pointwise(d));
  }

  R.push_back(bounded("ave_lp_dom", "unconstrained_scalar", "||ext M phi||_L2 / ||phi||_L2",
                      [](const CheckEnv& env, double eps, int m) {
                        const CtxPtr ctx = env.context(eps);
                        const VField phi = vfield(env, *ctx, "unconstrained_scalar", m);
                        double a = 0.0;
                        for (const auto& c : ctx->columns()) {
                          const double M = average(*phi, c)[0].value();
                          for (int j = 0; j < c.n_radial; ++j) a += c.radial(j).weight * M * M;
                        }
                        return Sample{std::sqrt(a), lp_norm(*ctx, *phi)};
                      }));

  R.push_back(bounded("wmp_uaur", "unconstrained_smooth", "max over m=0..2 of ||u^a||_Wm / ||u||_Wm and ||u^r||_Wm / ||u||_Wm",
                      [](const CheckEnv& env, double eps, int m) {
                        const CtxPtr ctx = env.context(eps);
                        const VField u = vfield(env, *ctx, "unconstrained_smooth", m);
                        const Decomposition d = decompose(u);
                        const NormParts nu = volume_norms(*ctx, *u, 2);
                        const NormParts na = volume_norms(*ctx, *d.ua, 2);
                        const NormParts nr = volume_norms(*ctx, *d.ur, 2);
                        double q = 0.0;
                        for (int k = 0; k <= 2; ++k) q = std::max({q, na.w(k) / nu.w(k), nr.w(k) / nu.w(k)});
                        return Sample{q, 1.0};
                      }));

  {
    auto d = bounded("exaux_grad", "-", "sup of |grad Psi| and |grad^2 Psi|",
                     [](const CheckEnv& env, double eps, int) {
                       const CtxPtr ctx = env.sample_context(eps);
                       double q = 0.0;
                       each_point(*ctx, [&](const Column&, const PointCtx& p) {
                         const Local L = local_values(p, Psi(p), 3, 2);
                         double h = 0.0;
                         for (int j = 0; j < 3; ++j) h += frob2(L.H[j]);
                         q = std::max({q, frob(L.G), std::sqrt(h)});
                       });
                       return Sample{q, 1.0};
                     });
    R.push_back(pointwise(d, 1));
  }

  {
    auto d = bounded("linf_ur", "slip_shell",
                     "||u^r||_inf / (eps^1/2 ||u||_H2 + ||u||^1/2 ||u||_H2^1/2), slip u with gamma = eps",
                     [](const CheckEnv& env, double eps, int m) {
                       auto [ctx, u] = slip_field(env, eps, m, 1.0, false);
                       const Decomposition d = decompose(u);
                       const NormParts nu = volume_norms(*ctx, *u, 2);
                       const double sup = linf_norm(*ctx, *d.ur);
                       return Sample{sup, std::sqrt(eps) * nu.w(2) + std::sqrt(nu.l[0] * nu.w(2))};
                     });
    d.applicable = sphere_only;
    R.push_back(d);
  }

  {
    auto d = bounded("po_grad_ur", "slip_shell", "||grad u^r||_L2 / (eps ||u||_H2 + ||u||_L2), slip u with gamma = eps",
                     [](const CheckEnv& env, double eps, int m) {
                       auto [ctx, u] = slip_field(env, eps, m, 1.0, false);
                       const Decomposition d = decompose(u);
                       const NormParts nu = volume_norms(*ctx, *u, 2);
                       const NormParts nr = volume_norms(*ctx, *d.ur, 1);
                       return Sample{nr.l[1], eps * nu.w(2) + nu.l[0]};
                     });
    d.applicable = sphere_only;
    R.push_back(d);
  }

  {
    auto d = bounded("coercivity", "slip_shell_orth", "a_eps(u,u) / ||u||_H1^2, slip u orthogonal to rotations, gamma = 0",
                     [](const CheckEnv& env, double eps, int m) {
                       auto [ctx, u] = slip_field(env, eps, m, 0.0, true);
                       const double nu = ctx->config().nu;
                       double a = 0.0;
                       each_interior(*ctx, [&](const Column&, const PointCtx& p) {
                         a += p.weight * 2.0 * nu * frob2(value(strain_rate(p, u->eval(p))));
                       });
                       for (const auto& c : ctx->columns())
                         for (int i = 0; i < 2; ++i)
                           a += ctx->gamma(i) * c.boundary(i).bweight * norm2(value(u->eval(c.boundary(i))));
                       const double h1 = vnorm(*ctx, *u, 1);
                       return Sample{a, h1 * h1};
                     });
    d.applicable = sphere_only;
    R.push_back(d);
  }

  return R;
}

}  // namespace

const std::vector<CheckDef>& check_registry() {
  static const std::vector<CheckDef> reg = build_registry();
  return reg;
}

const CheckDef* find_check(const std::string& name) {
  for (const auto& d : check_registry())
    if (d.name == name) return &d;
  return nullptr;
}

std::vector<std::string> check_names() {
  std::vector<std::string> out;
  for (const auto& d : check_registry()) out.push_back(d.name);
  return out;
}

}  // namespace thinshell
