#include "thinshell/norms.hpp"

#include <cmath>

namespace thinshell {

namespace {

double powp(double a, double p) { return p == 2.0 ? a * a : std::pow(a, p); }
double rootp(double s, double p) { return p == 2.0 ? std::sqrt(s) : std::pow(s, 1.0 / p); }

double tensor3_norm(const std::array<M3d, 3>& H, int dim) {
  double s = 0.0;
  for (int j = 0; j < dim; ++j) s += frob2(H[j]);
  return std::sqrt(s);
}

double mat_norm(const M3d& G, int dim) {
  double s = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < dim; ++j) s += G(i, j) * G(i, j);
  return std::sqrt(s);
}

double vec_norm(const V3d& v, int dim) {
  double s = 0.0;
  for (int j = 0; j < dim; ++j) s += v[j] * v[j];
  return std::sqrt(s);
}

}  // namespace

double vol_lp(const ShellContext& ctx, const PointFn& f, double p) {
  double s = 0.0;
  for (const auto& c : ctx.columns())
    for (int j = 0; j < c.n_radial; ++j) s += c.radial(j).weight * powp(std::abs(f(c.radial(j))), p);
  return rootp(s, p);
}

double bdry_lp(const ShellContext& ctx, int i, const PointFn& f, double p) {
  double s = 0.0;
  for (const auto& c : ctx.columns()) s += c.boundary(i).bweight * powp(std::abs(f(c.boundary(i))), p);
  return rootp(s, p);
}

double surf_lp(const ShellContext& ctx, const ColumnFn& f, double p) {
  double s = 0.0;
  for (const auto& c : ctx.columns()) s += c.area_weight * powp(std::abs(f(c)), p);
  return rootp(s, p);
}

double vol_sup(const ShellContext& ctx, const PointFn& f) {
  double m = 0.0;
  ctx.visit_sup_grid([&](const Column& c) {
    for (int k = 0; k < c.n_extra(); ++k) m = std::max(m, std::abs(f(c.extra(k))));
  });
  return m;
}

double NormParts::w(int m) const {
  double s = 0.0;
  for (int k = 0; k <= m; ++k) s += powp(l[k], p);
  return rootp(s, p);
}

NormParts volume_norms(const ShellContext& ctx, const VolumeField& f, int max_order, double p) {
  require_order(f, max_order, "volume norm");
  NormParts out;
  out.p = p;
  std::array<double, 3> s{0.0, 0.0, 0.0};
  const int dim = f.dim();
  for (const auto& c : ctx.columns())
    for (int j = 0; j < c.n_radial; ++j) {
      const PointCtx& pt = c.radial(j);
      const Local L = local_values(pt, f.eval(pt), dim, max_order);
      s[0] += pt.weight * powp(vec_norm(L.v, dim), p);
      if (max_order >= 1) s[1] += pt.weight * powp(mat_norm(L.G, dim), p);
      if (max_order >= 2) s[2] += pt.weight * powp(tensor3_norm(L.H, dim), p);
    }
  for (int k = 0; k <= max_order; ++k) out.l[k] = rootp(s[k], p);
  return out;
}

double surface_hessian_norm(const SurfaceJets& sj, const V3<JS>& v, int dim) {
  double s = 0.0;
  for (int j = 0; j < dim; ++j) {
    const V3<J21> g = tgrad(sj, v[j]);
    for (int k = 0; k < 3; ++k) s += norm2(value(tgrad(sj, g[k])));
  }
  return std::sqrt(s);
}

NormParts surface_norms(const ShellContext& ctx, const SurfaceField& f, int max_order, double p) {
  NormParts out;
  out.p = p;
  std::array<double, 3> s{0.0, 0.0, 0.0};
  const int dim = f.dim();
  for (const auto& c : ctx.columns()) {
    const V3<JS> v = f.eval(c);
    s[0] += c.area_weight * powp(vec_norm(value(v), dim), p);
    if (max_order >= 1) {
      const M3d G = value(tgrad(c, v));
      s[1] += c.area_weight * powp(mat_norm(G, dim), p);
    }
    if (max_order >= 2) s[2] += c.area_weight * powp(surface_hessian_norm(c, v, dim), p);
  }
  for (int k = 0; k <= max_order; ++k) out.l[k] = rootp(s[k], p);
  return out;
}

double lp_norm(const ShellContext& ctx, const VolumeField& f, double p) { return volume_norms(ctx, f, 0, p).l[0]; }

double wmp_norm(const ShellContext& ctx, const VolumeField& f, int m, double p) {
  return volume_norms(ctx, f, m, p).w(m);
}

double surface_lp_norm(const ShellContext& ctx, const SurfaceField& f, double p) {
  return surface_norms(ctx, f, 0, p).l[0];
}

double surface_wmp_norm(const ShellContext& ctx, const SurfaceField& f, int m, double p) {
  return surface_norms(ctx, f, m, p).w(m);
}

double boundary_lp_norm(const ShellContext& ctx, const VolumeField& f, int i, double p) {
  const int dim = f.dim();
  return bdry_lp(ctx, i, [&](const PointCtx& pt) { return vec_norm(value(f.eval(pt)), dim); }, p);
}

double linf_norm(const ShellContext& ctx, const VolumeField& f) {
  const int dim = f.dim();
  return vol_sup(ctx, [&](const PointCtx& pt) { return vec_norm(value(f.eval(pt)), dim); });
}

}  // namespace thinshell
