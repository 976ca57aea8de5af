#pragma once

// Lebesgue and Sobolev norms by shell, boundary and surface quadrature.

#include <functional>

#include "thinshell/fields.hpp"

namespace thinshell {

using PointFn = std::function<double(const PointCtx&)>;
using ColumnFn = std::function<double(const Column&)>;

// (int |f|^p)^{1/p} of a pointwise quantity.
double vol_lp(const ShellContext& ctx, const PointFn& f, double p = 2.0);
double bdry_lp(const ShellContext& ctx, int i, const PointFn& f, double p = 2.0);
double surf_lp(const ShellContext& ctx, const ColumnFn& f, double p = 2.0);
// Maximum of |f| over the refined sampling grid.
double vol_sup(const ShellContext& ctx, const PointFn& f);

// Lp norms of a field and of its first and second derivatives.
struct NormParts {
  std::array<double, 3> l{0.0, 0.0, 0.0};
  double p = 2.0;
  // W^{m,p} norm built from orders 0..m.
  double w(int m) const;
};

NormParts volume_norms(const ShellContext& ctx, const VolumeField& f, int max_order, double p = 2.0);
NormParts surface_norms(const ShellContext& ctx, const SurfaceField& f, int max_order, double p = 2.0);

double lp_norm(const ShellContext& ctx, const VolumeField& f, double p = 2.0);
double wmp_norm(const ShellContext& ctx, const VolumeField& f, int m, double p = 2.0);
double surface_lp_norm(const ShellContext& ctx, const SurfaceField& f, double p = 2.0);
double surface_wmp_norm(const ShellContext& ctx, const SurfaceField& f, int m, double p = 2.0);
double boundary_lp_norm(const ShellContext& ctx, const VolumeField& f, int i, double p = 2.0);
double linf_norm(const ShellContext& ctx, const VolumeField& f);

// |v|, |G|, |T| for vectors, matrices and third-order tensors of surface jets.
double surface_hessian_norm(const SurfaceJets& sj, const V3<JS>& v, int dim);

}  // namespace thinshell
