#pragma once

// Scalar and vector fields on the shell and on the surface. Scalars use
// component 0 of the V3 result.

#include <functional>
#include <memory>
#include <string>

#include "thinshell/shell.hpp"

namespace thinshell {

class VolumeField {
 public:
  virtual ~VolumeField() = default;
  virtual int dim() const = 0;
  // Highest exact derivative order in the returned jets (0, 1 or 2).
  virtual int order() const { return 2; }
  virtual V3<JV> eval(const PointCtx& p) const = 0;

  std::string name;
};
using VField = std::shared_ptr<const VolumeField>;

class SurfaceField {
 public:
  virtual ~SurfaceField() = default;
  virtual int dim() const = 0;
  virtual V3<JS> eval(const SurfaceJets& sj) const = 0;

  std::string name;
};
using SField = std::shared_ptr<const SurfaceField>;

// Throws CapabilityError unless f provides derivatives up to `order`.
void require_order(const VolumeField& f, int order, const std::string& what);

// Field given by a function of the ambient position and the point context.
using AmbientFn = std::function<V3<JV>(const PointCtx&)>;
VField make_volume_field(std::string name, int dim, AmbientFn fn, int order = 2);

// Surface field given by a function of the surface jets.
using SurfaceFn = std::function<V3<JS>(const SurfaceJets&)>;
SField make_surface_field(std::string name, int dim, SurfaceFn fn);

// Wraps a value-only ambient function; gradients come from 4th-order
// central differences with step 1e-4 * max(1, |x|). No Hessian.
VField fd_adapter(std::string name, int dim, std::function<V3d(const V3d&)> f);

// Sums and differences of fields of equal dimension.
VField difference(VField a, VField b);

// Pointwise values and derivatives of a field at a point.
struct Local {
  V3d v;
  M3d G;                   // (i, j) = d_i v_j
  std::array<M3d, 3> H{};  // H[j](i, k) = d_i d_k v_j
};
Local local_values(const PointCtx& p, const V3<JV>& u, int dim, int order);

}  // namespace thinshell
