#include "thinshell/fields.hpp"

#include <cmath>

#include "thinshell/errors.hpp"

namespace thinshell {

namespace {

class FnVolumeField final : public VolumeField {
 public:
  FnVolumeField(std::string nm, int dim, AmbientFn fn, int order) : dim_(dim), order_(order), fn_(std::move(fn)) {
    name = std::move(nm);
  }
  int dim() const override { return dim_; }
  int order() const override { return order_; }
  V3<JV> eval(const PointCtx& p) const override { return fn_(p); }

 private:
  int dim_, order_;
  AmbientFn fn_;
};

class FnSurfaceField final : public SurfaceField {
 public:
  FnSurfaceField(std::string nm, int dim, SurfaceFn fn) : dim_(dim), fn_(std::move(fn)) { name = std::move(nm); }
  int dim() const override { return dim_; }
  V3<JS> eval(const SurfaceJets& sj) const override { return fn_(sj); }

 private:
  int dim_;
  SurfaceFn fn_;
};

class FdField final : public VolumeField {
 public:
  FdField(std::string nm, int dim, std::function<V3d(const V3d&)> f) : dim_(dim), f_(std::move(f)) {
    name = std::move(nm);
  }
  int dim() const override { return dim_; }
  int order() const override { return 1; }
  V3<JV> eval(const PointCtx& p) const override {
    const V3d x0 = value(p.x);
    const double h = 1e-4 * std::max(1.0, norm(x0));
    const V3d f0 = f_(x0);
    M3d G;  // (i, j) = d_i f_j
    for (int i = 0; i < 3; ++i) {
      auto at = [&](double off) {
        V3d x = x0;
        x[i] += off;
        return f_(x);
      };
      const V3d di = (at(-2 * h) - at(2 * h) + 8.0 * (at(h) - at(-h))) / (12.0 * h);
      for (int j = 0; j < 3; ++j) G(i, j) = di[j];
    }
    V3<JV> out;
    for (int j = 0; j < 3; ++j) {
      out[j].c[0] = f0[j];
      for (int k = 0; k < 3; ++k) {
        double s = 0.0;
        for (int i = 0; i < 3; ++i) s += p.x[i].partial(k) * G(i, j);
        out[j].c[1 + k] = s;
      }
    }
    return out;
  }

 private:
  int dim_;
  std::function<V3d(const V3d&)> f_;
};

class DiffField final : public VolumeField {
 public:
  DiffField(VField a, VField b) : a_(std::move(a)), b_(std::move(b)) { name = a_->name + "-" + b_->name; }
  int dim() const override { return a_->dim(); }
  int order() const override { return std::min(a_->order(), b_->order()); }
  V3<JV> eval(const PointCtx& p) const override { return a_->eval(p) - b_->eval(p); }

 private:
  VField a_, b_;
};

}  // namespace

void require_order(const VolumeField& f, int order, const std::string& what) {
  if (f.order() < order)
    throw CapabilityError(what + " needs derivatives of order " + std::to_string(order) + " of field '" + f.name +
                          "', which provides only order " + std::to_string(f.order()));
}

VField make_volume_field(std::string name, int dim, AmbientFn fn, int order) {
  return std::make_shared<FnVolumeField>(std::move(name), dim, std::move(fn), order);
}

SField make_surface_field(std::string name, int dim, SurfaceFn fn) {
  return std::make_shared<FnSurfaceField>(std::move(name), dim, std::move(fn));
}

VField fd_adapter(std::string name, int dim, std::function<V3d(const V3d&)> f) {
  return std::make_shared<FdField>(std::move(name), dim, std::move(f));
}

VField difference(VField a, VField b) { return std::make_shared<DiffField>(std::move(a), std::move(b)); }

Local local_values(const PointCtx& p, const V3<JV>& u, int dim, int order) {
  Local L;
  for (int j = 0; j < dim; ++j) {
    L.v[j] = u[j].value();
    if (order >= 1) {
      const V3<J31> g = grad(p, u[j]);
      for (int i = 0; i < 3; ++i) L.G(i, j) = g[i].value();
      if (order >= 2)
        for (int k = 0; k < 3; ++k) {
          const V3<J30> h = grad(p, g[k]);
          for (int i = 0; i < 3; ++i) L.H[j](i, k) = h[i].value();
        }
    }
  }
  return L;
}

}  // namespace thinshell
