#include "thinshell/operators.hpp"

#include <map>
#include <mutex>

#include "thinshell/errors.hpp"

namespace thinshell {

namespace {

class ConstantExtension final : public VolumeField {
 public:
  explicit ConstantExtension(SField eta) : eta_(std::move(eta)) { name = "ext(" + eta_->name + ")"; }
  int dim() const override { return eta_->dim(); }
  V3<JV> eval(const PointCtx& p) const override { return embed<3, 2>(eta_->eval(*p.col)); }

 private:
  SField eta_;
};

class AverageField final : public SurfaceField {
 public:
  AverageField(VField f, bool tangential) : f_(std::move(f)), tangential_(tangential) {
    name = (tangential ? "Mt(" : "M(") + f_->name + ")";
  }
  int dim() const override { return f_->dim(); }
  V3<JS> eval(const SurfaceJets& sj) const override {
    const auto* c = dynamic_cast<const Column*>(&sj);
    if (!c) throw CapabilityError("averages can only be evaluated on shell columns");
    return tangential_ ? average_tangential(*f_, *c) : average(*f_, *c);
  }

 private:
  VField f_;
  bool tangential_;
};

class ImpermeableExtension final : public VolumeField {
 public:
  explicit ImpermeableExtension(SField v) : v_(std::move(v)) { name = "E(" + v_->name + ")"; }
  int dim() const override { return 3; }
  V3<JV> eval(const PointCtx& p) const override {
    const V3<JS> v = v_->eval(*p.col);
    const V3d vv = value(v), n = value(p.col->n);
    if (std::abs(dot(vv, n)) > 1e-10 * std::max(1.0, norm(vv)))
      throw PreconditionError("impermeable extension of a non-tangential field '" + v_->name + "'");
    return impermeable_extension_at(p, v);
  }

 private:
  SField v_;
};

// Caches the tangential average per column.
class AverageCache {
 public:
  explicit AverageCache(VField u) : u_(std::move(u)) {}
  V3<JS> get(const Column& c) const {
    if (!c.persistent) return average_tangential(*u_, c);
    {
      std::lock_guard<std::mutex> lk(m_);
      auto it = cache_.find(&c);
      if (it != cache_.end()) return it->second;
    }
    V3<JS> v = average_tangential(*u_, c);
    std::lock_guard<std::mutex> lk(m_);
    cache_.emplace(&c, v);
    return v;
  }
  const VField& base() const { return u_; }

 private:
  VField u_;
  mutable std::mutex m_;
  mutable std::map<const Column*, V3<JS>> cache_;
};

class UaField final : public VolumeField {
 public:
  explicit UaField(std::shared_ptr<AverageCache> cache) : cache_(std::move(cache)) {
    name = "ua(" + cache_->base()->name + ")";
  }
  int dim() const override { return 3; }
  int order() const override { return cache_->base()->order(); }
  V3<JV> eval(const PointCtx& p) const override { return impermeable_extension_at(p, cache_->get(*p.col)); }

 private:
  std::shared_ptr<AverageCache> cache_;
};

class GVector final : public VolumeField {
 public:
  explicit GVector(VField u) : u_(std::move(u)) { name = "G(" + u_->name + ")"; }
  int dim() const override { return 3; }
  int order() const override { return std::min(1, u_->order()); }
  V3<JV> eval(const PointCtx& p) const override {
    const Column& c = *p.col;
    const auto* ctx = c.ctx;
    const double eps = ctx->eps(), nu = ctx->config().nu;
    const J31 r = truncate<1>(p.r);
    const J31 ieg = recip(embed<3, 1>(c.g) * eps);
    const J31 w1 = (r - embed<3, 1>(c.g0) * eps) * ieg;
    const J31 w0 = (embed<3, 1>(c.g1) * eps - r) * ieg;
    const V3<J31> n0 = embed<3, 1>(c.neps[0]), n1 = embed<3, 1>(c.neps[1]);
    const V3<J31> nt1 = scale(n1, w1) - scale(n0, w0);
    const V3<J31> nt2 = scale(n1, w1 * (ctx->gamma(1) / nu)) + scale(n0, w0 * (ctx->gamma(0) / nu));
    const M3<J31> Wt = scale(weingarten_lift(p, 1), w1) - scale(weingarten_lift(p, 0), w0);
    const V3<J31> u = truncate<1>(u_->eval(p));
    const V3<J31> G = cross(nt1, Wt * u) * 2.0 + cross(nt2, u);
    return embed<3, 2>(G);
  }

 private:
  VField u_;
};

}  // namespace

VField constant_extension(SField eta) { return std::make_shared<ConstantExtension>(std::move(eta)); }

J31 normal_derivative(const PointCtx& p, const JV& f) {
  return dot(embed<3, 1>(p.col->n), grad(p, f));
}

V3<JS> average(const VolumeField& f, const Column& c) {
  const auto& w = c.ctx->radial_rule().weights;
  V3<JS> m;
  for (int j = 0; j < c.n_radial; ++j) {
    const V3<JV> v = f.eval(c.radial(j));
    for (int i = 0; i < 3; ++i) m[i] += restrict_vars<2>(v[i]) * w[j];
  }
  return m;
}

V3<JS> average_tangential(const VolumeField& u, const Column& c) {
  return projector<2>(c) * average(u, c);
}

V3d average_gradient(const VolumeField& phi, const Column& c) {
  require_order(phi, 1, "average_gradient");
  const auto& w = c.ctx->radial_rule().weights;
  const M3d W = value(c.W);
  const V3d n = value(c.n);
  const M3d P = identity<double>() - outer(n, n);
  V3d out;
  for (int j = 0; j < c.n_radial; ++j) {
    const PointCtx& p = c.radial(j);
    const JV f = phi.eval(p)[0];
    const V3d g = value(grad(p, f));
    const M3d B = (identity<double>() - W * p.r.value()) * P;
    const V3d ps = value(psi_weight(p));
    out += (B * g + ps * dot(n, g)) * w[j];
  }
  return out;
}

SField average_field(VField f, bool tangential) { return std::make_shared<AverageField>(std::move(f), tangential); }

VField impermeable_extension(SField v) { return std::make_shared<ImpermeableExtension>(std::move(v)); }

V3<JV> impermeable_extension_at(const PointCtx& p, const V3<JS>& v) {
  const V3<JV> vb = embed<3, 2>(v);
  return vb + scale(nbar(p), dot(vb, Psi(p)));
}

Decomposition decompose(VField u) {
  auto cache = std::make_shared<AverageCache>(u);
  Decomposition d;
  d.ua = std::make_shared<UaField>(cache);
  d.ur = difference(u, d.ua);
  return d;
}

M3<J31> weingarten_lift(const PointCtx& p, int i) {
  const V3<JV> ne = embed<3, 2>(p.col->neps[i]);
  const M3<J31> G = grad(p, ne);
  const V3<J31> n = truncate<1>(ne);
  return -((identity<J31>() - outer(n, n)) * G);
}

VField g_vector(VField u) { return std::make_shared<GVector>(std::move(u)); }

V3<J31> curl(const PointCtx& p, const V3<JV>& u) {
  const M3<J31> G = grad(p, u);
  return V3<J31>(G(1, 2) - G(2, 1), G(2, 0) - G(0, 2), G(0, 1) - G(1, 0));
}

J31 div(const PointCtx& p, const V3<JV>& u) { return trace(grad(p, u)); }

M3<J31> strain_rate(const PointCtx& p, const V3<JV>& u) {
  const M3<J31> G = grad(p, u);
  return (G + transpose(G)) * 0.5;
}

}  // namespace thinshell
