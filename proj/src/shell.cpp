#include "thinshell/shell.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>

#include "thinshell/errors.hpp"

namespace thinshell {

namespace {

std::vector<double> parse_numbers(const std::string& s, const std::string& spec) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      size_t pos = 0;
      out.push_back(std::stod(tok, &pos));
      if (pos != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw ConfigError("bad number in thickness spec '" + spec + "'");
    }
  }
  return out;
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

ThicknessFn ThicknessFn::parse(const std::string& spec) {
  ThicknessFn f;
  auto colon = spec.find(':');
  if (colon == std::string::npos) throw ConfigError("thickness spec '" + spec + "' lacks a kind");
  const std::string kind = spec.substr(0, colon);
  const std::string rest = spec.substr(colon + 1);
  if (kind == "const") {
    auto v = parse_numbers(rest, spec);
    if (v.size() != 1) throw ConfigError("const thickness needs one value: '" + spec + "'");
    f.kind = Kind::Const;
    f.a = v[0];
  } else if (kind == "linear_z") {
    auto v = parse_numbers(rest, spec);
    if (v.size() != 2) throw ConfigError("linear_z thickness needs a,b: '" + spec + "'");
    f.kind = Kind::LinearZ;
    f.a = v[0];
    f.b = v[1];
  } else if (kind == "custom") {
    std::string name = rest, args;
    if (auto c2 = rest.find(':'); c2 != std::string::npos) {
      name = rest.substr(0, c2);
      args = rest.substr(c2 + 1);
    }
    if (name == "wave")
      f.kind = Kind::Wave;
    else if (name == "quadratic")
      f.kind = Kind::Quadratic;
    else
      throw ConfigError("unknown custom thickness '" + name + "'");
    f.a = 0.5;
    f.b = 0.1;
    if (!args.empty()) {
      auto v = parse_numbers(args, spec);
      if (v.size() != 2) throw ConfigError("custom thickness takes a,b: '" + spec + "'");
      f.a = v[0];
      f.b = v[1];
    }
  } else {
    throw ConfigError("unknown thickness kind '" + kind + "'");
  }
  return f;
}

std::string ThicknessFn::str() const {
  switch (kind) {
    case Kind::Const:
      return "const:" + fmt(a);
    case Kind::LinearZ:
      return "linear_z:" + fmt(a) + "," + fmt(b);
    case Kind::Wave:
      return "custom:wave:" + fmt(a) + "," + fmt(b);
    case Kind::Quadratic:
      return "custom:quadratic:" + fmt(a) + "," + fmt(b);
  }
  return "";
}

std::string ShellConfig::key() const {
  return g0.str() + "|" + g1.str() + "|" + fmt(eps) + "|" + fmt(nu) + "|" + fmt(gamma0) + "|" + fmt(gamma1) +
         "|" + std::to_string(radial_nodes) + "|" + std::to_string(resolution[0]) + "x" +
         std::to_string(resolution[1]);
}

ShellConfig default_shell(const Surface& S, double eps) {
  ShellConfig c;
  c.eps = eps;
  if (S.name == "torus") {
    c.g0 = ThicknessFn::parse("linear_z:-0.25,0.1");
    c.g1 = ThicknessFn::parse("linear_z:0.25,0.2");
  } else {
    c.g0 = ThicknessFn::parse("linear_z:-0.5,0.1");
    c.g1 = ThicknessFn::parse("linear_z:0.5,0.2");
  }
  return c;
}

ShellContext::ShellContext(const Surface& S, const ShellConfig& cfg) : S_(&S), cfg_(cfg) {
  if (!(cfg.eps > 0.0)) throw ConfigError("eps must be positive");
  if (cfg.radial_nodes < 1) throw ConfigError("radial_nodes must be at least 1");
  if (cfg.nu <= 0.0) throw ConfigError("viscosity must be positive");
  if (cfg.gamma0 < 0.0 || cfg.gamma1 < 0.0) throw ConfigError("friction coefficients must be nonnegative");
  radial_ = gauss_legendre(cfg.radial_nodes, 0.0, 1.0);
  res_ = S.default_resolution();
  if (cfg.resolution[0] > 0) res_[0] = cfg.resolution[0];
  if (cfg.resolution[1] > 0) res_[1] = cfg.resolution[1];
  const auto nodes = S.quadrature(res_[0], res_[1]);
  cols_.resize(nodes.size());
  for (size_t k = 0; k < nodes.size(); ++k) build_column(cols_[k], nodes[k].p, nodes[k].weight, 0);
  for (auto& c : cols_) {
    if (!(c.g.value() > 0.0)) throw ConfigError("thickness g1 - g0 must be positive on the surface");
    const double reach = cfg_.eps * std::max(std::abs(c.g0.value()), std::abs(c.g1.value()));
    if (reach >= S.delta) throw ConfigError("shell leaves the tubular neighbourhood (eps too large)");
    for (auto& p : c.pts) p.col = &c;
    c.persistent = true;
  }
}

void ShellContext::build_column(Column& c, const ChartPoint& p, double area_weight, int n_extra) const {
  fill_surface_jets(*S_, p, c);
  c.ctx = this;
  c.area_weight = area_weight;
  const double eps = cfg_.eps;
  const V3<J23> y3 = truncate<3>(c.mu);
  const J23 g0 = cfg_.g0(y3), g1 = cfg_.g1(y3);
  c.g0 = truncate<2>(g0);
  c.g1 = truncate<2>(g1);
  c.g = c.g1 - c.g0;
  c.gradg[0] = tgrad(c, g0);
  c.gradg[1] = tgrad(c, g1);
  const V3<JS> n2 = truncate<2>(c.n);
  for (int i = 0; i < 2; ++i) {
    const JS& gi = i == 0 ? c.g0 : c.g1;
    const M3<JS> A = identity<JS>() - scale(c.W, gi * eps);
    c.tau[i] = inverse(A) * c.gradg[i];
    const double sign = i == 0 ? -1.0 : 1.0;
    const JS s = recip(sqrt(1.0 + eps * eps * dot(c.tau[i], c.tau[i]))) * sign;
    c.neps[i] = scale(n2 - c.tau[i] * eps, s);
  }

  const V3<JV> mu = embed<3, 2>(c.mu);
  const V3<JV> nv = embed<3, 2>(c.n);
  const JV g0v = embed<3, 2>(c.g0), gv = embed<3, 2>(c.g);
  const M3d W = value(c.W);
  const double sg = c.sqrtg.value();
  auto make = [&](double xi, PointKind kind, double w) {
    PointCtx pt;
    pt.kind = kind;
    pt.xi = xi;
    pt.r = (g0v + gv * JV::variable(2, xi)) * eps;
    pt.x = mu + scale(nv, pt.r);
    M3<J31> F;
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < 3; ++k) F(i, k) = d(pt.x[i], k);
    pt.FinvT = transpose(inverse(F));
    pt.J = det(identity<double>() - W * pt.r.value());
    pt.weight = w * area_weight * eps * c.g.value() * pt.J;
    if (kind == PointKind::Inner || kind == PointKind::Outer) {
      const V3d a1(F(0, 0).value(), F(1, 0).value(), F(2, 0).value());
      const V3d a2(F(0, 1).value(), F(1, 1).value(), F(2, 1).value());
      pt.bweight = area_weight * norm(cross(a1, a2)) / sg;
      pt.weight = 0.0;
    }
    return pt;
  };
  c.n_radial = static_cast<int>(radial_.nodes.size());
  c.pts.clear();
  c.pts.reserve(c.n_radial + 2 + n_extra);
  for (int j = 0; j < c.n_radial; ++j) c.pts.push_back(make(radial_.nodes[j], PointKind::Interior, radial_.weights[j]));
  c.pts.push_back(make(0.0, PointKind::Inner, 0.0));
  c.pts.push_back(make(1.0, PointKind::Outer, 0.0));
  for (int k = 0; k < n_extra; ++k) {
    auto pt = make(n_extra == 1 ? 0.5 : static_cast<double>(k) / (n_extra - 1), PointKind::Extra, 0.0);
    pt.weight = 0.0;
    c.pts.push_back(pt);
  }
}

void ShellContext::column_at(const ChartPoint& p, Column& out, int n_extra) const {
  build_column(out, p, 0.0, n_extra);
  out.persistent = false;
  for (auto& pt : out.pts) pt.col = &out;
}

void ShellContext::visit_sup_grid(const std::function<void(const Column&)>& f) const {
  const auto base = S_->default_resolution();
  const auto nodes = S_->quadrature(4 * base[0], 4 * base[1]);
  Column c;
  for (const auto& nd : nodes) {
    column_at(nd.p, c, 9);
    f(c);
  }
}

std::shared_ptr<const ShellContext> ContextCache::get(const Surface& S, const ShellConfig& cfg) {
  std::string key = S.name;
  for (const auto& [k, v] : S.params) key += "|" + k + "=" + fmt(v);
  key += "|" + cfg.key();
  std::shared_ptr<Entry> e;
  {
    std::lock_guard<std::mutex> lk(m_);
    for (auto& [k, v] : entries_)
      if (k == key) e = v;
    if (!e) {
      e = std::make_shared<Entry>();
      entries_.emplace_back(key, e);
    }
  }
  std::call_once(e->once, [&] { e->ctx = std::make_shared<ShellContext>(S, cfg); });
  return e->ctx;
}

void ContextCache::clear() {
  std::lock_guard<std::mutex> lk(m_);
  entries_.clear();
}

ContextCache& global_context_cache() {
  static ContextCache c;
  return c;
}

V3<JV> nbar(const PointCtx& p) { return embed<3, 2>(p.col->n); }

M3<JV> Pbar(const PointCtx& p) {
  const auto n = nbar(p);
  return identity<JV>() - outer(n, n);
}

M3<JV> Wbar(const PointCtx& p) { return embed<3, 2>(p.col->W); }

V3<JV> Psi(const PointCtx& p) {
  const Column& c = *p.col;
  const double eps = c.ctx->eps();
  const JV ig = recip(lift(p, c.g));
  const JV w1 = (p.r - lift(p, c.g0) * eps) * ig;
  const JV w0 = (lift(p, c.g1) * eps - p.r) * ig;
  return scale(lift(p, c.tau[1]), w1) + scale(lift(p, c.tau[0]), w0);
}

V3<JV> psi_weight(const PointCtx& p) {
  const Column& c = *p.col;
  const double eps = c.ctx->eps();
  const JV ig = recip(lift(p, c.g));
  const JV w1 = (p.r - lift(p, c.g0) * eps) * ig;
  const JV w0 = (lift(p, c.g1) * eps - p.r) * ig;
  return scale(lift(p, c.gradg[1]), w1) + scale(lift(p, c.gradg[0]), w0);
}

double jacobian(const GeometryPack& g, double r) { return det(identity<double>() - g.W * r); }

double volume_integral(const ShellContext& ctx, const std::function<double(const PointCtx&)>& f) {
  double s = 0.0;
  for (const auto& c : ctx.columns())
    for (int j = 0; j < c.n_radial; ++j) s += c.radial(j).weight * f(c.radial(j));
  return s;
}

double boundary_integral(const ShellContext& ctx, int i, const std::function<double(const PointCtx&)>& f) {
  double s = 0.0;
  for (const auto& c : ctx.columns()) s += c.boundary(i).bweight * f(c.boundary(i));
  return s;
}

double shell_volume(const ShellContext& ctx) {
  return volume_integral(ctx, [](const PointCtx&) { return 1.0; });
}

V3d boundary_normal(const Column& c, int i) { return value(c.neps[i]); }

M3d weingarten_boundary(const Column& c, int i) {
  const PointCtx& p = c.boundary(i);
  const V3<JV> ne = embed<3, 2>(c.neps[i]);
  const M3d G = value(grad(p, ne));
  const V3d n = value(ne);
  const M3d P = identity<double>() - outer(n, n);
  return -(P * G);
}

double determinant_identity_check(const Surface& S, const ShellConfig& cfg, int samples, unsigned seed) {
  std::mt19937_64 rng(seed);
  auto uni = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  const double h = 1e-3;
  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    const ChartPoint p = S.sample(uni(), uni());
    const double s3 = uni();
    const Chart& ch = S.chart(p.chart);
    auto zeta = [&](double a, double b, double c3) {
      const auto J = ch.jet1(a, b);
      const V3d mu = value(J);
      V3d m1, m2;
      for (int i = 0; i < 3; ++i) {
        m1[i] = J[i].partial(0);
        m2[i] = J[i].partial(1);
      }
      V3d n = cross(m1, m2);
      n = n / norm(n);
      const double he = cfg.eps * ((1.0 - c3) * cfg.g0(mu) + c3 * cfg.g1(mu));
      return mu + n * he;
    };
    const double base[3] = {p.s[0], p.s[1], s3};
    M3d D;
    for (int k2 = 0; k2 < 3; ++k2) {
      auto at = [&](double off) {
        double q[3] = {base[0], base[1], base[2]};
        q[k2] += off;
        return zeta(q[0], q[1], q[2]);
      };
      const V3d col = (at(-2 * h) - at(2 * h) + 8.0 * (at(h) - at(-h))) / (12.0 * h);
      for (int i = 0; i < 3; ++i) D(i, k2) = col[i];
    }
    const double fd = det(D);
    const SurfaceJets sj = surface_jets(S, p);
    const GeometryPack g = geometry_pack(sj);
    const double g0 = cfg.g0(g.y), g1 = cfg.g1(g.y);
    const double he = cfg.eps * ((1.0 - s3) * g0 + s3 * g1);
    const double expect = cfg.eps * (g1 - g0) * jacobian(g, he) * g.area_element;
    worst = std::max(worst, std::abs(fd - expect) / std::abs(expect));
  }
  return worst;
}

double sphere_shell_volume(double R, double eps, double g0, double g1) {
  const double a = R + eps * g0, b = R + eps * g1;
  return 4.0 * std::numbers::pi / 3.0 * (b * b * b - a * a * a);
}

}  // namespace thinshell
