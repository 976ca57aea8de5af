#include "thinshell/surface.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "thinshell/errors.hpp"
#include "thinshell/quadrature.hpp"

namespace thinshell {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_periodic(double x, double lo, double hi) {
  const double L = hi - lo;
  double y = std::fmod(x - lo, L);
  if (y < 0) y += L;
  return lo + y;
}

enum class StarChart { Spherical = 0, North = 1, South = 2 };

struct StarFn {
  double R, a1, a2;
  StarChart kind;

  template <class T>
  V3<T> operator()(const T& s1, const T& s2) const {
    using std::cos;
    using std::sin;
    V3<T> w;
    if (kind == StarChart::Spherical) {
      const T st = sin(s1);
      w = V3<T>(st * cos(s2), st * sin(s2), cos(s1));
    } else {
      const T q = s1 * s1 + s2 * s2;
      const T inv = 1.0 / (1.0 + q);
      if (kind == StarChart::North)
        w = V3<T>(2.0 * s1 * inv, 2.0 * s2 * inv, (1.0 - q) * inv);
      else
        w = V3<T>(2.0 * s1 * inv, -2.0 * s2 * inv, (q - 1.0) * inv);
    }
    const T rho = R * (1.0 + a1 * w[0] + a2 * w[1] * w[2]);
    return V3<T>(rho * w[0], rho * w[1], rho * w[2]);
  }
};

struct TorusFn {
  double R, a;
  template <class T>
  V3<T> operator()(const T& phi, const T& theta) const {
    using std::cos;
    using std::sin;
    const T rr = R + a * cos(theta);
    return V3<T>(rr * cos(phi), rr * sin(phi), a * sin(theta));
  }
};

class StarSurface final : public Surface {
 public:
  StarSurface(std::string nm, double R, double a1, double a2) : R_(R), a1_(a1), a2_(a2) {
    name = std::move(nm);
    params = {{"R", R}, {"a1", a1}, {"a2", a2}};
    auto sph = std::make_unique<FnChart<StarFn>>(StarFn{R, a1, a2, StarChart::Spherical});
    sph->name = "spherical";
    sph->lo = {kPi / 6.0, 0.0};
    sph->hi = {5.0 * kPi / 6.0, 2.0 * kPi};
    sph->periodic = {false, true};
    auto north = std::make_unique<FnChart<StarFn>>(StarFn{R, a1, a2, StarChart::North});
    north->name = "north_cap";
    north->lo = {-0.6, -0.6};
    north->hi = {0.6, 0.6};
    auto south = std::make_unique<FnChart<StarFn>>(StarFn{R, a1, a2, StarChart::South});
    south->name = "south_cap";
    south->lo = {-0.6, -0.6};
    south->hi = {0.6, 0.6};
    charts.push_back(std::move(sph));
    charts.push_back(std::move(north));
    charts.push_back(std::move(south));
    if (a1 == 0.0 && a2 == 0.0) {
      max_abs_kappa = 1.0 / R;
      exact_area = 4.0 * kPi * R * R;
    } else {
      finalize_curvature_bound(48, 96);
    }
    delta = 0.4 / max_abs_kappa;
  }

  ChartPoint locate(const V3d& x) const override {
    const double r = norm(x);
    if (r == 0.0) throw OutOfTubeError("locate: point at the origin");
    const V3d w = x / r;
    const double alpha = std::acos(std::clamp(w[2], -1.0, 1.0));
    ChartPoint p;
    if (alpha < kPi / 4.0) {
      p.chart = 1;
      p.s = {w[0] / (1.0 + w[2]), w[1] / (1.0 + w[2])};
    } else if (alpha > 3.0 * kPi / 4.0) {
      p.chart = 2;
      p.s = {w[0] / (1.0 - w[2]), -w[1] / (1.0 - w[2])};
    } else {
      p.chart = 0;
      p.s = {alpha, wrap_periodic(std::atan2(w[1], w[0]), 0.0, 2.0 * kPi)};
    }
    return p;
  }

  std::vector<QuadNode> quadrature(int n1, int n2) const override {
    const Rule1D gl = gauss_legendre(n1);
    const FnChart<StarFn> sph(StarFn{R_, a1_, a2_, StarChart::Spherical});
    std::vector<QuadNode> out;
    out.reserve(static_cast<size_t>(n1) * n2);
    for (int k = 0; k < n1; ++k) {
      const double theta = std::acos(gl.nodes[k]);
      const double st = std::sin(theta);
      for (int l = 0; l < n2; ++l) {
        const double phi = 2.0 * kPi * l / n2;
        const auto J = sph.jet1(theta, phi);
        V3d m1, m2;
        for (int i = 0; i < 3; ++i) {
          m1[i] = J[i].partial(0);
          m2[i] = J[i].partial(1);
        }
        QuadNode q;
        q.weight = gl.weights[k] * (2.0 * kPi / n2) * norm(cross(m1, m2)) / st;
        q.p = locate(value(J));
        out.push_back(q);
      }
    }
    return out;
  }

  std::array<int, 2> default_resolution() const override { return {12, 24}; }

  ChartPoint sample(double u1, double u2) const override {
    const double z = 0.95 * (2.0 * u1 - 1.0);
    const double phi = 2.0 * kPi * u2;
    const double st = std::sqrt(1.0 - z * z);
    return locate(V3d(st * std::cos(phi), st * std::sin(phi), z));
  }

 private:
  double R_, a1_, a2_;
};

class TorusSurface final : public Surface {
 public:
  TorusSurface(double R, double a) : R_(R), a_(a) {
    if (!(a > 0.0 && R > a)) throw ConfigError("torus needs R > a > 0");
    name = "torus";
    params = {{"R", R}, {"a", a}};
    auto c = std::make_unique<FnChart<TorusFn>>(TorusFn{R, a});
    c->name = "angles";
    c->lo = {0.0, 0.0};
    c->hi = {2.0 * kPi, 2.0 * kPi};
    c->periodic = {true, true};
    charts.push_back(std::move(c));
    max_abs_kappa = std::max(1.0 / a, 1.0 / (R - a));
    delta = 0.4 / max_abs_kappa;
    exact_area = 4.0 * kPi * kPi * R * a;
  }

  ChartPoint locate(const V3d& x) const override {
    const double rho = std::hypot(x[0], x[1]);
    ChartPoint p;
    p.chart = 0;
    p.s = {wrap_periodic(std::atan2(x[1], x[0]), 0.0, 2.0 * kPi),
           wrap_periodic(std::atan2(x[2], rho - R_), 0.0, 2.0 * kPi)};
    return p;
  }

  // n1 nodes in the minor angle, n2 in the major angle.
  std::vector<QuadNode> quadrature(int n1, int n2) const override {
    std::vector<QuadNode> out;
    out.reserve(static_cast<size_t>(n1) * n2);
    for (int k = 0; k < n1; ++k) {
      const double theta = 2.0 * kPi * (k + 0.5) / n1;
      for (int l = 0; l < n2; ++l) {
        QuadNode q;
        q.p.chart = 0;
        q.p.s = {2.0 * kPi * l / n2, theta};
        q.weight = (2.0 * kPi / n1) * (2.0 * kPi / n2) * a_ * (R_ + a_ * std::cos(theta));
        out.push_back(q);
      }
    }
    return out;
  }

  std::array<int, 2> default_resolution() const override { return {16, 32}; }

  ChartPoint sample(double u1, double u2) const override {
    ChartPoint p;
    p.chart = 0;
    p.s = {2.0 * kPi * u1, 2.0 * kPi * u2};
    return p;
  }

 private:
  double R_, a_;
};

}  // namespace

bool Chart::contains(double s1, double s2) const {
  const double s[2] = {s1, s2};
  for (int i = 0; i < 2; ++i)
    if (!periodic[i] && (s[i] < lo[i] || s[i] > hi[i])) return false;
  return true;
}

std::array<double, 2> Chart::wrap(std::array<double, 2> s) const {
  for (int i = 0; i < 2; ++i)
    if (periodic[i]) s[i] = wrap_periodic(s[i], lo[i], hi[i]);
  return s;
}

std::array<V3d, 2> Chart::first_derivatives(double s1, double s2) const {
  const auto J = jet1(s1, s2);
  std::array<V3d, 2> r;
  for (int a = 0; a < 2; ++a)
    for (int i = 0; i < 3; ++i) r[a][i] = J[i].partial(a);
  return r;
}

std::array<V3d, 3> Chart::second_derivatives(double s1, double s2) const {
  const auto J = jet2(s1, s2);
  std::array<V3d, 3> r;
  for (int i = 0; i < 3; ++i) {
    r[0][i] = J[i].partial2(0, 0);
    r[1][i] = J[i].partial2(0, 1);
    r[2][i] = J[i].partial2(1, 1);
  }
  return r;
}

V3d Surface::point(const ChartPoint& p) const { return chart(p.chart).map(p.s[0], p.s[1]); }

void Surface::finalize_curvature_bound(int n1, int n2) {
  double m = 0.0;
  for (const auto& q : quadrature(n1, n2)) {
    const GeometryPack g = geometry_at(*this, q.p);
    m = std::max({m, std::abs(g.kappa1), std::abs(g.kappa2)});
  }
  max_abs_kappa = m;
}

std::unique_ptr<Surface> make_star_surface(const std::string& name, double R, double a1, double a2) {
  if (!(R > 0.0)) throw ConfigError("star surface needs R > 0");
  if (std::abs(a1) + std::abs(a2) >= 0.5) throw ConfigError("star surface perturbation too large");
  return std::make_unique<StarSurface>(name, R, a1, a2);
}

std::unique_ptr<Surface> make_sphere(double R) { return make_star_surface("sphere", R, 0.0, 0.0); }

std::unique_ptr<Surface> make_perturbed_sphere(double a1, double a2) {
  return make_star_surface("perturbed_sphere", 1.0, a1, a2);
}

std::unique_ptr<Surface> make_torus(double R, double a) { return std::make_unique<TorusSurface>(R, a); }

std::unique_ptr<Surface> make_surface(const std::string& name, const std::map<std::string, double>& params) {
  auto get = [&](const std::map<std::string, double>& defaults) {
    for (const auto& [k, v] : params)
      if (!defaults.count(k)) throw ConfigError("unknown parameter '" + k + "' for surface " + name);
    std::map<std::string, double> out = defaults;
    for (const auto& [k, v] : params) out[k] = v;
    return out;
  };
  if (name == "sphere") {
    auto p = get({{"R", 1.0}});
    return make_sphere(p["R"]);
  }
  if (name == "perturbed_sphere") {
    auto p = get({{"a1", 0.1}, {"a2", 0.05}});
    return make_perturbed_sphere(p["a1"], p["a2"]);
  }
  if (name == "torus") {
    auto p = get({{"R", 2.0}, {"a", 0.5}});
    return make_torus(p["R"], p["a"]);
  }
  throw ConfigError("unknown surface '" + name + "'");
}

void fill_surface_jets(const Surface& S, const ChartPoint& p, SurfaceJets& out) {
  const Chart& c = S.chart(p.chart);
  out.p = p;
  out.mu = c.jet(p.s[0], p.s[1]);
  for (int a = 0; a < 2; ++a) out.t[a] = map(out.mu, [a](const J24& e) { return d(e, a); });
  J23 G[2][2];
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) G[a][b] = dot(out.t[a], out.t[b]);
  const J23 inv = recip(G[0][0] * G[1][1] - G[0][1] * G[1][0]);
  out.Ginv[0][0] = G[1][1] * inv;
  out.Ginv[1][1] = G[0][0] * inv;
  out.Ginv[0][1] = -G[0][1] * inv;
  out.Ginv[1][0] = out.Ginv[0][1];
  const V3<J23> cr = cross(out.t[0], out.t[1]);
  out.sqrtg = sqrt(dot(cr, cr));
  out.n = scale(cr, recip(out.sqrtg));
  std::array<V3<J22>, 2> dn;
  for (int a = 0; a < 2; ++a) dn[a] = map(out.n, [a](const J23& e) { return d(e, a); });
  M3<J22> W;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      const J22 g = truncate<2>(out.Ginv[a][b]);
      const V3<J22> tb = truncate<2>(out.t[b]);
      for (int i = 0; i < 3; ++i) {
        const J22 gt = g * tb[i];
        for (int j = 0; j < 3; ++j) W(i, j) -= gt * dn[a][j];
      }
    }
  out.W = W;
}

SurfaceJets surface_jets(const Surface& S, const ChartPoint& p) {
  SurfaceJets sj;
  fill_surface_jets(S, p, sj);
  return sj;
}

GeometryPack geometry_pack(const SurfaceJets& sj) {
  GeometryPack g;
  g.y = sj.y();
  g.n = value(sj.n);
  for (int a = 0; a < 2; ++a) g.t[a] = value(sj.t[a]);
  g.Q = outer(g.n, g.n);
  g.P = identity<double>() - g.Q;
  g.W = value(sj.W);
  g.H = trace(g.W);
  g.area_element = sj.sqrtg.value();
  Eigen::Matrix3d Wm;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) Wm(i, j) = 0.5 * (g.W(i, j) + g.W(j, i));
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(Wm);
  const Eigen::Vector3d nv(g.n[0], g.n[1], g.n[2]);
  int skip = 0;
  double best = -1.0;
  for (int k = 0; k < 3; ++k) {
    const double al = std::abs(es.eigenvectors().col(k).dot(nv));
    if (al > best) {
      best = al;
      skip = k;
    }
  }
  double ks[2];
  int m = 0;
  for (int k = 0; k < 3; ++k)
    if (k != skip) ks[m++] = es.eigenvalues()(k);
  g.kappa1 = std::min(ks[0], ks[1]);
  g.kappa2 = std::max(ks[0], ks[1]);
  return g;
}

GeometryPack geometry_at(const Surface& S, const ChartPoint& p) {
  const Chart& c = S.chart(p.chart);
  if (!c.contains(p.s[0], p.s[1]))
    throw ChartDomainError("chart '" + c.name + "' evaluated outside its domain");
  return geometry_pack(surface_jets(S, p));
}

ClosestPoint closest_point(const Surface& S, const V3d& x) {
  ChartPoint p = S.locate(x);
  int it = 0;
  bool converged = false;
  for (; it < 50; ++it) {
    const Chart& c = S.chart(p.chart);
    const auto J = c.jet2(p.s[0], p.s[1]);
    const V3d mu = value(J);
    V3d m[2], mm[3];
    for (int i = 0; i < 3; ++i) {
      m[0][i] = J[i].partial(0);
      m[1][i] = J[i].partial(1);
      mm[0][i] = J[i].partial2(0, 0);
      mm[1][i] = J[i].partial2(0, 1);
      mm[2][i] = J[i].partial2(1, 1);
    }
    const V3d r = x - mu;
    const double g0 = -dot(r, m[0]), g1 = -dot(r, m[1]);
    const double h00 = dot(m[0], m[0]) - dot(r, mm[0]);
    const double h01 = dot(m[0], m[1]) - dot(r, mm[1]);
    const double h11 = dot(m[1], m[1]) - dot(r, mm[2]);
    const double det = h00 * h11 - h01 * h01;
    double s0, s1;
    if (det > 0.0 && h00 > 0.0) {
      s0 = -(h11 * g0 - h01 * g1) / det;
      s1 = -(-h01 * g0 + h00 * g1) / det;
    } else {
      s0 = -g0 / dot(m[0], m[0]);
      s1 = -g1 / dot(m[1], m[1]);
    }
    const double F0 = 0.5 * norm2(r);
    double lam = 1.0;
    for (int k = 0; k < 40; ++k) {
      const V3d y = c.map(p.s[0] + lam * s0, p.s[1] + lam * s1);
      if (0.5 * norm2(x - y) <= F0 * (1.0 + 1e-14) + 1e-300) break;
      lam *= 0.5;
    }
    p.s = c.wrap({p.s[0] + lam * s0, p.s[1] + lam * s1});
    if (std::hypot(lam * s0, lam * s1) < 1e-12) {
      converged = true;
      ++it;
      break;
    }
  }
  if (!S.chart(p.chart).contains(p.s[0], p.s[1])) p = S.locate(S.point(p));
  const SurfaceJets sj = surface_jets(S, p);
  ClosestPoint out;
  out.p = p;
  out.y = sj.y();
  out.iterations = it;
  const V3d n = value(sj.n);
  out.d = dot(x - out.y, n);
  const double resid = norm(x - (out.y + out.d * n));
  if (!converged || resid > 1e-10)
    throw OutOfTubeError("closest point iteration did not converge");
  if (std::abs(out.d) >= S.delta) throw OutOfTubeError("point lies outside the tubular neighbourhood");
  return out;
}

}  // namespace thinshell
