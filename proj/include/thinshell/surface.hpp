#pragma once

// Closed surfaces given by overlapping charts, their differential geometry
// and surface quadrature.

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "thinshell/jet.hpp"
#include "thinshell/linalg.hpp"

namespace thinshell {

using J20 = Jet<2, 0>;
using J21 = Jet<2, 1>;
using J22 = Jet<2, 2>;
using J23 = Jet<2, 3>;
using J24 = Jet<2, 4>;
using JS = J22;  // surface fields: value, gradient and Hessian in chart coordinates

struct ChartPoint {
  int chart = 0;
  std::array<double, 2> s{0.0, 0.0};
};

class Chart {
 public:
  virtual ~Chart() = default;

  std::string name;
  std::array<double, 2> lo{}, hi{};
  std::array<bool, 2> periodic{false, false};

  // Parametrization with exact derivatives to fourth order.
  virtual V3<J24> jet(double s1, double s2) const = 0;
  virtual V3<J21> jet1(double s1, double s2) const = 0;
  virtual V3<J22> jet2(double s1, double s2) const = 0;
  virtual V3d map(double s1, double s2) const = 0;

  bool contains(double s1, double s2) const;
  // Wraps periodic coordinates into [lo, hi).
  std::array<double, 2> wrap(std::array<double, 2> s) const;

  std::array<V3d, 2> first_derivatives(double s1, double s2) const;
  // (mu_11, mu_12, mu_22)
  std::array<V3d, 3> second_derivatives(double s1, double s2) const;
};

template <class F>
class FnChart final : public Chart {
 public:
  explicit FnChart(F f) : f_(std::move(f)) {}
  V3<J24> jet(double s1, double s2) const override { return eval<J24>(s1, s2); }
  V3<J21> jet1(double s1, double s2) const override { return eval<J21>(s1, s2); }
  V3<J22> jet2(double s1, double s2) const override { return eval<J22>(s1, s2); }
  V3d map(double s1, double s2) const override { return f_(s1, s2); }

 private:
  template <class J>
  V3<J> eval(double s1, double s2) const {
    return f_(J::variable(0, s1), J::variable(1, s2));
  }
  F f_;
};

struct QuadNode {
  ChartPoint p;
  double weight = 0.0;  // area weight
};

class Surface {
 public:
  virtual ~Surface() = default;

  std::string name;
  std::map<std::string, double> params;
  std::vector<std::unique_ptr<Chart>> charts;
  double max_abs_kappa = 0.0;
  double delta = 0.0;  // tubular radius used for validity checks
  std::optional<double> exact_area;

  // Chart point whose image is a good initial guess for the closest point
  // to x (exact for points on the surface).
  virtual ChartPoint locate(const V3d& x) const = 0;
  // Area quadrature of resolution (n1, n2).
  virtual std::vector<QuadNode> quadrature(int n1, int n2) const = 0;
  // Default quadrature resolution.
  virtual std::array<int, 2> default_resolution() const = 0;
  // Random point in the interior of some chart domain, driven by u in [0,1)^2.
  virtual ChartPoint sample(double u1, double u2) const = 0;

  V3d point(const ChartPoint& p) const;
  const Chart& chart(int i) const { return *charts.at(i); }

 protected:
  void finalize_curvature_bound(int n1, int n2);
};

// Unit-sphere-based star surface mu = rho(omega) omega with
// rho = R (1 + a1 omega_1 + a2 omega_2 omega_3).
std::unique_ptr<Surface> make_star_surface(const std::string& name, double R, double a1, double a2);
std::unique_ptr<Surface> make_sphere(double R = 1.0);
std::unique_ptr<Surface> make_perturbed_sphere(double a1 = 0.1, double a2 = 0.05);
std::unique_ptr<Surface> make_torus(double R = 2.0, double a = 0.5);

// Builds a surface from its name and optional numeric parameters.
std::unique_ptr<Surface> make_surface(const std::string& name,
                                      const std::map<std::string, double>& params = {});

// Exact local geometry at a chart point. Orders: mu 4, t/n/metric 3, W 2.
struct SurfaceJets {
  virtual ~SurfaceJets() = default;

  ChartPoint p;
  V3<J24> mu;
  std::array<V3<J23>, 2> t;
  V3<J23> n;
  std::array<std::array<J23, 2>, 2> Ginv;
  J23 sqrtg;  // |t_1 x t_2|
  M3<J22> W;

  V3d y() const { return value(mu); }
};

void fill_surface_jets(const Surface& S, const ChartPoint& p, SurfaceJets& out);
SurfaceJets surface_jets(const Surface& S, const ChartPoint& p);

struct GeometryPack {
  V3d y, n;
  std::array<V3d, 2> t;
  M3d P, Q, W;
  double H = 0.0;
  double kappa1 = 0.0, kappa2 = 0.0;  // kappa1 <= kappa2
  double area_element = 0.0;
};

GeometryPack geometry_pack(const SurfaceJets& sj);
GeometryPack geometry_at(const Surface& S, const ChartPoint& p);

// Tangential gradient sum_ab Ginv_ab d_a f t_b; loses one order.
template <int K>
V3<Jet<2, K - 1>> tgrad(const SurfaceJets& sj, const Jet<2, K>& f) {
  static_assert(K >= 1 && K <= 4);
  using R = Jet<2, K - 1>;
  V3<R> g;
  for (int a = 0; a < 2; ++a) {
    const R da = d(f, a);
    for (int b = 0; b < 2; ++b) {
      const R c = da * truncate<K - 1>(sj.Ginv[a][b]);
      for (int i = 0; i < 3; ++i) g[i] += c * truncate<K - 1>(sj.t[b][i]);
    }
  }
  return g;
}

// Tangential gradient of a vector: (i, j) = (grad_G v_j)_i.
template <int K>
M3<Jet<2, K - 1>> tgrad(const SurfaceJets& sj, const V3<Jet<2, K>>& v) {
  M3<Jet<2, K - 1>> G;
  for (int j = 0; j < 3; ++j) {
    const auto g = tgrad(sj, v[j]);
    for (int i = 0; i < 3; ++i) G(i, j) = g[i];
  }
  return G;
}

template <int K>
Jet<2, K - 1> tdiv(const SurfaceJets& sj, const V3<Jet<2, K>>& v) {
  return trace(tgrad(sj, v));
}

// Projector I - n n^T at order K <= 3.
template <int K>
M3<Jet<2, K>> projector(const SurfaceJets& sj) {
  const auto n = truncate<K>(sj.n);
  return identity<Jet<2, K>>() - outer(n, n);
}

// Closest point projection.
struct ClosestPoint {
  ChartPoint p;
  V3d y;
  double d = 0.0;
  int iterations = 0;
};

ClosestPoint closest_point(const Surface& S, const V3d& x);

}  // namespace thinshell
