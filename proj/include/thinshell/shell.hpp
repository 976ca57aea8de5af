#pragma once

// Thin shells Omega_eps = { y + r n(y) : eps g0(y) < r < eps g1(y) } around a
// surface, discretised column by column. Volume points use coordinates
// q = (s1, s2, xi) with r = eps (g0 + g xi), xi in [0, 1].

#include <array>
#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "thinshell/quadrature.hpp"
#include "thinshell/surface.hpp"

namespace thinshell {

using J30 = Jet<3, 0>;
using J31 = Jet<3, 1>;
using JV = Jet<3, 2>;

// Thickness function g_i on the surface, evaluated on the ambient position.
struct ThicknessFn {
  enum class Kind { Const, LinearZ, Wave, Quadratic };
  Kind kind = Kind::Const;
  double a = 0.0, b = 0.0;

  // Parses "const:c", "linear_z:a,b", "custom:wave[:a,b]", "custom:quadratic[:a,b]".
  static ThicknessFn parse(const std::string& spec);
  std::string str() const;
  bool is_constant() const { return kind == Kind::Const || b == 0.0; }

  template <class T>
  T operator()(const V3<T>& y) const {
    using std::cos;
    using std::sin;
    switch (kind) {
      case Kind::Const:
        return T(a);
      case Kind::LinearZ:
        return a + b * y[2];
      case Kind::Wave:
        return a + b * sin(2.0 * y[0]) * cos(y[1]);
      case Kind::Quadratic:
        return a + b * (y[0] * y[0] - y[1] * y[1]);
    }
    return T(a);
  }
};

struct ShellConfig {
  ThicknessFn g0, g1;
  double eps = 0.1;
  double nu = 1.0;
  double gamma0 = 0.0, gamma1 = 0.0;  // friction coefficients on the inner/outer boundary
  int radial_nodes = 8;
  std::array<int, 2> resolution{0, 0};  // surface nodes; 0 selects the surface default

  std::string key() const;
};

// Presets: the default thickness functions for a surface.
ShellConfig default_shell(const Surface& S, double eps);

class ShellContext;
struct Column;

enum class PointKind { Interior, Inner, Outer, Extra };

struct PointCtx {
  const Column* col = nullptr;
  PointKind kind = PointKind::Interior;
  double xi = 0.0;
  double weight = 0.0;   // volume quadrature weight (interior points)
  double bweight = 0.0;  // boundary area weight (boundary points)
  double J = 1.0;        // det(I - r W)
  JV r;                  // signed distance
  V3<JV> x;
  M3<J31> FinvT;  // inverse transpose of dx/dq

  int boundary_index() const { return kind == PointKind::Inner ? 0 : 1; }
};

struct Column : SurfaceJets {
  const ShellContext* ctx = nullptr;
  double area_weight = 0.0;
  JS g0, g1, g;
  std::array<V3<JS>, 2> gradg;  // tangential gradients of g0, g1
  std::array<V3<JS>, 2> tau;    // (I - eps g_i W)^{-1} grad g_i
  std::array<V3<JS>, 2> neps;   // outward unit normals of the boundary pieces
  std::vector<PointCtx> pts;    // radial nodes, inner, outer, extras
  int n_radial = 0;
  bool persistent = false;  // owned by a ShellContext's quadrature

  const PointCtx& radial(int j) const { return pts[j]; }
  const PointCtx& boundary(int i) const { return pts[n_radial + i]; }
  int n_extra() const { return static_cast<int>(pts.size()) - n_radial - 2; }
  const PointCtx& extra(int k) const { return pts[n_radial + 2 + k]; }
};

class ShellContext {
 public:
  ShellContext(const Surface& S, const ShellConfig& cfg);

  const Surface& surface() const { return *S_; }
  const ShellConfig& config() const { return cfg_; }
  double eps() const { return cfg_.eps; }
  const Rule1D& radial_rule() const { return radial_; }
  const std::vector<Column>& columns() const { return cols_; }
  std::array<int, 2> resolution() const { return res_; }
  // Visits columns of a grid 4x finer per axis than the surface's default
  // resolution, each with 9 equispaced extra radial samples. Independent of
  // the configured resolution. Columns are transient.
  void visit_sup_grid(const std::function<void(const Column&)>& f) const;
  // A single column at an arbitrary chart point (no quadrature weight).
  void column_at(const ChartPoint& p, Column& out, int n_extra = 0) const;

  double gamma(int i) const { return i == 0 ? cfg_.gamma0 : cfg_.gamma1; }

 private:
  void build_column(Column& c, const ChartPoint& p, double area_weight, int n_extra) const;

  const Surface* S_;
  ShellConfig cfg_;
  Rule1D radial_;
  std::array<int, 2> res_;
  std::vector<Column> cols_;
};

// Shared cache of contexts keyed by surface and shell configuration.
class ContextCache {
 public:
  std::shared_ptr<const ShellContext> get(const Surface& S, const ShellConfig& cfg);
  void clear();

 private:
  std::mutex m_;
  struct Entry {
    std::once_flag once;
    std::shared_ptr<const ShellContext> ctx;
  };
  std::vector<std::pair<std::string, std::shared_ptr<Entry>>> entries_;
};

ContextCache& global_context_cache();

// Lifted surface quantities at a volume point (constant in the normal direction).
inline JV lift(const PointCtx& p, const JS& f) {
  (void)p;
  return embed<3, 2>(f);
}
inline V3<JV> lift(const PointCtx& p, const V3<JS>& f) {
  (void)p;
  return embed<3, 2>(f);
}
inline M3<JV> lift(const PointCtx& p, const M3<JS>& f) {
  (void)p;
  return embed<3, 2>(f);
}
V3<JV> nbar(const PointCtx& p);
M3<JV> Pbar(const PointCtx& p);
M3<JV> Wbar(const PointCtx& p);
// Psi = (1/g)[(d - eps g0) tau^1 + (eps g1 - d) tau^0]
V3<JV> Psi(const PointCtx& p);
// psi = (1/g)[(d - eps g0) grad g1 + (eps g1 - d) grad g0]
V3<JV> psi_weight(const PointCtx& p);

// Ambient gradient of a jet in q coordinates; loses one order.
template <int K>
V3<Jet<3, K - 1>> grad(const PointCtx& p, const Jet<3, K>& f) {
  static_assert(K >= 1 && K <= 2);
  using R = Jet<3, K - 1>;
  std::array<R, 3> dq{d(f, 0), d(f, 1), d(f, 2)};
  V3<R> g;
  for (int i = 0; i < 3; ++i) {
    R s = dq[0] * truncate<K - 1>(p.FinvT(i, 0));
    s += dq[1] * truncate<K - 1>(p.FinvT(i, 1));
    s += dq[2] * truncate<K - 1>(p.FinvT(i, 2));
    g[i] = s;
  }
  return g;
}

// (i, j) = d_i v_j
template <int K>
M3<Jet<3, K - 1>> grad(const PointCtx& p, const V3<Jet<3, K>>& v) {
  M3<Jet<3, K - 1>> G;
  for (int j = 0; j < 3; ++j) {
    const auto g = grad(p, v[j]);
    for (int i = 0; i < 3; ++i) G(i, j) = g[i];
  }
  return G;
}

// Jacobian det(I - r W) from a geometry pack.
double jacobian(const GeometryPack& g, double r);

// Quadrature of a pointwise quantity over the shell and over a boundary piece.
double volume_integral(const ShellContext& ctx, const std::function<double(const PointCtx&)>& f);
double boundary_integral(const ShellContext& ctx, int i, const std::function<double(const PointCtx&)>& f);
double shell_volume(const ShellContext& ctx);

// Outward unit normal and Weingarten map of boundary piece i at a column.
V3d boundary_normal(const Column& c, int i);
M3d weingarten_boundary(const Column& c, int i);

// Max relative error of det grad_s zeta = eps g J sqrt(det theta) over
// `samples` random points, with 4th-order central differences.
double determinant_identity_check(const Surface& S, const ShellConfig& cfg, int samples, unsigned seed = 7);

// Closed-form volume for constant g on a sphere of radius R.
double sphere_shell_volume(double R, double eps, double g0, double g1);

}  // namespace thinshell
