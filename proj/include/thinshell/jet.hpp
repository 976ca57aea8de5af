#pragma once

// Truncated multivariate Taylor polynomials.
//
// A Jet<NV, K> stores the Taylor coefficients c_a of a function of NV
// variables about a base point, for all multi-indices |a| <= K:
//   f(p + h) = sum_a c_a h^a + O(|h|^{K+1}).
// Arithmetic and elementary functions propagate the expansion exactly, so
// derivatives up to order K are exact to rounding. Differentiation drops one
// order and is reflected in the return type.

#include <array>
#include <cmath>
#include <cstdint>

namespace thinshell {

namespace jet_detail {

constexpr int binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return static_cast<int>(r);
}

// Monomials ordered by total degree, then by descending exponent of the
// first variable. The ordering of a given degree does not depend on K, so
// the first binomial(NV+K2,K2) entries of order K are the monomials of
// order K2 <= K.
template <int NV, int K>
struct Monomials {
  static constexpr int size = binomial(NV + K, K);
  std::array<std::array<int, NV>, size> exp{};
  std::array<int, size> degree{};

  constexpr Monomials() {
    int idx = 0;
    for (int deg = 0; deg <= K; ++deg) {
      std::array<int, NV> e{};
      fill(deg, deg, 0, e, idx);
    }
  }

  constexpr void fill(int deg, int remaining, int var, std::array<int, NV>& e, int& idx) {
    if (var == NV - 1) {
      e[var] = remaining;
      exp[idx] = e;
      degree[idx] = deg;
      ++idx;
      return;
    }
    for (int k = remaining; k >= 0; --k) {
      e[var] = k;
      fill(deg, remaining - k, var + 1, e, idx);
    }
  }

  constexpr int index(const std::array<int, NV>& e) const {
    for (int i = 0; i < size; ++i) {
      bool same = true;
      for (int v = 0; v < NV; ++v) same = same && exp[i][v] == e[v];
      if (same) return i;
    }
    return -1;
  }
};

struct Triple {
  std::int16_t a, b, r;
};

template <int NV, int K>
constexpr int product_count() {
  constexpr Monomials<NV, K> m{};
  int n = 0;
  for (int i = 0; i < m.size; ++i)
    for (int j = 0; j < m.size; ++j)
      if (m.degree[i] + m.degree[j] <= K) ++n;
  return n;
}

template <int NV, int K>
struct ProductTable {
  static constexpr int count = product_count<NV, K>();
  std::array<Triple, count> t{};
  constexpr ProductTable() {
    constexpr Monomials<NV, K> m{};
    int n = 0;
    for (int i = 0; i < m.size; ++i)
      for (int j = 0; j < m.size; ++j)
        if (m.degree[i] + m.degree[j] <= K) {
          std::array<int, NV> e{};
          for (int v = 0; v < NV; ++v) e[v] = m.exp[i][v] + m.exp[j][v];
          t[n++] = Triple{static_cast<std::int16_t>(i), static_cast<std::int16_t>(j),
                          static_cast<std::int16_t>(m.index(e))};
        }
  }
};

// Maps coefficient i of d/dh_var f (order K-1) to source index and factor.
template <int NV, int K>
struct DerivTable {
  static constexpr int out_size = binomial(NV + K - 1, K - 1);
  std::array<std::array<std::int16_t, out_size>, NV> src{};
  std::array<std::array<double, out_size>, NV> fac{};
  constexpr DerivTable() {
    constexpr Monomials<NV, K> m{};
    constexpr Monomials<NV, K - 1> mo{};
    for (int v = 0; v < NV; ++v)
      for (int i = 0; i < mo.size; ++i) {
        std::array<int, NV> e = mo.exp[i];
        e[v] += 1;
        src[v][i] = static_cast<std::int16_t>(m.index(e));
        fac[v][i] = static_cast<double>(e[v]);
      }
  }
};

// Embeds the monomials of NVA variables into NVB >= NVA variables (extra
// exponents zero), truncating to order KB.
template <int NVA, int KA, int NVB, int KB>
struct EmbedTable {
  static constexpr int size = Monomials<NVA, (KA < KB ? KA : KB)>::size;
  std::array<std::int16_t, size> dst{};
  constexpr EmbedTable() {
    constexpr Monomials<NVA, (KA < KB ? KA : KB)> ma{};
    constexpr Monomials<NVB, KB> mb{};
    for (int i = 0; i < ma.size; ++i) {
      std::array<int, NVB> e{};
      for (int v = 0; v < NVA; ++v) e[v] = ma.exp[i][v];
      dst[i] = static_cast<std::int16_t>(mb.index(e));
    }
  }
};

// Keeps the monomials of NVA variables whose exponents beyond NVB vanish.
template <int NVA, int NVB, int K>
struct RestrictTable {
  static constexpr int size = Monomials<NVB, K>::size;
  std::array<std::int16_t, size> src{};
  constexpr RestrictTable() {
    constexpr Monomials<NVA, K> ma{};
    constexpr Monomials<NVB, K> mb{};
    for (int i = 0; i < mb.size; ++i) {
      std::array<int, NVA> e{};
      for (int v = 0; v < NVB; ++v) e[v] = mb.exp[i][v];
      src[i] = static_cast<std::int16_t>(ma.index(e));
    }
  }
};

}  // namespace jet_detail

template <int NV, int K>
class Jet {
 public:
  static constexpr int num_vars = NV;
  static constexpr int order = K;
  static constexpr int size = jet_detail::binomial(NV + K, K);

  std::array<double, size> c{};

  constexpr Jet() = default;
  constexpr Jet(double value) { c[0] = value; }  // NOLINT: implicit constants

  // Independent variable number `var` with base value `value`.
  static Jet variable(int var, double value) {
    Jet j(value);
    if constexpr (K >= 1) j.c[1 + var] = 1.0;
    return j;
  }

  double value() const { return c[0]; }

  // First partial derivative at the base point.
  double partial(int var) const {
    if constexpr (K >= 1) return c[1 + var];
    return 0.0;
  }

  // Second partial derivative at the base point.
  double partial2(int a, int b) const {
    if constexpr (K >= 2) {
      std::array<int, NV> e{};
      e[a] += 1;
      e[b] += 1;
      const int idx = monomials().index(e);
      return a == b ? 2.0 * c[idx] : c[idx];
    }
    return 0.0;
  }

  static const jet_detail::Monomials<NV, K>& monomials() {
    static constexpr jet_detail::Monomials<NV, K> m{};
    return m;
  }

  // Polynomial evaluated at offset h from the base point.
  double eval(const std::array<double, NV>& h) const {
    const auto& m = monomials();
    double s = 0.0;
    for (int i = 0; i < size; ++i) {
      double t = c[i];
      for (int v = 0; v < NV; ++v)
        for (int k = 0; k < m.exp[i][v]; ++k) t *= h[v];
      s += t;
    }
    return s;
  }

  Jet& operator+=(const Jet& o) {
    for (int i = 0; i < size; ++i) c[i] += o.c[i];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    for (int i = 0; i < size; ++i) c[i] -= o.c[i];
    return *this;
  }
  Jet& operator*=(double s) {
    for (int i = 0; i < size; ++i) c[i] *= s;
    return *this;
  }
  Jet& operator+=(double s) {
    c[0] += s;
    return *this;
  }
  Jet& operator-=(double s) {
    c[0] -= s;
    return *this;
  }
  Jet& operator*=(const Jet& o) {
    *this = *this * o;
    return *this;
  }

  friend Jet operator*(const Jet& a, const Jet& b) {
    static constexpr jet_detail::ProductTable<NV, K> tab{};
    Jet r;
    for (const auto& t : tab.t) r.c[t.r] += a.c[t.a] * b.c[t.b];
    return r;
  }
  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator-(Jet a) {
    for (auto& x : a.c) x = -x;
    return a;
  }
  friend Jet operator*(Jet a, double s) { return a *= s; }
  friend Jet operator*(double s, Jet a) { return a *= s; }
  friend Jet operator/(Jet a, double s) { return a *= 1.0 / s; }
  friend Jet operator+(Jet a, double s) { return a += s; }
  friend Jet operator+(double s, Jet a) { return a += s; }
  friend Jet operator-(Jet a, double s) { return a -= s; }
  friend Jet operator-(double s, Jet a) { return (-a) += s; }
  friend Jet operator/(const Jet& a, const Jet& b) { return a * recip(b); }
  friend Jet operator/(double s, const Jet& b) { return recip(b) * s; }

  // f(x) for a univariate f with Taylor coefficients tc[k] = f^(k)(x0)/k!.
  static Jet compose(const Jet& x, const std::array<double, K + 1>& tc) {
    Jet dx = x;
    dx.c[0] = 0.0;
    Jet r(tc[K]);
    for (int k = K - 1; k >= 0; --k) {
      r = r * dx;
      r.c[0] += tc[k];
    }
    return r;
  }

  friend Jet recip(const Jet& x) {
    std::array<double, K + 1> tc{};
    const double inv = 1.0 / x.c[0];
    double p = inv;
    for (int k = 0; k <= K; ++k) {
      tc[k] = p;
      p *= -inv;
    }
    return compose(x, tc);
  }
  friend Jet sqrt(const Jet& x) { return pow(x, 0.5); }
  friend Jet pow(const Jet& x, double e) {
    std::array<double, K + 1> tc{};
    double binom = 1.0;
    for (int k = 0; k <= K; ++k) {
      tc[k] = binom * std::pow(x.c[0], e - k);
      binom *= (e - k) / (k + 1);
    }
    return compose(x, tc);
  }
  friend Jet exp(const Jet& x) {
    std::array<double, K + 1> tc{};
    double f = std::exp(x.c[0]);
    for (int k = 0; k <= K; ++k) {
      tc[k] = f;
      f /= (k + 1);
    }
    return compose(x, tc);
  }
  friend Jet log(const Jet& x) {
    std::array<double, K + 1> tc{};
    tc[0] = std::log(x.c[0]);
    double p = 1.0;
    for (int k = 1; k <= K; ++k) {
      p /= x.c[0];
      tc[k] = ((k % 2) ? 1.0 : -1.0) * p / k;
    }
    return compose(x, tc);
  }
  friend Jet sin(const Jet& x) {
    const double s = std::sin(x.c[0]), co = std::cos(x.c[0]);
    const double cyc[4] = {s, co, -s, -co};
    std::array<double, K + 1> tc{};
    double fact = 1.0;
    for (int k = 0; k <= K; ++k) {
      if (k > 0) fact *= k;
      tc[k] = cyc[k % 4] / fact;
    }
    return compose(x, tc);
  }
  friend Jet cos(const Jet& x) {
    const double s = std::sin(x.c[0]), co = std::cos(x.c[0]);
    const double cyc[4] = {co, -s, -co, s};
    std::array<double, K + 1> tc{};
    double fact = 1.0;
    for (int k = 0; k <= K; ++k) {
      if (k > 0) fact *= k;
      tc[k] = cyc[k % 4] / fact;
    }
    return compose(x, tc);
  }
};

// d/dh_var; the result loses one order.
template <int NV, int K>
Jet<NV, K - 1> d(const Jet<NV, K>& f, int var) {
  static_assert(K >= 1, "cannot differentiate an order-0 jet");
  static constexpr jet_detail::DerivTable<NV, K> tab{};
  Jet<NV, K - 1> r;
  for (int i = 0; i < Jet<NV, K - 1>::size; ++i) r.c[i] = tab.fac[var][i] * f.c[tab.src[var][i]];
  return r;
}

template <int K2, int NV, int K>
Jet<NV, K2> truncate(const Jet<NV, K>& f) {
  static_assert(K2 <= K, "truncation cannot raise the order");
  Jet<NV, K2> r;
  for (int i = 0; i < Jet<NV, K2>::size; ++i) r.c[i] = f.c[i];
  return r;
}

// Reinterpret a jet in NVA variables as one in NVB >= NVA variables that does
// not depend on the extra variables, truncated to order KB.
template <int NVB, int KB, int NVA, int KA>
Jet<NVB, KB> embed(const Jet<NVA, KA>& f) {
  static_assert(NVB >= NVA, "embed needs at least as many variables");
  static constexpr jet_detail::EmbedTable<NVA, KA, NVB, KB> tab{};
  Jet<NVB, KB> r;
  for (int i = 0; i < tab.size; ++i) r.c[tab.dst[i]] = f.c[i];
  return r;
}

// Set the trailing NVA-NVB variables to their base values.
template <int NVB, int NVA, int K>
Jet<NVB, K> restrict_vars(const Jet<NVA, K>& f) {
  static constexpr jet_detail::RestrictTable<NVA, NVB, K> tab{};
  Jet<NVB, K> r;
  for (int i = 0; i < tab.size; ++i) r.c[i] = f.c[tab.src[i]];
  return r;
}

inline double value_of(double x) { return x; }
template <int NV, int K>
double value_of(const Jet<NV, K>& x) {
  return x.value();
}

}  // namespace thinshell
