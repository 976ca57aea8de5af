#pragma once

// Fixed-size 3-vectors and 3x3 matrices over an arbitrary scalar (double or
// Jet). Matrices are row-major; (A)(i, j) is row i, column j.

#include <array>
#include <cmath>
#include <type_traits>
#include <utility>

#include "thinshell/jet.hpp"

namespace thinshell {

template <class T>
struct V3 {
  std::array<T, 3> v{};

  constexpr V3() = default;
  constexpr V3(T a, T b, T c) : v{std::move(a), std::move(b), std::move(c)} {}

  T& operator[](int i) { return v[i]; }
  const T& operator[](int i) const { return v[i]; }

  V3& operator+=(const V3& o) {
    for (int i = 0; i < 3; ++i) v[i] += o.v[i];
    return *this;
  }
  V3& operator-=(const V3& o) {
    for (int i = 0; i < 3; ++i) v[i] -= o.v[i];
    return *this;
  }
  V3& operator*=(double s) {
    for (int i = 0; i < 3; ++i) v[i] *= s;
    return *this;
  }
  friend V3 operator+(V3 a, const V3& b) { return a += b; }
  friend V3 operator-(V3 a, const V3& b) { return a -= b; }
  friend V3 operator-(const V3& a) { return V3(-a[0], -a[1], -a[2]); }
  friend V3 operator*(V3 a, double s) { return a *= s; }
  friend V3 operator*(double s, V3 a) { return a *= s; }
  friend V3 operator/(V3 a, double s) { return a *= 1.0 / s; }
};

template <class T>
struct M3 {
  std::array<T, 9> a{};

  T& operator()(int i, int j) { return a[3 * i + j]; }
  const T& operator()(int i, int j) const { return a[3 * i + j]; }

  M3& operator+=(const M3& o) {
    for (int i = 0; i < 9; ++i) a[i] += o.a[i];
    return *this;
  }
  M3& operator-=(const M3& o) {
    for (int i = 0; i < 9; ++i) a[i] -= o.a[i];
    return *this;
  }
  M3& operator*=(double s) {
    for (int i = 0; i < 9; ++i) a[i] *= s;
    return *this;
  }
  friend M3 operator+(M3 x, const M3& y) { return x += y; }
  friend M3 operator-(M3 x, const M3& y) { return x -= y; }
  friend M3 operator-(M3 x) {
    for (auto& e : x.a) e = -e;
    return x;
  }
  friend M3 operator*(M3 x, double s) { return x *= s; }
  friend M3 operator*(double s, M3 x) { return x *= s; }
};

using V3d = V3<double>;
using M3d = M3<double>;

// Scalar-by-vector products for a scalar type that differs from double.
template <class T>
V3<T> scale(const V3<T>& x, const T& s) {
  return V3<T>(x[0] * s, x[1] * s, x[2] * s);
}
template <class T>
M3<T> scale(const M3<T>& x, const T& s) {
  M3<T> r;
  for (int i = 0; i < 9; ++i) r.a[i] = x.a[i] * s;
  return r;
}

template <class T>
T dot(const V3<T>& x, const V3<T>& y) {
  return x[0] * y[0] + x[1] * y[1] + x[2] * y[2];
}

template <class T>
V3<T> cross(const V3<T>& x, const V3<T>& y) {
  return V3<T>(x[1] * y[2] - x[2] * y[1], x[2] * y[0] - x[0] * y[2], x[0] * y[1] - x[1] * y[0]);
}

template <class T>
T norm2(const V3<T>& x) {
  return dot(x, x);
}

inline double norm(const V3d& x) { return std::sqrt(norm2(x)); }

template <class T>
M3<T> outer(const V3<T>& x, const V3<T>& y) {
  M3<T> r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = x[i] * y[j];
  return r;
}

template <class T>
V3<T> operator*(const M3<T>& A, const V3<T>& x) {
  V3<T> r;
  for (int i = 0; i < 3; ++i) r[i] = A(i, 0) * x[0] + A(i, 1) * x[1] + A(i, 2) * x[2];
  return r;
}

template <class T>
M3<T> operator*(const M3<T>& A, const M3<T>& B) {
  M3<T> r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = A(i, 0) * B(0, j) + A(i, 1) * B(1, j) + A(i, 2) * B(2, j);
  return r;
}

template <class T>
M3<T> transpose(const M3<T>& A) {
  M3<T> r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = A(j, i);
  return r;
}

template <class T>
T trace(const M3<T>& A) {
  return A(0, 0) + A(1, 1) + A(2, 2);
}

template <class T>
T det(const M3<T>& A) {
  return A(0, 0) * (A(1, 1) * A(2, 2) - A(1, 2) * A(2, 1)) -
         A(0, 1) * (A(1, 0) * A(2, 2) - A(1, 2) * A(2, 0)) +
         A(0, 2) * (A(1, 0) * A(2, 1) - A(1, 1) * A(2, 0));
}

template <class T>
M3<T> identity() {
  M3<T> r;
  r(0, 0) = T(1.0);
  r(1, 1) = T(1.0);
  r(2, 2) = T(1.0);
  return r;
}

template <class T>
M3<T> inverse(const M3<T>& A) {
  M3<T> c;
  c(0, 0) = A(1, 1) * A(2, 2) - A(1, 2) * A(2, 1);
  c(0, 1) = A(0, 2) * A(2, 1) - A(0, 1) * A(2, 2);
  c(0, 2) = A(0, 1) * A(1, 2) - A(0, 2) * A(1, 1);
  c(1, 0) = A(1, 2) * A(2, 0) - A(1, 0) * A(2, 2);
  c(1, 1) = A(0, 0) * A(2, 2) - A(0, 2) * A(2, 0);
  c(1, 2) = A(0, 2) * A(1, 0) - A(0, 0) * A(1, 2);
  c(2, 0) = A(1, 0) * A(2, 1) - A(1, 1) * A(2, 0);
  c(2, 1) = A(0, 1) * A(2, 0) - A(0, 0) * A(2, 1);
  c(2, 2) = A(0, 0) * A(1, 1) - A(0, 1) * A(1, 0);
  const T dt = A(0, 0) * c(0, 0) + A(0, 1) * c(1, 0) + A(0, 2) * c(2, 0);
  if constexpr (std::is_same_v<T, double>) {
    return c * (1.0 / dt);
  } else {
    return scale(c, recip(dt));
  }
}

template <class T>
T frob2(const M3<T>& A) {
  T s = A.a[0] * A.a[0];
  for (int i = 1; i < 9; ++i) s += A.a[i] * A.a[i];
  return s;
}

inline double frob(const M3d& A) { return std::sqrt(frob2(A)); }

template <class F, class T>
auto map(const V3<T>& x, F f) {
  using R = decltype(f(x[0]));
  return V3<R>(f(x[0]), f(x[1]), f(x[2]));
}

template <class F, class T>
auto map(const M3<T>& x, F f) {
  using R = decltype(f(x.a[0]));
  M3<R> r;
  for (int i = 0; i < 9; ++i) r.a[i] = f(x.a[i]);
  return r;
}

template <class T>
V3d value(const V3<T>& x) {
  return map(x, [](const T& e) { return value_of(e); });
}
template <class T>
M3d value(const M3<T>& x) {
  return map(x, [](const T& e) { return value_of(e); });
}

template <int K2, int NV, int K>
V3<Jet<NV, K2>> truncate(const V3<Jet<NV, K>>& x) {
  return map(x, [](const Jet<NV, K>& e) { return truncate<K2>(e); });
}
template <int K2, int NV, int K>
M3<Jet<NV, K2>> truncate(const M3<Jet<NV, K>>& x) {
  return map(x, [](const Jet<NV, K>& e) { return truncate<K2>(e); });
}

template <int NVB, int KB, int NVA, int KA>
V3<Jet<NVB, KB>> embed(const V3<Jet<NVA, KA>>& x) {
  return map(x, [](const Jet<NVA, KA>& e) { return embed<NVB, KB>(e); });
}
template <int NVB, int KB, int NVA, int KA>
M3<Jet<NVB, KB>> embed(const M3<Jet<NVA, KA>>& x) {
  return map(x, [](const Jet<NVA, KA>& e) { return embed<NVB, KB>(e); });
}

template <class T>
V3<T> lift(const V3d& x) {
  return V3<T>(T(x[0]), T(x[1]), T(x[2]));
}
template <class T>
M3<T> lift(const M3d& x) {
  M3<T> r;
  for (int i = 0; i < 9; ++i) r.a[i] = T(x.a[i]);
  return r;
}

}  // namespace thinshell
