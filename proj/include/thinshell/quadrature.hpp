#pragma once

#include <vector>

namespace thinshell {

struct Rule1D {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Gauss-Legendre rule with n nodes on [-1, 1], nodes ascending.
Rule1D gauss_legendre(int n);

// Gauss-Legendre rule mapped to [a, b].
Rule1D gauss_legendre(int n, double a, double b);

}  // namespace thinshell
