#pragma once

#include <functional>
#include <vector>

namespace chern::bergman {

inline constexpr double kQuadratureRelTol = 1e-10;
inline constexpr int kMaxNodesPerAxis = 1 << 14;

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Jacobi rule on [-1, 1] for the weight (1 - x)^a (1 + x)^b, a, b > -1 (Golub-Welsch).
GaussRule gauss_jacobi(int points, double a, double b);
/// Rule on [0, 1] for the weight (1 - t)^c t^b.
GaussRule gauss_jacobi_unit(int points, double c, double b = 0.0);
/// Generalized Gauss-Laguerre rule on [0, inf) for the weight t^a e^{-t}.
GaussRule gauss_laguerre(int points, double a);

struct QuadratureResult {
  double value = 0.0;
  int nodes = 0;  ///< nodes per axis at the accepted level
  bool converged = false;
};

/// Doubles the node count from `start` until successive estimates agree to
/// kQuadratureRelTol, capped at kMaxNodesPerAxis.
QuadratureResult adaptive(const std::function<double(int)>& estimate, int start = 4);

}  // namespace chern::bergman
