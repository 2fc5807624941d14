#include "chern/bergman/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

namespace chern::bergman {

namespace {

/// Nodes from the Jacobi matrix, weights as Christoffel numbers
/// mu0 / sum_k p_k(x)^2 with p_k orthonormal; avoids forming eigenvectors.
GaussRule golub_welsch(const std::vector<double>& diag, const std::vector<double>& off, double mu0) {
  const int n = static_cast<int>(diag.size());
  Eigen::VectorXd d = Eigen::Map<const Eigen::VectorXd>(diag.data(), n);
  Eigen::VectorXd e(std::max(n - 1, 0));
  for (int i = 0; i + 1 < n; ++i) e(i) = off[i];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(d, e, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("Golub-Welsch eigensolve failed");
  GaussRule rule;
  for (int i = 0; i < n; ++i) {
    double x = solver.eigenvalues()(i);
    double p_prev = 0.0, p = 1.0, sum = 1.0;
    for (int k = 0; k + 1 < n; ++k) {
      double next = ((x - diag[k]) * p - (k > 0 ? off[k - 1] * p_prev : 0.0)) / off[k];
      p_prev = p;
      p = next;
      sum += p * p;
    }
    rule.nodes.push_back(x);
    rule.weights.push_back(mu0 / sum);
  }
  return rule;
}

}  // namespace

GaussRule gauss_jacobi(int points, double a, double b) {
  if (points < 1) throw std::invalid_argument("need at least one node");
  if (a <= -1 || b <= -1) throw std::invalid_argument("Jacobi exponents must exceed -1");
  std::vector<double> diag(points), off(std::max(points - 1, 0));
  const double ab = a + b;
  diag[0] = (b - a) / (ab + 2);
  for (int k = 1; k < points; ++k) {
    double s = 2 * k + ab;
    diag[k] = (b * b - a * a) / (s * (s + 2));
  }
  for (int k = 1; k < points; ++k) {
    double s = 2 * k + ab;
    // k = 1 written with the (1 + a + b) factor cancelled
    double beta = k == 1 ? 4.0 * (1 + a) * (1 + b) / (s * s * (s + 1))
                         : 4.0 * k * (k + a) * (k + b) * (k + ab) / (s * s * (s + 1) * (s - 1));
    off[k - 1] = std::sqrt(beta);
  }
  double mu0 = std::exp((ab + 1) * std::log(2.0) + std::lgamma(a + 1) + std::lgamma(b + 1) - std::lgamma(ab + 2));
  return golub_welsch(diag, off, mu0);
}

GaussRule gauss_jacobi_unit(int points, double c, double b) {
  GaussRule r = gauss_jacobi(points, c, b);
  const double scale = std::pow(2.0, -c - b - 1);
  for (std::size_t i = 0; i < r.nodes.size(); ++i) {
    r.nodes[i] = (r.nodes[i] + 1) / 2;
    r.weights[i] *= scale;
  }
  return r;
}

GaussRule gauss_laguerre(int points, double a) {
  if (points < 1) throw std::invalid_argument("need at least one node");
  if (a <= -1) throw std::invalid_argument("Laguerre exponent must exceed -1");
  std::vector<double> diag(points), off(std::max(points - 1, 0));
  for (int k = 0; k < points; ++k) diag[k] = 2 * k + a + 1;
  for (int k = 1; k < points; ++k) off[k - 1] = std::sqrt(k * (k + a));
  return golub_welsch(diag, off, std::tgamma(a + 1));
}

QuadratureResult adaptive(const std::function<double(int)>& estimate, int start) {
  QuadratureResult r;
  int points = start;
  double prev = estimate(points);
  while (points < kMaxNodesPerAxis) {
    int next = std::min(points * 2, kMaxNodesPerAxis);
    double cur = estimate(next);
    points = next;
    if (std::abs(cur - prev) <= kQuadratureRelTol * std::max(std::abs(cur), 1e-300) || cur == prev) {
      r.value = cur;
      r.nodes = points;
      r.converged = true;
      return r;
    }
    prev = cur;
  }
  r.value = prev;
  r.nodes = points;
  return r;
}

}  // namespace chern::bergman
