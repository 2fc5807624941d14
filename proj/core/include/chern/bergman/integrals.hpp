#pragma once

#include <Eigen/Dense>

#include <vector>

#include "chern/bergman/quadrature.hpp"
#include "chern/dbar/laplacian.hpp"

namespace chern::bergman {

using dbar::GaussQ;
using dbar::MonomialForm;
using dbar::MultiIndex;
using dbar::Rational;

inline constexpr double kAdjointnessTol = 1e-8;
inline constexpr double kEstimateSlack = 1e-8;
inline constexpr double kSymmetryRelTol = 1e-8;
inline constexpr double kOrthogonalityRelTol = 1e-8;

/// (1 - |z|^2)^c d lambda on the unit ball of C^n, c > -1.
struct BallMeasure {
  int n;
  Rational c;
  BallMeasure(int n, Rational c);
  /// c = -alpha - 1, the measure e^{-psi} dvol_h of the half hyperbolic metric.
  static BallMeasure half_hyperbolic(int n, const Rational& alpha);
};

/// Integral of z^L conj(z^M) (1 - |z|^2)^c over the ball, as a rational multiple of pi^n:
/// zero unless L = M, else prod_j L_j! Gamma(c + 1) / Gamma(n + |L| + c + 1).
Rational monomial_integral_exact(const MultiIndex& l, const MultiIndex& m, const BallMeasure& mu);
double monomial_integral(const MultiIndex& l, const MultiIndex& m, const BallMeasure& mu);
/// Same closed form for real c, through log-Gamma.
double monomial_integral(const MultiIndex& l, const MultiIndex& m, double c);

/// Oracle: trapezoid rule in each angle times nested Gauss-Jacobi rules in the squared
/// radii with the (1 - t)^c factor absorbed into each rule, refined adaptively.
QuadratureResult monomial_integral_quadrature(const MultiIndex& l, const MultiIndex& m, double c);

/// <f, g> for functions, as a multiple of pi^n.
GaussQ pairing_functions(const MonomialForm& f, const MonomialForm& g, const BallMeasure& mu);
/// <u, v>_h = int (sum u_k conj v_k - (sum z_k u_k) conj(sum z_k v_k)) dmu, as a multiple of pi^n.
GaussQ pairing_one_forms(const MonomialForm& u, const MonomialForm& v, const BallMeasure& mu);
double pi_power(int n);

struct GramBlock {
  int n = 0;
  Rational alpha;
  int m = 0;
  dbar::SubspaceBasis basis{1, 0};
  std::vector<std::vector<Rational>> exact;  ///< G_{beta gamma} = <e_beta, e_gamma> / pi^n
  Eigen::MatrixXd values;
  bool hermitian() const;
  bool positive_definite() const;
};

GramBlock gram_block(int n, const Rational& alpha, int m);

struct SymmetryReport {
  bool exact_symmetric = false;  ///< G A symmetric in exact arithmetic
  double relative_error = 0.0;   ///< max |GA - (GA)^T| / max |GA| in floating point
  bool g_orthogonal_basis = false;
  double eigen_mismatch = 0.0;   ///< generalized eigenvalues against the spectrum
  bool holds() const { return exact_symmetric && relative_error <= kSymmetryRelTol && g_orthogonal_basis; }
};

/// Self-adjointness of Box~_1 against the weighted inner product.
SymmetryReport weighted_symmetry_check(int n, const Rational& alpha, int m);

struct AdjointnessReport {
  GaussQ lhs;  ///< <d f, u>_{h, psi} / pi^n
  GaussQ rhs;  ///< <f, d* u>_psi / pi^n
  double residual = 0.0;
  bool holds() const { return residual < kAdjointnessTol; }
};

AdjointnessReport adjointness_residual(const MonomialForm& f, const MonomialForm& u, const Rational& alpha);

struct EstimateReport {
  dbar::CanonicalSolution solution{MonomialForm(1, 0), MonomialForm(1, 1), MonomialForm(1, 1)};
  Rational nu;
  double lhs = 0.0;  ///< int |f|^2 (1 - |z|^2)^{-alpha-1}
  double rhs = 0.0;  ///< (1/nu) int |eta|_h^2 (1 - |z|^2)^{-alpha-1}
  Rational lhs_exact;  ///< lhs / pi^n
  Rational rhs_exact;
  double constant_pairing = 0.0;  ///< |<f, 1>| / (||f|| ||1||), ker d on functions = constants
  bool holds() const;
};

EstimateReport estimate_check(const MonomialForm& eta, const Rational& alpha);

/// C^2 example with C = (0, 1, 0): psi = |z1|^4/2 + |z1|^2|z2|^2 + |z1|^2,
/// det h = (1 + |z1|^2)^2 + |z2|^2.
struct C2Norm {
  int k = 0;
  int l = 0;
  int exponent = 0;  ///< 2k - 2l - 3, the r_1 power near the origin after the r_2 integration
  bool finite = false;
  double value = 0.0;  ///< ||z1^k z2^l||^2 when finite
  QuadratureResult quadrature;
};

C2Norm c2_norm(int k, int l);
/// Membership of z1^k z2^l in the (0,0) Bergman space from the radial exponent.
bool c2_membership(int k, int l);

nlohmann::json to_json(const GramBlock& g);
nlohmann::json to_json(const SymmetryReport& r, int n, const Rational& alpha, int m);
nlohmann::json to_json(const AdjointnessReport& r);
nlohmann::json to_json(const EstimateReport& r);
nlohmann::json to_json(const C2Norm& r);

}  // namespace chern::bergman
