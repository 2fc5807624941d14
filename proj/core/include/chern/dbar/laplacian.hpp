#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chern/dbar/forms.hpp"

namespace chern::dbar {

/// Tolerances used by the spectral layer.
inline constexpr double kClusterRelTol = 1e-9;
inline constexpr double kImaginaryRelTol = 1e-9;
inline constexpr std::size_t kMaxBasisSize = 100000;

/// The half hyperbolic metric on the ball with psi = alpha log(1 - |z|^2), alpha < 0.
struct HalfHyperbolicSetting {
  int n;
  Rational alpha;
  HalfHyperbolicSetting(int n, Rational alpha);
};

/// Box~_1 u = (n - alpha - 1) u + sum_{j,k} ((n - alpha - 2) du_k/dz_j + du_j/dz_k) z_j dz_k.
MonomialForm box1_apply(const MonomialForm& u, const Rational& alpha);
/// d* d u + d d* u, assembled from the separate operators.
MonomialForm box1_composed(const MonomialForm& u, const Rational& alpha);

struct BasisElement {
  MultiIndex exponents;
  int slot;  ///< zero based
  bool operator==(const BasisElement&) const = default;
};

/// z^Lambda dz_l with |Lambda| = m, ordered by Lambda descending lexicographically
/// (lambda_1 largest first), then l ascending.
class SubspaceBasis {
 public:
  SubspaceBasis(int n, int m);
  int n() const { return n_; }
  int m() const { return m_; }
  std::size_t size() const { return elements_.size(); }
  const BasisElement& operator[](std::size_t i) const { return elements_[i]; }
  const std::vector<BasisElement>& elements() const { return elements_; }
  std::optional<std::size_t> index_of(const MultiIndex& e, int slot) const;
  MonomialForm form(std::size_t i) const;
  /// Coordinates of a 1-form homogeneous of degree m; throws if it leaves the span.
  std::vector<GaussQ> coordinates(const MonomialForm& u) const;
  MonomialForm from_coordinates(const std::vector<GaussQ>& x) const;

 private:
  int n_;
  int m_;
  std::vector<BasisElement> elements_;
  std::map<std::pair<MultiIndex, int>, std::size_t> index_;
};

/// Number of basis elements n * C(n + m - 1, n - 1).
std::size_t basis_size(int n, int m);

/// Exact matrix of Box~_1 on the degree-m subspace: Box~_1(e_beta) = sum_gamma a_{gamma beta} e_gamma.
/// Stored by columns, sparse.
struct Box1Matrix {
  int n = 0;
  Rational alpha;
  int m = 0;
  SubspaceBasis basis{1, 0};
  std::vector<std::map<std::size_t, Rational>> columns;

  std::size_t size() const { return columns.size(); }
  Rational entry(std::size_t row, std::size_t col) const;
  std::vector<std::vector<Rational>> dense() const;
  /// Sum over rows of each column.
  std::vector<Rational> column_sums() const;
  /// Invariant blocks: basis indices sharing Lambda + e_l.
  std::vector<std::vector<std::size_t>> blocks() const;
};

Box1Matrix box1_matrix(int n, const Rational& alpha, int m);

struct EigenCluster {
  double value = 0.0;
  int multiplicity = 0;
};

struct GershgorinRow {
  int q = 0;            ///< nonzero exponents of Lambda^gamma other than lambda_{l_gamma}
  Rational delta;       ///< a_{gamma gamma} - sum_{beta != gamma} |a_{gamma beta}|
  bool q_formula_holds = true;  ///< off-diagonal row sum equals q (lambda_l + 1)
};

struct GershgorinReport {
  std::vector<GershgorinRow> rows;
  Rational min_delta;
  Rational paper_bound;           ///< 2(n - alpha - 2)
  bool bound_holds = true;        ///< every delta >= 2(n - alpha - 2)
  bool contained = true;          ///< min eigenvalue >= min delta
};

struct SpectralReport {
  int n = 0;
  Rational alpha;
  int m = 0;
  Box1Matrix matrix;
  std::vector<EigenCluster> clusters;  ///< ascending
  double max_imaginary = 0.0;
  GershgorinReport gershgorin;
  std::vector<Rational> column_sums;
  Rational expected_column_sum;  ///< (m + 1)(n - alpha - 1)
  bool column_sums_hold = true;
  Rational nu_expected;
  double lambda_min = 0.0;  ///< smallest eigenvalue on this subspace

  bool consistent() const;
};

/// Eigenvalues via a dense solver on each invariant block, clustered.
/// Throws std::runtime_error if an eigenvalue is not real within tolerance.
std::vector<EigenCluster> spectrum(const Box1Matrix& a, double* max_imaginary = nullptr);
GershgorinReport gershgorin_diagnostics(const Box1Matrix& a, double min_eigenvalue);
SpectralReport spectral_report(int n, const Rational& alpha, int m);

/// nu = -alpha (n = 1), min(1 - alpha, -2 alpha) (n = 2), n - alpha - 1 (n >= 3).
Rational nu_formula(int n, const Rational& alpha);

struct EigenspaceVector {
  int m = 0;
  MonomialForm form;
};

struct ScanResult {
  int n = 0;
  Rational alpha;
  int m_max = 0;
  std::vector<SpectralReport> levels;
  double lambda1 = 0.0;
  int multiplicity = 0;
  std::optional<Rational> lambda1_exact;
  std::vector<EigenspaceVector> eigenspace;  ///< exact basis of the lambda_1 eigenspace
  Rational nu;
  bool matches_nu = false;   ///< |lambda1 - nu| <= 1e-9 |nu|
  bool all_above_nu = true;  ///< every computed eigenvalue >= nu
  bool tail_bound = true;    ///< for m >= 2, eigenvalues >= -alpha (m + 1)
  bool verdict() const { return matches_nu && all_above_nu && tail_bound; }
};

ScanResult first_eigenvalue_scan(int n, const Rational& alpha, int m_max);

/// Exact basis of ker(A - lambda) on the degree-m subspace.
std::vector<MonomialForm> exact_eigenspace(const Box1Matrix& a, const Rational& lambda);

struct NotClosedError : std::invalid_argument {
  NotClosedError(const std::string& what, std::vector<int> slots, MultiIndex exponents, GaussQ value)
      : std::invalid_argument(what), slots(std::move(slots)), exponents(std::move(exponents)), value(std::move(value)) {}
  std::vector<int> slots;
  MultiIndex exponents;
  GaussQ value;
};

struct CanonicalSolution {
  MonomialForm f;        ///< d* N~ eta
  MonomialForm n_eta;    ///< N~ eta
  MonomialForm residual; ///< d f - eta
  bool exact() const { return residual.is_zero(); }
};

/// Solves d f = eta for a d-closed 1-form with polynomial coefficients, degree by degree.
/// Throws NotClosedError when d eta != 0.
CanonicalSolution canonical_solution(const MonomialForm& eta, const Rational& alpha);

nlohmann::json to_json(const SpectralReport& r);
nlohmann::json to_json(const ScanResult& r);

}  // namespace chern::dbar
