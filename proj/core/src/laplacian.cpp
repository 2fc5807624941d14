#include "chern/dbar/laplacian.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>

namespace chern::dbar {

using wirtinger::rational_str;

namespace {

void require_negative(const Rational& alpha) {
  if (sgn(alpha) >= 0) throw std::invalid_argument("alpha must be negative, got " + rational_str(alpha));
}

void compositions(int n, int m, MultiIndex& cur, int pos, std::vector<MultiIndex>& out) {
  if (pos == n - 1) {
    cur[pos] = m;
    out.push_back(cur);
    return;
  }
  for (int v = m; v >= 0; --v) {
    cur[pos] = v;
    compositions(n, m - v, cur, pos + 1, out);
  }
}

Rational abs_q(const Rational& q) { return sgn(q) < 0 ? Rational(-q) : q; }

using QMatrix = std::vector<std::vector<Rational>>;

/// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(QMatrix& a, int cols) {
  std::vector<int> pivots;
  int row = 0;
  const int rows = static_cast<int>(a.size());
  for (int c = 0; c < cols && row < rows; ++c) {
    int p = -1;
    for (int r = row; r < rows; ++r) {
      if (sgn(a[r][c]) != 0) {
        p = r;
        break;
      }
    }
    if (p < 0) continue;
    std::swap(a[p], a[row]);
    Rational inv = 1 / a[row][c];
    for (auto& v : a[row]) v *= inv;
    for (int r = 0; r < rows; ++r) {
      if (r == row || sgn(a[r][c]) == 0) continue;
      Rational f = a[r][c];
      for (std::size_t k = 0; k < a[r].size(); ++k) a[r][k] -= f * a[row][k];
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

QMatrix block_matrix(const Box1Matrix& a, const std::vector<std::size_t>& idx) {
  QMatrix b(idx.size(), std::vector<Rational>(idx.size()));
  for (std::size_t c = 0; c < idx.size(); ++c) {
    const auto& col = a.columns[idx[c]];
    for (std::size_t r = 0; r < idx.size(); ++r) {
      auto it = col.find(idx[r]);
      if (it != col.end()) b[r][c] = it->second;
    }
  }
  return b;
}

nlohmann::json clusters_json(const std::vector<EigenCluster>& cs) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& c : cs) out.push_back({{"value", c.value}, {"multiplicity", c.multiplicity}});
  return out;
}

bool close(double a, double b) { return std::abs(a - b) <= kClusterRelTol * std::max({1.0, std::abs(a), std::abs(b)}); }

}  // namespace

HalfHyperbolicSetting::HalfHyperbolicSetting(int n_, Rational alpha_) : n(n_), alpha(std::move(alpha_)) {
  if (n < 1) throw std::invalid_argument("dimension must be positive");
  require_negative(alpha);
}

MonomialForm box1_apply(const MonomialForm& u, const Rational& alpha) {
  require_negative(alpha);
  if (u.degree() != 1) throw std::invalid_argument("Box~_1 acts on 1-forms");
  const int n = u.n();
  const GaussQ a1(Rational(n - 1) - alpha);
  const GaussQ a2(Rational(n - 2) - alpha);
  MonomialForm out = u.scaled(a1);
  for (int k = 0; k < n; ++k) {
    MonomialForm uk = u.component({k});
    for (int j = 0; j < n; ++j) {
      MonomialForm c = uk.derivative(j).scaled(a2) + u.component({j}).derivative(k);
      MonomialForm shifted = c.times_z(j);
      for (const auto& [key, v] : shifted.terms()) out.add(key.exponents, {k}, v);
    }
  }
  return out;
}

MonomialForm box1_composed(const MonomialForm& u, const Rational& alpha) {
  require_negative(alpha);
  return dbar_star_2(dbar(u), alpha) + dbar(dbar_star_1(u, alpha));
}

std::size_t basis_size(int n, int m) {
  if (n < 1 || m < 0) throw std::invalid_argument("basis needs n >= 1 and m >= 0");
  // C(n + m - 1, n - 1) with an overflow guard
  unsigned long long c = 1;
  for (int i = 1; i <= n - 1; ++i) {
    c = c * static_cast<unsigned long long>(m + i) / static_cast<unsigned long long>(i);
    if (c > kMaxBasisSize) return kMaxBasisSize + 1;
  }
  unsigned long long total = c * static_cast<unsigned long long>(n);
  return total > kMaxBasisSize ? kMaxBasisSize + 1 : static_cast<std::size_t>(total);
}

SubspaceBasis::SubspaceBasis(int n, int m) : n_(n), m_(m) {
  if (basis_size(n, m) > kMaxBasisSize) throw std::length_error("subspace basis larger than the size guard");
  std::vector<MultiIndex> lambdas;
  MultiIndex cur(n, 0);
  compositions(n, m, cur, 0, lambdas);
  for (const auto& e : lambdas) {
    for (int l = 0; l < n; ++l) {
      index_.emplace(std::make_pair(e, l), elements_.size());
      elements_.push_back({e, l});
    }
  }
}

std::optional<std::size_t> SubspaceBasis::index_of(const MultiIndex& e, int slot) const {
  auto it = index_.find({e, slot});
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

MonomialForm SubspaceBasis::form(std::size_t i) const { return monomial(n_, elements_[i].exponents, {elements_[i].slot}); }

std::vector<GaussQ> SubspaceBasis::coordinates(const MonomialForm& u) const {
  if (u.degree() != 1 || u.n() != n_) throw std::invalid_argument("coordinates need a 1-form of matching dimension");
  std::vector<GaussQ> x(size());
  for (const auto& [key, c] : u.terms()) {
    auto i = index_of(key.exponents, key.slots[0]);
    if (!i) throw std::invalid_argument("form leaves the degree " + std::to_string(m_) + " subspace");
    x[*i] = c;
  }
  return x;
}

MonomialForm SubspaceBasis::from_coordinates(const std::vector<GaussQ>& x) const {
  MonomialForm out(n_, 1);
  for (std::size_t i = 0; i < x.size(); ++i) out.add(elements_[i].exponents, {elements_[i].slot}, x[i]);
  return out;
}

Rational Box1Matrix::entry(std::size_t row, std::size_t col) const {
  auto it = columns[col].find(row);
  return it == columns[col].end() ? Rational(0) : it->second;
}

std::vector<std::vector<Rational>> Box1Matrix::dense() const {
  std::vector<std::vector<Rational>> out(size(), std::vector<Rational>(size()));
  for (std::size_t c = 0; c < size(); ++c) {
    for (const auto& [r, v] : columns[c]) out[r][c] = v;
  }
  return out;
}

std::vector<Rational> Box1Matrix::column_sums() const {
  std::vector<Rational> out;
  for (const auto& col : columns) {
    Rational s = 0;
    for (const auto& [r, v] : col) s += v;
    out.push_back(s);
  }
  return out;
}

std::vector<std::vector<std::size_t>> Box1Matrix::blocks() const {
  std::map<MultiIndex, std::vector<std::size_t>> groups;
  std::vector<std::size_t> owner(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    MultiIndex k = basis[i].exponents;
    k[basis[i].slot] += 1;
    groups[k].push_back(i);
  }
  std::vector<std::vector<std::size_t>> out;
  for (auto& [k, idx] : groups) {
    for (std::size_t i : idx) owner[i] = out.size();
    out.push_back(std::move(idx));
  }
  for (std::size_t c = 0; c < columns.size(); ++c) {
    for (const auto& [r, v] : columns[c]) {
      if (owner[r] != owner[c]) throw std::logic_error("Box~_1 matrix couples different blocks");
    }
  }
  return out;
}

Box1Matrix box1_matrix(int n, const Rational& alpha, int m) {
  HalfHyperbolicSetting setting(n, alpha);
  Box1Matrix a;
  a.n = n;
  a.alpha = alpha;
  a.m = m;
  a.basis = SubspaceBasis(n, m);
  a.columns.resize(a.basis.size());
  for (std::size_t b = 0; b < a.basis.size(); ++b) {
    MonomialForm image = box1_apply(a.basis.form(b), alpha);
    for (const auto& [key, c] : image.terms()) {
      auto row = a.basis.index_of(key.exponents, key.slots[0]);
      if (!row || !c.is_real()) throw std::logic_error("Box~_1 image left the invariant subspace");
      a.columns[b][*row] = c.re();
    }
  }
  return a;
}

std::vector<EigenCluster> spectrum(const Box1Matrix& a, double* max_imaginary) {
  std::vector<double> values;
  double worst = 0.0;
  double radius = 0.0;
  for (const auto& idx : a.blocks()) {
    QMatrix b = block_matrix(a, idx);
    Eigen::MatrixXd m(idx.size(), idx.size());
    for (std::size_t r = 0; r < idx.size(); ++r) {
      for (std::size_t c = 0; c < idx.size(); ++c) m(r, c) = b[r][c].get_d();
    }
    Eigen::EigenSolver<Eigen::MatrixXd> solver(m, false);
    if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolver did not converge");
    for (const auto& ev : solver.eigenvalues()) {
      values.push_back(ev.real());
      worst = std::max(worst, std::abs(ev.imag()));
      radius = std::max(radius, std::abs(ev));
    }
  }
  if (max_imaginary) *max_imaginary = worst;
  if (worst > kImaginaryRelTol * std::max(1.0, radius)) throw std::runtime_error("non-real eigenvalue in Box~_1 spectrum");
  std::sort(values.begin(), values.end());
  std::vector<EigenCluster> out;
  double sum = 0.0;
  for (double v : values) {
    if (!out.empty() && close(v, out.back().value)) {
      sum += v;
      out.back().multiplicity += 1;
      out.back().value = sum / out.back().multiplicity;
    } else {
      out.push_back({v, 1});
      sum = v;
    }
  }
  return out;
}

GershgorinReport gershgorin_diagnostics(const Box1Matrix& a, double min_eigenvalue) {
  GershgorinReport g;
  const std::size_t size = a.size();
  std::vector<Rational> diag(size), off(size);
  for (std::size_t c = 0; c < size; ++c) {
    for (const auto& [r, v] : a.columns[c]) {
      if (r == c) {
        diag[r] = v;
      } else {
        off[r] += abs_q(v);
      }
    }
  }
  g.paper_bound = 2 * (Rational(a.n - 2) - a.alpha);
  for (std::size_t r = 0; r < size; ++r) {
    const auto& el = a.basis[r];
    GershgorinRow row;
    for (int j = 0; j < a.n; ++j) {
      if (j != el.slot && el.exponents[j] != 0) ++row.q;
    }
    row.delta = diag[r] - off[r];
    row.q_formula_holds = off[r] == Rational(row.q * (el.exponents[el.slot] + 1));
    if (r == 0 || row.delta < g.min_delta) g.min_delta = row.delta;
    if (row.delta < g.paper_bound) g.bound_holds = false;
    g.rows.push_back(std::move(row));
  }
  double md = g.min_delta.get_d();
  g.contained = min_eigenvalue >= md - kClusterRelTol * std::max(1.0, std::abs(md));
  return g;
}

bool SpectralReport::consistent() const {
  int total = 0;
  for (const auto& c : clusters) total += c.multiplicity;
  bool rows_ok = std::all_of(gershgorin.rows.begin(), gershgorin.rows.end(), [](const auto& r) { return r.q_formula_holds; });
  return column_sums_hold && gershgorin.contained && rows_ok && total == static_cast<int>(matrix.size());
}

SpectralReport spectral_report(int n, const Rational& alpha, int m) {
  SpectralReport r;
  r.n = n;
  r.alpha = alpha;
  r.m = m;
  r.matrix = box1_matrix(n, alpha, m);
  r.clusters = spectrum(r.matrix, &r.max_imaginary);
  r.lambda_min = r.clusters.front().value;
  r.gershgorin = gershgorin_diagnostics(r.matrix, r.lambda_min);
  r.column_sums = r.matrix.column_sums();
  r.expected_column_sum = Rational(m + 1) * (Rational(n - 1) - alpha);
  r.column_sums_hold = std::all_of(r.column_sums.begin(), r.column_sums.end(),
                                   [&](const Rational& s) { return s == r.expected_column_sum; });
  r.nu_expected = nu_formula(n, alpha);
  return r;
}

Rational nu_formula(int n, const Rational& alpha) {
  require_negative(alpha);
  if (n < 1) throw std::invalid_argument("dimension must be positive");
  if (n == 1) return -alpha;
  if (n == 2) return std::min(Rational(1 - alpha), Rational(-2 * alpha));
  return Rational(n - 1) - alpha;
}

std::vector<MonomialForm> exact_eigenspace(const Box1Matrix& a, const Rational& lambda) {
  std::vector<MonomialForm> out;
  for (const auto& idx : a.blocks()) {
    QMatrix b = block_matrix(a, idx);
    for (std::size_t i = 0; i < idx.size(); ++i) b[i][i] -= lambda;
    const int cols = static_cast<int>(idx.size());
    std::vector<int> pivots = rref(b, cols);
    std::vector<bool> is_pivot(cols, false);
    for (int p : pivots) is_pivot[p] = true;
    for (int free = 0; free < cols; ++free) {
      if (is_pivot[free]) continue;
      std::vector<GaussQ> x(a.size());
      x[idx[free]] = GaussQ(1);
      for (std::size_t pr = 0; pr < pivots.size(); ++pr) x[idx[pivots[pr]]] = GaussQ(Rational(-b[pr][free]));
      out.push_back(a.basis.from_coordinates(x));
    }
  }
  return out;
}

ScanResult first_eigenvalue_scan(int n, const Rational& alpha, int m_max) {
  if (m_max < 2) throw std::invalid_argument("scan needs m_max >= 2");
  ScanResult s;
  s.n = n;
  s.alpha = alpha;
  s.m_max = m_max;
  s.nu = nu_formula(n, alpha);
  s.lambda1 = std::numeric_limits<double>::infinity();
  for (int m = 0; m <= m_max; ++m) {
    s.levels.push_back(spectral_report(n, alpha, m));
    s.lambda1 = std::min(s.lambda1, s.levels.back().lambda_min);
  }
  for (const auto& lv : s.levels) {
    for (const auto& c : lv.clusters) {
      if (close(c.value, s.lambda1)) s.multiplicity += c.multiplicity;
    }
    if (lv.m >= 2) {
      double bound = Rational(-alpha * (lv.m + 1)).get_d();
      if (lv.lambda_min < bound - kClusterRelTol * std::max(1.0, bound)) s.tail_bound = false;
    }
  }
  // Spectra are rational with the denominator of alpha; recover and confirm exactly.
  const Rational den(alpha.get_den());
  Rational candidate(mpz_class(static_cast<long>(std::llround(s.lambda1 * den.get_d()))), alpha.get_den());
  candidate.canonicalize();
  std::vector<EigenspaceVector> space;
  for (const auto& lv : s.levels) {
    if (!close(lv.lambda_min, s.lambda1)) continue;
    for (auto& f : exact_eigenspace(lv.matrix, candidate)) space.push_back({lv.m, std::move(f)});
  }
  if (static_cast<int>(space.size()) == s.multiplicity) {
    s.lambda1_exact = candidate;
    s.eigenspace = std::move(space);
  }
  const double nu = s.nu.get_d();
  s.matches_nu = std::abs(s.lambda1 - nu) <= kClusterRelTol * std::abs(nu);
  s.all_above_nu = s.lambda1 >= nu * (1 - kClusterRelTol);
  return s;
}

CanonicalSolution canonical_solution(const MonomialForm& eta, const Rational& alpha) {
  require_negative(alpha);
  if (eta.degree() != 1) throw std::invalid_argument("canonical solution needs a 1-form");
  const int n = eta.n();
  MonomialForm d = dbar(eta);
  if (!d.is_zero()) {
    const auto& [key, c] = *d.terms().begin();
    std::string where = "(d eta)_" + std::to_string(key.slots[0] + 1) + std::to_string(key.slots[1] + 1);
    throw NotClosedError("eta is not d-closed: " + where + " has coefficient " + c.str() + " at " +
                             monomial(n, key.exponents).str(),
                         key.slots, key.exponents, c);
  }
  MonomialForm n_eta(n, 1);
  for (int m = 0; m <= eta.max_polynomial_degree(); ++m) {
    MonomialForm part = eta.homogeneous_part(m);
    if (part.is_zero()) continue;
    Box1Matrix a = box1_matrix(n, alpha, m);
    std::vector<GaussQ> b = a.basis.coordinates(part);
    std::vector<GaussQ> x(a.size());
    for (const auto& idx : a.blocks()) {
      // Real block, complex right-hand side: solve the real and imaginary parts together.
      const int k = static_cast<int>(idx.size());
      QMatrix aug = block_matrix(a, idx);
      for (int r = 0; r < k; ++r) {
        aug[r].push_back(b[idx[r]].re());
        aug[r].push_back(b[idx[r]].im());
      }
      std::vector<int> pivots = rref(aug, k);
      if (static_cast<int>(pivots.size()) != k) throw std::runtime_error("singular Box~_1 block");
      for (int r = 0; r < k; ++r) x[idx[r]] = GaussQ(aug[r][k], aug[r][k + 1]);
    }
    n_eta += a.basis.from_coordinates(x);
  }
  CanonicalSolution s{dbar_star_1(n_eta, alpha), n_eta, MonomialForm(n, 1)};
  s.residual = dbar(s.f) - eta;
  return s;
}

nlohmann::json to_json(const SpectralReport& r) {
  nlohmann::json matrix;
  const std::size_t size = r.matrix.size();
  if (size <= 64) {
    matrix = nlohmann::json::array();
    for (const auto& row : r.matrix.dense()) {
      nlohmann::json jr = nlohmann::json::array();
      for (const auto& v : row) jr.push_back(rational_str(v));
      matrix.push_back(jr);
    }
  } else {
    matrix = nlohmann::json::array();
    for (std::size_t c = 0; c < size; ++c) {
      for (const auto& [row, v] : r.matrix.columns[c]) matrix.push_back({row, c, rational_str(v)});
    }
  }
  nlohmann::json basis = nlohmann::json::array();
  for (std::size_t i = 0; i < size && size <= 64; ++i) basis.push_back(r.matrix.basis.form(i).str());
  return {
      {"kind", "spectrum"},
      {"n", r.n},
      {"alpha", rational_str(r.alpha)},
      {"m", r.m},
      {"N", size},
      {"basis", basis},
      {"matrix_layout", size <= 64 ? "dense" : "sparse"},
      {"matrix", matrix},
      {"eigenvalues", clusters_json(r.clusters)},
      {"max_imaginary", r.max_imaginary},
      {"gershgorin",
       {{"min_delta", rational_str(r.gershgorin.min_delta)},
        {"bound", rational_str(r.gershgorin.paper_bound)},
        {"bound_holds", r.gershgorin.bound_holds},
        {"contained", r.gershgorin.contained}}},
      {"column_sum", rational_str(r.expected_column_sum)},
      {"column_sums_hold", r.column_sums_hold},
      {"nu", rational_str(r.nu_expected)},
      {"lambda1", r.lambda_min},
      {"verdict", r.consistent() ? "PASS" : "FAIL"},
  };
}

nlohmann::json to_json(const ScanResult& r) {
  nlohmann::json levels = nlohmann::json::array();
  for (const auto& lv : r.levels) {
    levels.push_back({{"m", lv.m},
                      {"N", lv.matrix.size()},
                      {"eigenvalues", clusters_json(lv.clusters)},
                      {"min_delta", rational_str(lv.gershgorin.min_delta)},
                      {"gershgorin_bound_holds", lv.gershgorin.bound_holds},
                      {"gershgorin_contained", lv.gershgorin.contained},
                      {"column_sums_hold", lv.column_sums_hold}});
  }
  nlohmann::json space = nlohmann::json::array();
  for (const auto& v : r.eigenspace) space.push_back({{"m", v.m}, {"form", v.form.str()}});
  return {
      {"kind", "scan"},
      {"n", r.n},
      {"alpha", rational_str(r.alpha)},
      {"m_max", r.m_max},
      {"lambda1", r.lambda1},
      {"lambda1_exact", r.lambda1_exact ? nlohmann::json(rational_str(*r.lambda1_exact)) : nlohmann::json()},
      {"multiplicity", r.multiplicity},
      {"eigenspace", space},
      {"nu", rational_str(r.nu)},
      {"matches_nu", r.matches_nu},
      {"all_above_nu", r.all_above_nu},
      {"tail_bound", r.tail_bound},
      {"verdict", r.verdict() ? "PASS" : "FAIL"},
      {"levels", levels},
  };
}

}  // namespace chern::dbar
