#include "chern/bergman/integrals.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

namespace chern::bergman {

using dbar::total_degree;
using wirtinger::rational_str;

namespace {

double to_double(const Rational& r) { return r.get_d(); }

double magnitude(const GaussQ& z) { return std::hypot(z.re().get_d(), z.im().get_d()); }

void require_same_n(const MultiIndex& l, const MultiIndex& m, int n) {
  if (static_cast<int>(l.size()) != n || static_cast<int>(m.size()) != n)
    throw std::invalid_argument("multi-index length does not match the dimension");
  for (int i = 0; i < n; ++i)
    if (l[i] < 0 || m[i] < 0) throw std::invalid_argument("negative exponent");
}

MultiIndex plus_unit(MultiIndex e, int l) {
  ++e[l];
  return e;
}

Rational factorial(int k) {
  mpz_class f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return Rational(f);
}

}  // namespace

BallMeasure::BallMeasure(int n_, Rational c_) : n(n_), c(std::move(c_)) {
  if (n < 1) throw std::invalid_argument("dimension must be positive");
  if (c <= -1) throw std::invalid_argument("measure exponent must exceed -1, got " + rational_str(c));
}

BallMeasure BallMeasure::half_hyperbolic(int n, const Rational& alpha) {
  dbar::HalfHyperbolicSetting setting(n, alpha);
  return BallMeasure(n, Rational(-alpha - 1));
}

double pi_power(int n) { return std::pow(std::numbers::pi, n); }

Rational monomial_integral_exact(const MultiIndex& l, const MultiIndex& m, const BallMeasure& mu) {
  require_same_n(l, m, mu.n);
  if (l != m) return 0;
  Rational num = 1;
  for (int v : l) num *= factorial(v);
  Rational den = 1;
  const int top = mu.n + total_degree(l);
  for (int i = 1; i <= top; ++i) den *= mu.c + i;
  Rational r = num / den;
  r.canonicalize();
  return r;
}

double monomial_integral(const MultiIndex& l, const MultiIndex& m, const BallMeasure& mu) {
  return to_double(monomial_integral_exact(l, m, mu)) * pi_power(mu.n);
}

double monomial_integral(const MultiIndex& l, const MultiIndex& m, double c) {
  if (!(c > -1)) throw std::invalid_argument("measure exponent must exceed -1");
  const int n = static_cast<int>(l.size());
  require_same_n(l, m, n);
  if (l != m) return 0.0;
  double lg = std::lgamma(c + 1) - std::lgamma(n + total_degree(l) + c + 1);
  for (int v : l) lg += std::lgamma(v + 1.0);
  return std::exp(lg) * pi_power(n);
}

QuadratureResult monomial_integral_quadrature(const MultiIndex& l, const MultiIndex& m, double c) {
  if (!(c > -1)) throw std::invalid_argument("measure exponent must exceed -1");
  const int n = static_cast<int>(l.size());
  require_same_n(l, m, n);

  // Angular factor: trapezoid with more nodes than any frequency, exact for trigonometric polynomials.
  double angular = 1.0;
  for (int j = 0; j < n; ++j) {
    const int freq = l[j] - m[j];
    const int nodes = std::abs(freq) + 2;
    double sum = 0.0;
    for (int q = 0; q < nodes; ++q) sum += std::cos(2 * std::numbers::pi * freq * q / nodes);
    angular *= 2 * std::numbers::pi * sum / nodes;
  }

  // t_j = r_j^2, dlambda = prod (1/2) dt_j dtheta_j; the simplex is peeled one variable at a time.
  std::vector<double> p(n);
  for (int j = 0; j < n; ++j) p[j] = 0.5 * (l[j] + m[j]);
  std::vector<double> tail(n + 1, 0.0);  // sum_{i >= j} (p_i + 1)
  for (int j = n - 1; j >= 0; --j) tail[j] = tail[j + 1] + p[j] + 1;

  auto estimate = [&](int points) {
    std::vector<GaussRule> rules(n);
    std::vector<double> floor_part(n);
    for (int j = 0; j < n; ++j) {
      const double e = tail[j + 1];
      floor_part[j] = std::floor(e);
      rules[j] = gauss_jacobi_unit(points, c + (e - floor_part[j]), p[j]);
    }
    // Q_j(s) = s^{p_j + 1} int u^{p_j} (1 - u)^c Q_{j+1}(s (1 - u)) du, Q_n = 1.
    std::function<double(int, double)> q = [&](int j, double s) -> double {
      if (j == n) return 1.0;
      const GaussRule& r = rules[j];
      double acc = 0.0;
      for (std::size_t i = 0; i < r.nodes.size(); ++i) {
        const double u = r.nodes[i];
        const double rest = s * (1 - u);
        // the fractional power of (1 - u) sits in the weight
        const double inner = j + 1 == n ? 1.0 : q(j + 1, rest) / std::pow(1 - u, tail[j + 1] - floor_part[j]);
        acc += r.weights[i] * inner;
      }
      return std::pow(s, p[j] + 1) * acc;
    };
    return q(0, 1.0);
  };

  QuadratureResult radial = adaptive(estimate, 4);
  radial.value *= angular * std::pow(0.5, n);
  return radial;
}

GaussQ pairing_functions(const MonomialForm& f, const MonomialForm& g, const BallMeasure& mu) {
  if (f.degree() != 0 || g.degree() != 0) throw std::invalid_argument("function pairing needs 0-forms");
  if (f.n() != mu.n || g.n() != mu.n) throw std::invalid_argument("dimension mismatch");
  GaussQ acc;
  const auto& gt = g.terms();
  for (const auto& [key, a] : f.terms()) {
    auto it = gt.find(key);
    if (it == gt.end()) continue;
    acc += a * it->second.conj() * GaussQ(monomial_integral_exact(key.exponents, key.exponents, mu));
  }
  return acc;
}

GaussQ pairing_one_forms(const MonomialForm& u, const MonomialForm& v, const BallMeasure& mu) {
  if (u.degree() != 1 || v.degree() != 1) throw std::invalid_argument("1-form pairing needs 1-forms");
  const int n = mu.n;
  GaussQ acc;
  MonomialForm zu(n, 0), zv(n, 0);
  for (int k = 0; k < n; ++k) {
    MonomialForm uk = u.component({k});
    MonomialForm vk = v.component({k});
    acc += pairing_functions(uk, vk, mu);
    zu += uk.times_z(k);
    zv += vk.times_z(k);
  }
  acc -= pairing_functions(zu, zv, mu);
  return acc;
}

bool GramBlock::hermitian() const {
  for (std::size_t i = 0; i < exact.size(); ++i)
    for (std::size_t j = i + 1; j < exact.size(); ++j)
      if (exact[i][j] != exact[j][i]) return false;
  return true;
}

bool GramBlock::positive_definite() const {
  if (values.rows() == 0) return true;
  Eigen::LLT<Eigen::MatrixXd> llt(values);
  return llt.info() == Eigen::Success;
}

GramBlock gram_block(int n, const Rational& alpha, int m) {
  const BallMeasure mu = BallMeasure::half_hyperbolic(n, alpha);
  GramBlock g;
  g.n = n;
  g.alpha = alpha;
  g.m = m;
  g.basis = dbar::SubspaceBasis(n, m);
  const std::size_t size = g.basis.size();
  g.exact.assign(size, std::vector<Rational>(size, Rational(0)));
  g.values = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(size), static_cast<Eigen::Index>(size));

  // <z^L dz_l, z^M dz_p> = delta_lp I(L, M) - I(L + e_l, M + e_p); nonzero only when L + e_l = M + e_p.
  std::map<MultiIndex, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < size; ++i) groups[plus_unit(g.basis[i].exponents, g.basis[i].slot)].push_back(i);
  for (const auto& [k, members] : groups) {
    const Rational top = monomial_integral_exact(k, k, mu);
    for (std::size_t a : members) {
      for (std::size_t b : members) {
        Rational v = -top;
        if (a == b) v += monomial_integral_exact(g.basis[a].exponents, g.basis[a].exponents, mu);
        v.canonicalize();
        g.exact[a][b] = v;
        g.values(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = to_double(v);
      }
    }
  }
  return g;
}

SymmetryReport weighted_symmetry_check(int n, const Rational& alpha, int m) {
  const dbar::Box1Matrix a = dbar::box1_matrix(n, alpha, m);
  const GramBlock g = gram_block(n, alpha, m);
  SymmetryReport r;
  r.exact_symmetric = true;
  r.g_orthogonal_basis = true;

  const std::vector<dbar::EigenCluster> clusters = dbar::spectrum(a);
  double scale = 0.0, asym = 0.0;
  for (const auto& block : a.blocks()) {
    const auto b = static_cast<Eigen::Index>(block.size());
    std::vector<std::vector<Rational>> ga(block.size(), std::vector<Rational>(block.size(), Rational(0)));
    Eigen::MatrixXd gd(b, b), ad(b, b);
    for (std::size_t i = 0; i < block.size(); ++i) {
      for (std::size_t j = 0; j < block.size(); ++j) {
        gd(i, j) = g.values(block[i], block[j]);
        ad(i, j) = to_double(a.entry(block[i], block[j]));
        Rational acc = 0;
        for (std::size_t k = 0; k < block.size(); ++k) acc += g.exact[block[i]][block[k]] * a.entry(block[k], block[j]);
        ga[i][j] = acc;
      }
    }
    for (std::size_t i = 0; i < block.size(); ++i)
      for (std::size_t j = i + 1; j < block.size(); ++j)
        if (ga[i][j] != ga[j][i]) r.exact_symmetric = false;

    const Eigen::MatrixXd gad = gd * ad;
    scale = std::max(scale, gad.cwiseAbs().maxCoeff());
    asym = std::max(asym, (gad - gad.transpose()).cwiseAbs().maxCoeff());

    const Eigen::MatrixXd sym = 0.5 * (gad + gad.transpose());
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym, gd);
    if (solver.info() != Eigen::Success) {
      r.g_orthogonal_basis = false;
      continue;
    }
    const Eigen::MatrixXd& x = solver.eigenvectors();
    const Eigen::VectorXd& lam = solver.eigenvalues();
    const double lam_scale = std::max(1.0, lam.cwiseAbs().maxCoeff());
    const double ortho = (x.transpose() * gd * x - Eigen::MatrixXd::Identity(b, b)).cwiseAbs().maxCoeff();
    const double eig = (ad * x - x * lam.asDiagonal()).cwiseAbs().maxCoeff() / lam_scale;
    if (ortho > kSymmetryRelTol || eig > kSymmetryRelTol) r.g_orthogonal_basis = false;
    for (Eigen::Index i = 0; i < b; ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& c : clusters) best = std::min(best, std::abs(c.value - lam(i)) / std::max(1.0, std::abs(c.value)));
      r.eigen_mismatch = std::max(r.eigen_mismatch, best);
    }
  }
  if (r.eigen_mismatch > kSymmetryRelTol) r.g_orthogonal_basis = false;
  r.relative_error = scale > 0 ? asym / scale : 0.0;
  return r;
}

AdjointnessReport adjointness_residual(const MonomialForm& f, const MonomialForm& u, const Rational& alpha) {
  if (f.degree() != 0 || u.degree() != 1) throw std::invalid_argument("adjointness pairs a function with a 1-form");
  if (f.n() != u.n()) throw std::invalid_argument("dimension mismatch");
  const BallMeasure mu = BallMeasure::half_hyperbolic(f.n(), alpha);
  AdjointnessReport r;
  r.lhs = pairing_one_forms(dbar::dbar(f), u, mu);
  r.rhs = pairing_functions(f, dbar::dbar_star_1(u, alpha), mu);
  const double pn = pi_power(f.n());
  r.residual = magnitude(r.lhs - r.rhs) * pn / (1 + magnitude(r.lhs) * pn);
  return r;
}

bool EstimateReport::holds() const {
  return solution.exact() && lhs <= rhs * (1 + kEstimateSlack) && constant_pairing <= kOrthogonalityRelTol;
}

EstimateReport estimate_check(const MonomialForm& eta, const Rational& alpha) {
  const BallMeasure mu = BallMeasure::half_hyperbolic(eta.n(), alpha);
  EstimateReport r;
  r.solution = dbar::canonical_solution(eta, alpha);
  r.nu = dbar::nu_formula(eta.n(), alpha);
  r.lhs_exact = pairing_functions(r.solution.f, r.solution.f, mu).re();
  r.rhs_exact = pairing_one_forms(eta, eta, mu).re() / r.nu;
  r.rhs_exact.canonicalize();
  const double pn = pi_power(eta.n());
  r.lhs = to_double(r.lhs_exact) * pn;
  r.rhs = to_double(r.rhs_exact) * pn;
  if (!r.solution.f.is_zero()) {
    const MonomialForm one = dbar::monomial(eta.n(), MultiIndex(eta.n(), 0));
    const double f1 = magnitude(pairing_functions(r.solution.f, one, mu));
    const double ones = to_double(pairing_functions(one, one, mu).re());
    r.constant_pairing = f1 / std::sqrt(to_double(r.lhs_exact) * ones);
  }
  return r;
}

bool c2_membership(int k, int l) {
  if (k < 0 || l < 0) throw std::invalid_argument("exponents must be nonnegative");
  return 2 * k - 2 * l - 3 > -1;
}

C2Norm c2_norm(int k, int l) {
  C2Norm r;
  r.k = k;
  r.l = l;
  r.exponent = 2 * k - 2 * l - 3;
  r.finite = c2_membership(k, l);
  if (!r.finite) return r;
  // With t_j = r_j^2: ||f||^2 = pi^2 int int t1^k t2^l ((1 + t1)^2 + t2) e^{-t1^2/2 - t1 t2 - t1} dt2 dt1.
  // Inner variable s = t1 t2 under the weight s^l e^{-s}; outer weight t1^{k-l-2} e^{-t1}.
  const double a = k - l - 2;
  auto estimate = [&](int points) {
    const GaussRule outer = gauss_laguerre(points, a);
    const GaussRule inner = gauss_laguerre(points, l);
    double acc = 0.0;
    for (std::size_t i = 0; i < outer.nodes.size(); ++i) {
      const double t = outer.nodes[i];
      double s_sum = 0.0;
      for (std::size_t j = 0; j < inner.nodes.size(); ++j)
        s_sum += inner.weights[j] * ((1 + t) * (1 + t) * t + inner.nodes[j]);
      acc += outer.weights[i] * std::exp(-t * t / 2) * s_sum;
    }
    return std::numbers::pi * std::numbers::pi * acc;
  };
  r.quadrature = adaptive(estimate, 8);
  r.value = r.quadrature.value;
  return r;
}

nlohmann::json to_json(const GramBlock& g) {
  nlohmann::json basis = nlohmann::json::array();
  for (const auto& e : g.basis.elements()) basis.push_back({{"z", e.exponents}, {"dz", e.slot + 1}});
  nlohmann::json matrix = nlohmann::json::array();
  for (const auto& row : g.exact) {
    nlohmann::json jr = nlohmann::json::array();
    for (const auto& v : row) jr.push_back(rational_str(v));
    matrix.push_back(jr);
  }
  return {{"kind", "gram"},
          {"n", g.n},
          {"alpha", rational_str(g.alpha)},
          {"m", g.m},
          {"N", g.basis.size()},
          {"basis", basis},
          {"unit", "pi^n"},
          {"matrix", matrix},
          {"hermitian", g.hermitian()},
          {"positive_definite", g.positive_definite()}};
}

nlohmann::json to_json(const SymmetryReport& r, int n, const Rational& alpha, int m) {
  return {{"kind", "symmetry"},
          {"n", n},
          {"alpha", rational_str(alpha)},
          {"m", m},
          {"exact_symmetric", r.exact_symmetric},
          {"relative_error", r.relative_error},
          {"g_orthogonal_basis", r.g_orthogonal_basis},
          {"eigen_mismatch", r.eigen_mismatch},
          {"verdict", r.holds()}};
}

nlohmann::json to_json(const AdjointnessReport& r) {
  return {{"kind", "adjointness"},
          {"lhs", r.lhs.str()},
          {"rhs", r.rhs.str()},
          {"unit", "pi^n"},
          {"residual", r.residual},
          {"verdict", r.holds()}};
}

nlohmann::json to_json(const EstimateReport& r) {
  return {{"kind", "estimate"},
          {"f", dbar::to_json(r.solution.f)},
          {"exact_solution", r.solution.exact()},
          {"nu", rational_str(r.nu)},
          {"lhs", r.lhs},
          {"rhs", r.rhs},
          {"lhs_exact", rational_str(r.lhs_exact)},
          {"rhs_exact", rational_str(r.rhs_exact)},
          {"unit", "pi^n"},
          {"constant_pairing", r.constant_pairing},
          {"verdict", r.holds()}};
}

nlohmann::json to_json(const C2Norm& r) {
  nlohmann::json j = {{"kind", "c2_norm"}, {"k", r.k}, {"l", r.l}, {"exponent", r.exponent}, {"finite", r.finite}};
  if (r.finite) {
    j["value"] = r.value;
    j["nodes"] = r.quadrature.nodes;
    j["converged"] = r.quadrature.converged;
  } else {
    j["value"] = nullptr;
  }
  return j;
}

}  // namespace chern::bergman
