// Acceptance suite: one pass/fail line per criterion.
#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "chern/bergman/integrals.hpp"
#include "chern/catalog/fixtures.hpp"
#include "chern/dbar/c2.hpp"
#include "chern/dbar/laplacian.hpp"
#include "chern/report/report.hpp"
#include "chern/wirtinger/identity.hpp"
#include "random_fields.hpp"

using namespace chern;
using dbar::MonomialForm;
using dbar::MultiIndex;
using wirtinger::GaussQ;
using wirtinger::Rational;
using wirtinger::WPoly;
using wirtinger::WRational;
using wirtinger::rational_equal;

namespace {

// Pinned tolerances and runtime limits.
constexpr double kClusterRelTol = 1e-9;
constexpr double kLambdaRelTol = 1e-9;
constexpr double kAdjointnessTol = 1e-8;
constexpr double kGammaRelTol = 1e-9;
constexpr double kSymmetryRelTol = 1e-8;
constexpr double kNoLimit = 0.0;

Rational q(long p, long d = 1) { return Rational(p, d); }

const std::vector<Rational> kAlphaGrid = {q(-1, 2), q(-1), q(-3)};

struct Outcome {
  bool pass = true;
  std::vector<std::string> failures;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    if (failures.size() < 8) failures.push_back(what);
  }
};

struct Criterion {
  int id;
  std::string name;
  double limit_seconds;
  std::function<Outcome()> run;
};

std::string str(const Rational& r) { return r.get_str(); }

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

std::vector<MultiIndex> indices_up_to(int n, int max_degree) {
  std::vector<MultiIndex> out;
  MultiIndex e(n, 0);
  std::function<void(int, int)> rec = [&](int j, int left) {
    if (j == n) {
      out.push_back(e);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      e[j] = v;
      rec(j + 1, left - v);
    }
    e[j] = 0;
  };
  rec(0, max_degree);
  return out;
}

bool clusters_match(const std::vector<dbar::EigenCluster>& got, std::vector<std::pair<Rational, int>> want) {
  std::sort(want.begin(), want.end());
  if (got.size() != want.size()) return false;
  for (std::size_t i = 0; i < want.size(); ++i) {
    const double w = Rational(want[i].first).get_d();
    if (std::abs(got[i].value - w) > kClusterRelTol * std::abs(w)) return false;
    if (got[i].multiplicity != want[i].second) return false;
  }
  return true;
}

// Matrices displayed for n = 2 at degrees 1 and 2.
std::vector<std::vector<Rational>> displayed_m1(const Rational& a) {
  Rational d = 2 - 2 * a, e = 1 - 2 * a;
  return {{d, 0, 0, 0}, {0, e, 1, 0}, {0, 1, e, 0}, {0, 0, 0, d}};
}

std::vector<std::vector<Rational>> displayed_m2(const Rational& a) {
  Rational d = 3 - 3 * a, e = 1 - 3 * a, f = 2 - 3 * a;
  return {{d, 0, 0, 0, 0, 0}, {0, e, 1, 0, 0, 0}, {0, 2, f, 0, 0, 0},
          {0, 0, 0, f, 2, 0}, {0, 0, 0, 1, e, 0}, {0, 0, 0, 0, 0, d}};
}

Outcome matrix_fixtures() {
  Outcome o;
  // Entries are affine in alpha, so agreement at two or more points is an identity in alpha.
  const std::vector<Rational> alphas = {q(-1, 2), q(-1), q(-3), q(-7, 5)};
  for (const auto& a : alphas) {
    o.require(dbar::box1_matrix(2, a, 1).dense() == displayed_m1(a), "4x4 at alpha=" + str(a));
    o.require(dbar::box1_matrix(2, a, 2).dense() == displayed_m2(a), "6x6 at alpha=" + str(a));
  }
  for (int m = 1; m <= 2; ++m) {
    const auto x = dbar::box1_matrix(2, q(-1), m).dense(), y = dbar::box1_matrix(2, q(-2), m).dense();
    const auto z = dbar::box1_matrix(2, q(-3), m).dense();
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t j = 0; j < x.size(); ++j) o.require(x[i][j] + z[i][j] == 2 * y[i][j], "entry not affine in alpha");
  }
  o.detail = "alphas -1/2,-1,-3,-7/5";
  return o;
}

Outcome spectral_fixtures() {
  Outcome o;
  for (const auto& a : kAlphaGrid) {
    o.require(clusters_match(dbar::spectrum(dbar::box1_matrix(2, a, 1)), {{-2 * a, 1}, {2 * (1 - a), 3}}),
              "m=1 alpha=" + str(a));
    o.require(clusters_match(dbar::spectrum(dbar::box1_matrix(2, a, 2)), {{3 * (1 - a), 4}, {-3 * a, 2}}),
              "m=2 alpha=" + str(a));
  }
  o.detail = "n=2 m=1,2 alphas -1/2,-1,-3";
  return o;
}

const std::vector<int> kScanDims = {1, 2, 3, 4, 5};
const std::vector<Rational> kScanAlphas = {q(-1, 4), q(-1, 2), q(-1), q(-3, 2), q(-2), q(-5)};
constexpr int kScanDegree = 10;

const std::vector<dbar::ScanResult>& scans() {
  static const std::vector<dbar::ScanResult> all = [] {
    std::vector<dbar::ScanResult> v;
    for (int n : kScanDims)
      for (const auto& a : kScanAlphas) v.push_back(dbar::first_eigenvalue_scan(n, a, kScanDegree));
    return v;
  }();
  return all;
}

std::string point(int n, const Rational& a) { return "n=" + std::to_string(n) + " alpha=" + str(a); }

Outcome nu_scan() {
  Outcome o;
  int checked = 0;
  for (const auto& s : scans()) {
    const double nu = s.nu.get_d();
    const Rational nu_ref = dbar::nu_formula(s.n, s.alpha);
    o.require(s.nu == nu_ref, point(s.n, s.alpha) + " nu field");
    o.require(std::abs(s.lambda1 - nu) <= kLambdaRelTol * std::abs(nu),
              point(s.n, s.alpha) + " lambda1=" + std::to_string(s.lambda1) + " nu=" + str(nu_ref));
    o.require(s.all_above_nu && s.tail_bound, point(s.n, s.alpha) + " spectrum below nu");
    if (s.n == 2) {
      int want = s.alpha > -1 ? 1 : (s.alpha == -1 ? 3 : 2);
      o.require(s.multiplicity == want, point(s.n, s.alpha) + " multiplicity " + std::to_string(s.multiplicity) +
                                            " expected " + std::to_string(want));
    }
    ++checked;
  }
  o.detail = std::to_string(checked) + " (n, alpha) points, m_max=" + std::to_string(kScanDegree);
  return o;
}

Outcome gershgorin() {
  Outcome o;
  int levels = 0, violations = 0, violations_m_positive = 0;
  for (const auto& s : scans()) {
    for (const auto& l : s.levels) {
      ++levels;
      const auto& g = l.gershgorin;
      const std::string where = point(s.n, s.alpha) + " m=" + std::to_string(l.m);
      o.require(g.contained, where + " min eigenvalue below min delta");
      Rational bound = 2 * (Rational(s.n - 2) - s.alpha);
      for (const auto& row : g.rows) {
        if (row.delta < bound) {
          ++violations;
          if (l.m > 0) ++violations_m_positive;
          o.require(false, where + " delta=" + str(row.delta) + " < " + str(bound));
          break;
        }
      }
      o.require(g.paper_bound == bound, where + " bound field");
      Rational sum = Rational(l.m + 1) * (Rational(s.n - 1) - s.alpha);
      for (const auto& c : l.matrix.column_sums()) {
        if (c != sum) {
          o.require(false, where + " column sum " + str(c));
          break;
        }
      }
    }
  }
  o.detail = std::to_string(levels) + " matrices, " + std::to_string(violations) + " below 2(n-alpha-2) (" +
             std::to_string(violations_m_positive) + " with m>0)";
  return o;
}

Outcome c2_example() {
  Outcome o;
  const auto spec = dbar::c2_spectrum(21);
  o.require(spec.size() == 20, "expected eigenvalues 2..21");
  for (const auto& e : spec) {
    const int k = e.value - 1;
    o.require(e.multiplicity == 2 * k - 1, "value " + std::to_string(e.value) + " multiplicity " + std::to_string(e.multiplicity));
  }
  for (int k = 0; k <= 20; ++k) {
    for (int l = 0; l <= 20; ++l) {
      MonomialForm v1 = dbar::monomial(2, {k, l}, {0}), v2 = dbar::monomial(2, {k, l}, {1});
      o.require(dbar::c2_box_apply(v1) == v1.scaled(GaussQ(k + 1)), "v1 at " + std::to_string(k) + "," + std::to_string(l));
      o.require(dbar::c2_box_apply(v2) == v2.scaled(GaussQ(k)), "v2 at " + std::to_string(k) + "," + std::to_string(l));
    }
  }
  int finite = 0;
  for (int k = 0; k <= 8; ++k) {
    for (int l = 0; l <= 8; ++l) {
      bergman::C2Norm c = bergman::c2_norm(k, l);
      o.require(c.finite == bergman::c2_membership(k, l), "membership at " + std::to_string(k) + "," + std::to_string(l));
      if (c.finite) o.require(c.quadrature.converged && c.value > 0, "norm at " + std::to_string(k) + "," + std::to_string(l));
      finite += c.finite;
    }
  }
  o.detail = "eigenvalues 2..21, relations k,l<=20, " + std::to_string(finite) + "/81 finite norms";
  return o;
}

WRational inverse_one_minus_r(int n) {
  return WRational(WPoly::constant(n, GaussQ(1)) - WPoly::norm_squared(n)).inverse();
}

void half_hyperbolic_curvature(Outcome& o, int n) {
  catalog::FamilyInstance inst = catalog::build_family(report::default_family_spec(catalog::Family::half_hyperbolic, n));
  const auto& h = inst.metric.h;
  geometry::CurvatureReport rep = geometry::curvature_report(inst.metric);
  const WRational w = inverse_one_minus_r(n);
  const std::string where = "half_hyperbolic n=" + std::to_string(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          o.require(rational_equal(rep.curvature(i, j, k, l), -(h[i][l] * h[k][j] * w)), where + " curvature");
      o.require(rational_equal(rep.ricci1[i][j], rep.ricci2[i][j]), where + " ricci");
    }
  o.require(rational_equal(rep.scalar_s, -w.scaled(GaussQ(long(n)))), where + " s");
  o.require(rational_equal(rep.scalar_hat, -w.scaled(GaussQ(long(n * n)))), where + " s_hat");
}

Outcome geometry_identities() {
  Outcome o;
  int families = 0, conformal = 0;
  for (const auto& spec : report::default_corpus()) {
    const std::string name = catalog::to_string(spec.family);
    catalog::FamilyInstance inst = catalog::build_family(spec);
    const int n = inst.metric.n;
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) {
        WRational s = WRational::constant(n, GaussQ(0));
        for (int k = 0; k < n; ++k) s = s + inst.metric.h_inv[j][k] * inst.metric.h[l][k];
        o.require(rational_equal(s, WRational::constant(n, GaussQ(j == l ? 1 : 0))), name + " inverse");
      }
    geometry::ConnectionPack pack = geometry::connection(inst.metric);
    o.require(geometry::torsion_identities_hold(pack), name + " torsion identities");
    if (inst.kahler_base && n >= 2) {
      o.require(geometry::conformal_tripod(*inst.kahler_base, *inst.phi, inst.metric, pack).agree(), name + " tripod");
      o.require(geometry::conformal_torsion_law(*inst.phi, pack), name + " torsion law");
      ++conformal;
    }
    ++families;
  }
  for (int n = 2; n <= 3; ++n) half_hyperbolic_curvature(o, n);
  for (int n = 2; n <= 3; ++n) {
    for (const auto& b : {q(-1), q(0), q(1, 2), q(1), q(2)}) {
      catalog::FamilySpec s = report::default_family_spec(catalog::Family::beta_family, n);
      s.params.scalars["beta"] = GaussQ(b);
      catalog::FamilyInstance inst = catalog::build_family(s);
      geometry::ConnectionPack pack = geometry::connection(inst.metric);
      const std::string where = "beta=" + str(b) + " n=" + std::to_string(n);
      const WRational w = inverse_one_minus_r(n);
      for (int j = 0; j < n; ++j)
        o.require(rational_equal(pack.tau[j], (WRational::zbar(n, j) * w).scaled(-GaussQ(b) * GaussQ(long(n - 1)))),
                  where + " tau");
      o.require(geometry::has_holomorphic_torsion(pack) == (b == 0 || b == 1), where + " holomorphy verdict");
    }
  }
  o.detail = std::to_string(families) + " families, " + std::to_string(conformal) + " conformal, beta grid n=2,3";
  return o;
}

Outcome weight_fixtures() {
  Outcome o;
  int count = 0;
  bool cross_check = false;
  for (const auto& id : catalog::theorem_ids()) {
    int positives = 0, negatives = 0;
    for (const auto& f : catalog::theorem_fixture(id)) {
      catalog::FixtureOutcome r = catalog::run_fixture(f);
      o.require(r.pass(), id + ": " + r.label);
      (f.positive ? positives : negatives) += 1;
      if (id == "un_invariant_determined" && f.predicate == catalog::Predicate::metric_equals) cross_check = r.pass() && r.observed;
      ++count;
    }
    o.require(positives > 0 && negatives > 0, id + " lacks positive or negative fixtures");
  }
  o.require(cross_check, "U(n) cross-check against the half hyperbolic metric");
  o.detail = std::to_string(count) + " fixtures over " + std::to_string(catalog::theorem_ids().size()) + " ids";
  return o;
}

Outcome adjointness_and_estimate() {
  Outcome o;
  std::mt19937 rng(20261016);
  std::uniform_int_distribution<int> coef(-4, 4), deg(0, 3), count(1, 3);
  int pairs = 0, estimates = 0;
  for (int n = 1; n <= 3; ++n) {
    std::uniform_int_distribution<int> slot(0, n - 1);
    auto random_index = [&](int total) {
      MultiIndex e(n, 0);
      for (int t = 0; t < total; ++t) ++e[slot(rng)];
      return e;
    };
    for (const auto& a : kAlphaGrid) {
      const std::string where = point(n, a);
      for (int trial = 0; trial < 50; ++trial) {
        const int d = deg(rng);
        MonomialForm f(n, 0), u(n, 1);
        for (int t = count(rng); t > 0; --t) f.add(random_index(d + 1), {}, GaussQ(Rational(coef(rng)), Rational(coef(rng))));
        for (int t = count(rng); t > 0; --t) u.add(random_index(d), {slot(rng)}, GaussQ(Rational(coef(rng)), Rational(coef(rng))));
        o.require(bergman::adjointness_residual(f, u, a).residual < kAdjointnessTol, where + " adjointness " + u.str());
        ++pairs;
      }
      std::vector<std::string> etas = {"dz1", "2*z1*dz1", n == 1 ? "z1^2*dz1" : "z1^2*dz1 + z2^2*dz1 + 2*z1*z2*dz2"};
      for (const auto& text : etas) {
        bergman::EstimateReport e = bergman::estimate_check(dbar::parse_form(text, n), a);
        o.require(e.solution.exact() && e.holds(), where + " estimate for " + text);
        ++estimates;
      }
      o.require(dbar::canonical_solution(dbar::parse_form("dz1", n), a).f == dbar::parse_form("z1", n), where + " dz1");
    }
  }
  int integrals = 0;
  const std::vector<std::pair<double, Rational>> cs = {{0.0, q(0)}, {0.5, q(1, 2)}, {1.0, q(1)}, {2.0, q(2)}};
  for (int n = 1; n <= 3; ++n) {
    for (const auto& e : indices_up_to(n, 4)) {
      for (const auto& [cd, cq] : cs) {
        bergman::QuadratureResult r = bergman::monomial_integral_quadrature(e, e, cd);
        const double exact = Rational(bergman::monomial_integral_exact(e, e, bergman::BallMeasure(n, cq))).get_d() * bergman::pi_power(n);
        o.require(r.converged && rel(exact, r.value) <= kGammaRelTol && rel(bergman::monomial_integral(e, e, cd), r.value) <= kGammaRelTol,
                  "Gamma formula n=" + std::to_string(n) + " c=" + str(cq));
        ++integrals;
      }
    }
  }
  o.detail = std::to_string(pairs) + " pairs, " + std::to_string(estimates) + " estimates, " + std::to_string(integrals) + " integrals";
  return o;
}

MonomialForm random_one_form(std::mt19937& rng, int n, int max_degree) {
  std::uniform_int_distribution<int> deg(0, max_degree), slot(0, n - 1), coeff(-5, 5), count(1, 4);
  MonomialForm u(n, 1);
  for (int t = count(rng); t > 0; --t) {
    MultiIndex e(n, 0);
    for (int i = deg(rng); i > 0; --i) e[slot(rng)] += 1;
    u.add(e, {slot(rng)}, GaussQ(Rational(coeff(rng), 1), Rational(coeff(rng), 2)));
  }
  return u;
}

Outcome property_suites() {
  Outcome o;
  std::mt19937_64 rng64(11);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + trial % 3;
    WRational f = chern::testing::random_rational(rng64, n);
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        o.require(rational_equal(f.derivative(j, false).derivative(k, true), f.derivative(k, true).derivative(j, false)),
                  "mixed partials");
    o.require(rational_equal(f.conjugate().conjugate(), f), "conjugation");
  }
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 3;
    MonomialForm u = random_one_form(rng, n, 6);
    MonomialForm g(n, 0);
    for (const auto& [key, c] : u.terms()) g.add(key.exponents, {}, c);
    o.require(dbar::dbar(dbar::dbar(g)).is_zero(), "d d != 0 on " + g.str());
  }
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 3;
    const Rational& a = kAlphaGrid[trial % 3];
    MonomialForm u = random_one_form(rng, n, 6);
    o.require(dbar::box1_apply(u, a) == dbar::box1_composed(u, a), "box1 composition on " + u.str());
  }
  int blocks = 0;
  for (int n = 1; n <= 3; ++n)
    for (const auto& a : kAlphaGrid)
      for (int m = 0; m <= 6; ++m) {
        bergman::SymmetryReport s = bergman::weighted_symmetry_check(n, a, m);
        o.require(s.exact_symmetric && s.relative_error <= kSymmetryRelTol && s.g_orthogonal_basis,
                  "G A at " + point(n, a) + " m=" + std::to_string(m));
        ++blocks;
      }
  o.detail = "60 rationals, 100 functions, 200 forms, " + std::to_string(blocks) + " weighted blocks";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  int only = 0;
  app.add_option("--criterion", only, "run a single criterion")->check(CLI::Range(1, 9));
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria = {
      {1, "matrix fixtures", 1.0, matrix_fixtures},
      {2, "spectral fixtures", 1.0, spectral_fixtures},
      {3, "nu scan", 120.0, nu_scan},
      {4, "Gershgorin containment", kNoLimit, gershgorin},
      {5, "C^2 example", 30.0, c2_example},
      {6, "symbolic geometry identities", 60.0, geometry_identities},
      {7, "weight classification fixtures", kNoLimit, weight_fixtures},
      {8, "adjointness and estimate", kNoLimit, adjointness_and_estimate},
      {9, "property suites", kNoLimit, property_suites},
  };

  bool all = true;
  for (const auto& c : criteria) {
    if (only && c.id != only) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_seconds > 0) o.require(seconds < c.limit_seconds, "runtime limit exceeded");
    all = all && o.pass;
    std::ostringstream line;
    line << "criterion " << c.id << ": " << (o.pass ? "PASS" : "FAIL") << " " << c.name << " [" << o.detail << "] "
         << std::fixed << std::setprecision(2) << seconds << "s";
    if (c.limit_seconds > 0) line << " (limit " << c.limit_seconds << "s)";
    for (std::size_t i = 0; i < o.failures.size(); ++i) line << (i ? "; " : " -- ") << o.failures[i];
    std::cout << line.str() << std::endl;
  }
  return all ? 0 : 1;
}
