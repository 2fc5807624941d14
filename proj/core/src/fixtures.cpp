#include "chern/catalog/fixtures.hpp"

#include <chrono>
#include <stdexcept>

namespace chern::catalog {

using nlohmann::json;
using wirtinger::Rational;

namespace {

GaussQ q(long p, long d = 1) { return GaussQ(Rational(p, d)); }

json var(const std::string& name) { return {{"var", name}}; }
json cst(const std::string& v) { return {{"const", v}}; }

json norm_expr(int n) {
  json terms = json::array();
  for (int k = 1; k <= n; ++k) terms.push_back({{"mul", {var("z" + std::to_string(k)), var("zbar" + std::to_string(k))}}});
  return {{"add", terms}};
}

/// 1 / (1 + sign |z|^2)^power
json ball_power(int n, int sign, int power) {
  json r = norm_expr(n);
  json base = {{"add", {cst("1"), sign > 0 ? r : json{{"mul", {cst("-1"), r}}}}}};
  return {{"div", {cst("1"), {{"pow", {base, power}}}}}};
}

json quartic_z1() { return {{"mul", {var("z1"), var("z1"), var("zbar1"), var("zbar1")}}}; }

FamilySpec spec(Family f, int n) {
  FamilySpec s;
  s.family = f;
  s.n = n;
  return s;
}

FamilySpec quadratic(Family f, int n, std::vector<std::vector<GaussQ>> c, std::vector<GaussQ> alpha, GaussQ gamma) {
  FamilySpec s = spec(f, n);
  s.params.c = std::move(c);
  s.params.alpha = std::move(alpha);
  s.params.scalars["gamma"] = gamma;
  return s;
}

std::vector<std::vector<GaussQ>> diag(int n, GaussQ v) {
  std::vector<std::vector<GaussQ>> c(n, std::vector<GaussQ>(n, GaussQ(0)));
  for (int j = 0; j < n; ++j) c[j][j] = v;
  return c;
}

FamilySpec multiradial(int n, json potential) {
  FamilySpec s = spec(Family::multiradial_potential, n);
  s.params.potential = std::move(potential);
  return s;
}

FamilySpec un_family(int n, RadialProfile ht, GaussQ c2, GaussQ c3) {
  FamilySpec s = spec(Family::un_invariant_conformal, n);
  s.params.h_tilde = std::move(ht);
  s.params.scalars["C2"] = c2;
  s.params.scalars["C3"] = c3;
  return s;
}

Fixture make(const std::string& id, std::string label, bool positive, FamilySpec fam, std::optional<WeightSpec> w,
             Predicate p, std::vector<GaussQ> target = {}) {
  Fixture f;
  f.theorem_id = id;
  f.label = std::move(label);
  f.positive = positive;
  f.family = std::move(fam);
  f.weight = std::move(w);
  f.predicate = p;
  f.expected = positive;
  f.target_scales = std::move(target);
  return f;
}

std::vector<Fixture> potential_derivative_fixtures() {
  const std::string id = "thm2.1";
  json chi2 = {{"add", {var("r1"), var("r2"), {{"mul", {var("r1"), var("r2")}}}}}};
  json chi3 = {{"add", {var("r1"), var("r2"), var("r3"), {{"mul", {var("r1"), var("r2"), var("r3")}}}}}};
  std::vector<Fixture> out;
  out.push_back(make(id, "n=2 chi=r1+r2+r1r2, C=(1,2,-1/3)", true, multiradial(2, chi2),
                     WeightSpec::potential_derivative({q(1), q(2), q(-1, 3)}), Predicate::gradient_equals, {q(2), q(-1, 3)}));
  out.push_back(make(id, "n=2 chi=r1+r2+r1r2, holomorphic gradient", true, multiradial(2, chi2),
                     WeightSpec::potential_derivative({q(1), q(2), q(-1, 3)}), Predicate::real_holomorphic_gradient));
  out.push_back(make(id, "n=3 chi=r1+r2+r3+r1r2r3, C=(0,1/2,-1,3)", true, multiradial(3, chi3),
                     WeightSpec::potential_derivative({q(0), q(1, 2), q(-1), q(3)}), Predicate::gradient_equals,
                     {q(1, 2), q(-1), q(3)}));
  out.push_back(make(id, "psi~=r1^2", false, multiradial(2, chi2),
                     WeightSpec::multiradial({{"mul", {var("r1"), var("r1")}}}), Predicate::real_holomorphic_gradient));
  out.push_back(make(id, "psi~=r1r2", false, multiradial(2, chi2),
                     WeightSpec::multiradial({{"mul", {var("r1"), var("r2")}}}), Predicate::real_holomorphic_gradient));
  return out;
}

std::vector<Fixture> decoupled_fixtures() {
  const std::string id = "cor_decoupled";
  FamilySpec mixed = spec(Family::decoupled_potential, 2);
  mixed.params.profiles = {RadialProfile::neg_log_one_minus(), RadialProfile::polynomial({q(0), q(1), q(1, 2)})};
  FamilySpec polydisk = spec(Family::decoupled_potential, 2);
  polydisk.params.profiles = {RadialProfile::neg_log_one_minus(q(2)), RadialProfile::neg_log_one_minus(q(2))};
  std::vector<Fixture> out;
  out.push_back(make(id, "F=(-log(1-r), r+r^2/2), C=(3,1,-2)", true, mixed, WeightSpec::potential_derivative({q(3), q(1), q(-2)}),
                     Predicate::gradient_equals, {q(1), q(-2)}));
  out.push_back(make(id, "polydisk Bergman, gamma=(1,4,-2)", true, polydisk, WeightSpec::polydisk({q(1), q(4), q(-2)}),
                     Predicate::gradient_equals, {q(2), q(-1)}));
  out.push_back(make(id, "polydisk Bergman, holomorphic gradient", true, polydisk,
                     WeightSpec::polydisk({q(0), q(1), q(1)}), Predicate::real_holomorphic_gradient));
  out.push_back(make(id, "psi~=r1r2", false, mixed, WeightSpec::multiradial({{"mul", {var("r1"), var("r2")}}}),
                     Predicate::real_holomorphic_gradient));
  return out;
}

std::vector<Fixture> product_fixtures() {
  const std::string id = "cor_product";
  FamilySpec two = spec(Family::product_potential, 2);
  two.params.profiles = {RadialProfile::polynomial({q(1), q(1)}), RadialProfile::polynomial({q(1), q(1)})};
  FamilySpec one = spec(Family::product_potential, 1);
  one.params.profiles = {RadialProfile::polynomial({q(1), q(1), q(1)})};
  std::vector<Fixture> out;
  out.push_back(make(id, "G=(1+r,1+r), C=(0,3,-1)", true, two, WeightSpec::product({q(0), q(3), q(-1)}),
                     Predicate::gradient_equals, {q(3), q(-1)}));
  out.push_back(make(id, "G=(1+r,1+r), C=0", true, two, WeightSpec::product({q(0), q(0), q(0)}),
                     Predicate::gradient_equals, {q(0), q(0)}));
  out.push_back(make(id, "n=1 G=1+r+r^2, C=(1,5/2)", true, one, WeightSpec::product({q(1), q(5, 2)}),
                     Predicate::gradient_equals, {q(5, 2)}));
  out.push_back(make(id, "psi_kbar=z_k|z|^2", false, two, WeightSpec::radial(norm_expr(2)),
                     Predicate::real_holomorphic_gradient));
  return out;
}

std::vector<Fixture> conformally_flat_fixtures() {
  const std::string id = "prop3.3";
  std::vector<Fixture> out;
  out.push_back(make(id, "c=I, gamma=1", true, quadratic(Family::conformally_flat_quadratic, 2, diag(2, q(1)), {}, q(1)),
                     std::nullopt, Predicate::holomorphic_torsion));
  out.push_back(make(id, "c=-I, gamma=1", true,
                     quadratic(Family::conformally_flat_quadratic, 3, diag(3, q(-1)), {}, q(1)), std::nullopt,
                     Predicate::holomorphic_torsion));
  out.push_back(make(id, "Hermitian c, alpha=(1+i,-3), gamma=5", true,
                     quadratic(Family::conformally_flat_quadratic, 2,
                               {{q(1), GaussQ(0, Rational(1, 2))}, {GaussQ(0, Rational(-1, 2)), q(2)}},
                               {GaussQ(1, 1), q(-3)}, q(5)),
                     std::nullopt, Predicate::holomorphic_torsion));
  out.push_back(make(id, "Hopf c=I/4, gamma=0", true, spec(Family::hopf, 2), std::nullopt, Predicate::holomorphic_torsion));
  FamilySpec bad = quadratic(Family::conformally_flat_quadratic, 2, diag(2, q(1)), {}, q(1));
  bad.params.phi_extra = quartic_z1();
  out.push_back(make(id, "phi + |z1|^4", false, bad, std::nullopt, Predicate::holomorphic_torsion));
  FamilySpec bad2 = quadratic(Family::conformally_flat_quadratic, 2, {}, {}, q(1));
  bad2.params.phi_extra = json{{"mul", {var("z1"), var("zbar1"), var("z2"), var("zbar2")}}};
  out.push_back(make(id, "phi = 1 + |z1|^2|z2|^2", false, bad2, std::nullopt, Predicate::holomorphic_torsion));
  return out;
}

std::vector<Fixture> fs_conformal_fixtures() {
  const std::string id = "prop_fs";
  std::vector<Fixture> out;
  FamilySpec base = quadratic(Family::fs_conformal, 2, {}, {}, q(1));
  out.push_back(make(id, "(1+|z|^2)phi = 1", true, base, std::nullopt, Predicate::holomorphic_torsion));
  out.push_back(make(id, "c=diag(2,1), alpha=(0,1), gamma=3", true,
                     quadratic(Family::fs_conformal, 2, {{q(2), q(0)}, {q(0), q(1)}}, {q(0), q(1)}, q(3)), std::nullopt,
                     Predicate::holomorphic_torsion));
  out.push_back(make(id, "psi = 2 - 3 log(1+|z|^2)", true, base, WeightSpec::log_fs(q(2), q(-3)),
                     Predicate::real_holomorphic_gradient));
  out.push_back(make(id, "psi = 2 - 3 log(1+|z|^2), field", true, quadratic(Family::fs_conformal, 3, {}, {}, q(1)),
                     WeightSpec::log_fs(q(2), q(-3)), Predicate::gradient_equals, {q(-3), q(-3), q(-3)}));
  FamilySpec bad = base;
  bad.params.phi_extra = quartic_z1();
  out.push_back(make(id, "(1+|z|^2)phi = 1 + |z1|^4", false, bad, std::nullopt, Predicate::holomorphic_torsion));
  out.push_back(make(id, "psi_kbar = z_k (1+|z|^2)^-2", false, base, WeightSpec::radial(ball_power(2, 1, 2)),
                     Predicate::real_holomorphic_gradient));
  return out;
}

std::vector<Fixture> conformal_hyperbolic_fixtures() {
  const std::string id = "cor3.x_ball";
  std::vector<Fixture> out;
  FamilySpec base = quadratic(Family::hyperbolic_conformal, 2, {}, {}, q(1));
  out.push_back(make(id, "(1-|z|^2)phi = 1", true, base, std::nullopt, Predicate::holomorphic_torsion));
  out.push_back(make(id, "c=diag(1/2,0), alpha=(1/3,0), gamma=2", true,
                     quadratic(Family::hyperbolic_conformal, 2, {{q(1, 2), q(0)}, {q(0), q(0)}}, {q(1, 3), q(0)}, q(2)),
                     std::nullopt, Predicate::holomorphic_torsion));
  FamilySpec bad = base;
  bad.params.phi_extra = quartic_z1();
  out.push_back(make(id, "(1-|z|^2)phi = 1 + |z1|^4", false, bad, std::nullopt, Predicate::holomorphic_torsion));
  return out;
}

std::vector<Fixture> conformal_ball_log_fixtures() {
  const std::string id = "thm3.4";
  FamilySpec ball = quadratic(Family::conformally_flat_quadratic, 2, diag(2, q(-1)), {}, q(1));
  ball.domain = Domain::ball;
  std::vector<Fixture> out;
  out.push_back(make(id, "psi = 2 - 3 log(1-|z|^2)", true, ball, WeightSpec::log_ball(q(2), q(-3)),
                     Predicate::real_holomorphic_gradient));
  out.push_back(make(id, "psi = 2 - 3 log(1-|z|^2), field", true, ball, WeightSpec::log_ball(q(2), q(-3)),
                     Predicate::gradient_equals, {q(3), q(3)}));
  out.push_back(make(id, "psi_kbar = z_k (1-|z|^2)^-2", false, ball, WeightSpec::radial(ball_power(2, -1, 2)),
                     Predicate::real_holomorphic_gradient));
  out.push_back(make(id, "psi = |z|^2", false, ball, WeightSpec::radial(cst("1")), Predicate::real_holomorphic_gradient));
  return out;
}

std::vector<Fixture> half_hyperbolic_log_fixtures() {
  const std::string id = "thm3.6";
  std::vector<Fixture> out;
  out.push_back(make(id, "psi = 1 + (1/2) log(1-|z|^2)", true, spec(Family::half_hyperbolic, 2),
                     WeightSpec::log_ball(q(1), q(1, 2)), Predicate::gradient_equals, {q(-1, 2), q(-1, 2)}));
  out.push_back(make(id, "n=3 psi = -2 log(1-|z|^2)", true, spec(Family::half_hyperbolic, 3),
                     WeightSpec::log_ball(q(0), q(-2)), Predicate::real_holomorphic_gradient));
  out.push_back(make(id, "psi = |z|^2", false, spec(Family::half_hyperbolic, 2), WeightSpec::radial(cst("1")),
                     Predicate::real_holomorphic_gradient));
  out.push_back(make(id, "psi_kbar = z_k (1-|z|^2)^-2", false, spec(Family::half_hyperbolic, 2),
                     WeightSpec::radial(ball_power(2, -1, 2)), Predicate::real_holomorphic_gradient));
  return out;
}

std::vector<Fixture> beta_family_fixtures() {
  const std::string id = "beta_family_remark";
  std::vector<Fixture> out;
  const std::pair<long, long> grid[] = {{-1, 1}, {0, 1}, {1, 2}, {1, 1}, {2, 1}};
  for (auto [p, d] : grid) {
    FamilySpec s = spec(Family::beta_family, 2);
    s.params.scalars["beta"] = q(p, d);
    bool holo = (p == 0) || (p == 1 && d == 1);
    out.push_back(make(id, "beta=" + q(p, d).str(), holo, s, std::nullopt, Predicate::holomorphic_torsion));
  }
  return out;
}

std::vector<Fixture> un_determined() {
  const std::string id = "un_invariant_determined";
  std::vector<Fixture> out;
  FamilySpec hyp = un_family(2, RadialProfile::neg_log_one_minus(), q(1), q(1));
  Fixture cross = make(id, "h~=-log(1-r), C2=C3=1 is half hyperbolic", true, hyp, std::nullopt, Predicate::metric_equals);
  cross.compare_family = spec(Family::half_hyperbolic, 2);
  out.push_back(cross);
  out.push_back(make(id, "h~=-log(1-r), C1=2", true, hyp, WeightSpec::un_determined(q(2), q(7)),
                     Predicate::gradient_minus_torsion_equals, {q(2), q(2)}));
  FamilySpec fs = un_family(3, RadialProfile::log_one_plus(), q(1), q(2));
  out.push_back(make(id, "n=3 h~=log(1+r), C2=1, C3=2, C1=-1", true, fs, WeightSpec::un_determined(q(-1)),
                     Predicate::gradient_minus_torsion_equals, {q(-1), q(-1), q(-1)}));
  out.push_back(make(id, "n=3 h~=log(1+r), C2=1, C3=2 torsion", true, fs, std::nullopt, Predicate::holomorphic_torsion));
  FamilySpec poly = un_family(2, RadialProfile::polynomial({q(0), q(1), q(1, 2)}), q(2), q(1));
  out.push_back(make(id, "h~=r+r^2/2, C2=2, C3=1, C1=1/2", true, poly, WeightSpec::un_determined(q(1, 2)),
                     Predicate::gradient_minus_torsion_equals, {q(1, 2), q(1, 2)}));
  out.push_back(make(id, "h~=-log(1-r), psi = |z|^2", false, hyp, WeightSpec::radial(cst("1")),
                     Predicate::gradient_minus_torsion_holomorphic));
  FamilySpec bad = hyp;
  bad.params.phi_extra = quartic_z1();
  out.push_back(make(id, "Phi + |z1|^4", false, bad, std::nullopt, Predicate::holomorphic_torsion));
  return out;
}

std::vector<Fixture> c2_fixtures() {
  const std::string id = "c2_example";
  std::vector<Fixture> out;
  out.push_back(make(id, "C=(0,1,0) forgets z2", true, spec(Family::c2_example, 2), WeightSpec::potential_derivative({q(0), q(1), q(0)}),
                     Predicate::gradient_equals, {q(1), q(0)}));
  out.push_back(make(id, "C=(2,1/2,3)", true, spec(Family::c2_example, 2), WeightSpec::potential_derivative({q(2), q(1, 2), q(3)}),
                     Predicate::gradient_equals, {q(1, 2), q(3)}));
  out.push_back(make(id, "Kahler metric has holomorphic torsion", true, spec(Family::c2_example, 2), std::nullopt,
                     Predicate::holomorphic_torsion));
  out.push_back(make(id, "psi~=r2^2", false, spec(Family::c2_example, 2),
                     WeightSpec::multiradial({{"mul", {var("r2"), var("r2")}}}), Predicate::real_holomorphic_gradient));
  return out;
}

FieldVector target_field(int n, const std::vector<GaussQ>& scales) {
  if (static_cast<int>(scales.size()) != n) throw std::invalid_argument("target needs n scales");
  FieldVector v;
  for (int k = 0; k < n; ++k) v.push_back(WRational::z(n, k).scaled(scales[k]));
  return v;
}

}  // namespace

std::string to_string(Predicate p) {
  switch (p) {
    case Predicate::real_holomorphic_gradient:
      return "real_holomorphic_gradient";
    case Predicate::gradient_equals:
      return "gradient_equals";
    case Predicate::gradient_minus_torsion_holomorphic:
      return "gradient_minus_torsion_holomorphic";
    case Predicate::gradient_minus_torsion_equals:
      return "gradient_minus_torsion_equals";
    case Predicate::holomorphic_torsion:
      return "holomorphic_torsion";
    case Predicate::metric_equals:
      return "metric_equals";
  }
  return "?";
}

const std::vector<std::string>& theorem_ids() {
  static const std::vector<std::string> ids = {"thm2.1", "cor_decoupled", "cor_product", "prop3.3",
                                               "prop_fs", "cor3.x_ball", "thm3.4", "thm3.6",
                                               "beta_family_remark", "un_invariant_determined", "c2_example"};
  return ids;
}

std::vector<Fixture> theorem_fixture(const std::string& id) {
  if (id == "thm2.1") return potential_derivative_fixtures();
  if (id == "cor_decoupled") return decoupled_fixtures();
  if (id == "cor_product") return product_fixtures();
  if (id == "prop3.3") return conformally_flat_fixtures();
  if (id == "prop_fs") return fs_conformal_fixtures();
  if (id == "cor3.x_ball") return conformal_hyperbolic_fixtures();
  if (id == "thm3.4") return conformal_ball_log_fixtures();
  if (id == "thm3.6") return half_hyperbolic_log_fixtures();
  if (id == "beta_family_remark") return beta_family_fixtures();
  if (id == "un_invariant_determined") return un_determined();
  if (id == "c2_example") return c2_fixtures();
  throw std::invalid_argument("unknown theorem id '" + id + "'");
}

FixtureOutcome run_fixture(const Fixture& f) {
  auto start = std::chrono::steady_clock::now();
  FixtureOutcome out;
  out.theorem_id = f.theorem_id;
  out.label = f.label;
  out.predicate = to_string(f.predicate);
  out.positive = f.positive;
  out.expected = f.expected;
  try {
    FamilyInstance inst = build_family(f.family);
    const int n = inst.spec.n;
    std::optional<WeightField> w;
    if (f.weight) w = make_weight(inst, *f.weight);
    auto need_weight = [&]() -> const WeightField& {
      if (!w) throw std::invalid_argument("predicate needs a weight");
      return *w;
    };
    switch (f.predicate) {
      case Predicate::real_holomorphic_gradient:
        out.observed = geometry::is_real_holomorphic_gradient(inst.metric, need_weight());
        break;
      case Predicate::gradient_equals:
        out.observed = geometry::fields_equal(geometry::gradient_field(inst.metric, need_weight()), target_field(n, f.target_scales));
        break;
      case Predicate::gradient_minus_torsion_holomorphic:
        out.observed = geometry::all_holomorphic(geometry::gradient_minus_torsion_field(inst.metric, need_weight()));
        break;
      case Predicate::gradient_minus_torsion_equals:
        out.observed = geometry::fields_equal(geometry::gradient_minus_torsion_field(inst.metric, need_weight()),
                                              target_field(n, f.target_scales));
        break;
      case Predicate::holomorphic_torsion: {
        geometry::ConnectionPack pack = geometry::connection(inst.metric);
        out.observed = geometry::has_holomorphic_torsion(pack);
        if (inst.kahler_base && inst.phi && n >= 2) {
          geometry::ConformalTripod t = geometry::conformal_tripod(*inst.kahler_base, *inst.phi, inst.metric, pack);
          out.tripod_checked = true;
          out.tripod_agree = t.agree() && t.torsion_holomorphic == out.observed;
        }
        break;
      }
      case Predicate::metric_equals: {
        if (!f.compare_family) throw std::invalid_argument("metric_equals needs a comparison family");
        MetricField other = make_metric(*f.compare_family);
        out.observed = other.n == n;
        for (int j = 0; j < n && out.observed; ++j) {
          for (int k = 0; k < n && out.observed; ++k) {
            out.observed = wirtinger::rational_equal(inst.metric.h[j][k], other.h[j][k]);
          }
        }
        break;
      }
    }
    out.positive_definite = spot_check_positive(inst);
  } catch (const std::exception& e) {
    out.detail = e.what();
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace chern::catalog
