#include "chern/catalog/family.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "chern/wirtinger/expression.hpp"

namespace chern::catalog {

using geometry::RankOneTemplate;
using wirtinger::Exponent;
using wirtinger::Rational;

namespace {

const std::vector<std::pair<Family, const char*>> kFamilyNames = {
    {Family::flat, "flat"},
    {Family::hyperbolic, "hyperbolic"},
    {Family::half_hyperbolic, "half_hyperbolic"},
    {Family::hyperbolic_conformal, "hyperbolic_conformal"},
    {Family::beta_family, "beta_family"},
    {Family::conformally_flat_quadratic, "conformally_flat_quadratic"},
    {Family::fubini_study_chart, "fubini_study_chart"},
    {Family::fs_conformal, "fs_conformal"},
    {Family::hopf, "hopf"},
    {Family::multiradial_potential, "multiradial_potential"},
    {Family::decoupled_potential, "decoupled_potential"},
    {Family::product_potential, "product_potential"},
    {Family::c2_example, "c2_example"},
    {Family::un_invariant_conformal, "un_invariant_conformal"},
};

const std::vector<std::pair<Domain, const char*>> kDomainNames = {
    {Domain::ball, "ball"},
    {Domain::full_space, "full_space"},
    {Domain::punctured_space, "punctured_space"},
    {Domain::positivity_region, "positivity_region"},
};

const std::vector<std::pair<RadialProfile::Kind, const char*>> kProfileNames = {
    {RadialProfile::Kind::neg_log_one_minus, "neg_log_one_minus"},
    {RadialProfile::Kind::log_one_plus, "log_one_plus"},
    {RadialProfile::Kind::identity, "identity"},
    {RadialProfile::Kind::polynomial, "polynomial"},
};

WRational one(int n) { return WRational::constant(n, GaussQ(1)); }

WPoly one_poly(int n) { return WPoly::constant(n, GaussQ(1)); }

GaussQ parse_gauss(const nlohmann::json& v) {
  if (v.is_string()) return GaussQ::parse(v.get<std::string>());
  if (v.is_number_integer()) return GaussQ(v.get<long>());
  if (v.is_object()) {
    GaussQ re = v.contains("re") ? parse_gauss(v.at("re")) : GaussQ(0);
    GaussQ im = v.contains("im") ? parse_gauss(v.at("im")) : GaussQ(0);
    if (!re.is_real() || !im.is_real()) throw std::invalid_argument("complex parts must be real rationals");
    return GaussQ(re.re(), im.re());
  }
  throw std::invalid_argument("expected an exact rational such as \"p/q\", got " + v.dump());
}

nlohmann::json gauss_json(const GaussQ& g) {
  if (g.is_real()) return wirtinger::rational_str(g.re());
  return {{"re", wirtinger::rational_str(g.re())}, {"im", wirtinger::rational_str(g.im())}};
}

RadialProfile parse_profile(const nlohmann::json& v) {
  RadialProfile p;
  std::string kind = v.at("kind").get<std::string>();
  bool found = false;
  for (const auto& [k, name] : kProfileNames) {
    if (kind == name) {
      p.kind = k;
      found = true;
    }
  }
  if (!found) throw std::invalid_argument("unknown radial profile '" + kind + "'");
  if (p.kind == RadialProfile::Kind::polynomial) {
    for (const auto& c : v.at("coeffs")) p.coeffs.push_back(parse_gauss(c));
    if (p.coeffs.empty()) throw std::invalid_argument("polynomial profile needs coefficients");
  }
  if (v.contains("scale")) p.scale = parse_gauss(v.at("scale"));
  for (const auto& c : p.coeffs) {
    if (!c.is_real()) throw std::invalid_argument("profile coefficients must be real");
  }
  if (!p.scale.is_real()) throw std::invalid_argument("profile scale must be real");
  return p;
}

nlohmann::json profile_json(const RadialProfile& p) {
  nlohmann::json out;
  for (const auto& [k, name] : kProfileNames) {
    if (k == p.kind) out["kind"] = name;
  }
  if (p.kind == RadialProfile::Kind::polynomial) {
    out["coeffs"] = nlohmann::json::array();
    for (const auto& c : p.coeffs) out["coeffs"].push_back(gauss_json(c));
  }
  if (!p.scale.is_one()) out["scale"] = gauss_json(p.scale);
  return out;
}

/// h = scale * (I + zbar v^T).
MetricField rank_one(int n, const WRational& scale, const FieldVector& v) {
  RankOneTemplate t;
  for (int k = 0; k < n; ++k) {
    t.diagonal.push_back(one(n));
    t.u.push_back(WRational::zbar(n, k));
  }
  t.v = v;
  t.scale = scale;
  return geometry::metric_from_rank_one(t);
}

FieldVector scaled_z(int n, const WRational& f) {
  FieldVector v;
  for (int k = 0; k < n; ++k) v.push_back(WRational::z(n, k) * f);
  return v;
}

WPoly radial_sum(int n) {
  WPoly s(n);
  for (int k = 0; k < n; ++k) s += WPoly::z(n, k);
  return s;
}

MetricField hyperbolic_metric(int n) {
  WRational w = WRational(one_poly(n) - WPoly::norm_squared(n)).inverse();
  return rank_one(n, w, scaled_z(n, w));
}

MetricField fubini_study_metric(int n) {
  WRational w = WRational(one_poly(n) + WPoly::norm_squared(n)).inverse();
  return rank_one(n, w, scaled_z(n, -w));
}

RadialPotential ball_radial(int n, bool plus) {
  WPoly s = plus ? one_poly(n) + radial_sum(n) : one_poly(n) - radial_sum(n);
  return geometry::radial_potential_from_gradient(FieldVector(n, WRational(s).inverse()));
}

void require_real(const GaussQ& g, const std::string& name) {
  if (!g.is_real()) throw std::invalid_argument("parameter " + name + " must be real");
}

void validate_quadratic(const FamilySpec& s) {
  const auto& p = s.params;
  if (!p.c.empty()) {
    if (static_cast<int>(p.c.size()) != s.n) throw std::invalid_argument("c must be n x n");
    for (int j = 0; j < s.n; ++j) {
      if (static_cast<int>(p.c[j].size()) != s.n) throw std::invalid_argument("c must be n x n");
    }
    for (int j = 0; j < s.n; ++j) {
      for (int k = 0; k < s.n; ++k) {
        if (!(p.c[j][k] == p.c[k][j].conj())) throw std::invalid_argument("c must be Hermitian");
      }
    }
  }
  if (!p.alpha.empty() && static_cast<int>(p.alpha.size()) != s.n) throw std::invalid_argument("alpha_k must have n entries");
  require_real(p.scalar_or("gamma", GaussQ(0)), "gamma");
}

void validate(const FamilySpec& s) {
  if (s.n < 1 || s.n > wirtinger::kMaxDimension) throw std::invalid_argument("dimension out of range");
  const auto& p = s.params;
  switch (s.family) {
    case Family::hyperbolic_conformal:
    case Family::conformally_flat_quadratic:
    case Family::fs_conformal:
      validate_quadratic(s);
      break;
    case Family::beta_family:
      require_real(p.scalar("beta"), "beta");
      break;
    case Family::multiradial_potential:
      if (!p.potential) throw std::invalid_argument("multiradial_potential needs a potential expression");
      break;
    case Family::decoupled_potential:
    case Family::product_potential:
      if (static_cast<int>(p.profiles.size()) != s.n) throw std::invalid_argument("need one radial profile per variable");
      if (s.family == Family::product_potential) {
        for (const auto& g : p.profiles) {
          if (!g.is_rational()) throw std::invalid_argument("product profiles must be rational functions");
        }
      }
      break;
    case Family::c2_example:
      if (s.n != 2) throw std::invalid_argument("c2_example lives in dimension 2");
      break;
    case Family::un_invariant_conformal:
      if (!p.h_tilde) throw std::invalid_argument("un_invariant_conformal needs h_tilde");
      require_real(p.scalar("C2"), "C2");
      require_real(p.scalar("C3"), "C3");
      break;
    default:
      break;
  }
}

}  // namespace

std::string to_string(Family f) {
  for (const auto& [k, name] : kFamilyNames) {
    if (k == f) return name;
  }
  throw std::logic_error("unnamed family");
}

std::string to_string(Domain d) {
  for (const auto& [k, name] : kDomainNames) {
    if (k == d) return name;
  }
  throw std::logic_error("unnamed domain");
}

Family parse_family(const std::string& name) {
  for (const auto& [k, n] : kFamilyNames) {
    if (name == n) return k;
  }
  throw std::invalid_argument("unknown family '" + name + "'");
}

Domain parse_domain(const std::string& name) {
  for (const auto& [k, n] : kDomainNames) {
    if (name == n) return k;
  }
  throw std::invalid_argument("unknown domain '" + name + "'");
}

const std::vector<Family>& all_families() {
  static const std::vector<Family> all = [] {
    std::vector<Family> v;
    for (const auto& [k, name] : kFamilyNames) v.push_back(k);
    return v;
  }();
  return all;
}

RadialProfile RadialProfile::neg_log_one_minus(GaussQ scale) {
  RadialProfile p;
  p.kind = Kind::neg_log_one_minus;
  p.scale = scale;
  return p;
}

RadialProfile RadialProfile::log_one_plus(GaussQ scale) {
  RadialProfile p;
  p.kind = Kind::log_one_plus;
  p.scale = scale;
  return p;
}

RadialProfile RadialProfile::identity() { return RadialProfile{}; }

RadialProfile RadialProfile::polynomial(std::vector<GaussQ> coeffs) {
  RadialProfile p;
  p.kind = Kind::polynomial;
  p.coeffs = std::move(coeffs);
  return p;
}

WRational RadialProfile::value(const WPoly& x) const {
  const int n = x.dimension();
  switch (kind) {
    case Kind::identity:
      return WRational(x).scaled(scale);
    case Kind::polynomial: {
      WPoly acc(n);
      WPoly pw = one_poly(n);
      for (const auto& c : coeffs) {
        acc += pw.scaled(c);
        pw *= x;
      }
      return WRational(acc).scaled(scale);
    }
    default:
      throw std::domain_error("profile " + str() + " is not a rational function");
  }
}

WRational RadialProfile::d1(const WPoly& x) const {
  const int n = x.dimension();
  switch (kind) {
    case Kind::neg_log_one_minus:
      return WRational(one_poly(n) - x).inverse().scaled(scale);
    case Kind::log_one_plus:
      return WRational(one_poly(n) + x).inverse().scaled(scale);
    case Kind::identity:
      return WRational::constant(n, scale);
    case Kind::polynomial: {
      WPoly acc(n);
      WPoly pw = one_poly(n);
      for (std::size_t k = 1; k < coeffs.size(); ++k) {
        acc += pw.scaled(coeffs[k] * GaussQ(long(k)));
        pw *= x;
      }
      return WRational(acc).scaled(scale);
    }
  }
  throw std::logic_error("unhandled profile kind");
}

WRational RadialProfile::d2(const WPoly& x) const {
  const int n = x.dimension();
  switch (kind) {
    case Kind::neg_log_one_minus:
      return WRational((one_poly(n) - x).pow(2)).inverse().scaled(scale);
    case Kind::log_one_plus:
      return -WRational((one_poly(n) + x).pow(2)).inverse().scaled(scale);
    case Kind::identity:
      return WRational(n);
    case Kind::polynomial: {
      WPoly acc(n);
      WPoly pw = one_poly(n);
      for (std::size_t k = 2; k < coeffs.size(); ++k) {
        acc += pw.scaled(coeffs[k] * GaussQ(long(k * (k - 1))));
        pw *= x;
      }
      return WRational(acc).scaled(scale);
    }
  }
  throw std::logic_error("unhandled profile kind");
}

std::string RadialProfile::str() const {
  std::string base;
  switch (kind) {
    case Kind::neg_log_one_minus:
      base = "-log(1-r)";
      break;
    case Kind::log_one_plus:
      base = "log(1+r)";
      break;
    case Kind::identity:
      base = "r";
      break;
    case Kind::polynomial: {
      for (std::size_t k = 0; k < coeffs.size(); ++k) {
        if (coeffs[k].is_zero()) continue;
        if (!base.empty()) base += " + ";
        base += "(" + coeffs[k].str() + ")";
        if (k > 0) base += k == 1 ? "r" : "r^" + std::to_string(k);
      }
      if (base.empty()) base = "0";
      break;
    }
  }
  return scale.is_one() ? base : "(" + scale.str() + ")*(" + base + ")";
}

GaussQ Params::scalar(const std::string& name) const {
  auto it = scalars.find(name);
  if (it == scalars.end()) throw std::invalid_argument("missing parameter " + name);
  return it->second;
}

GaussQ Params::scalar_or(const std::string& name, const GaussQ& fallback) const {
  auto it = scalars.find(name);
  return it == scalars.end() ? fallback : it->second;
}

FamilySpec parse_family_spec(const nlohmann::json& doc) {
  FamilySpec s;
  s.family = parse_family(doc.at("family").get<std::string>());
  s.n = doc.value("n", s.family == Family::c2_example ? 2 : 1);
  if (doc.contains("domain")) s.domain = parse_domain(doc.at("domain").get<std::string>());
  if (doc.contains("params")) {
    for (const auto& [key, v] : doc.at("params").items()) {
      if (key == "c") {
        for (const auto& row : v) {
          std::vector<GaussQ> r;
          for (const auto& e : row) r.push_back(parse_gauss(e));
          s.params.c.push_back(std::move(r));
        }
      } else if (key == "alpha_k") {
        for (const auto& e : v) s.params.alpha.push_back(parse_gauss(e));
      } else if (key == "profiles") {
        for (const auto& e : v) s.params.profiles.push_back(parse_profile(e));
      } else if (key == "h_tilde") {
        s.params.h_tilde = parse_profile(v);
      } else if (key == "potential") {
        s.params.potential = v;
      } else if (key == "phi_extra") {
        s.params.phi_extra = v;
      } else {
        s.params.scalars[key] = parse_gauss(v);
      }
    }
  }
  validate(s);
  return s;
}

nlohmann::json to_json(const FamilySpec& spec) {
  nlohmann::json params = nlohmann::json::object();
  for (const auto& [k, v] : spec.params.scalars) params[k] = gauss_json(v);
  if (!spec.params.c.empty()) {
    params["c"] = nlohmann::json::array();
    for (const auto& row : spec.params.c) {
      nlohmann::json r = nlohmann::json::array();
      for (const auto& e : row) r.push_back(gauss_json(e));
      params["c"].push_back(r);
    }
  }
  if (!spec.params.alpha.empty()) {
    params["alpha_k"] = nlohmann::json::array();
    for (const auto& e : spec.params.alpha) params["alpha_k"].push_back(gauss_json(e));
  }
  if (!spec.params.profiles.empty()) {
    params["profiles"] = nlohmann::json::array();
    for (const auto& p : spec.params.profiles) params["profiles"].push_back(profile_json(p));
  }
  if (spec.params.h_tilde) params["h_tilde"] = profile_json(*spec.params.h_tilde);
  if (spec.params.potential) params["potential"] = *spec.params.potential;
  if (spec.params.phi_extra) params["phi_extra"] = *spec.params.phi_extra;
  nlohmann::json out{{"family", to_string(spec.family)}, {"n", spec.n}, {"params", params}};
  out["domain"] = to_string(spec.domain.value_or(default_domain(spec)));
  return out;
}

Domain default_domain(const FamilySpec& spec) {
  switch (spec.family) {
    case Family::hyperbolic:
    case Family::half_hyperbolic:
    case Family::beta_family:
      return Domain::ball;
    case Family::hopf:
      return Domain::punctured_space;
    case Family::hyperbolic_conformal:
    case Family::conformally_flat_quadratic:
    case Family::fs_conformal:
    case Family::un_invariant_conformal:
      return Domain::positivity_region;
    case Family::decoupled_potential:
      for (const auto& p : spec.params.profiles) {
        if (p.kind == RadialProfile::Kind::neg_log_one_minus) return Domain::ball;
      }
      return Domain::full_space;
    default:
      return Domain::full_space;
  }
}

WRational quadratic_factor(const FamilySpec& spec) {
  const int n = spec.n;
  const auto& p = spec.params;
  WRational q = WRational::constant(n, p.scalar_or("gamma", GaussQ(0)));
  for (std::size_t j = 0; j < p.c.size(); ++j) {
    for (std::size_t k = 0; k < p.c[j].size(); ++k) {
      if (p.c[j][k].is_zero()) continue;
      q += (WRational::z(n, int(j)) * WRational::zbar(n, int(k))).scaled(p.c[j][k]);
    }
  }
  GaussQ half(Rational(1, 2));
  for (std::size_t k = 0; k < p.alpha.size(); ++k) {
    if (p.alpha[k].is_zero()) continue;
    q += WRational::z(n, int(k)).scaled(p.alpha[k] * half) + WRational::zbar(n, int(k)).scaled(p.alpha[k].conj() * half);
  }
  if (p.phi_extra) q += wirtinger::parse_expression(*p.phi_extra, n);
  return q;
}

std::string FamilyInstance::describe() const {
  return to_json(spec).dump();
}

FamilyInstance build_family(const FamilySpec& spec) {
  validate(spec);
  const int n = spec.n;
  const auto& p = spec.params;
  FamilyInstance inst;
  inst.spec = spec;
  inst.domain = spec.domain.value_or(default_domain(spec));
  WPoly r = WPoly::norm_squared(n);
  auto conformal = [&](MetricField base, WRational phi) {
    inst.metric = geometry::conformal_metric(base, phi);
    inst.kahler_base = std::move(base);
    inst.phi = std::move(phi);
  };
  switch (spec.family) {
    case Family::flat:
      inst.metric = geometry::metric_from_entries(geometry::identity_matrix(n));
      inst.radial = geometry::radial_potential(WRational(radial_sum(n)));
      break;
    case Family::hyperbolic:
      inst.metric = hyperbolic_metric(n);
      inst.radial = ball_radial(n, false);
      break;
    case Family::half_hyperbolic:
      conformal(hyperbolic_metric(n), WRational(one_poly(n) - r).inverse());
      break;
    case Family::hyperbolic_conformal:
      conformal(hyperbolic_metric(n), quadratic_factor(spec) / WRational(one_poly(n) - r));
      break;
    case Family::beta_family: {
      GaussQ beta = p.scalar("beta");
      if (!beta.re().get_num().fits_slong_p() || !beta.re().get_den().fits_slong_p()) {
        throw std::invalid_argument("beta out of range");
      }
      Exponent e(-beta.re().get_num().get_si(), beta.re().get_den().get_si());
      conformal(hyperbolic_metric(n), WRational::power(one_poly(n) - r, e));
      break;
    }
    case Family::conformally_flat_quadratic:
      conformal(geometry::metric_from_entries(geometry::identity_matrix(n)), quadratic_factor(spec));
      break;
    case Family::fubini_study_chart:
      inst.metric = fubini_study_metric(n);
      inst.radial = ball_radial(n, true);
      break;
    case Family::fs_conformal:
      conformal(fubini_study_metric(n), quadratic_factor(spec) / WRational(one_poly(n) + r));
      break;
    case Family::hopf:
      conformal(geometry::metric_from_entries(geometry::identity_matrix(n)),
                WRational(r).scaled(GaussQ(Rational(1, 4))));
      break;
    case Family::multiradial_potential: {
      WRational chi = wirtinger::parse_expression(*p.potential, n, wirtinger::VariableNaming::radial);
      inst.radial = geometry::radial_potential(chi);
      inst.metric = geometry::metric_from_radial(*inst.radial);
      break;
    }
    case Family::decoupled_potential: {
      FieldVector grad;
      for (int j = 0; j < n; ++j) grad.push_back(p.profiles[j].d1(WPoly::z(n, j)));
      inst.radial = geometry::radial_potential_from_gradient(std::move(grad));
      inst.metric = geometry::metric_from_radial(*inst.radial);
      break;
    }
    case Family::product_potential: {
      FieldVector grad;
      for (int j = 0; j < n; ++j) {
        WRational a = p.profiles[j].d1(WPoly::z(n, j));
        for (int k = 0; k < n; ++k) {
          if (k != j) a *= p.profiles[k].value(WPoly::z(n, k));
        }
        grad.push_back(std::move(a));
      }
      inst.radial = geometry::radial_potential_from_gradient(std::move(grad));
      inst.metric = geometry::metric_from_radial(*inst.radial);
      break;
    }
    case Family::c2_example: {
      WRational r1 = WRational::z(n, 0), r2 = WRational::z(n, 1);
      WRational chi = (r1 * r1).scaled(GaussQ(Rational(1, 4))) + r1 * r2 + r1 + r2;
      inst.radial = geometry::radial_potential(chi);
      inst.metric = geometry::metric_from_radial(*inst.radial);
      break;
    }
    case Family::un_invariant_conformal: {
      const RadialProfile& ht = *p.h_tilde;
      WRational d1 = ht.d1(r);
      WRational d2 = ht.d2(r);
      MetricField base = rank_one(n, d1, scaled_z(n, d2 / d1));
      WRational big_phi = (WRational(r) * d1).scaled(p.scalar("C2")) + WRational::constant(n, p.scalar("C3"));
      if (p.phi_extra) big_phi += wirtinger::parse_expression(*p.phi_extra, n);
      conformal(std::move(base), std::move(big_phi));
      break;
    }
  }
  return inst;
}

MetricField make_metric(const FamilySpec& spec) { return build_family(spec).metric; }

bool spot_check_positive(const FamilyInstance& inst, int samples, std::uint64_t seed) {
  const int n = inst.spec.n;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  bool ball_based = inst.spec.family == Family::hyperbolic_conformal || inst.domain == Domain::ball ||
                    (inst.spec.params.h_tilde && inst.spec.params.h_tilde->kind == RadialProfile::Kind::neg_log_one_minus);
  int accepted = 0;
  for (int draw = 0; draw < samples * 50 && accepted < samples; ++draw) {
    double radius = 0.0;
    switch (inst.domain) {
      case Domain::ball:
        radius = 0.95 * unit(rng);
        break;
      case Domain::full_space:
        radius = 2.5 * unit(rng);
        break;
      case Domain::punctured_space:
        radius = 0.1 + 2.4 * unit(rng);
        break;
      case Domain::positivity_region:
        radius = (ball_based ? 0.95 : 2.0) * unit(rng);
        break;
    }
    wirtinger::Point pt;
    double norm = 0.0;
    for (int k = 0; k < n; ++k) {
      pt.z.emplace_back(gauss(rng), gauss(rng));
      norm += std::norm(pt.z.back());
    }
    for (auto& v : pt.z) v *= radius / std::sqrt(norm);
    try {
      if (inst.domain == Domain::positivity_region && inst.phi) {
        if (inst.phi->evaluate(pt.z).real() <= 1e-9) continue;
      }
      bool pd = geometry::positive_definite_at(inst.metric, pt);
      ++accepted;
      if (!pd) return false;
    } catch (const wirtinger::PoleError&) {
      continue;
    }
  }
  if (accepted == 0) throw std::runtime_error("no admissible sample point in the declared domain");
  return true;
}

}  // namespace chern::catalog
