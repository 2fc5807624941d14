#include "chern/catalog/weights.hpp"

#include <stdexcept>

#include "chern/wirtinger/expression.hpp"

namespace chern::catalog {

using wirtinger::Rational;

namespace {

const std::vector<std::pair<WeightKind, const char*>> kWeightNames = {
    {WeightKind::constant, "constant"},     {WeightKind::log_ball, "log_ball"},
    {WeightKind::log_fs, "log_fs"},         {WeightKind::potential_derivative, "potential_derivative"},
    {WeightKind::product, "product"},       {WeightKind::polydisk, "polydisk"},
    {WeightKind::un_determined, "un_determined"}, {WeightKind::radial, "radial"},
    {WeightKind::multiradial, "multiradial"}, {WeightKind::custom, "custom"},
};

GaussQ parse_value(const nlohmann::json& v) {
  if (v.is_string()) return GaussQ::parse(v.get<std::string>());
  if (v.is_number_integer()) return GaussQ(v.get<long>());
  throw std::invalid_argument("expected an exact rational such as \"p/q\", got " + v.dump());
}

std::string list_str(const std::vector<GaussQ>& v) {
  std::string s;
  for (const auto& c : v) s += (s.empty() ? "" : ",") + c.str();
  return s;
}

GaussQ constant_of(const WeightSpec& s, const std::string& name, const GaussQ& fallback) {
  auto it = s.constants.find(name);
  return it == s.constants.end() ? fallback : it->second;
}

GaussQ require_constant(const WeightSpec& s, const std::string& name) {
  auto it = s.constants.find(name);
  if (it == s.constants.end()) throw std::invalid_argument("weight needs constant " + name);
  if (!it->second.is_real()) throw std::invalid_argument("weight constant " + name + " must be real");
  return it->second;
}

void require_coefficients(const WeightSpec& s, int n) {
  if (static_cast<int>(s.coefficients.size()) != n + 1) {
    throw std::invalid_argument("weight needs n + 1 constants, got " + std::to_string(s.coefficients.size()));
  }
  for (const auto& c : s.coefficients) {
    if (!c.is_real()) throw std::invalid_argument("weight constants must be real");
  }
}

WRational one_minus_r(int n) { return WRational(WPoly::constant(n, GaussQ(1)) - WPoly::norm_squared(n)); }
WRational one_plus_r(int n) { return WRational(WPoly::constant(n, GaussQ(1)) + WPoly::norm_squared(n)); }

WeightField radial_weight(int n, const WRational& f, std::string descriptor) {
  WeightField w;
  w.n = n;
  w.descriptor = std::move(descriptor);
  for (int k = 0; k < n; ++k) w.dbar_psi.push_back(WRational::z(n, k) * f);
  return w;
}

}  // namespace

std::string to_string(WeightKind k) {
  for (const auto& [kind, name] : kWeightNames) {
    if (kind == k) return name;
  }
  throw std::logic_error("unnamed weight kind");
}

WeightKind parse_weight_kind(const std::string& name) {
  for (const auto& [kind, n] : kWeightNames) {
    if (name == n) return kind;
  }
  throw std::invalid_argument("unknown weight kind '" + name + "'");
}

WeightSpec WeightSpec::constant_weight() { return WeightSpec{}; }

WeightSpec WeightSpec::log_ball(GaussQ a, GaussQ b) {
  WeightSpec s;
  s.kind = WeightKind::log_ball;
  s.constants = {{"A", a}, {"B", b}};
  return s;
}

WeightSpec WeightSpec::log_fs(GaussQ a, GaussQ b) {
  WeightSpec s = log_ball(a, b);
  s.kind = WeightKind::log_fs;
  return s;
}

WeightSpec WeightSpec::potential_derivative(std::vector<GaussQ> c) {
  WeightSpec s;
  s.kind = WeightKind::potential_derivative;
  s.coefficients = std::move(c);
  return s;
}

WeightSpec WeightSpec::product(std::vector<GaussQ> c) {
  WeightSpec s = potential_derivative(std::move(c));
  s.kind = WeightKind::product;
  return s;
}

WeightSpec WeightSpec::polydisk(std::vector<GaussQ> gamma) {
  WeightSpec s = potential_derivative(std::move(gamma));
  s.kind = WeightKind::polydisk;
  return s;
}

WeightSpec WeightSpec::un_determined(GaussQ c1, GaussQ c5) {
  WeightSpec s;
  s.kind = WeightKind::un_determined;
  s.constants = {{"C1", c1}, {"C5", c5}};
  return s;
}

WeightSpec WeightSpec::radial(nlohmann::json f) {
  WeightSpec s;
  s.kind = WeightKind::radial;
  s.expression = std::move(f);
  return s;
}

WeightSpec WeightSpec::multiradial(nlohmann::json psi_tilde) {
  WeightSpec s;
  s.kind = WeightKind::multiradial;
  s.expression = std::move(psi_tilde);
  return s;
}

WeightSpec WeightSpec::custom(std::vector<nlohmann::json> components) {
  WeightSpec s;
  s.kind = WeightKind::custom;
  s.components = std::move(components);
  return s;
}

WeightSpec parse_weight_spec(const nlohmann::json& doc) {
  WeightSpec s;
  s.kind = parse_weight_kind(doc.at("kind").get<std::string>());
  for (const auto& [key, v] : doc.items()) {
    if (key == "kind") continue;
    if (key == "C" || key == "gamma") {
      for (const auto& e : v) s.coefficients.push_back(parse_value(e));
    } else if (key == "f" || key == "psi") {
      s.expression = v;
    } else if (key == "components") {
      for (const auto& e : v) s.components.push_back(e);
    } else {
      s.constants[key] = parse_value(v);
    }
  }
  return s;
}

nlohmann::json to_json(const WeightSpec& spec) {
  nlohmann::json out{{"kind", to_string(spec.kind)}};
  for (const auto& [k, v] : spec.constants) out[k] = v.str();
  if (!spec.coefficients.empty()) {
    auto& arr = out[spec.kind == WeightKind::polydisk ? "gamma" : "C"];
    arr = nlohmann::json::array();
    for (const auto& c : spec.coefficients) arr.push_back(c.str());
  }
  if (spec.expression) out[spec.kind == WeightKind::radial ? "f" : "psi"] = *spec.expression;
  if (!spec.components.empty()) out["components"] = spec.components;
  return out;
}

WeightField multiradial_weight(const WRational& psi_tilde, std::string descriptor) {
  const int n = psi_tilde.dimension();
  WeightField w;
  w.n = n;
  w.descriptor = std::move(descriptor);
  for (int k = 0; k < n; ++k) {
    w.dbar_psi.push_back(WRational::z(n, k) * psi_tilde.derivative(k, false).radial_to_complex(n));
  }
  return w;
}

WeightField product_potential_weight(const std::vector<RadialProfile>& g, const std::vector<GaussQ>& c) {
  const int n = static_cast<int>(g.size());
  if (n == 0 || static_cast<int>(c.size()) != n + 1) throw std::invalid_argument("product weight needs n profiles and n + 1 constants");
  WRational psi = WRational::constant(n, c[0]);
  for (int j = 0; j < n; ++j) {
    if (c[j + 1].is_zero()) continue;
    WPoly rj = WPoly::z(n, j);
    WRational term = WRational(rj) * g[j].d1(rj);
    for (int k = 0; k < n; ++k) {
      if (k != j) term *= g[k].value(WPoly::z(n, k));
    }
    psi += term.scaled(c[j + 1]);
  }
  return multiradial_weight(psi, "product(C=" + list_str(c) + ")");
}

WeightField make_weight(const FamilyInstance& inst, const WeightSpec& spec) {
  const int n = inst.spec.n;
  const std::string tag = to_string(spec.kind);
  switch (spec.kind) {
    case WeightKind::constant: {
      WeightField w;
      w.n = n;
      w.dbar_psi.assign(n, WRational(n));
      w.descriptor = "constant(A=" + constant_of(spec, "A", GaussQ(0)).str() + ")";
      return w;
    }
    case WeightKind::log_ball: {
      GaussQ a = constant_of(spec, "A", GaussQ(0));
      GaussQ b = require_constant(spec, "B");
      return radial_weight(n, -one_minus_r(n).inverse().scaled(b), "log_ball(A=" + a.str() + ",B=" + b.str() + ")");
    }
    case WeightKind::log_fs: {
      GaussQ a = constant_of(spec, "A", GaussQ(0));
      GaussQ b = require_constant(spec, "B");
      return radial_weight(n, one_plus_r(n).inverse().scaled(b), "log_fs(A=" + a.str() + ",B=" + b.str() + ")");
    }
    case WeightKind::potential_derivative: {
      if (!inst.radial) throw std::invalid_argument("potential_derivative weights need a multiradial potential");
      require_coefficients(spec, n);
      WRational psi = WRational::constant(n, spec.coefficients[0]);
      for (int j = 0; j < n; ++j) {
        if (spec.coefficients[j + 1].is_zero()) continue;
        psi += (WRational::z(n, j) * inst.radial->gradient[j]).scaled(spec.coefficients[j + 1]);
      }
      return multiradial_weight(psi, "potential_derivative(C=" + list_str(spec.coefficients) + ")");
    }
    case WeightKind::product:
      if (inst.spec.family != Family::product_potential) throw std::invalid_argument("product weights need a product potential");
      require_coefficients(spec, n);
      return product_potential_weight(inst.spec.params.profiles, spec.coefficients);
    case WeightKind::polydisk: {
      require_coefficients(spec, n);
      WRational psi = WRational::constant(n, spec.coefficients[0]);
      for (int j = 0; j < n; ++j) {
        WRational t = WRational(WPoly::constant(n, GaussQ(1)) - WPoly::z(n, j)).inverse();
        psi += t.scaled(spec.coefficients[j + 1]);
      }
      return multiradial_weight(psi, "polydisk(gamma=" + list_str(spec.coefficients) + ")");
    }
    case WeightKind::un_determined: {
      if (inst.spec.family != Family::un_invariant_conformal) {
        throw std::invalid_argument("un_determined weights need the U(n)-invariant conformal family");
      }
      const auto& p = inst.spec.params;
      GaussQ c1 = require_constant(spec, "C1");
      GaussQ c2 = p.scalar("C2");
      if (c2.is_zero()) throw std::invalid_argument("un_determined weights need C2 != 0");
      GaussQ c4 = GaussQ(long(n - 1)) - c1 / c2;
      WPoly r = WPoly::norm_squared(n);
      const RadialProfile& ht = *p.h_tilde;
      WRational big_phi = (WRational(r) * ht.d1(r)).scaled(c2) + WRational::constant(n, p.scalar("C3"));
      WRational big_phi_prime = (ht.d1(r) + WRational(r) * ht.d2(r)).scaled(c2);
      return radial_weight(n, -(big_phi_prime / big_phi).scaled(c4),
                           "un_determined(C1=" + c1.str() + ",C4=" + c4.str() + ",C5=" +
                               constant_of(spec, "C5", GaussQ(0)).str() + ")");
    }
    case WeightKind::radial: {
      if (!spec.expression) throw std::invalid_argument("radial weight needs f");
      return radial_weight(n, wirtinger::parse_expression(*spec.expression, n), "radial(f=" + spec.expression->dump() + ")");
    }
    case WeightKind::multiradial: {
      if (!spec.expression) throw std::invalid_argument("multiradial weight needs psi");
      WRational psi = wirtinger::parse_expression(*spec.expression, n, wirtinger::VariableNaming::radial);
      return multiradial_weight(psi, "multiradial(psi=" + spec.expression->dump() + ")");
    }
    case WeightKind::custom: {
      if (static_cast<int>(spec.components.size()) != n) throw std::invalid_argument("custom weight needs n components");
      WeightField w;
      w.n = n;
      w.descriptor = tag;
      for (const auto& c : spec.components) w.dbar_psi.push_back(wirtinger::parse_expression(c, n));
      return w;
    }
  }
  throw std::logic_error("unhandled weight kind");
}

}  // namespace chern::catalog
