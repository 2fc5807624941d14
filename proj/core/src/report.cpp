#include "chern/report/report.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "chern/bergman/integrals.hpp"
#include "chern/catalog/fixtures.hpp"
#include "chern/dbar/c2.hpp"
#include "chern/dbar/laplacian.hpp"
#include "chern/geometry/connection.hpp"
#include "chern/wirtinger/identity.hpp"

namespace chern::report {

using catalog::Family;
using catalog::FamilySpec;
using nlohmann::json;
using wirtinger::GaussQ;
using wirtinger::rational_str;

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep)) {
    cur.erase(0, cur.find_first_not_of(" \t"));
    cur.erase(cur.find_last_not_of(" \t") + 1);
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }
std::string verdict(bool b) { return b ? "PASS" : "FAIL"; }

std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(12) << v;
  return s.str();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

FamilySpec spec_from_json(const std::string& text) { return catalog::parse_family_spec(json::parse(text)); }

bool hopf_scaling_invariant(const geometry::MetricField& m) {
  for (const GaussQ& s : {GaussQ(2), GaussQ(Rational(1), Rational(1)), GaussQ(Rational(1, 3), Rational(-2))}) {
    const GaussQ norm(s.norm());
    for (std::size_t j = 0; j < m.h.size(); ++j)
      for (std::size_t k = 0; k < m.h.size(); ++k)
        if (!wirtinger::rational_equal(m.h[j][k].scale_variables(s).scaled(norm), m.h[j][k])) return false;
  }
  return true;
}

Report start(const RunConfig& cfg, std::string command) {
  Report r;
  r.command = std::move(command);
  r.meta = run_meta(cfg);
  return r;
}

void absorb(Report& into, const Report& part) {
  into.results.push_back({{"command", part.command}, {"results", part.results}, {"verdict", verdict(part.pass)}});
  into.rows.push_back({part.command, std::to_string(part.results.size()), verdict(part.pass)});
  for (const auto& s : part.summary) into.summary.push_back(part.command + ": " + s);
  into.pass = into.pass && part.pass;
}

}  // namespace

Format parse_format(const std::string& name) {
  if (name == "json") return Format::json;
  if (name == "csv") return Format::csv;
  if (name == "table") return Format::table;
  throw std::invalid_argument("unknown format '" + name + "' (json, csv, table)");
}

Rational parse_alpha(const std::string& text) {
  if (text.find_first_of(".eE") != std::string::npos)
    throw std::invalid_argument("floating-point value '" + text + "' refused; give exact rationals as p/q");
  return wirtinger::parse_rational(text);
}

std::vector<Rational> parse_rational_list(const std::string& text) {
  std::vector<Rational> out;
  for (const auto& s : split(text, ',')) out.push_back(parse_alpha(s));
  if (out.empty()) throw std::invalid_argument("empty rational list");
  return out;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (const auto& s : split(text, ',')) {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument("not an integer: '" + s + "'");
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty integer list");
  return out;
}

json Tolerances::to_json() const {
  return {{"compare", compare},
          {"cluster_rel", dbar::kClusterRelTol},
          {"imaginary_rel", dbar::kImaginaryRelTol},
          {"quadrature_rel", bergman::kQuadratureRelTol},
          {"adjointness", bergman::kAdjointnessTol},
          {"estimate_slack", bergman::kEstimateSlack},
          {"symmetry_rel", bergman::kSymmetryRelTol},
          {"orthogonality_rel", bergman::kOrthogonalityRelTol}};
}

json run_meta(const RunConfig& cfg) {
  if (!(cfg.tol.compare > 0)) throw std::invalid_argument("tolerance must be positive");
  return {{"version", CHERN_VERSION},
          {"command", cfg.command},
          {"config", cfg.config},
          {"seed", cfg.seed},
          {"tolerances", cfg.tol.to_json()}};
}

std::string Report::render(Format format) const {
  std::ostringstream out;
  if (format == Format::json) {
    json doc = {{"command", command}, {"meta", meta}, {"results", results}, {"verdict", verdict(pass)}};
    out << doc.dump(2) << "\n";
    return out.str();
  }
  if (format == Format::csv) {
    for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << csv_field(columns[i]);
    out << "\n";
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(row[i]);
      out << "\n";
    }
    return out.str();
  }
  std::vector<std::size_t> width(columns.size(), 0);
  for (std::size_t i = 0; i < columns.size(); ++i) width[i] = columns[i].size();
  for (const auto& row : rows)
    for (std::size_t i = 0; i < row.size() && i < width.size(); ++i) width[i] = std::max(width[i], row[i].size());
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      out << (i ? "  " : "") << std::left << std::setw(static_cast<int>(width[i])) << cells[i];
    }
    out << "\n";
  };
  out << command << "  (chern " << CHERN_VERSION << ", seed " << meta.value("seed", 0ULL) << ")\n";
  line(columns);
  std::vector<std::string> rule;
  for (auto w : width) rule.emplace_back(w, '-');
  line(rule);
  for (const auto& row : rows) line(row);
  for (const auto& s : summary) out << s << "\n";
  out << "verdict: " << verdict(pass) << "\n";
  return out.str();
}

FamilySpec default_family_spec(Family family, int n) {
  FamilySpec s;
  switch (family) {
    case Family::hyperbolic_conformal:
      s = spec_from_json(R"({"family": "hyperbolic_conformal", "n": 2, "params": {"gamma": "2", "c": [["1/2", "0"], ["0", "0"]]}})");
      break;
    case Family::beta_family:
      s = spec_from_json(R"({"family": "beta_family", "n": 2, "params": {"beta": "1/2"}})");
      break;
    case Family::conformally_flat_quadratic:
      s = spec_from_json(R"({"family": "conformally_flat_quadratic", "n": 2,
          "params": {"gamma": 5, "c": [["1", {"im": "1/2"}], [{"im": "-1/2"}, "2"]], "alpha_k": ["1+i", "-3"]}})");
      break;
    case Family::fs_conformal:
      s = spec_from_json(R"({"family": "fs_conformal", "n": 2, "params": {"gamma": "1"}})");
      break;
    case Family::multiradial_potential:
      s = spec_from_json(R"({"family": "multiradial_potential", "n": 2,
          "params": {"potential": {"add": [{"var": "r1"}, {"var": "r2"}, {"mul": [{"var": "r1"}, {"var": "r2"}]}]}}})");
      break;
    case Family::decoupled_potential:
      s = spec_from_json(R"({"family": "decoupled_potential", "n": 2,
          "params": {"profiles": [{"kind": "neg_log_one_minus"}, {"kind": "polynomial", "coeffs": ["0", "1", "1/2"]}]}})");
      break;
    case Family::product_potential:
      s = spec_from_json(R"({"family": "product_potential", "n": 2,
          "params": {"profiles": [{"kind": "polynomial", "coeffs": ["1", "1"]}, {"kind": "polynomial", "coeffs": ["1", "1"]}]}})");
      break;
    case Family::c2_example:
      s = spec_from_json(R"({"family": "c2_example"})");
      break;
    case Family::un_invariant_conformal:
      s = spec_from_json(R"({"family": "un_invariant_conformal", "n": 2,
          "params": {"h_tilde": {"kind": "log_one_plus"}, "C2": "1", "C3": "2"}})");
      break;
    default:
      s.family = family;
      s.n = 2;
      break;
  }
  if (n > 0) {
    if (family == Family::c2_example && n != 2) throw std::invalid_argument("c2_example lives in dimension 2");
    if (!s.params.profiles.empty() && static_cast<int>(s.params.profiles.size()) != n)
      throw std::invalid_argument(catalog::to_string(family) + " default parameters are two dimensional; use --spec");
    if (s.params.potential || !s.params.c.empty())
      if (n != s.n) throw std::invalid_argument(catalog::to_string(family) + " default parameters are two dimensional; use --spec");
    s.n = n;
  }
  return s;
}

std::vector<FamilySpec> default_corpus() {
  std::vector<FamilySpec> out;
  for (Family f : catalog::all_families()) out.push_back(default_family_spec(f));
  return out;
}

std::vector<FamilySpec> load_family_specs(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read spec file '" + path + "'");
  json doc = json::parse(in);
  std::vector<FamilySpec> out;
  if (doc.is_array()) {
    for (const auto& d : doc) out.push_back(catalog::parse_family_spec(d));
  } else {
    out.push_back(catalog::parse_family_spec(doc));
  }
  if (out.empty()) throw std::invalid_argument("spec file '" + path + "' holds no families");
  return out;
}

Report torsion_report(const std::vector<FamilySpec>& specs, const RunConfig& cfg) {
  if (specs.empty()) throw std::invalid_argument("no families to report on");
  Report r = start(cfg, "torsion-report");
  r.columns = {"family", "params", "n", "holomorphic_torsion", "expected", "identities", "tripod", "scaling", "positive", "verdict"};
  for (const auto& spec : specs) {
    catalog::FamilyInstance inst = catalog::build_family(spec);
    const int n = spec.n;
    geometry::ConnectionPack pack = geometry::connection(inst.metric);
    const bool holo = geometry::has_holomorphic_torsion(pack);
    const bool identities = geometry::torsion_identities_hold(pack);

    json torsion = json::array();
    bool zero_torsion = true;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k) {
          const auto& t = pack.torsion(i, j, k);
          if (wirtinger::is_identically_zero(t)) continue;
          zero_torsion = false;
          torsion.push_back({{"i", i + 1}, {"j", j + 1}, {"k", k + 1}, {"value", t.str()}});
        }
    json tau = json::array();
    for (const auto& t : pack.tau) tau.push_back(t.str());

    json entry = {{"family", catalog::to_string(spec.family)},
                  {"spec", catalog::to_json(spec)},
                  {"torsion", torsion},
                  {"zero_torsion", zero_torsion},
                  {"tau", tau},
                  {"holomorphic_torsion", holo},
                  {"identities", identities}};
    bool ok = identities;

    std::string expected = "-";
    if (spec.family == Family::beta_family) {
      GaussQ beta = spec.params.scalar("beta");
      const bool want = beta == GaussQ(0) || beta == GaussQ(1) || n < 2;
      entry["expected"] = want;
      expected = yes_no(want);
      ok = ok && holo == want;
    }
    std::string tripod = "-";
    if (inst.kahler_base && n >= 2) {
      auto t = geometry::conformal_tripod(*inst.kahler_base, *inst.phi, inst.metric, pack);
      const bool law = geometry::conformal_torsion_law(*inst.phi, pack);
      entry["tripod"] = {{"torsion_holomorphic", t.torsion_holomorphic},
                         {"tau_sharp_holomorphic", t.tau_sharp_holomorphic},
                         {"phi_sharp_holomorphic", t.phi_sharp_holomorphic},
                         {"agree", t.agree()},
                         {"torsion_law", law}};
      tripod = t.agree() && law ? "agree" : "DISAGREE";
      ok = ok && t.agree() && law;
    }
    std::string scaling = "-";
    if (spec.family == Family::hopf) {
      const bool inv = hopf_scaling_invariant(inst.metric);
      entry["scaling_invariant"] = inv;
      scaling = yes_no(inv);
      ok = ok && inv;
    }
    bool positive = catalog::spot_check_positive(inst, 8, cfg.seed);
    entry["positive_spot_check"] = positive;
    ok = ok && positive;
    entry["verdict"] = verdict(ok);
    r.results.push_back(entry);

    std::string params = catalog::to_json(spec).value("params", json::object()).dump();
    r.rows.push_back({catalog::to_string(spec.family), params, std::to_string(n), yes_no(holo), expected, yes_no(identities),
                      tripod, scaling, yes_no(positive), verdict(ok)});
    r.pass = r.pass && ok;
  }
  return r;
}

Report weight_scan(const std::vector<std::string>& theorem_ids, const RunConfig& cfg) {
  if (theorem_ids.empty()) throw std::invalid_argument("empty fixture list");
  Report r = start(cfg, "weight-scan");
  r.columns = {"theorem", "fixture", "predicate", "sign", "expected", "observed", "tripod", "verdict"};
  for (const auto& id : theorem_ids) {
    for (const auto& f : catalog::theorem_fixture(id)) {
      catalog::FixtureOutcome o = catalog::run_fixture(f);
      const bool ok = o.pass();
      r.results.push_back({{"theorem", o.theorem_id},
                           {"fixture", o.label},
                           {"predicate", o.predicate},
                           {"positive", o.positive},
                           {"expected", o.expected},
                           {"observed", o.observed},
                           {"tripod_checked", o.tripod_checked},
                           {"tripod_agree", o.tripod_agree},
                           {"positive_definite", o.positive_definite},
                           {"detail", o.detail},
                           {"verdict", verdict(ok)}});
      r.rows.push_back({o.theorem_id, o.label, o.predicate, o.positive ? "+" : "-", yes_no(o.expected), yes_no(o.observed),
                        o.tripod_checked ? (o.tripod_agree ? "agree" : "DISAGREE") : "-", verdict(ok)});
      r.pass = r.pass && ok;
    }
  }
  return r;
}

Report spectrum_report(const std::vector<int>& ns, const std::vector<Rational>& alphas, int m_max, const RunConfig& cfg) {
  if (ns.empty() || alphas.empty()) throw std::invalid_argument("empty parameter grid");
  for (const auto& a : alphas)
    if (sgn(a) >= 0) throw std::invalid_argument("alpha must be negative, got " + rational_str(a));
  Report r = start(cfg, "spectrum");
  r.columns = {"n", "alpha", "m", "eigenvalue", "multiplicity"};
  std::vector<int> sorted_ns = ns;
  std::sort(sorted_ns.begin(), sorted_ns.end());
  std::vector<Rational> sorted_alphas = alphas;
  std::sort(sorted_alphas.begin(), sorted_alphas.end(), [](const Rational& a, const Rational& b) { return a > b; });
  for (int n : sorted_ns) {
    for (const auto& alpha : sorted_alphas) {
      dbar::ScanResult s = dbar::first_eigenvalue_scan(n, alpha, m_max);
      const double nu = s.nu.get_d();
      const bool match = std::abs(s.lambda1 - nu) <= cfg.tol.compare * std::max(1.0, std::abs(nu));
      bool consistent = true, bound = true;
      for (const auto& lv : s.levels) {
        consistent = consistent && lv.consistent();
        bound = bound && lv.gershgorin.bound_holds;
        for (const auto& c : lv.clusters)
          r.rows.push_back({std::to_string(n), rational_str(alpha), std::to_string(lv.m), fmt(c.value), std::to_string(c.multiplicity)});
      }
      const bool ok = match && s.all_above_nu && s.tail_bound && consistent;
      json entry = dbar::to_json(s);
      entry["lambda1_matches_nu"] = match;
      entry["levels_consistent"] = consistent;
      entry["gershgorin_paper_bound_holds"] = bound;
      entry["verdict"] = verdict(ok);
      r.results.push_back(entry);
      std::ostringstream line;
      line << "n=" << n << " alpha=" << rational_str(alpha) << " lambda1=" << fmt(s.lambda1) << " nu=" << rational_str(s.nu)
           << " multiplicity=" << s.multiplicity << " gershgorin_bound=" << (bound ? "holds" : "violated") << " " << verdict(ok);
      r.summary.push_back(line.str());
      r.pass = r.pass && ok;
    }
  }
  return r;
}

Report c2_report(int value_max, int grid_max, const RunConfig& cfg) {
  if (value_max < 2) throw std::invalid_argument("value_max must be at least 2");
  if (grid_max < 0) throw std::invalid_argument("grid size must be nonnegative");
  Report r = start(cfg, "c2");
  r.columns = {"eigenvalue", "multiplicity", "expected", "from_dz1", "from_dz2", "verdict"};
  json spectrum = json::array();
  for (const auto& e : dbar::c2_spectrum(value_max)) {
    const int expected = 2 * (e.value - 1) - 1;
    const bool ok = e.multiplicity == expected;
    spectrum.push_back({{"value", e.value}, {"multiplicity", e.multiplicity}, {"expected", expected}, {"from_dz1", e.from_dz1},
                        {"from_dz2", e.from_dz2}, {"verdict", verdict(ok)}});
    r.rows.push_back({std::to_string(e.value), std::to_string(e.multiplicity), std::to_string(expected), std::to_string(e.from_dz1),
                      std::to_string(e.from_dz2), verdict(ok)});
    r.pass = r.pass && ok;
  }
  json grid = json::array();
  bool grid_ok = true;
  std::vector<std::string> mask;
  for (int k = 0; k <= grid_max; ++k) {
    std::string row;
    for (int l = 0; l <= grid_max; ++l) {
      bergman::C2Norm c = bergman::c2_norm(k, l);
      const bool member = bergman::c2_membership(k, l);
      const bool ok = member == c.finite && (!c.finite || (c.quadrature.converged && c.value > 0));
      grid_ok = grid_ok && ok;
      grid.push_back(bergman::to_json(c));
      grid.back()["member"] = member;
      row += member ? '#' : '.';
    }
    mask.push_back("k=" + std::to_string(k) + " " + row);
  }
  json spots = json::array();
  for (auto [k, l] : std::vector<std::pair<int, int>>{{2, 0}, {3, 1}, {0, 1}}) spots.push_back(bergman::to_json(bergman::c2_norm(k, l)));
  r.results.push_back({{"spectrum", spectrum}, {"membership", grid}, {"norms", spots}, {"membership_verdict", verdict(grid_ok)}});
  r.summary.push_back("membership grid (l across, # = in the Bergman space): " + verdict(grid_ok));
  for (const auto& m : mask) r.summary.push_back("  " + m);
  r.pass = r.pass && grid_ok;
  return r;
}

Report solve_dbar_report(const dbar::MonomialForm& eta, const Rational& alpha, const RunConfig& cfg) {
  if (eta.degree() != 1) throw std::invalid_argument("eta must be a 1-form");
  Report r = start(cfg, "solve-dbar");
  bergman::EstimateReport e = bergman::estimate_check(eta, alpha);
  const bool within = e.lhs <= e.rhs * (1 + cfg.tol.compare) || (e.lhs == 0 && e.rhs == 0);
  const bool ok = e.solution.exact() && within && e.constant_pairing <= bergman::kOrthogonalityRelTol;
  json entry = bergman::to_json(e);
  entry["eta"] = dbar::to_json(eta);
  entry["alpha"] = rational_str(alpha);
  entry["residual"] = e.solution.residual.str();
  entry["verdict"] = verdict(ok);
  r.results.push_back(entry);
  r.columns = {"eta", "n", "alpha", "f", "residual", "lhs", "rhs", "nu", "verdict"};
  r.rows.push_back({eta.is_zero() ? "0" : eta.str(), std::to_string(eta.n()), rational_str(alpha),
                    e.solution.f.is_zero() ? "0" : e.solution.f.str(), e.solution.residual.is_zero() ? "0" : e.solution.residual.str(),
                    fmt(e.lhs), fmt(e.rhs), rational_str(e.nu), verdict(ok)});
  r.pass = ok;
  return r;
}

Report all_fixtures(const RunConfig& cfg) {
  Report r = start(cfg, "all-fixtures");
  r.columns = {"section", "entries", "verdict"};
  absorb(r, weight_scan(catalog::theorem_ids(), cfg));
  absorb(r, torsion_report(default_corpus(), cfg));
  absorb(r, spectrum_report({1, 2, 3}, {Rational(-1, 2), Rational(-1), Rational(-3)}, 6, cfg));
  absorb(r, c2_report(10, 8, cfg));
  absorb(r, solve_dbar_report(dbar::parse_form("dz1", 3), Rational(-1), cfg));
  return r;
}

}  // namespace chern::report
