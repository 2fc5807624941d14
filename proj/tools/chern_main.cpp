// chern: fixtures, spectral scans and dbar verification from the command line.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "chern/catalog/fixtures.hpp"
#include "chern/dbar/laplacian.hpp"
#include "chern/report/report.hpp"

using namespace chern;
using nlohmann::json;

namespace {

struct Common {
  std::string format = "table";
  std::string out;
  std::uint64_t seed = 0x5EED;
  double tol = report::Tolerances{}.compare;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--format", c.format, "json, csv or table")->check(CLI::IsMember({"json", "csv", "table"}));
  app->add_option("--out", c.out, "write the report to this file instead of stdout");
  app->add_option("--seed", c.seed, "seed for sampled checks");
  app->add_option("--tol", c.tol, "relative tolerance for report-level comparisons")->check(CLI::PositiveNumber);
}

int emit(const report::Report& r, const Common& c) {
  const std::string text = r.render(report::parse_format(c.format));
  if (c.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(c.out);
    if (!f) throw std::invalid_argument("cannot write '" + c.out + "'");
    f << text;
  }
  return r.pass ? 0 : 1;
}

report::RunConfig config(const std::string& command, const Common& c, json args) {
  report::RunConfig cfg;
  cfg.command = command;
  cfg.seed = c.seed;
  cfg.tol.compare = c.tol;
  args["format"] = c.format;
  if (!c.out.empty()) args["out"] = c.out;
  cfg.config = std::move(args);
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chern connection, weight classification and dbar spectral reports"};
  app.set_version_flag("--version", CHERN_VERSION);
  app.require_subcommand(1);

  Common common;
  std::vector<std::string> families;
  std::string spec_path, beta_list, n_list = "2", alpha_list = "-1", theorem_list, eta, alpha_single = "-1";
  int m_max = 6, value_max = 10, grid = 8, n_solve = 2, n_family = 0;
  bool list_ids = false;

  auto* torsion = app.add_subcommand("torsion-report", "torsion, tau and holomorphy verdicts per family");
  torsion->add_option("--family", families, "family name (repeatable); default: the whole catalog");
  torsion->add_option("--spec", spec_path, "JSON file with a family spec or an array of them");
  torsion->add_option("--n", n_family, "dimension for --family")->check(CLI::Range(1, 16));
  torsion->add_option("--beta", beta_list, "comma-separated beta values for beta_family");
  add_common(torsion, common);

  auto* weights = app.add_subcommand("weight-scan", "run theorem fixtures");
  weights->add_option("--theorem", theorem_list, "comma-separated theorem ids; default: all");
  weights->add_flag("--list", list_ids, "print the theorem ids and exit");
  add_common(weights, common);

  auto* spectrum = app.add_subcommand("spectrum", "eigenvalues of the Laplacian on 1-forms, half hyperbolic metric");
  spectrum->add_option("--n", n_list, "comma-separated dimensions");
  spectrum->add_option("--alpha", alpha_list, "comma-separated negative rationals p/q");
  spectrum->add_option("--m-max", m_max, "largest polynomial degree")->check(CLI::Range(2, 64));
  add_common(spectrum, common);

  auto* c2 = app.add_subcommand("c2", "the C^2 example: spectrum, Bergman membership, norms");
  c2->add_option("--value-max", value_max, "largest eigenvalue to tabulate")->check(CLI::Range(2, 1000));
  c2->add_option("--grid", grid, "membership grid size k, l <= grid")->check(CLI::Range(0, 64));
  add_common(c2, common);

  auto* solve = app.add_subcommand("solve-dbar", "canonical solution of d f = eta and the L2 estimate");
  solve->add_option("--eta", eta, "1-form such as \"2*z1*dz1 + dz2\"");
  solve->add_option("--spec", spec_path, "JSON file holding the form");
  solve->add_option("--n", n_solve, "dimension")->check(CLI::Range(1, 16));
  solve->add_option("--alpha", alpha_single, "negative rational p/q");
  add_common(solve, common);

  auto* all = app.add_subcommand("all-fixtures", "every fixture and verification in one run");
  add_common(all, common);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*torsion) {
      std::vector<catalog::FamilySpec> specs;
      json args = {{"family", families}};
      if (!spec_path.empty()) {
        specs = report::load_family_specs(spec_path);
        args["spec"] = spec_path;
      }
      const int n = n_family;
      if (n > 0) args["n"] = n;
      if (!beta_list.empty()) {
        if (families.size() != 1 || families[0] != "beta_family")
          throw std::invalid_argument("--beta goes with --family beta_family");
        args["beta"] = beta_list;
        for (const auto& b : report::parse_rational_list(beta_list)) {
          catalog::FamilySpec s = report::default_family_spec(catalog::Family::beta_family, n);
          s.params.scalars["beta"] = wirtinger::GaussQ(b);
          specs.push_back(s);
        }
      } else {
        for (const auto& f : families) specs.push_back(report::default_family_spec(catalog::parse_family(f), n));
      }
      if (specs.empty()) specs = report::default_corpus();
      return emit(report::torsion_report(specs, config("torsion-report", common, args)), common);
    }
    if (*weights) {
      if (list_ids) {
        for (const auto& id : catalog::theorem_ids()) std::cout << id << "\n";
        return 0;
      }
      std::vector<std::string> ids;
      if (weights->count("--theorem")) {
        std::stringstream in(theorem_list);
        for (std::string id; std::getline(in, id, ',');)
          if (!id.empty()) ids.push_back(id);
      } else {
        ids = catalog::theorem_ids();
      }
      return emit(report::weight_scan(ids, config("weight-scan", common, {{"theorem", ids}})), common);
    }
    if (*spectrum) {
      auto ns = report::parse_int_list(n_list);
      auto alphas = report::parse_rational_list(alpha_list);
      json args = {{"n", ns}, {"alpha", alpha_list}, {"m_max", m_max}};
      return emit(report::spectrum_report(ns, alphas, m_max, config("spectrum", common, args)), common);
    }
    if (*c2) {
      json args = {{"value_max", value_max}, {"grid", grid}};
      return emit(report::c2_report(value_max, grid, config("c2", common, args)), common);
    }
    if (*solve) {
      const wirtinger::Rational alpha = report::parse_alpha(alpha_single);
      dbar::MonomialForm form(n_solve, 1);
      json args = {{"n", n_solve}, {"alpha", alpha_single}};
      if (!spec_path.empty()) {
        std::ifstream in(spec_path);
        if (!in) throw std::invalid_argument("cannot read '" + spec_path + "'");
        form = dbar::form_from_json(json::parse(in), n_solve);
        args["spec"] = spec_path;
      } else if (!eta.empty()) {
        form = eta == "0" ? dbar::MonomialForm(n_solve, 1) : dbar::parse_form(eta, n_solve);
        args["eta"] = eta;
      } else {
        throw std::invalid_argument("solve-dbar needs --eta or --spec");
      }
      return emit(report::solve_dbar_report(form, alpha, config("solve-dbar", common, args)), common);
    }
    if (*all) return emit(report::all_fixtures(config("all-fixtures", common, json::object())), common);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
