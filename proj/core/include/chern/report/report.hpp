#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "chern/catalog/family.hpp"
#include "chern/dbar/forms.hpp"

namespace chern::report {

using wirtinger::Rational;

enum class Format { json, csv, table };

Format parse_format(const std::string& name);

/// Exact rationals as "p/q"; decimal or exponent notation is refused.
Rational parse_alpha(const std::string& text);
std::vector<Rational> parse_rational_list(const std::string& text);
std::vector<int> parse_int_list(const std::string& text);

/// Tolerances recorded in every report. Only `compare` can be overridden from the command line;
/// it governs the report-level comparisons (lambda_1 against nu, the estimate slack).
struct Tolerances {
  double compare = 1e-9;
  nlohmann::json to_json() const;
};

struct RunConfig {
  std::string command;
  nlohmann::json config = nlohmann::json::object();
  std::uint64_t seed = 0x5EED;
  Tolerances tol;
};

struct Report {
  std::string command;
  nlohmann::json meta;
  nlohmann::json results = nlohmann::json::array();
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> summary;  ///< extra lines for the table format
  bool pass = true;

  std::string render(Format format) const;
};

/// Metadata block: version, command, config, seed, tolerances.
nlohmann::json run_meta(const RunConfig& cfg);

/// One representative parameter choice per catalog family.
catalog::FamilySpec default_family_spec(catalog::Family family, int n = 0);
std::vector<catalog::FamilySpec> default_corpus();
/// Reads a single spec object or an array of them.
std::vector<catalog::FamilySpec> load_family_specs(const std::string& path);

Report torsion_report(const std::vector<catalog::FamilySpec>& specs, const RunConfig& cfg);
/// Empty id list is an error.
Report weight_scan(const std::vector<std::string>& theorem_ids, const RunConfig& cfg);
Report spectrum_report(const std::vector<int>& ns, const std::vector<Rational>& alphas, int m_max, const RunConfig& cfg);
Report c2_report(int value_max, int grid_max, const RunConfig& cfg);
/// Throws dbar::NotClosedError when d eta != 0.
Report solve_dbar_report(const dbar::MonomialForm& eta, const Rational& alpha, const RunConfig& cfg);
/// Every theorem fixture and the family corpus, plus spectra for n = 1..3, the C^2 example and dz_1.
Report all_fixtures(const RunConfig& cfg);

}  // namespace chern::report
