#include <gtest/gtest.h>

#include "chern/catalog/fixtures.hpp"
#include "chern/dbar/laplacian.hpp"
#include "chern/report/report.hpp"

using namespace chern::report;
using chern::catalog::Family;
using nlohmann::json;

namespace {

RunConfig cfg(const std::string& command) {
  RunConfig c;
  c.command = command;
  return c;
}

Rational r(long p, long q = 1) { return Rational(p, q); }

}  // namespace

TEST(Parsing, RationalsAndFormats) {
  EXPECT_EQ(parse_alpha("-3/2"), r(-3, 2));
  EXPECT_THROW(parse_alpha("-0.5"), std::invalid_argument);
  EXPECT_THROW(parse_alpha("1e-3"), std::invalid_argument);
  EXPECT_EQ(parse_rational_list("-1/4, -1,-5").size(), 3u);
  EXPECT_THROW(parse_rational_list(""), std::invalid_argument);
  EXPECT_EQ(parse_int_list("1,2,3"), (std::vector<int>{1, 2, 3}));
  EXPECT_THROW(parse_int_list("2x"), std::invalid_argument);
  EXPECT_EQ(parse_format("csv"), Format::csv);
  EXPECT_THROW(parse_format("xml"), std::invalid_argument);
}

TEST(Meta, EmbedsConfigSeedTolerancesVersion) {
  RunConfig c = cfg("spectrum");
  c.seed = 42;
  c.config = {{"n", {2}}};
  json m = run_meta(c);
  EXPECT_EQ(m["seed"], 42);
  EXPECT_EQ(m["version"], CHERN_VERSION);
  EXPECT_EQ(m["config"]["n"][0], 2);
  EXPECT_TRUE(m["tolerances"].contains("cluster_rel"));
  c.tol.compare = 0;
  EXPECT_THROW(run_meta(c), std::invalid_argument);
}

TEST(Torsion, BetaScanVerdicts) {
  std::vector<chern::catalog::FamilySpec> specs;
  for (auto b : {r(-1), r(0), r(1, 2), r(1), r(2)}) {
    auto s = default_family_spec(Family::beta_family);
    s.params.scalars["beta"] = chern::wirtinger::GaussQ(b);
    specs.push_back(s);
  }
  Report rep = torsion_report(specs, cfg("torsion-report"));
  ASSERT_EQ(rep.results.size(), 5u);
  std::vector<bool> holo;
  for (const auto& e : rep.results) holo.push_back(e["holomorphic_torsion"]);
  EXPECT_EQ(holo, (std::vector<bool>{false, true, false, true, false}));
  EXPECT_TRUE(rep.pass);
}

TEST(Torsion, HopfAndFlat) {
  Report hopf = torsion_report({default_family_spec(Family::hopf)}, cfg("torsion-report"));
  EXPECT_EQ(hopf.results[0]["holomorphic_torsion"], true);
  EXPECT_EQ(hopf.results[0]["scaling_invariant"], true);
  Report flat = torsion_report({default_family_spec(Family::flat, 3)}, cfg("torsion-report"));
  EXPECT_EQ(flat.results[0]["zero_torsion"], true);
  EXPECT_TRUE(flat.pass && hopf.pass);
  EXPECT_THROW(torsion_report({}, cfg("torsion-report")), std::invalid_argument);
}

TEST(Torsion, WholeCorpusPasses) {
  Report rep = torsion_report(default_corpus(), cfg("torsion-report"));
  EXPECT_EQ(rep.results.size(), chern::catalog::all_families().size());
  EXPECT_TRUE(rep.pass);
}

TEST(WeightScan, FixturesAndEmptyList) {
  Report rep = weight_scan({"thm3.6"}, cfg("weight-scan"));
  EXPECT_TRUE(rep.pass);
  EXPECT_GE(rep.rows.size(), 2u);
  EXPECT_THROW(weight_scan({}, cfg("weight-scan")), std::invalid_argument);
  EXPECT_THROW(weight_scan({"thm0"}, cfg("weight-scan")), std::invalid_argument);
}

TEST(Spectrum, TripleEigenvalueAndOneDimension) {
  Report two = spectrum_report({2}, {r(-1)}, 6, cfg("spectrum"));
  EXPECT_TRUE(two.pass);
  EXPECT_DOUBLE_EQ(two.results[0]["lambda1"].get<double>(), 2.0);
  Report one = spectrum_report({1}, {r(-2)}, 10, cfg("spectrum"));
  ASSERT_EQ(one.rows.size(), 11u);
  for (std::size_t m = 0; m < one.rows.size(); ++m) {
    EXPECT_EQ(one.rows[m][3], std::to_string(2 * (m + 1)));
    EXPECT_EQ(one.rows[m][4], "1");
  }
  EXPECT_THROW(spectrum_report({2}, {r(1)}, 4, cfg("spectrum")), std::invalid_argument);
}

TEST(Spectrum, CsvSchema) {
  std::string csv = spectrum_report({2}, {r(-1, 2)}, 2, cfg("spectrum")).render(Format::csv);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "n,alpha,m,eigenvalue,multiplicity");
  EXPECT_NE(csv.find("2,-1/2,1,1,1"), std::string::npos);
}

TEST(C2Report, RowsAndGrid) {
  Report rep = c2_report(10, 6, cfg("c2"));
  EXPECT_EQ(rep.rows.size(), 9u);
  EXPECT_TRUE(rep.pass);
  const auto& grid = rep.results[0]["membership"];
  EXPECT_EQ(grid.size(), 49u);
  for (const auto& g : grid) EXPECT_EQ(g["member"].get<bool>(), g["l"].get<int>() <= g["k"].get<int>() - 2);
  EXPECT_THROW(c2_report(1, 6, cfg("c2")), std::invalid_argument);
}

TEST(SolveDbar, Examples) {
  Report a = solve_dbar_report(chern::dbar::parse_form("dz1", 3), r(-1), cfg("solve-dbar"));
  EXPECT_TRUE(a.pass);
  EXPECT_EQ(a.rows[0][3], "z1");
  Report z = solve_dbar_report(chern::dbar::MonomialForm(2, 1), r(-1), cfg("solve-dbar"));
  EXPECT_TRUE(z.pass);
  EXPECT_EQ(z.rows[0][3], "0");
  try {
    solve_dbar_report(chern::dbar::parse_form("z2*dz1", 2), r(-1), cfg("solve-dbar"));
    FAIL() << "expected rejection";
  } catch (const chern::dbar::NotClosedError& e) {
    EXPECT_EQ(e.slots, (std::vector<int>{0, 1}));
    EXPECT_NE(std::string(e.what()).find("12"), std::string::npos);
  }
}

TEST(AllFixtures, PassesAndIsDeterministic) {
  RunConfig c = cfg("all-fixtures");
  std::string a = all_fixtures(c).render(Format::json);
  std::string b = all_fixtures(c).render(Format::json);
  EXPECT_EQ(a, b);
  EXPECT_TRUE(all_fixtures(c).pass);
}

TEST(Render, TableCarriesVerdict) {
  std::string t = c2_report(3, 2, cfg("c2")).render(Format::table);
  EXPECT_NE(t.find("verdict: PASS"), std::string::npos);
  json j = json::parse(c2_report(3, 2, cfg("c2")).render(Format::json));
  EXPECT_EQ(j["verdict"], "PASS");
  EXPECT_TRUE(j["meta"].contains("tolerances"));
}
