#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chern/catalog/weights.hpp"

namespace chern::catalog {

enum class Predicate {
  real_holomorphic_gradient,
  gradient_equals,
  gradient_minus_torsion_holomorphic,
  gradient_minus_torsion_equals,
  holomorphic_torsion,
  metric_equals,
};

std::string to_string(Predicate p);

struct Fixture {
  std::string theorem_id;
  std::string label;
  bool positive = true;
  FamilySpec family;
  std::optional<WeightSpec> weight;
  Predicate predicate = Predicate::real_holomorphic_gradient;
  bool expected = true;
  /// For the *_equals predicates on vector fields: target = sum s_j z_j d/dz_j.
  std::vector<GaussQ> target_scales;
  /// For metric_equals.
  std::optional<FamilySpec> compare_family;
};

struct FixtureOutcome {
  std::string theorem_id;
  std::string label;
  std::string predicate;
  bool positive = true;
  bool expected = true;
  bool observed = false;
  bool tripod_checked = false;
  bool tripod_agree = true;
  bool positive_definite = true;
  std::string detail;
  double seconds = 0.0;
  bool pass() const { return observed == expected && tripod_agree && positive_definite && detail.empty(); }
};

const std::vector<std::string>& theorem_ids();
/// Throws std::invalid_argument for an unknown id.
std::vector<Fixture> theorem_fixture(const std::string& theorem_id);
FixtureOutcome run_fixture(const Fixture& f);

}  // namespace chern::catalog
