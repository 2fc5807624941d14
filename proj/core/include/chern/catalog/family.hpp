#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "chern/geometry/weight.hpp"

namespace chern::catalog {

using geometry::FieldVector;
using geometry::MetricField;
using geometry::RadialPotential;
using geometry::WeightField;
using wirtinger::GaussQ;
using wirtinger::WPoly;
using wirtinger::WRational;

enum class Family {
  flat,
  hyperbolic,
  half_hyperbolic,
  hyperbolic_conformal,
  beta_family,
  conformally_flat_quadratic,
  fubini_study_chart,
  fs_conformal,
  hopf,
  multiradial_potential,
  decoupled_potential,
  product_potential,
  c2_example,
  un_invariant_conformal,
};

enum class Domain { ball, full_space, punctured_space, positivity_region };

std::string to_string(Family f);
std::string to_string(Domain d);
Family parse_family(const std::string& name);
Domain parse_domain(const std::string& name);
const std::vector<Family>& all_families();

/// A real function of one real variable with hand-coded derivatives.
/// value() is only available for the rational kinds.
struct RadialProfile {
  enum class Kind { neg_log_one_minus, log_one_plus, identity, polynomial };
  Kind kind = Kind::identity;
  std::vector<GaussQ> coeffs;  ///< polynomial: sum_k coeffs[k] x^k
  GaussQ scale{1};

  static RadialProfile neg_log_one_minus(GaussQ scale = GaussQ(1));
  static RadialProfile log_one_plus(GaussQ scale = GaussQ(1));
  static RadialProfile identity();
  static RadialProfile polynomial(std::vector<GaussQ> coeffs);

  bool is_rational() const { return kind == Kind::identity || kind == Kind::polynomial; }
  /// Evaluated at the field x (typically r_j in a radial slot, or |z|^2).
  WRational value(const WPoly& x) const;
  WRational d1(const WPoly& x) const;
  WRational d2(const WPoly& x) const;
  std::string str() const;
};

struct Params {
  std::map<std::string, GaussQ> scalars;
  std::vector<std::vector<GaussQ>> c;  ///< Hermitian c_{j kbar}
  std::vector<GaussQ> alpha;           ///< alpha_k
  std::vector<RadialProfile> profiles;  ///< F_j or G_j
  std::optional<RadialProfile> h_tilde;
  std::optional<nlohmann::json> potential;  ///< radial expression in r1..rn
  std::optional<nlohmann::json> phi_extra;  ///< added to the quadratic conformal factor

  GaussQ scalar(const std::string& name) const;
  GaussQ scalar_or(const std::string& name, const GaussQ& fallback) const;
};

struct FamilySpec {
  Family family = Family::flat;
  int n = 1;
  Params params;
  std::optional<Domain> domain;  ///< defaults per family
};

FamilySpec parse_family_spec(const nlohmann::json& doc);
nlohmann::json to_json(const FamilySpec& spec);
Domain default_domain(const FamilySpec& spec);

/// Built metric with whatever structure the family carries.
struct FamilyInstance {
  FamilySpec spec;
  Domain domain = Domain::full_space;
  MetricField metric;
  std::optional<MetricField> kahler_base;  ///< g = phi^{-1} kahler_base
  std::optional<WRational> phi;
  std::optional<RadialPotential> radial;  ///< multiradial potential data
  std::string describe() const;
};

/// Throws std::invalid_argument on incomplete or inconsistent params.
FamilyInstance build_family(const FamilySpec& spec);
MetricField make_metric(const FamilySpec& spec);

/// Q = sum c_{j kbar} z_j zbar_k + Re(sum alpha_k z_k) + gamma (+ phi_extra).
WRational quadratic_factor(const FamilySpec& spec);

/// Numerical positive-definiteness at seeded points of the declared domain.
/// Throws std::runtime_error when no admissible point is found.
bool spot_check_positive(const FamilyInstance& inst, int samples = 8, std::uint64_t seed = 0x5EED);

}  // namespace chern::catalog
