#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chern/catalog/family.hpp"

namespace chern::catalog {

enum class WeightKind {
  constant,        ///< psi = A
  log_ball,        ///< psi = A + B log(1 - |z|^2)
  log_fs,          ///< psi = A + B log(1 + |z|^2)
  potential_derivative,       ///< psi~ = C0 + sum C_j r_j d chi~/d r_j
  product,         ///< psi = C0 + sum C_j r_j G_j'(r_j) prod_{k != j} G_k(r_k)
  polydisk,        ///< psi = gamma0 + sum gamma_j / (1 - r_j)
  un_determined,   ///< psi~ = -C4 log(C2 r h~' + C3) + C5, C4 = n - 1 - C1/C2
  radial,          ///< psi_kbar = z_k f for a given field f (f = psi~'(|z|^2))
  multiradial,     ///< psi~ given as an expression in r1..rn
  custom,          ///< psi_kbar given componentwise
};

std::string to_string(WeightKind k);
WeightKind parse_weight_kind(const std::string& name);

struct WeightSpec {
  WeightKind kind = WeightKind::constant;
  std::map<std::string, GaussQ> constants;  ///< A, B, C1, C5
  std::vector<GaussQ> coefficients;         ///< C0..Cn or gamma0..gamma_n
  std::optional<nlohmann::json> expression;  ///< f (radial) or psi~ (multiradial)
  std::vector<nlohmann::json> components;    ///< custom psi_kbar

  static WeightSpec constant_weight();
  static WeightSpec log_ball(GaussQ a, GaussQ b);
  static WeightSpec log_fs(GaussQ a, GaussQ b);
  static WeightSpec potential_derivative(std::vector<GaussQ> c);
  static WeightSpec product(std::vector<GaussQ> c);
  static WeightSpec polydisk(std::vector<GaussQ> gamma);
  static WeightSpec un_determined(GaussQ c1, GaussQ c5 = GaussQ(0));
  static WeightSpec radial(nlohmann::json f);
  static WeightSpec multiradial(nlohmann::json psi_tilde);
  static WeightSpec custom(std::vector<nlohmann::json> components);
};

WeightSpec parse_weight_spec(const nlohmann::json& doc);
nlohmann::json to_json(const WeightSpec& spec);

/// Weight covector for the family, by the hand-coded differentiation rule of
/// its kind. Throws std::invalid_argument on an incompatible pairing.
WeightField make_weight(const FamilyInstance& inst, const WeightSpec& spec);

/// Product-potential weight computed from the profiles directly.
WeightField product_potential_weight(const std::vector<RadialProfile>& g, const std::vector<GaussQ>& c);

/// psi_kbar = z_k d psi~/d r_k for psi~ over r1..rn held in the z slots.
WeightField multiradial_weight(const WRational& psi_tilde, std::string descriptor);

}  // namespace chern::catalog
