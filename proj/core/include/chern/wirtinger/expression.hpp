#pragma once

#include <nlohmann/json.hpp>

#include "chern/wirtinger/wrational.hpp"

namespace chern::wirtinger {

enum class VariableNaming {
  complex,  ///< "z1".."zn", "zbar1".."zbarn"
  radial,   ///< "r1".."rn", stored in the z slots
};

/// Builds a field from a JSON tree of nodes
/// {"var": name}, {"const": "a+bi"}, {"add": [..]}, {"mul": [..]},
/// {"div": [num, den]}, {"pow": [base, k]} with k a nonnegative integer.
WRational parse_expression(const nlohmann::json& node, int n, VariableNaming naming = VariableNaming::complex);

}  // namespace chern::wirtinger
