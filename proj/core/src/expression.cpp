#include "chern/wirtinger/expression.hpp"

#include <stdexcept>
#include <string>

namespace chern::wirtinger {

namespace {

int parse_index(const std::string& name, std::size_t prefix, int n) {
  std::string digits = name.substr(prefix);
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
    throw std::invalid_argument("unknown variable '" + name + "'");
  }
  int k = std::stoi(digits);
  if (k < 1 || k > n) throw std::invalid_argument("variable '" + name + "' outside dimension");
  return k - 1;
}

WRational variable(const std::string& name, int n, VariableNaming naming) {
  if (naming == VariableNaming::radial) {
    if (name.rfind("r", 0) == 0) return WRational::z(n, parse_index(name, 1, n));
    throw std::invalid_argument("radial expressions use r1..rn, got '" + name + "'");
  }
  if (name.rfind("zbar", 0) == 0) return WRational::zbar(n, parse_index(name, 4, n));
  if (name.rfind("z", 0) == 0) return WRational::z(n, parse_index(name, 1, n));
  throw std::invalid_argument("unknown variable '" + name + "'");
}

const nlohmann::json& operands(const nlohmann::json& node, const char* key) {
  const auto& args = node.at(key);
  if (!args.is_array() || args.empty()) throw std::invalid_argument(std::string(key) + " needs a nonempty array");
  return args;
}

}  // namespace

WRational parse_expression(const nlohmann::json& node, int n, VariableNaming naming) {
  if (!node.is_object() || node.size() != 1) throw std::invalid_argument("expression node must have one key");
  const std::string key = node.begin().key();
  const nlohmann::json& value = node.begin().value();
  if (key == "var") return variable(value.get<std::string>(), n, naming);
  if (key == "const") {
    std::string text = value.is_string() ? value.get<std::string>() : value.dump();
    return WRational::constant(n, GaussQ::parse(text));
  }
  if (key == "add") {
    WRational acc(n);
    for (const auto& a : operands(node, "add")) acc += parse_expression(a, n, naming);
    return acc;
  }
  if (key == "mul") {
    WRational acc = WRational::constant(n, GaussQ(1));
    for (const auto& a : operands(node, "mul")) acc *= parse_expression(a, n, naming);
    return acc;
  }
  if (key == "div") {
    const auto& args = operands(node, "div");
    if (args.size() != 2) throw std::invalid_argument("div takes two operands");
    return parse_expression(args[0], n, naming) / parse_expression(args[1], n, naming);
  }
  if (key == "pow") {
    const auto& args = operands(node, "pow");
    if (args.size() != 2 || !args[1].is_number_integer() || args[1].get<long>() < 0) {
      throw std::invalid_argument("pow takes a base and a nonnegative integer");
    }
    return parse_expression(args[0], n, naming).pow(args[1].get<long>());
  }
  throw std::invalid_argument("unknown expression node '" + key + "'");
}

}  // namespace chern::wirtinger
