#pragma once

#include <compare>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "chern/wirtinger/gauss_rational.hpp"

namespace chern::dbar {

using wirtinger::GaussQ;
using wirtinger::Rational;

/// Exponents (lambda_1, ..., lambda_n), all nonnegative.
using MultiIndex = std::vector<int>;

int total_degree(const MultiIndex& e);

/// Lambda_{j,l}: adds one to the l-th exponent and removes one from the j-th.
/// Indices are zero based. Throws std::domain_error when lambda_j = 0.
MultiIndex multiindex_shift(const MultiIndex& e, int j, int l);

struct FormKey {
  MultiIndex exponents;
  std::vector<int> slots;  ///< dz indices, zero based, strictly increasing
  auto operator<=>(const FormKey&) const = default;
};

/// Holomorphic (p,0)-form with polynomial coefficients over Q(i), p <= 2.
/// A 2-form v = 1/2 sum v_rs dz_r ^ dz_s is stored through v_rs with r < s.
class MonomialForm {
 public:
  MonomialForm(int n, int degree);

  int n() const { return n_; }
  int degree() const { return degree_; }
  const std::map<FormKey, GaussQ>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Adds c z^e dz_{slots}; unordered slots are sorted with the sign of the permutation.
  void add(MultiIndex e, std::vector<int> slots, const GaussQ& c);
  GaussQ coefficient(const MultiIndex& e, const std::vector<int>& slots) const;

  /// Antisymmetric component v_rs of a 2-form, or u_l of a 1-form, as a 0-form.
  MonomialForm component(const std::vector<int>& slots) const;
  /// z_j times the form.
  MonomialForm times_z(int j) const;
  /// d/dz_j applied to every coefficient.
  MonomialForm derivative(int j) const;
  /// Terms whose polynomial degree equals m.
  MonomialForm homogeneous_part(int m) const;
  int max_polynomial_degree() const;

  MonomialForm scaled(const GaussQ& c) const;
  MonomialForm& operator+=(const MonomialForm& o);
  MonomialForm& operator-=(const MonomialForm& o);
  friend MonomialForm operator+(MonomialForm a, const MonomialForm& b) { return a += b; }
  friend MonomialForm operator-(MonomialForm a, const MonomialForm& b) { return a -= b; }
  friend bool operator==(const MonomialForm& a, const MonomialForm& b) {
    return a.n_ == b.n_ && a.degree_ == b.degree_ && a.terms_ == b.terms_;
  }

  std::string str() const;

 private:
  void check_compatible(const MonomialForm& o) const;

  int n_;
  int degree_;
  std::map<FormKey, GaussQ> terms_;
};

/// c z^e dz_{slots}.
MonomialForm monomial(int n, MultiIndex e, std::vector<int> slots = {}, const GaussQ& c = GaussQ(1));

/// Parses text such as "2*z1^2*dz1 - 1/2*z2*dz1^dz2 + (1+i)*z1". All terms must
/// have the same form degree.
MonomialForm parse_form(const std::string& text, int n);

nlohmann::json to_json(const MonomialForm& f);
MonomialForm form_from_json(const nlohmann::json& doc, int n);

/// Holomorphic exterior derivative, p -> p + 1 for p <= 1.
MonomialForm dbar(const MonomialForm& form);

/// d* on 1-forms for the half hyperbolic metric and psi = alpha log(1 - |z|^2):
/// (n - 1 - alpha) sum z_j u_j.
MonomialForm dbar_star_1(const MonomialForm& u, const Rational& alpha);

/// d* on 2-forms: -(n - alpha - 2) sum_{r,s} z_s v_rs dz_r.
MonomialForm dbar_star_2(const MonomialForm& v, const Rational& alpha);

}  // namespace chern::dbar
