#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "chern/wirtinger/gauss_rational.hpp"

namespace chern::wirtinger {

inline constexpr int kMaxDimension = 8;

/// Exponent vector over z_1..z_n, zbar_1..zbar_n. Slot k < n is z_{k+1};
/// slot n + k is zbar_{k+1}. Unused slots stay zero.
struct Monomial {
  std::array<std::uint8_t, 2 * kMaxDimension> e{};

  auto operator<=>(const Monomial&) const = default;
  bool operator==(const Monomial&) const = default;

  int degree() const;
  bool divides(const Monomial& other) const;
  Monomial operator*(const Monomial& other) const;
  Monomial operator/(const Monomial& other) const;
};

/// Polynomial in z, zbar with Gaussian-rational coefficients, kept as a
/// sorted term list with no zero coefficients.
class WPoly {
 public:
  using Term = std::pair<Monomial, GaussQ>;

  WPoly() = default;
  explicit WPoly(int n);
  WPoly(int n, std::vector<Term> terms);

  static WPoly constant(int n, const GaussQ& c);
  static WPoly z(int n, int k);
  static WPoly zbar(int n, int k);
  /// |z|^2 = sum_k z_k zbar_k.
  static WPoly norm_squared(int n);

  int dimension() const { return n_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Coefficient of the constant monomial, zero if absent.
  GaussQ constant_term() const;
  const Term& leading() const { return terms_.back(); }
  int total_degree() const;
  /// Per-slot maximal exponent.
  Monomial max_exponents() const;
  /// True when no zbar slot appears.
  bool is_holomorphic_polynomial() const;

  WPoly derivative(int k, bool conjugated) const;
  WPoly conjugate() const;
  WPoly pow(unsigned e) const;
  WPoly scaled(const GaussQ& c) const;
  /// Substitutes z -> s z, zbar -> conj(s) zbar.
  WPoly scale_variables(const GaussQ& s) const;
  /// Reads slot k < n_ as r_{k+1} and substitutes r_k -> z_k zbar_k in dimension n.
  WPoly radial_to_complex(int n) const;

  std::complex<double> evaluate(std::span<const std::complex<double>> z) const;
  GaussQ evaluate_exact(std::span<const GaussQ> z) const;

  /// Quotient when `divisor` divides exactly, nullopt otherwise.
  std::optional<WPoly> divide_exact(const WPoly& divisor) const;

  std::string str() const;

  WPoly& operator+=(const WPoly& o);
  WPoly& operator-=(const WPoly& o);
  WPoly& operator*=(const WPoly& o);
  friend WPoly operator+(WPoly a, const WPoly& b) { return a += b; }
  friend WPoly operator-(WPoly a, const WPoly& b) { return a -= b; }
  friend WPoly operator*(const WPoly& a, const WPoly& b);
  friend WPoly operator-(const WPoly& a) { return a.scaled(GaussQ(-1)); }
  friend bool operator==(const WPoly& a, const WPoly& b);

  /// Total order for canonical storage of factor lists.
  friend int compare(const WPoly& a, const WPoly& b);

 private:
  void canonicalize();
  WPoly combine(const WPoly& o, bool subtract) const;

  int n_ = 0;
  std::vector<Term> terms_;
};

std::string variable_name(int n, int slot);

}  // namespace chern::wirtinger
