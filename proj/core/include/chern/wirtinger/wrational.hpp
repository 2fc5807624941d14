#pragma once

#include <boost/rational.hpp>

#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "chern/wirtinger/wpoly.hpp"

namespace chern::wirtinger {

using Exponent = boost::rational<long long>;

/// Raised when a rational field is evaluated on its polar set.
class PoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when two radicals with non-integral exponent difference meet in a sum.
class RadicalMismatch : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// One denominator factor poly^exponent. `poly` is normalized: constant
/// term 1 when it has one, otherwise leading coefficient 1.
struct DenFactor {
  WPoly poly;
  Exponent exponent;
};

/// num / prod_i poly_i^{e_i}. Exponents are exact rationals so that powers
/// such as (1 - |z|^2)^{beta - 1} stay in the field; integral exponents are
/// the common case. Equality is decided by identity testing of a - b.
class WRational {
 public:
  WRational() = default;
  explicit WRational(int n);
  WRational(WPoly num);  // NOLINT(google-explicit-constructor)

  static WRational constant(int n, const GaussQ& c);
  static WRational z(int n, int k) { return WRational(WPoly::z(n, k)); }
  static WRational zbar(int n, int k) { return WRational(WPoly::zbar(n, k)); }
  /// base^e. A non-integral e requires base to be normalized already.
  static WRational power(const WPoly& base, Exponent e);
  static WRational fraction(const WPoly& num, const WPoly& den);

  int dimension() const { return num_.dimension(); }
  const WPoly& num() const { return num_; }
  const std::vector<DenFactor>& factors() const { return den_; }
  /// Expanded denominator; only defined when every exponent is a nonnegative integer.
  WPoly denominator() const;
  bool has_fractional_exponent() const;
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.empty(); }

  WRational derivative(int k, bool conjugated) const;
  WRational conjugate() const;
  WRational inverse() const;
  WRational pow(long e) const;
  WRational scale_variables(const GaussQ& s) const;
  /// Reads a field over r_1..r_m (stored in the z slots) as a field in z, zbar.
  WRational radial_to_complex(int n) const;

  std::complex<double> evaluate(std::span<const std::complex<double>> z) const;
  /// Exact value; throws PoleError on a vanishing factor and domain_error
  /// when a fractional power would be needed.
  GaussQ evaluate_exact(std::span<const GaussQ> z) const;
  /// True when some factor with positive exponent vanishes at z.
  bool has_pole_at(std::span<const GaussQ> z) const;

  std::string str() const;

  WRational& operator+=(const WRational& o);
  WRational& operator-=(const WRational& o);
  WRational& operator*=(const WRational& o);
  WRational& operator/=(const WRational& o);
  friend WRational operator+(WRational a, const WRational& b) { return a += b; }
  friend WRational operator-(WRational a, const WRational& b) { return a -= b; }
  friend WRational operator*(WRational a, const WRational& b) { return a *= b; }
  friend WRational operator/(WRational a, const WRational& b) { return a /= b; }
  friend WRational operator-(WRational a);
  WRational scaled(const GaussQ& c) const;

 private:
  WRational(WPoly num, std::vector<DenFactor> den);
  void attach(const WPoly& poly, Exponent e);
  void normalize();
  void cancel();

  WPoly num_;
  std::vector<DenFactor> den_;
};

/// Splits p = scalar * q with q normalized.
std::pair<GaussQ, WPoly> normalize_factor(const WPoly& p);

}  // namespace chern::wirtinger
