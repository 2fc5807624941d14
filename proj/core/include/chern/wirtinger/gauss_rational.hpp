#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>
#include <string_view>

namespace chern::wirtinger {

using Rational = mpq_class;

Rational parse_rational(std::string_view text);
std::string rational_str(const Rational& q);

/// Exact element of Q(i).
class GaussQ {
 public:
  GaussQ() = default;
  GaussQ(int v) : re_(v) {}
  GaussQ(long v) : re_(v) {}
  GaussQ(Rational re) : re_(std::move(re)) { re_.canonicalize(); }
  GaussQ(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  /// Accepts "a", "bi", "a+bi", "a-bi", "i", "-i" with a, b written as p or p/q.
  static GaussQ parse(std::string_view text);

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  GaussQ conj() const { return GaussQ(re_, -im_); }
  Rational norm() const { return re_ * re_ + im_ * im_; }
  GaussQ inverse() const;
  GaussQ pow(long e) const;

  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }
  std::string str() const;

  GaussQ& operator+=(const GaussQ& o);
  GaussQ& operator-=(const GaussQ& o);
  GaussQ& operator*=(const GaussQ& o);
  GaussQ& operator/=(const GaussQ& o);

  friend GaussQ operator+(GaussQ a, const GaussQ& b) { return a += b; }
  friend GaussQ operator-(GaussQ a, const GaussQ& b) { return a -= b; }
  friend GaussQ operator*(GaussQ a, const GaussQ& b) { return a *= b; }
  friend GaussQ operator/(GaussQ a, const GaussQ& b) { return a /= b; }
  friend GaussQ operator-(const GaussQ& a) { return GaussQ(-a.re_, -a.im_); }

  friend bool operator==(const GaussQ& a, const GaussQ& b) { return a.re_ == b.re_ && a.im_ == b.im_; }

  /// Total order used only for canonical storage, not a field order.
  friend int compare(const GaussQ& a, const GaussQ& b) {
    int c = cmp(a.re_, b.re_);
    return c != 0 ? c : cmp(a.im_, b.im_);
  }

 private:
  Rational re_{0};
  Rational im_{0};
};

}  // namespace chern::wirtinger
