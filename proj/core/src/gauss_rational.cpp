#include "chern/wirtinger/gauss_rational.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace chern::wirtinger {

namespace {

std::string strip(std::string_view text) {
  std::string out;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) out.push_back(ch);
  }
  return out;
}

bool valid_rational_chars(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  bool slash = false;
  bool digit = false;
  for (; i < s.size(); ++i) {
    if (std::isdigit(static_cast<unsigned char>(s[i]))) {
      digit = true;
    } else if (s[i] == '/' && !slash && digit && i + 1 < s.size()) {
      slash = true;
      digit = false;
    } else {
      return false;
    }
  }
  return digit;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string s = strip(text);
  if (!valid_rational_chars(s)) {
    throw std::invalid_argument("not an exact rational: '" + std::string(text) + "'");
  }
  if (s[0] == '+') s.erase(0, 1);
  Rational q;
  q.set_str(s, 10);
  if (sgn(q.get_den()) == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  q.canonicalize();
  return q;
}

std::string rational_str(const Rational& q) { return q.get_str(); }

GaussQ GaussQ::parse(std::string_view text) {
  std::string s = strip(text);
  if (s.empty()) throw std::invalid_argument("empty constant");
  if (s.back() != 'i') return GaussQ(parse_rational(s));
  s.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t i = s.size(); i-- > 1;) {
    if (s[i] == '+' || s[i] == '-') {
      split = i;
      break;
    }
  }
  std::string real_part = split == std::string::npos ? "" : s.substr(0, split);
  std::string imag_part = split == std::string::npos ? s : s.substr(split);
  if (imag_part.empty() || imag_part == "+") imag_part = "1";
  if (imag_part == "-") imag_part = "-1";
  Rational re = real_part.empty() ? Rational(0) : parse_rational(real_part);
  return GaussQ(re, parse_rational(imag_part));
}

GaussQ GaussQ::inverse() const {
  Rational d = norm();
  if (sgn(d) == 0) throw std::domain_error("division by zero Gaussian rational");
  return GaussQ(re_ / d, -im_ / d);
}

GaussQ GaussQ::pow(long e) const {
  GaussQ base = e < 0 ? inverse() : *this;
  unsigned long k = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  GaussQ acc(1);
  while (k) {
    if (k & 1UL) acc *= base;
    k >>= 1;
    if (k) base *= base;
  }
  return acc;
}

std::string GaussQ::str() const {
  if (sgn(im_) == 0) return re_.get_str();
  std::string im_text;
  if (im_ == 1) {
    im_text = "i";
  } else if (im_ == -1) {
    im_text = "-i";
  } else {
    im_text = im_.get_str() + "i";
  }
  if (sgn(re_) == 0) return im_text;
  return re_.get_str() + (sgn(im_) > 0 ? "+" : "") + im_text;
}

GaussQ& GaussQ::operator+=(const GaussQ& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussQ& GaussQ::operator-=(const GaussQ& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussQ& GaussQ::operator*=(const GaussQ& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  Rational r = re_ * o.re_ - im_ * o.im_;
  Rational i = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(r);
  im_ = std::move(i);
  return *this;
}

GaussQ& GaussQ::operator/=(const GaussQ& o) {
  if (sgn(o.im_) == 0) {
    if (sgn(o.re_) == 0) throw std::domain_error("division by zero Gaussian rational");
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  return *this *= o.inverse();
}

}  // namespace chern::wirtinger
