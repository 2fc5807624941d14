#include "chern/wirtinger/wrational.hpp"

#include <algorithm>
#include <cmath>

namespace chern::wirtinger {

namespace {

bool is_integral(const Exponent& e) { return e.denominator() == 1; }
int sign(const Exponent& e) { return e.numerator() > 0 ? 1 : e.numerator() < 0 ? -1 : 0; }

GaussQ exponent_scalar(const Exponent& e) {
  return GaussQ(Rational(mpz_class(static_cast<long>(e.numerator())), mpz_class(static_cast<long>(e.denominator()))));
}

std::string exponent_str(const Exponent& e) {
  if (is_integral(e)) return std::to_string(e.numerator());
  return "(" + std::to_string(e.numerator()) + "/" + std::to_string(e.denominator()) + ")";
}

}  // namespace

std::pair<GaussQ, WPoly> normalize_factor(const WPoly& p) {
  if (p.is_zero()) throw std::domain_error("division by the zero polynomial");
  GaussQ s = p.constant_term();
  if (s.is_zero()) s = p.leading().second;
  if (s.is_one()) return {s, p};
  return {s, p.scaled(s.inverse())};
}

WRational::WRational(int n) : num_(n) {}

WRational::WRational(WPoly num) : num_(std::move(num)) {}

WRational::WRational(WPoly num, std::vector<DenFactor> den) : num_(std::move(num)), den_(std::move(den)) {}

WRational WRational::constant(int n, const GaussQ& c) { return WRational(WPoly::constant(n, c)); }

WRational WRational::power(const WPoly& base, Exponent e) {
  WRational out(WPoly::constant(base.dimension(), GaussQ(1)));
  out.attach(base, -e);
  out.normalize();
  return out;
}

WRational WRational::fraction(const WPoly& num, const WPoly& den) {
  WRational out(num);
  out.attach(den, Exponent(1));
  out.normalize();
  return out;
}

void WRational::attach(const WPoly& poly, Exponent e) {
  if (sign(e) == 0) return;
  auto [s, q] = normalize_factor(poly);
  if (!s.is_one()) {
    if (!is_integral(e)) {
      throw std::domain_error("fractional power of a non-normalized factor: " + poly.str());
    }
    num_ = num_.scaled(s.pow(-e.numerator()));
  }
  if (q.is_constant()) return;
  auto it = std::lower_bound(den_.begin(), den_.end(), q,
                             [](const DenFactor& f, const WPoly& p) { return compare(f.poly, p) < 0; });
  if (it != den_.end() && compare(it->poly, q) == 0) {
    it->exponent += e;
  } else {
    den_.insert(it, DenFactor{std::move(q), e});
  }
}

void WRational::normalize() {
  if (num_.is_zero()) {
    den_.clear();
    return;
  }
  std::vector<DenFactor> kept;
  kept.reserve(den_.size());
  for (auto& f : den_) {
    if (sign(f.exponent) == 0) continue;
    if (sign(f.exponent) < 0 && is_integral(f.exponent)) {
      num_ *= f.poly.pow(static_cast<unsigned>(-f.exponent.numerator()));
      continue;
    }
    kept.push_back(std::move(f));
  }
  den_ = std::move(kept);
  cancel();
}

void WRational::cancel() {
  if (num_.is_constant()) return;
  std::vector<DenFactor> kept;
  kept.reserve(den_.size());
  for (auto& f : den_) {
    while (sign(f.exponent) > 0 && num_.total_degree() >= f.poly.total_degree()) {
      auto q = num_.divide_exact(f.poly);
      if (!q) break;
      num_ = std::move(*q);
      f.exponent -= 1;
    }
    if (sign(f.exponent) != 0) kept.push_back(std::move(f));
  }
  den_ = std::move(kept);
}

WPoly WRational::denominator() const {
  WPoly acc = WPoly::constant(dimension(), GaussQ(1));
  for (const auto& f : den_) {
    if (!is_integral(f.exponent) || sign(f.exponent) < 0) {
      throw std::domain_error("denominator is not a polynomial: " + str());
    }
    acc *= f.poly.pow(static_cast<unsigned>(f.exponent.numerator()));
  }
  return acc;
}

bool WRational::has_fractional_exponent() const {
  return std::any_of(den_.begin(), den_.end(), [](const DenFactor& f) { return !is_integral(f.exponent); });
}

WRational& WRational::operator+=(const WRational& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (dimension() != o.dimension()) throw std::invalid_argument("dimension mismatch");
  WPoly ma = WPoly::constant(dimension(), GaussQ(1));
  WPoly mb = ma;
  std::vector<DenFactor> lcm;
  auto a = den_.begin();
  auto b = o.den_.begin();
  auto take = [&](const WPoly& poly, Exponent ea, Exponent eb) {
    if (!is_integral(ea - eb)) {
      throw RadicalMismatch("sum of incompatible radicals over " + poly.str());
    }
    Exponent l = std::max(ea, eb);
    if (l != ea) ma *= poly.pow(static_cast<unsigned>((l - ea).numerator()));
    if (l != eb) mb *= poly.pow(static_cast<unsigned>((l - eb).numerator()));
    lcm.push_back(DenFactor{poly, l});
  };
  while (a != den_.end() || b != o.den_.end()) {
    int c = a == den_.end() ? 1 : b == o.den_.end() ? -1 : compare(a->poly, b->poly);
    if (c < 0) {
      take(a->poly, a->exponent, Exponent(0));
      ++a;
    } else if (c > 0) {
      take(b->poly, Exponent(0), b->exponent);
      ++b;
    } else {
      take(a->poly, a->exponent, b->exponent);
      ++a;
      ++b;
    }
  }
  num_ = num_ * ma + o.num_ * mb;
  den_ = std::move(lcm);
  normalize();
  return *this;
}

WRational& WRational::operator-=(const WRational& o) { return *this += -o; }

WRational operator-(WRational a) {
  a.num_ = -a.num_;
  return a;
}

WRational WRational::scaled(const GaussQ& c) const {
  if (c.is_zero()) return WRational(dimension());
  WRational out = *this;
  out.num_ = out.num_.scaled(c);
  return out;
}

WRational& WRational::operator*=(const WRational& o) {
  if (dimension() != o.dimension()) throw std::invalid_argument("dimension mismatch");
  if (is_zero()) return *this;
  if (o.is_zero()) return *this = WRational(dimension());
  num_ *= o.num_;
  for (const auto& f : o.den_) attach(f.poly, f.exponent);
  normalize();
  return *this;
}

WRational& WRational::operator/=(const WRational& o) {
  if (o.is_zero()) throw std::domain_error("division by the zero polynomial");
  if (dimension() != o.dimension()) throw std::invalid_argument("dimension mismatch");
  WPoly rest = o.num_;
  for (const auto& f : o.den_) attach(f.poly, -f.exponent);
  if (!rest.is_constant()) {
    std::vector<WPoly> hints;
    for (const auto& f : den_) hints.push_back(f.poly);
    for (const auto& f : o.den_) hints.push_back(f.poly);
    for (const auto& h : hints) {
      while (rest.total_degree() >= h.total_degree()) {
        auto q = rest.divide_exact(h);
        if (!q) break;
        rest = std::move(*q);
        attach(h, Exponent(1));
      }
    }
  }
  attach(rest, Exponent(1));
  normalize();
  return *this;
}

WRational WRational::inverse() const {
  WRational one = constant(dimension(), GaussQ(1));
  return one /= *this;
}

WRational WRational::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  WRational out(num_.pow(static_cast<unsigned>(e)));
  for (const auto& f : den_) out.attach(f.poly, f.exponent * e);
  out.normalize();
  return out;
}

WRational WRational::derivative(int k, bool conjugated) const {
  WPoly dnum = num_.derivative(k, conjugated);
  std::vector<std::size_t> moving;
  std::vector<WPoly> dfac;
  for (std::size_t i = 0; i < den_.size(); ++i) {
    WPoly d = den_[i].poly.derivative(k, conjugated);
    if (!d.is_zero()) {
      moving.push_back(i);
      dfac.push_back(std::move(d));
    }
  }
  if (moving.empty()) {
    WRational out(std::move(dnum), den_);
    out.normalize();
    return out;
  }
  const int n = dimension();
  WPoly product = WPoly::constant(n, GaussQ(1));
  for (auto i : moving) product *= den_[i].poly;
  WPoly sum(n);
  for (std::size_t a = 0; a < moving.size(); ++a) {
    WPoly t = dfac[a].scaled(exponent_scalar(den_[moving[a]].exponent));
    for (std::size_t b = 0; b < moving.size(); ++b) {
      if (b != a) t *= den_[moving[b]].poly;
    }
    sum += t;
  }
  WPoly new_num = dnum * product - num_ * sum;
  std::vector<DenFactor> new_den = den_;
  for (auto i : moving) new_den[i].exponent += 1;
  WRational out(std::move(new_num), std::move(new_den));
  out.normalize();
  return out;
}

WRational WRational::conjugate() const {
  WRational out(num_.conjugate());
  for (const auto& f : den_) out.attach(f.poly.conjugate(), f.exponent);
  out.normalize();
  return out;
}

WRational WRational::scale_variables(const GaussQ& s) const {
  WRational out(num_.scale_variables(s));
  for (const auto& f : den_) out.attach(f.poly.scale_variables(s), f.exponent);
  out.normalize();
  return out;
}

WRational WRational::radial_to_complex(int n) const {
  WRational out(num_.radial_to_complex(n));
  for (const auto& f : den_) out.attach(f.poly.radial_to_complex(n), f.exponent);
  out.normalize();
  return out;
}

std::complex<double> WRational::evaluate(std::span<const std::complex<double>> z) const {
  std::complex<double> v = num_.evaluate(z);
  for (const auto& f : den_) {
    std::complex<double> q = f.poly.evaluate(z);
    if (std::abs(q) < 1e-300) {
      if (sign(f.exponent) > 0) throw PoleError("pole of " + f.poly.str() + " at the evaluation point");
      if (sign(f.exponent) < 0) return 0.0;
    }
    if (is_integral(f.exponent)) {
      long e = static_cast<long>(f.exponent.numerator());
      std::complex<double> p = 1.0;
      std::complex<double> b = q;
      for (long k = std::labs(e); k; k >>= 1) {
        if (k & 1) p *= b;
        b *= b;
      }
      v = e > 0 ? v / p : v * p;
    } else {
      double e = static_cast<double>(f.exponent.numerator()) / static_cast<double>(f.exponent.denominator());
      v /= std::pow(q, e);
    }
  }
  return v;
}

bool WRational::has_pole_at(std::span<const GaussQ> z) const {
  for (const auto& f : den_) {
    if (f.poly.evaluate_exact(z).is_zero()) return true;
  }
  return false;
}

GaussQ WRational::evaluate_exact(std::span<const GaussQ> z) const {
  GaussQ v = num_.evaluate_exact(z);
  for (const auto& f : den_) {
    GaussQ q = f.poly.evaluate_exact(z);
    if (q.is_zero()) {
      if (sign(f.exponent) > 0) throw PoleError("pole of " + f.poly.str() + " at the evaluation point");
      return GaussQ(0);
    }
    if (!is_integral(f.exponent)) {
      if (q.is_one()) continue;
      throw std::domain_error("exact evaluation of a fractional power");
    }
    v /= q.pow(static_cast<long>(f.exponent.numerator()));
  }
  return v;
}

std::string WRational::str() const {
  std::string n = num_.str();
  if (den_.empty()) return n;
  std::string d;
  for (const auto& f : den_) {
    if (!d.empty()) d += "*";
    d += "(" + f.poly.str() + ")";
    if (f.exponent != Exponent(1)) d += "^" + exponent_str(f.exponent);
  }
  bool compound = num_.size() > 1;
  return (compound ? "(" + n + ")" : n) + "/" + (den_.size() > 1 ? "(" + d + ")" : d);
}

}  // namespace chern::wirtinger
