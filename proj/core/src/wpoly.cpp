#include "chern/wirtinger/wpoly.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace chern::wirtinger {

int Monomial::degree() const {
  int d = 0;
  for (auto x : e) d += x;
  return d;
}

bool Monomial::divides(const Monomial& other) const {
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] > other.e[i]) return false;
  }
  return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    unsigned s = unsigned(e[i]) + other.e[i];
    if (s > 255) throw std::overflow_error("monomial exponent exceeds 255");
    out.e[i] = static_cast<std::uint8_t>(s);
  }
  return out;
}

Monomial Monomial::operator/(const Monomial& other) const {
  Monomial out;
  for (std::size_t i = 0; i < e.size(); ++i) out.e[i] = static_cast<std::uint8_t>(e[i] - other.e[i]);
  return out;
}

std::string variable_name(int n, int slot) {
  if (slot < n) return "z" + std::to_string(slot + 1);
  return "zbar" + std::to_string(slot - n + 1);
}

WPoly::WPoly(int n) : n_(n) {
  if (n < 1 || n > kMaxDimension) throw std::invalid_argument("dimension must lie in 1..8");
}

WPoly::WPoly(int n, std::vector<Term> terms) : WPoly(n) {
  terms_ = std::move(terms);
  canonicalize();
}

void WPoly::canonicalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return a.first < b.first; });
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!out.empty() && out.back().first == t.first) {
      out.back().second += t.second;
    } else {
      if (!out.empty() && out.back().second.is_zero()) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && out.back().second.is_zero()) out.pop_back();
  terms_ = std::move(out);
}

WPoly WPoly::constant(int n, const GaussQ& c) {
  WPoly p(n);
  if (!c.is_zero()) p.terms_.emplace_back(Monomial{}, c);
  return p;
}

WPoly WPoly::z(int n, int k) {
  WPoly p(n);
  if (k < 0 || k >= n) throw std::out_of_range("variable index out of range");
  Monomial m;
  m.e[k] = 1;
  p.terms_.emplace_back(m, GaussQ(1));
  return p;
}

WPoly WPoly::zbar(int n, int k) {
  WPoly p(n);
  if (k < 0 || k >= n) throw std::out_of_range("variable index out of range");
  Monomial m;
  m.e[n + k] = 1;
  p.terms_.emplace_back(m, GaussQ(1));
  return p;
}

WPoly WPoly::norm_squared(int n) {
  std::vector<Term> t;
  for (int k = 0; k < n; ++k) {
    Monomial m;
    m.e[k] = 1;
    m.e[n + k] = 1;
    t.emplace_back(m, GaussQ(1));
  }
  return WPoly(n, std::move(t));
}

bool WPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].first == Monomial{});
}

GaussQ WPoly::constant_term() const {
  if (!terms_.empty() && terms_.front().first == Monomial{}) return terms_.front().second;
  return GaussQ(0);
}

int WPoly::total_degree() const {
  int d = -1;
  for (const auto& t : terms_) d = std::max(d, t.first.degree());
  return d;
}

Monomial WPoly::max_exponents() const {
  Monomial m;
  for (const auto& t : terms_) {
    for (std::size_t i = 0; i < m.e.size(); ++i) m.e[i] = std::max(m.e[i], t.first.e[i]);
  }
  return m;
}

bool WPoly::is_holomorphic_polynomial() const {
  for (const auto& t : terms_) {
    for (int k = 0; k < n_; ++k) {
      if (t.first.e[n_ + k]) return false;
    }
  }
  return true;
}

WPoly WPoly::derivative(int k, bool conjugated) const {
  if (k < 0 || k >= n_) throw std::out_of_range("derivative index out of range");
  int slot = conjugated ? n_ + k : k;
  WPoly out(n_);
  for (const auto& [m, c] : terms_) {
    if (m.e[slot] == 0) continue;
    Monomial d = m;
    d.e[slot] -= 1;
    out.terms_.emplace_back(d, c * GaussQ(long(m.e[slot])));
  }
  out.canonicalize();
  return out;
}

WPoly WPoly::conjugate() const {
  WPoly out(n_);
  out.terms_.reserve(terms_.size());
  for (const auto& [m, c] : terms_) {
    Monomial s;
    for (int k = 0; k < n_; ++k) {
      s.e[k] = m.e[n_ + k];
      s.e[n_ + k] = m.e[k];
    }
    out.terms_.emplace_back(s, c.conj());
  }
  out.canonicalize();
  return out;
}

WPoly WPoly::pow(unsigned e) const {
  WPoly acc = constant(n_, GaussQ(1));
  WPoly base = *this;
  while (e) {
    if (e & 1U) acc *= base;
    e >>= 1;
    if (e) base = base * base;
  }
  return acc;
}

WPoly WPoly::scaled(const GaussQ& c) const {
  WPoly out(n_);
  if (c.is_zero()) return out;
  out.terms_ = terms_;
  for (auto& t : out.terms_) t.second *= c;
  return out;
}

WPoly WPoly::scale_variables(const GaussQ& s) const {
  WPoly out(n_);
  GaussQ sb = s.conj();
  for (const auto& [m, c] : terms_) {
    int dz = 0;
    int dzb = 0;
    for (int k = 0; k < n_; ++k) {
      dz += m.e[k];
      dzb += m.e[n_ + k];
    }
    out.terms_.emplace_back(m, c * s.pow(dz) * sb.pow(dzb));
  }
  out.canonicalize();
  return out;
}

WPoly WPoly::radial_to_complex(int n) const {
  if (n < n_) throw std::invalid_argument("radial substitution needs n >= source dimension");
  WPoly out(n);
  for (const auto& [m, c] : terms_) {
    Monomial t;
    for (int k = 0; k < n_; ++k) {
      if (m.e[n_ + k]) throw std::invalid_argument("radial polynomial must not use conjugate slots");
      t.e[k] = m.e[k];
      t.e[n + k] = m.e[k];
    }
    out.terms_.emplace_back(t, c);
  }
  out.canonicalize();
  return out;
}

std::complex<double> WPoly::evaluate(std::span<const std::complex<double>> z) const {
  if (static_cast<int>(z.size()) != n_) throw std::invalid_argument("point dimension mismatch");
  Monomial top = max_exponents();
  std::vector<std::vector<std::complex<double>>> powers(2 * n_);
  for (int s = 0; s < 2 * n_; ++s) {
    std::complex<double> v = s < n_ ? z[s] : std::conj(z[s - n_]);
    powers[s].resize(top.e[s] + 1);
    powers[s][0] = 1.0;
    for (int p = 1; p <= top.e[s]; ++p) powers[s][p] = powers[s][p - 1] * v;
  }
  std::complex<double> acc = 0.0;
  for (const auto& [m, c] : terms_) {
    std::complex<double> t = c.to_complex();
    for (int s = 0; s < 2 * n_; ++s) {
      if (m.e[s]) t *= powers[s][m.e[s]];
    }
    acc += t;
  }
  return acc;
}

GaussQ WPoly::evaluate_exact(std::span<const GaussQ> z) const {
  if (static_cast<int>(z.size()) != n_) throw std::invalid_argument("point dimension mismatch");
  Monomial top = max_exponents();
  std::vector<std::vector<GaussQ>> powers(2 * n_);
  for (int s = 0; s < 2 * n_; ++s) {
    GaussQ v = s < n_ ? z[s] : z[s - n_].conj();
    powers[s].resize(top.e[s] + 1);
    powers[s][0] = GaussQ(1);
    for (int p = 1; p <= top.e[s]; ++p) powers[s][p] = powers[s][p - 1] * v;
  }
  GaussQ acc;
  for (const auto& [m, c] : terms_) {
    GaussQ t = c;
    for (int s = 0; s < 2 * n_; ++s) {
      if (m.e[s]) t *= powers[s][m.e[s]];
    }
    acc += t;
  }
  return acc;
}

std::optional<WPoly> WPoly::divide_exact(const WPoly& divisor) const {
  if (divisor.is_zero()) throw std::domain_error("division by the zero polynomial");
  if (n_ != divisor.n_) throw std::invalid_argument("dimension mismatch");
  if (is_zero()) return WPoly(n_);
  Monomial mine = max_exponents();
  Monomial theirs = divisor.max_exponents();
  if (!theirs.divides(mine)) return std::nullopt;

  const auto& [lead_m, lead_c] = divisor.leading();
  GaussQ lead_inv = lead_c.inverse();
  std::map<Monomial, GaussQ> rem;
  for (const auto& t : terms_) rem.emplace_hint(rem.end(), t.first, t.second);
  std::vector<Term> quotient;
  while (!rem.empty()) {
    auto top = std::prev(rem.end());
    if (!lead_m.divides(top->first)) return std::nullopt;
    Monomial qm = top->first / lead_m;
    GaussQ qc = top->second * lead_inv;
    for (const auto& [dm, dc] : divisor.terms_) {
      Monomial pm = dm * qm;
      auto it = rem.find(pm);
      GaussQ delta = dc * qc;
      if (it == rem.end()) {
        rem.emplace(pm, -delta);
      } else {
        it->second -= delta;
        if (it->second.is_zero()) rem.erase(it);
      }
    }
    quotient.emplace_back(qm, std::move(qc));
  }
  return WPoly(n_, std::move(quotient));
}

std::string WPoly::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    std::string coef = c.str();
    bool unit = m != Monomial{};
    std::string body;
    for (int s = 0; s < 2 * n_; ++s) {
      if (!m.e[s]) continue;
      if (!body.empty()) body += "*";
      body += variable_name(n_, s);
      if (m.e[s] > 1) body += "^" + std::to_string(m.e[s]);
    }
    std::string term;
    if (!unit) {
      term = c.is_real() ? coef : "(" + coef + ")";
    } else if (c.is_one()) {
      term = body;
    } else if (c == GaussQ(-1)) {
      term = "-" + body;
    } else {
      term = (c.is_real() ? coef : "(" + coef + ")") + "*" + body;
    }
    if (!out.empty()) {
      if (term[0] == '-') {
        out += " - " + term.substr(1);
      } else {
        out += " + " + term;
      }
    } else {
      out = term;
    }
  }
  return out;
}

WPoly WPoly::combine(const WPoly& o, bool subtract) const {
  if (n_ != o.n_) throw std::invalid_argument("dimension mismatch");
  WPoly out(n_);
  out.terms_.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.begin();
  auto b = o.terms_.begin();
  while (a != terms_.end() || b != o.terms_.end()) {
    if (b == o.terms_.end() || (a != terms_.end() && a->first < b->first)) {
      out.terms_.push_back(*a++);
    } else if (a == terms_.end() || b->first < a->first) {
      out.terms_.emplace_back(b->first, subtract ? -b->second : b->second);
      ++b;
    } else {
      GaussQ c = subtract ? a->second - b->second : a->second + b->second;
      if (!c.is_zero()) out.terms_.emplace_back(a->first, std::move(c));
      ++a;
      ++b;
    }
  }
  return out;
}

WPoly& WPoly::operator+=(const WPoly& o) { return *this = combine(o, false); }
WPoly& WPoly::operator-=(const WPoly& o) { return *this = combine(o, true); }
WPoly& WPoly::operator*=(const WPoly& o) { return *this = *this * o; }

WPoly operator*(const WPoly& a, const WPoly& b) {
  if (a.n_ != b.n_) throw std::invalid_argument("dimension mismatch");
  WPoly out(a.n_);
  if (a.is_zero() || b.is_zero()) return out;
  out.terms_.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) out.terms_.emplace_back(ma * mb, ca * cb);
  }
  out.canonicalize();
  return out;
}

bool operator==(const WPoly& a, const WPoly& b) {
  if (a.n_ != b.n_ || a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].first != b.terms_[i].first || !(a.terms_[i].second == b.terms_[i].second)) return false;
  }
  return true;
}

int compare(const WPoly& a, const WPoly& b) {
  if (a.n_ != b.n_) return a.n_ < b.n_ ? -1 : 1;
  if (a.terms_.size() != b.terms_.size()) return a.terms_.size() < b.terms_.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].first != b.terms_[i].first) return a.terms_[i].first < b.terms_[i].first ? -1 : 1;
    int c = compare(a.terms_[i].second, b.terms_[i].second);
    if (c != 0) return c;
  }
  return 0;
}

}  // namespace chern::wirtinger
