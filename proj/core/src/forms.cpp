#include "chern/dbar/forms.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

namespace chern::dbar {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\n");
  return s.substr(b, e - b + 1);
}

int parse_index(const std::string& digits, int n, const std::string& token) {
  if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](unsigned char c) { return std::isdigit(c); })) {
    throw std::invalid_argument("bad variable in '" + token + "'");
  }
  int j = std::stoi(digits);
  if (j < 1 || j > n) throw std::invalid_argument("index out of range in '" + token + "'");
  return j - 1;
}

/// Splits at top-level + and -, keeping the sign with the term.
std::vector<std::string> split_terms(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char ch : text) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (depth == 0 && (ch == '+' || ch == '-') && !trim(cur).empty() && trim(cur).back() != '*' &&
        trim(cur).back() != '/') {
      out.push_back(cur);
      cur.clear();
    }
    cur += ch;
  }
  if (!trim(cur).empty()) out.push_back(cur);
  return out;
}

void parse_term(const std::string& raw, int n, MultiIndex& e, std::vector<int>& slots, GaussQ& c) {
  std::string term = trim(raw);
  c = GaussQ(1);
  if (!term.empty() && (term[0] == '+' || term[0] == '-')) {
    if (term[0] == '-') c = -c;
    term = trim(term.substr(1));
  }
  e.assign(n, 0);
  slots.clear();
  std::size_t pos = 0;
  while (pos <= term.size()) {
    std::size_t next = term.find('*', pos);
    std::string tok = trim(term.substr(pos, next == std::string::npos ? std::string::npos : next - pos));
    pos = next == std::string::npos ? term.size() + 1 : next + 1;
    if (tok.empty()) throw std::invalid_argument("empty factor in '" + raw + "'");
    if (tok.rfind("dz", 0) == 0) {
      std::size_t p = 0;
      while (p < tok.size()) {
        std::size_t hat = tok.find('^', p);
        std::string part = tok.substr(p, hat == std::string::npos ? std::string::npos : hat - p);
        if (part.rfind("dz", 0) != 0) throw std::invalid_argument("bad differential '" + tok + "'");
        slots.push_back(parse_index(part.substr(2), n, tok));
        p = hat == std::string::npos ? tok.size() : hat + 1;
      }
    } else if (tok[0] == 'z') {
      std::size_t hat = tok.find('^');
      int j = parse_index(tok.substr(1, hat == std::string::npos ? std::string::npos : hat - 1), n, tok);
      int k = 1;
      if (hat != std::string::npos) {
        std::string ex = tok.substr(hat + 1);
        if (ex.empty() || !std::all_of(ex.begin(), ex.end(), [](unsigned char ch) { return std::isdigit(ch); })) {
          throw std::invalid_argument("bad exponent in '" + tok + "'");
        }
        k = std::stoi(ex);
      }
      e[j] += k;
    } else {
      if (tok.front() == '(' && tok.back() == ')') tok = tok.substr(1, tok.size() - 2);
      c *= GaussQ::parse(tok);
    }
  }
}

int permutation_sign(std::vector<int>& slots) {
  int sign = 1;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    for (std::size_t j = 0; j + 1 < slots.size() - i; ++j) {
      if (slots[j] > slots[j + 1]) {
        std::swap(slots[j], slots[j + 1]);
        sign = -sign;
      }
    }
  }
  for (std::size_t i = 0; i + 1 < slots.size(); ++i) {
    if (slots[i] == slots[i + 1]) return 0;
  }
  return sign;
}

std::string monomial_str(const MultiIndex& e) {
  std::string s;
  for (std::size_t j = 0; j < e.size(); ++j) {
    if (e[j] == 0) continue;
    if (!s.empty()) s += "*";
    s += "z" + std::to_string(j + 1);
    if (e[j] > 1) s += "^" + std::to_string(e[j]);
  }
  return s;
}

}  // namespace

int total_degree(const MultiIndex& e) { return std::accumulate(e.begin(), e.end(), 0); }

MultiIndex multiindex_shift(const MultiIndex& e, int j, int l) {
  const int n = static_cast<int>(e.size());
  if (j < 0 || l < 0 || j >= n || l >= n || j == l) throw std::invalid_argument("shift needs distinct indices in range");
  if (e[j] < 1) throw std::domain_error("multi-index shift underflow");
  MultiIndex out = e;
  out[j] -= 1;
  out[l] += 1;
  return out;
}

MonomialForm::MonomialForm(int n, int degree) : n_(n), degree_(degree) {
  if (n < 1) throw std::invalid_argument("dimension must be positive");
  if (degree < 0 || degree > 2) throw std::invalid_argument("form degree out of range");
}

void MonomialForm::add(MultiIndex e, std::vector<int> slots, const GaussQ& c) {
  if (static_cast<int>(e.size()) != n_) throw std::invalid_argument("exponent length differs from dimension");
  if (static_cast<int>(slots.size()) != degree_) throw std::invalid_argument("wrong number of differentials");
  for (int v : e) {
    if (v < 0) throw std::invalid_argument("negative exponent");
  }
  for (int s : slots) {
    if (s < 0 || s >= n_) throw std::invalid_argument("differential index out of range");
  }
  int sign = permutation_sign(slots);
  if (sign == 0 || c.is_zero()) return;
  FormKey key{std::move(e), std::move(slots)};
  GaussQ value = sign > 0 ? c : -c;
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(std::move(key), value);
    return;
  }
  it->second += value;
  if (it->second.is_zero()) terms_.erase(it);
}

GaussQ MonomialForm::coefficient(const MultiIndex& e, const std::vector<int>& slots) const {
  std::vector<int> s = slots;
  int sign = permutation_sign(s);
  if (sign == 0) return GaussQ(0);
  auto it = terms_.find(FormKey{e, s});
  if (it == terms_.end()) return GaussQ(0);
  return sign > 0 ? it->second : -it->second;
}

MonomialForm MonomialForm::component(const std::vector<int>& slots) const {
  std::vector<int> s = slots;
  int sign = permutation_sign(s);
  MonomialForm out(n_, 0);
  if (sign == 0) return out;
  for (const auto& [key, c] : terms_) {
    if (key.slots == s) out.add(key.exponents, {}, sign > 0 ? c : -c);
  }
  return out;
}

MonomialForm MonomialForm::times_z(int j) const {
  MonomialForm out(n_, degree_);
  for (const auto& [key, c] : terms_) {
    MultiIndex e = key.exponents;
    e[j] += 1;
    out.terms_.emplace(FormKey{std::move(e), key.slots}, c);
  }
  return out;
}

MonomialForm MonomialForm::derivative(int j) const {
  MonomialForm out(n_, degree_);
  for (const auto& [key, c] : terms_) {
    if (key.exponents[j] == 0) continue;
    MultiIndex e = key.exponents;
    GaussQ f = c * GaussQ(long(e[j]));
    e[j] -= 1;
    out.terms_.emplace(FormKey{std::move(e), key.slots}, f);
  }
  return out;
}

MonomialForm MonomialForm::homogeneous_part(int m) const {
  MonomialForm out(n_, degree_);
  for (const auto& [key, c] : terms_) {
    if (total_degree(key.exponents) == m) out.terms_.emplace(key, c);
  }
  return out;
}

int MonomialForm::max_polynomial_degree() const {
  int m = -1;
  for (const auto& [key, c] : terms_) m = std::max(m, total_degree(key.exponents));
  return m;
}

MonomialForm MonomialForm::scaled(const GaussQ& c) const {
  MonomialForm out(n_, degree_);
  if (c.is_zero()) return out;
  for (const auto& [key, v] : terms_) out.terms_.emplace(key, v * c);
  return out;
}

void MonomialForm::check_compatible(const MonomialForm& o) const {
  if (n_ != o.n_ || degree_ != o.degree_) throw std::invalid_argument("forms of different type");
}

MonomialForm& MonomialForm::operator+=(const MonomialForm& o) {
  check_compatible(o);
  for (const auto& [key, c] : o.terms_) add(key.exponents, key.slots, c);
  return *this;
}

MonomialForm& MonomialForm::operator-=(const MonomialForm& o) {
  check_compatible(o);
  for (const auto& [key, c] : o.terms_) add(key.exponents, key.slots, -c);
  return *this;
}

std::string MonomialForm::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [key, c] : terms_) {
    std::string mono = monomial_str(key.exponents);
    std::string diff;
    for (int slot : key.slots) diff += (diff.empty() ? "dz" : "^dz") + std::to_string(slot + 1);
    std::string body = mono;
    if (!diff.empty()) body += (body.empty() ? "" : "*") + diff;
    std::string coeff = c.str();
    if (!c.is_real()) coeff = "(" + coeff + ")";
    std::string piece;
    if (body.empty()) {
      piece = coeff;
    } else if (c.is_one()) {
      piece = body;
    } else if (c == GaussQ(-1)) {
      piece = "-" + body;
    } else {
      piece = coeff + "*" + body;
    }
    if (s.empty()) {
      s = piece;
    } else if (piece[0] == '-') {
      s += " - " + piece.substr(1);
    } else {
      s += " + " + piece;
    }
  }
  return s;
}

MonomialForm monomial(int n, MultiIndex e, std::vector<int> slots, const GaussQ& c) {
  MonomialForm f(n, static_cast<int>(slots.size()));
  f.add(std::move(e), std::move(slots), c);
  return f;
}

MonomialForm parse_form(const std::string& text, int n) {
  std::vector<std::tuple<MultiIndex, std::vector<int>, GaussQ>> parsed;
  int degree = -1;
  for (const auto& raw : split_terms(text)) {
    MultiIndex e;
    std::vector<int> slots;
    GaussQ c;
    parse_term(raw, n, e, slots, c);
    if (degree >= 0 && degree != static_cast<int>(slots.size())) {
      throw std::invalid_argument("terms of different form degree in '" + text + "'");
    }
    degree = static_cast<int>(slots.size());
    parsed.emplace_back(std::move(e), std::move(slots), c);
  }
  MonomialForm out(n, std::max(degree, 0));
  for (auto& [e, s, c] : parsed) out.add(std::move(e), std::move(s), c);
  return out;
}

nlohmann::json to_json(const MonomialForm& f) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [key, c] : f.terms()) {
    std::vector<int> dz;
    for (int s : key.slots) dz.push_back(s + 1);
    terms.push_back({{"c", c.str()}, {"z", key.exponents}, {"dz", dz}});
  }
  return {{"n", f.n()}, {"degree", f.degree()}, {"text", f.str()}, {"terms", terms}};
}

MonomialForm form_from_json(const nlohmann::json& doc, int n) {
  if (doc.is_string()) return parse_form(doc.get<std::string>(), n);
  MonomialForm out(n, doc.at("degree").get<int>());
  for (const auto& t : doc.at("terms")) {
    std::vector<int> slots;
    for (int s : t.at("dz").get<std::vector<int>>()) slots.push_back(s - 1);
    const auto& c = t.at("c");
    if (!c.is_string() && !c.is_number_integer()) throw std::invalid_argument("form coefficients must be exact");
    out.add(t.at("z").get<MultiIndex>(), slots, c.is_string() ? GaussQ::parse(c.get<std::string>()) : GaussQ(c.get<long>()));
  }
  return out;
}

MonomialForm dbar(const MonomialForm& form) {
  const int n = form.n();
  if (form.degree() == 0) {
    MonomialForm out(n, 1);
    for (int j = 0; j < n; ++j) {
      MonomialForm dj = form.derivative(j);
      for (const auto& [key, c] : dj.terms()) out.add(key.exponents, {j}, c);
    }
    return out;
  }
  if (form.degree() == 1) {
    MonomialForm out(n, 2);
    // v_jk = du_k/dz_j - du_j/dz_k, stored for j < k.
    for (int j = 0; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        MonomialForm vjk = form.component({k}).derivative(j) - form.component({j}).derivative(k);
        for (const auto& [key, c] : vjk.terms()) out.add(key.exponents, {j, k}, c);
      }
    }
    return out;
  }
  throw std::invalid_argument("d is implemented for forms of degree 0 and 1");
}

MonomialForm dbar_star_1(const MonomialForm& u, const Rational& alpha) {
  if (u.degree() != 1) throw std::invalid_argument("expected a 1-form");
  const int n = u.n();
  MonomialForm out(n, 0);
  for (int j = 0; j < n; ++j) out += u.component({j}).times_z(j);
  return out.scaled(GaussQ(Rational(n - 1) - alpha));
}

MonomialForm dbar_star_2(const MonomialForm& v, const Rational& alpha) {
  if (v.degree() != 2) throw std::invalid_argument("expected a 2-form");
  const int n = v.n();
  MonomialForm out(n, 1);
  for (int r = 0; r < n; ++r) {
    for (int s = 0; s < n; ++s) {
      if (r == s) continue;
      MonomialForm term = v.component({r, s}).times_z(s);
      for (const auto& [key, c] : term.terms()) out.add(key.exponents, {r}, c);
    }
  }
  return out.scaled(-GaussQ(Rational(n - 2) - alpha));
}

}  // namespace chern::dbar
