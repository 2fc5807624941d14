#include "chern/wirtinger/identity.hpp"

#include <random>
#include <stdexcept>

namespace chern::wirtinger {

namespace {

constexpr long kGrid = 1024;

}  // namespace

std::vector<GaussQ> draw_exact_point(const WRational& f, std::uint64_t& state, int max_draws) {
  const int n = f.dimension();
  std::mt19937_64 rng(state);
  std::uniform_int_distribution<long> coord(-kGrid / 2, kGrid / 2);
  const Rational lo(1, 64);
  const Rational hi(1, 4);
  for (int draw = 0; draw < max_draws; ++draw) {
    std::vector<GaussQ> z;
    Rational r2 = 0;
    for (int k = 0; k < n; ++k) {
      Rational re(coord(rng), kGrid);
      Rational im(coord(rng), kGrid);
      re.canonicalize();
      im.canonicalize();
      r2 += re * re + im * im;
      z.emplace_back(re, im);
    }
    if (r2 < lo || r2 > hi) continue;
    if (f.has_pole_at(z)) continue;
    state = rng();
    return z;
  }
  throw std::runtime_error("no sample point off the polar set after bounded draws");
}

bool is_identically_zero(const WRational& f, IdentityMode mode, const RandomizedOptions& options) {
  if (mode == IdentityMode::automatic) {
    mode = f.num().size() <= kExactTermLimit ? IdentityMode::exact : IdentityMode::randomized;
  }
  if (mode == IdentityMode::exact) return f.is_zero();
  if (options.trials < 3) throw std::invalid_argument("randomized identity test needs at least 3 trials");
  if (f.is_zero()) return true;
  std::uint64_t state = options.seed;
  for (int t = 0; t < options.trials; ++t) {
    auto z = draw_exact_point(f, state, options.max_draws);
    if (!f.num().evaluate_exact(z).is_zero()) return false;
  }
  return true;
}

bool rational_equal(const WRational& a, const WRational& b, IdentityMode mode) {
  try {
    return is_identically_zero(a - b, mode);
  } catch (const RadicalMismatch&) {
    return false;
  }
}

bool is_holomorphic(const WRational& f, IdentityMode mode) {
  for (int k = 0; k < f.dimension(); ++k) {
    if (!is_identically_zero(f.derivative(k, true), mode)) return false;
  }
  return true;
}

bool is_locally_constant(const WRational& f) {
  for (int k = 0; k < f.dimension(); ++k) {
    if (!f.derivative(k, false).is_zero() || !f.derivative(k, true).is_zero()) return false;
  }
  return true;
}

std::complex<double> evaluate(const WRational& f, const Point& p) { return f.evaluate(p.z); }

}  // namespace chern::wirtinger
