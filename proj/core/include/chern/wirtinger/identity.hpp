#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "chern/wirtinger/wrational.hpp"

namespace chern::wirtinger {

enum class IdentityMode { automatic, exact, randomized };

struct RandomizedOptions {
  std::uint64_t seed = 0x5EED;
  int trials = 5;
  int max_draws = 2000;
};

/// Term count above which automatic mode switches to randomized testing.
inline constexpr std::size_t kExactTermLimit = 10000;

/// A point of C^n; conjugate slots are always evaluated as conj(z_k).
struct Point {
  std::vector<std::complex<double>> z;
};

/// Gaussian-rational point with 1/8 <= |z| <= 1/2 that avoids the polar set of f.
std::vector<GaussQ> draw_exact_point(const WRational& f, std::uint64_t& state, int max_draws);

bool is_identically_zero(const WRational& f, IdentityMode mode = IdentityMode::automatic,
                         const RandomizedOptions& options = {});
bool rational_equal(const WRational& a, const WRational& b, IdentityMode mode = IdentityMode::automatic);
bool is_holomorphic(const WRational& f, IdentityMode mode = IdentityMode::automatic);
/// Every Wirtinger partial, holomorphic and antiholomorphic, vanishes.
bool is_locally_constant(const WRational& f);

std::complex<double> evaluate(const WRational& f, const Point& p);

}  // namespace chern::wirtinger
