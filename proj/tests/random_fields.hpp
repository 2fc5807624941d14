#pragma once

#include <random>

#include "chern/wirtinger/wrational.hpp"

namespace chern::testing {

using wirtinger::GaussQ;
using wirtinger::Monomial;
using wirtinger::WPoly;
using wirtinger::WRational;

inline WPoly random_poly(std::mt19937_64& rng, int n, int max_degree, int terms) {
  std::uniform_int_distribution<int> coef(-4, 4);
  std::uniform_int_distribution<int> slot(0, 2 * n - 1);
  std::uniform_int_distribution<int> deg(0, max_degree);
  std::vector<WPoly::Term> t;
  for (int i = 0; i < terms; ++i) {
    Monomial m;
    int d = deg(rng);
    for (int k = 0; k < d; ++k) {
      m.e[slot(rng)] += 1;
    }
    t.emplace_back(m, GaussQ(wirtinger::Rational(coef(rng), 1 + (i % 3)), wirtinger::Rational(coef(rng) % 2)));
  }
  return WPoly(n, std::move(t));
}

/// Rational with denominators drawn from a pool of ball-type atoms, total degree <= 8.
inline WRational random_rational(std::mt19937_64& rng, int n) {
  WPoly num = random_poly(rng, n, 4, 4);
  WPoly one = WPoly::constant(n, GaussQ(1));
  WPoly r = WPoly::norm_squared(n);
  std::uniform_int_distribution<int> pick(0, 3);
  WRational f(num);
  switch (pick(rng)) {
    case 0:
      return f / WRational(one - r);
    case 1:
      return f / WRational((one + r) * (one - r));
    case 2:
      return f / WRational(one + WPoly::z(n, 0) * WPoly::zbar(n, n - 1));
    default:
      return f;
  }
}

}  // namespace chern::testing
