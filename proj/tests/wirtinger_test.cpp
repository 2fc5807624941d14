#include <gtest/gtest.h>

#include <random>

#include "chern/wirtinger/expression.hpp"
#include "chern/wirtinger/identity.hpp"
#include "random_fields.hpp"

using namespace chern::wirtinger;

namespace {

WRational z(int n, int k) { return WRational::z(n, k); }
WRational zb(int n, int k) { return WRational::zbar(n, k); }
WRational c(int n, const char* text) { return WRational::constant(n, GaussQ::parse(text)); }
WPoly r2(int n) { return WPoly::norm_squared(n); }

}  // namespace

TEST(GaussQ, ParsesAndPrints) {
  EXPECT_EQ(GaussQ::parse("1/2-3/4i"), GaussQ(Rational(1, 2), Rational(-3, 4)));
  EXPECT_EQ(GaussQ::parse("-i"), GaussQ(0, -1));
  EXPECT_EQ(GaussQ::parse("i"), GaussQ(0, 1));
  EXPECT_EQ(GaussQ::parse("3"), GaussQ(3));
  EXPECT_EQ(GaussQ::parse("2i"), GaussQ(0, 2));
  EXPECT_EQ(GaussQ::parse("-2/4"), GaussQ(Rational(-1, 2)));
  EXPECT_EQ(GaussQ(Rational(1, 2), Rational(-3, 4)).str(), "1/2-3/4i");
  EXPECT_THROW(GaussQ::parse("0.5"), std::invalid_argument);
  EXPECT_THROW(GaussQ::parse("1/0"), std::invalid_argument);
}

TEST(GaussQ, FieldOperations) {
  GaussQ a(Rational(1, 2), 1);
  GaussQ b(2, -3);
  EXPECT_EQ((a / b) * b, a);
  EXPECT_EQ(a.pow(-2) * a.pow(2), GaussQ(1));
  EXPECT_THROW(GaussQ(0).inverse(), std::domain_error);
}

TEST(Arith, DifferenceOfSquares) {
  const int n = 1;
  WRational lhs = (z(n, 0) + zb(n, 0)) * (z(n, 0) - zb(n, 0));
  WRational rhs = z(n, 0) * z(n, 0) - zb(n, 0) * zb(n, 0);
  EXPECT_TRUE(rational_equal(lhs, rhs));
}

TEST(Arith, AdditiveIdentityAndInverse) {
  const int n = 1;
  WRational p = z(n, 0) * zb(n, 0) + c(n, "3i");
  EXPECT_TRUE(rational_equal(p + WRational(n), p));
  WRational one_minus = WRational(WPoly::constant(n, 1) - r2(n));
  WRational prod = one_minus.inverse() * one_minus;
  EXPECT_TRUE(rational_equal(prod, c(n, "1")));
  EXPECT_TRUE(prod.is_polynomial());
}

TEST(Arith, DivisionByZeroThrows) {
  EXPECT_THROW(z(2, 0) / WRational(2), std::domain_error);
}

TEST(Arith, FractionalPowersCombine) {
  const int n = 2;
  WPoly base = WPoly::constant(n, 1) - r2(n);
  WRational half = WRational::power(base, Exponent(1, 2));
  WRational sq = half * half;
  EXPECT_TRUE(rational_equal(sq, WRational(base)));
  EXPECT_THROW(half + c(n, "1"), RadicalMismatch);
  EXPECT_FALSE(rational_equal(half, c(n, "1")));
  EXPECT_THROW(WRational::power(base.scaled(GaussQ(2)), Exponent(1, 2)), std::domain_error);
}

TEST(Wirtinger, Examples) {
  const int n = 1;
  EXPECT_TRUE(rational_equal((z(n, 0) * zb(n, 0)).derivative(0, true), z(n, 0)));
  WRational f = WRational(WPoly::constant(n, 1) - r2(n)).inverse();
  WRational expected = z(n, 0) / WRational((WPoly::constant(n, 1) - r2(n)).pow(2));
  EXPECT_TRUE(rational_equal(f.derivative(0, true), expected));
  EXPECT_TRUE(zb(2, 1).pow(3).derivative(0, false).is_zero());
}

TEST(Wirtinger, FractionalPowerRule) {
  const int n = 1;
  WPoly base = WPoly::constant(n, 1) - r2(n);
  WRational f = WRational::power(base, Exponent(3, 2));
  // d/dzbar (1 - z zbar)^{3/2} = -(3/2) z (1 - z zbar)^{1/2}
  WRational expected = z(n, 0) * WRational::power(base, Exponent(1, 2)) * c(n, "-3/2");
  EXPECT_TRUE(rational_equal(f.derivative(0, true), expected));
}

TEST(Identity, Examples) {
  const int n = 2;
  WRational a = z(n, 0) * zb(n, 0);
  EXPECT_TRUE(is_identically_zero(a - z(n, 0) * zb(n, 0)));
  WRational one_minus(WPoly::constant(n, 1) - r2(n));
  EXPECT_TRUE(is_identically_zero(one_minus * one_minus.inverse() - c(n, "1")));
  EXPECT_FALSE(is_identically_zero(z(n, 0) - zb(n, 0)));
  EXPECT_FALSE(is_identically_zero(z(n, 0) - zb(n, 0), IdentityMode::randomized));
  RandomizedOptions bad;
  bad.trials = 2;
  EXPECT_THROW(is_identically_zero(z(n, 0), IdentityMode::randomized, bad), std::invalid_argument);
}

TEST(Identity, RandomizedAvoidsPolarSet) {
  const int n = 1;
  WRational f = c(n, "1") / WRational(r2(n));
  std::uint64_t state = 0x5EED;
  for (int i = 0; i < 20; ++i) {
    auto p = draw_exact_point(f, state, 100);
    EXPECT_FALSE(f.has_pole_at(p));
    Rational norm = p[0].norm();
    EXPECT_LE(norm, Rational(1, 4));
    EXPECT_GE(norm, Rational(1, 64));
  }
}

TEST(Holomorphic, Examples) {
  const int n = 2;
  EXPECT_TRUE(is_holomorphic(z(n, 0) * z(n, 0) + z(n, 1).scaled(3)));
  EXPECT_FALSE(is_holomorphic(z(n, 0) * zb(n, 1)));
  for (int k = 0; k < n; ++k) EXPECT_TRUE(is_holomorphic(z(n, k).scaled(GaussQ(-(n - 1)))));
}

TEST(Conjugate, Examples) {
  const int n = 2;
  EXPECT_TRUE(rational_equal(z(n, 0).scaled(GaussQ(0, 1)).conjugate(), zb(n, 0).scaled(GaussQ(0, -1))));
  WRational real = z(n, 0) * zb(n, 1) + zb(n, 0) * z(n, 1);
  EXPECT_TRUE(rational_equal(real.conjugate(), real));
}

TEST(Evaluate, Examples) {
  std::vector<std::complex<double>> p{{0.5, 0.0}};
  EXPECT_NEAR(std::abs(evaluate(z(1, 0) * zb(1, 0), Point{p}) - 0.25), 0.0, 1e-15);
  WRational f = WRational(WPoly::constant(1, 1) - r2(1)).inverse();
  EXPECT_NEAR(std::abs(evaluate(f, Point{{{0.0, 0.0}}}) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(evaluate(z(1, 0) + zb(1, 0), Point{{{0.0, 1.0}}})), 0.0, 1e-15);
  EXPECT_THROW(evaluate(f, Point{{{1.0, 0.0}}}), PoleError);
}

TEST(Expression, IngestsJsonTree) {
  auto doc = nlohmann::json::parse(R"({"div": [{"mul": [{"const": "2+i"}, {"var": "z1"}]},
                                               {"add": [{"const": "1"}, {"mul": [{"const": "-1"}, {"var": "z1"}, {"var": "zbar1"}]}]}]})");
  WRational f = parse_expression(doc, 1);
  WRational expected = z(1, 0).scaled(GaussQ(2, 1)) / WRational(WPoly::constant(1, 1) - r2(1));
  EXPECT_TRUE(rational_equal(f, expected));
  auto p = nlohmann::json::parse(R"({"pow": [{"var": "z2"}, 3]})");
  EXPECT_TRUE(rational_equal(parse_expression(p, 2), z(2, 1).pow(3)));
  EXPECT_THROW(parse_expression(nlohmann::json::parse(R"({"var": "z3"})"), 2), std::invalid_argument);
  EXPECT_THROW(parse_expression(nlohmann::json::parse(R"({"pow": [{"var": "z1"}, -1]})"), 2), std::invalid_argument);
  EXPECT_THROW(parse_expression(nlohmann::json::parse(R"({"sin": []})"), 2), std::invalid_argument);
  auto radial = nlohmann::json::parse(R"({"mul": [{"var": "r1"}, {"var": "r2"}]})");
  EXPECT_TRUE(rational_equal(parse_expression(radial, 2, VariableNaming::radial).radial_to_complex(2),
                             WRational(WPoly::z(2, 0) * WPoly::zbar(2, 0) * WPoly::z(2, 1) * WPoly::zbar(2, 1))));
}

TEST(Properties, MixedPartialsCommute) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 1 + trial % 3;
    WRational f = chern::testing::random_rational(rng, n);
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        EXPECT_TRUE(rational_equal(f.derivative(j, false).derivative(k, true), f.derivative(k, true).derivative(j, false)));
      }
    }
  }
}

TEST(Properties, ConjugationIsInvolution) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    WRational f = chern::testing::random_rational(rng, 1 + trial % 3);
    EXPECT_TRUE(rational_equal(f.conjugate().conjugate(), f));
  }
}

TEST(Properties, ExactAndRandomizedAgree) {
  std::mt19937_64 rng(13);
  int zeros = 0;
  for (int trial = 0; trial < 120; ++trial) {
    int n = 1 + trial % 3;
    WRational f = chern::testing::random_rational(rng, n);
    WRational g = trial % 2 ? f - f.conjugate().conjugate() : f;
    if (trial % 4 == 3) g = f.derivative(0, false).derivative(0, true) - f.derivative(0, true).derivative(0, false);
    bool exact = is_identically_zero(g, IdentityMode::exact);
    zeros += exact;
    EXPECT_EQ(exact, is_identically_zero(g, IdentityMode::randomized));
  }
  EXPECT_GT(zeros, 20);
  EXPECT_LT(zeros, 120);
}

TEST(Properties, HolomorphicAndAntiholomorphicImpliesConstant) {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 1 + trial % 3;
    WRational f = chern::testing::random_rational(rng, n);
    if (trial % 5 == 0) f = c(n, "7/3");
    if (is_holomorphic(f) && is_holomorphic(f.conjugate())) EXPECT_TRUE(is_locally_constant(f));
  }
}
