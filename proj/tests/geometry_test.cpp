#include <gtest/gtest.h>

#include <complex>
#include <random>

#include "chern/geometry/weight.hpp"

using namespace chern::geometry;
using chern::wirtinger::Exponent;
using chern::wirtinger::GaussQ;
using chern::wirtinger::Point;
using chern::wirtinger::Rational;
using chern::wirtinger::WPoly;
using chern::wirtinger::is_holomorphic;
using chern::wirtinger::is_identically_zero;
using chern::wirtinger::rational_equal;

namespace {

WRational z(int n, int k) { return WRational::z(n, k); }
WRational zb(int n, int k) { return WRational::zbar(n, k); }
WRational num(int n, long v) { return WRational::constant(n, GaussQ(v)); }
WRational q(int n, long p, long d) { return WRational::constant(n, GaussQ(Rational(p, d))); }
WPoly one_minus_r(int n) { return WPoly::constant(n, GaussQ(1)) - WPoly::norm_squared(n); }
WRational norm2(int n) { return WRational(WPoly::norm_squared(n)); }

RankOneTemplate ball_template(int n, Exponent beta) {
  RankOneTemplate t;
  WRational w = WRational(one_minus_r(n)).inverse();
  for (int k = 0; k < n; ++k) {
    t.diagonal.push_back(num(n, 1));
    t.u.push_back(zb(n, k));
    t.v.push_back(z(n, k) * w);
  }
  t.scale = WRational::power(one_minus_r(n), beta - Exponent(1));
  return t;
}

MetricField half_hyperbolic(int n) { return metric_from_rank_one(ball_template(n, Exponent(1))); }

MetricField hyperbolic(int n) {
  FieldVector grad;
  WPoly s = WPoly::constant(n, GaussQ(1));
  for (int k = 0; k < n; ++k) s -= WPoly::z(n, k);
  for (int k = 0; k < n; ++k) grad.push_back(WRational(s).inverse());
  return metric_from_radial(radial_potential_from_gradient(grad));
}

MetricField flat(int n) { return metric_from_entries(identity_matrix(n)); }

MetricField hopf(int n) { return conformal_metric(flat(n), norm2(n) * q(n, 1, 4)); }

WRational c2_potential() {
  const int n = 2;
  WRational r1 = z(n, 0), r2 = z(n, 1);
  return r1 * r1 * q(n, 1, 4) + r1 * r2 + r1 + r2;
}

WeightField log_ball_weight(int n, const GaussQ& b) {
  WeightField w;
  w.n = n;
  WRational inv = WRational(one_minus_r(n)).inverse();
  for (int k = 0; k < n; ++k) w.dbar_psi.push_back(-(z(n, k) * inv).scaled(b));
  return w;
}

FieldVector scaled_position(int n, const GaussQ& c) {
  FieldVector v;
  for (int k = 0; k < n; ++k) v.push_back(z(n, k).scaled(c));
  return v;
}

Point sample(int n, std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Point p;
  for (int k = 0; k < n; ++k) p.z.emplace_back(u(rng), u(rng));
  double norm = 0.0;
  for (auto v : p.z) norm += std::norm(v);
  double s = radius / std::sqrt(norm);
  for (auto& v : p.z) v *= s;
  return p;
}

bool all_zero(const std::vector<WRational>& v) {
  for (const auto& f : v) {
    if (!is_identically_zero(f)) return false;
  }
  return true;
}

void expect_valid(const MetricField& m) {
  EXPECT_TRUE(inverse_is_consistent(m));
  EXPECT_TRUE(is_hermitian(m.h));
  EXPECT_TRUE(determinant_is_consistent(m));
}

}  // namespace

TEST(Metric, FlatFromPotential) {
  const int n = 2;
  MetricField h = metric_from_radial(radial_potential(z(n, 0) + z(n, 1)));
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) EXPECT_TRUE(rational_equal(h.h[j][k], num(n, j == k)));
  }
  expect_valid(h);
}

TEST(Metric, C2ExampleEntriesAndDeterminant) {
  const int n = 2;
  MetricField h = metric_from_radial(radial_potential(c2_potential()));
  WRational r1 = z(n, 0) * zb(n, 0), r2 = z(n, 1) * zb(n, 1);
  EXPECT_TRUE(rational_equal(h.h[0][0], r1 + r2 + num(n, 1)));
  EXPECT_TRUE(rational_equal(h.h[0][1], zb(n, 0) * z(n, 1)));
  EXPECT_TRUE(rational_equal(h.h[1][0], z(n, 0) * zb(n, 1)));
  EXPECT_TRUE(rational_equal(h.h[1][1], r1 + num(n, 1)));
  WRational delta = r1 * r1 + r1.scaled(2) + r2 + num(n, 1);
  EXPECT_TRUE(rational_equal(h.det, delta));
  EXPECT_TRUE(rational_equal(h.h_inv[0][0], (r1 + num(n, 1)) / delta));
  EXPECT_TRUE(rational_equal(h.h_inv[0][1], -(z(n, 0) * zb(n, 1)) / delta));
  EXPECT_TRUE(rational_equal(h.h_inv[1][0], -(zb(n, 0) * z(n, 1)) / delta));
  EXPECT_TRUE(rational_equal(h.h_inv[1][1], (r1 + r2 + num(n, 1)) / delta));
  expect_valid(h);
  EXPECT_TRUE(has_holomorphic_torsion(h));
}

TEST(Metric, ConformalIdentityFactor) {
  MetricField h = half_hyperbolic(2);
  MetricField g = conformal_metric(h, num(2, 1));
  for (int j = 0; j < 2; ++j) {
    for (int k = 0; k < 2; ++k) EXPECT_TRUE(rational_equal(g.h[j][k], h.h[j][k]));
  }
  EXPECT_THROW(conformal_metric(h, WRational(2)), std::domain_error);
}

TEST(Metric, HyperbolicConformalIsHalfHyperbolic) {
  const int n = 3;
  MetricField g = conformal_metric(hyperbolic(n), WRational(one_minus_r(n)).inverse());
  MetricField hh = half_hyperbolic(n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      WRational expected = num(n, j == k) + zb(n, j) * z(n, k) / WRational(one_minus_r(n));
      EXPECT_TRUE(rational_equal(g.h[j][k], expected));
      EXPECT_TRUE(rational_equal(hh.h[j][k], expected));
    }
  }
  expect_valid(g);
}

TEST(Metric, HopfEntries) {
  const int n = 2;
  MetricField g = hopf(n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      EXPECT_TRUE(rational_equal(g.h[j][k], j == k ? num(n, 4) / norm2(n) : WRational(n)));
    }
  }
  EXPECT_TRUE(has_holomorphic_torsion(g));
  expect_valid(g);
}

TEST(Metric, HopfScalingInvariance) {
  const int n = 3;
  MetricField g = hopf(n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      EXPECT_TRUE(rational_equal(g.h[j][k].scale_variables(GaussQ(Rational(1, 2))).scaled(GaussQ(Rational(1, 4))),
                                 g.h[j][k]));
    }
  }
}

TEST(Metric, ShermanMorrisonMatchesAdjugate) {
  for (int n = 2; n <= 4; ++n) {
    MetricField sm = half_hyperbolic(n);
    MetricField adj = metric_from_entries(sm.h);
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) EXPECT_TRUE(rational_equal(sm.h_inv[j][k], adj.h_inv[j][k]));
    }
    EXPECT_TRUE(rational_equal(sm.det, adj.det));
  }
}

TEST(Metric, LargeDimensionNeedsTemplate) {
  const int n = 5;
  MetricField hh = half_hyperbolic(n);
  EXPECT_THROW(metric_from_entries(hh.h), std::invalid_argument);
  EXPECT_TRUE(inverse_is_consistent(hh));
  EXPECT_TRUE(determinant_is_consistent(hh));
  EXPECT_TRUE(rational_equal(hh.det, WRational(one_minus_r(n)).inverse()));
}

TEST(Metric, PositiveDefiniteSpotChecks) {
  std::mt19937_64 rng(21);
  MetricField hh = half_hyperbolic(3);
  MetricField hp = hopf(3);
  for (int i = 0; i < 10; ++i) {
    EXPECT_TRUE(positive_definite_at(hh, sample(3, rng, 0.9)));
    EXPECT_TRUE(positive_definite_at(hp, sample(3, rng, 3.0)));
  }
  MetricField neg = conformal_metric(flat(2), num(2, -1));
  EXPECT_FALSE(positive_definite_at(neg, sample(2, rng, 0.5)));
}

TEST(Connection, FlatHasNoTorsionOrCurvature) {
  MetricField h = flat(3);
  ConnectionPack pack = connection(h, true);
  EXPECT_TRUE(all_zero(pack.gamma.data()));
  EXPECT_TRUE(all_zero(pack.torsion.data()));
  EXPECT_TRUE(all_zero(pack.raised.data()));
  EXPECT_TRUE(all_zero(pack.tau));
  EXPECT_TRUE(all_zero(pack.curvature->data()));
  std::vector<std::complex<double>> xi{{1.0, 0.0}, {0.0, 2.0}, {0.5, -0.5}};
  EXPECT_NEAR(holomorphic_sectional_curvature(h, Point{{{0.1, 0.2}, {0.0, 0.3}, {-0.2, 0.1}}}, xi), 0.0, 1e-14);
}

TEST(Connection, HalfHyperbolicRaisedTorsion) {
  for (int n = 2; n <= 3; ++n) {
    MetricField h = half_hyperbolic(n);
    ConnectionPack pack = connection(h);
    for (int p = 0; p < n; ++p) {
      for (int r = 0; r < n; ++r) {
        for (int s = 0; s < n; ++s) {
          WRational expected(n);
          if (r == p) expected += z(n, s);
          if (s == p) expected -= z(n, r);
          EXPECT_TRUE(rational_equal(pack.raised(p, r, s), expected)) << p << r << s;
        }
      }
    }
    EXPECT_TRUE(torsion_identities_hold(pack));
    EXPECT_TRUE(has_holomorphic_torsion(pack));
  }
}

TEST(Connection, HalfHyperbolicTauSharp) {
  const int n = 3;
  MetricField h = half_hyperbolic(n);
  ConnectionPack pack = connection(h);
  WeightField zero{n, FieldVector(n, WRational(n)), "zero"};
  FieldVector minus_tau_sharp = gradient_minus_torsion_field(h, zero, pack);
  // (tau-bar)^sharp = -(n-1) z, so the field above is (n-1) z.
  EXPECT_TRUE(fields_equal(minus_tau_sharp, scaled_position(n, GaussQ(long(n - 1)))));
  for (const auto& c : minus_tau_sharp) EXPECT_TRUE(is_holomorphic(-c));
}

TEST(Connection, BetaFamilyTau) {
  const int n = 3;
  const Exponent grid[] = {Exponent(-1), Exponent(0), Exponent(1, 2), Exponent(1), Exponent(2)};
  for (Exponent beta : grid) {
    MetricField h = metric_from_rank_one(ball_template(n, beta));
    ConnectionPack pack = connection(h);
    GaussQ b(Rational(static_cast<long>(beta.numerator()), static_cast<long>(beta.denominator())));
    for (int j = 0; j < n; ++j) {
      WRational expected = (zb(n, j) / WRational(one_minus_r(n))).scaled(-b * GaussQ(long(n - 1)));
      EXPECT_TRUE(rational_equal(pack.tau[j], expected));
    }
    bool expect_holo = beta == Exponent(0) || beta == Exponent(1);
    EXPECT_EQ(has_holomorphic_torsion(pack), expect_holo) << beta;
    EXPECT_TRUE(torsion_identities_hold(pack));
    EXPECT_TRUE(inverse_is_consistent(h));
  }
}

TEST(Curvature, HalfHyperbolic) {
  const int n = 2;
  MetricField h = half_hyperbolic(n);
  CurvatureReport rep = curvature_report(h);
  WRational w = WRational(one_minus_r(n)).inverse();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
          EXPECT_TRUE(rational_equal(rep.curvature(i, j, k, l), -(h.h[i][l] * h.h[k][j] * w)));
          EXPECT_TRUE(rational_equal(rep.curvature(i, j, k, l), rep.curvature(k, l, i, j)));
        }
      }
    }
  }
  EXPECT_TRUE(rational_equal(rep.scalar_s, -w.scaled(GaussQ(long(n)))));
  EXPECT_TRUE(rational_equal(rep.scalar_hat, -w.scaled(GaussQ(long(n * n)))));
}

TEST(Curvature, HalfHyperbolicSectional) {
  const int n = 3;
  MetricField h = half_hyperbolic(n);
  Tensor4 r = curvature_tensor(h, connection(h));
  std::mt19937_64 rng(22);
  std::normal_distribution<double> g;
  auto random_xi = [&] {
    std::vector<std::complex<double>> xi;
    for (int k = 0; k < n; ++k) xi.emplace_back(g(rng), g(rng));
    return xi;
  };
  Point origin{std::vector<std::complex<double>>(n)};
  for (int i = 0; i < 3; ++i) {
    auto xi = random_xi();
    EXPECT_NEAR(holomorphic_sectional_curvature(h, origin, xi, &r), -1.0, 1e-12);
  }
  Point p = sample(n, rng, 0.6);
  double k1 = holomorphic_sectional_curvature(h, p, random_xi(), &r);
  double k2 = holomorphic_sectional_curvature(h, p, random_xi(), &r);
  EXPECT_NEAR(k1, k2, 1e-10);
  EXPECT_NEAR(k1, -1.0 / (1.0 - 0.36), 1e-10);
  std::vector<std::complex<double>> zero(n);
  EXPECT_THROW(holomorphic_sectional_curvature(h, p, zero, &r), std::invalid_argument);
}

TEST(Weight, HalfHyperbolicLogWeight) {
  const int n = 3;
  MetricField h = half_hyperbolic(n);
  GaussQ alpha(Rational(-3, 2));
  WeightField w = log_ball_weight(n, alpha);
  EXPECT_TRUE(weight_is_closed(w));
  EXPECT_TRUE(fields_equal(gradient_field(h, w), scaled_position(n, -alpha)));
  EXPECT_TRUE(fields_equal(gradient_minus_torsion_field(h, w), scaled_position(n, GaussQ(long(n - 1)) - alpha)));
  EXPECT_TRUE(is_real_holomorphic_gradient(h, w));
}

TEST(Weight, NormSquaredWeight) {
  const int n = 2;
  WeightField w{n, {z(n, 0), z(n, 1)}, "|z|^2"};
  EXPECT_FALSE(is_real_holomorphic_gradient(half_hyperbolic(n), w));
  EXPECT_TRUE(is_real_holomorphic_gradient(flat(n), w));
  EXPECT_TRUE(fields_equal(gradient_field(flat(n), w), scaled_position(n, GaussQ(1))));
}

TEST(Weight, ConstantWeight) {
  const int n = 2;
  WeightField w{n, FieldVector(n, WRational(n)), "const"};
  EXPECT_TRUE(all_zero(gradient_field(half_hyperbolic(n), w)));
  MetricField k = metric_from_radial(radial_potential(c2_potential()));
  EXPECT_TRUE(fields_equal(gradient_minus_torsion_field(k, w), gradient_field(k, w)));
}

TEST(Weight, C2ExampleGradient) {
  const int n = 2;
  RadialPotential p = radial_potential(c2_potential());
  MetricField h = metric_from_radial(p);
  // psi~ = r1 * d chi~/d r1, psi_kbar = z_k d psi~/d r_k
  WRational psi = z(n, 0) * p.gradient[0];
  WeightField w;
  w.n = n;
  for (int k = 0; k < n; ++k) w.dbar_psi.push_back(z(n, k) * psi.derivative(k, false).radial_to_complex(n));
  EXPECT_TRUE(weight_is_closed(w));
  EXPECT_TRUE(fields_equal(gradient_field(h, w), {z(n, 0), WRational(n)}));
}

TEST(Weight, NonClosedCovector) {
  WeightField w{2, {zb(2, 1), WRational(2)}, "bad"};
  EXPECT_FALSE(weight_is_closed(w));
}

TEST(Conformal, TorsionLawAndTripod) {
  const int n = 3;
  MetricField k = hyperbolic(n);
  WRational phi = WRational(one_minus_r(n)).inverse();
  MetricField g = conformal_metric(k, phi);
  ConnectionPack pack = connection(g);
  EXPECT_TRUE(conformal_torsion_law(phi, pack));
  ConformalTripod t = conformal_tripod(k, phi, g, pack);
  EXPECT_TRUE(t.torsion_holomorphic);
  EXPECT_TRUE(t.agree());
}

TEST(Conformal, HopfTripod) {
  const int n = 2;
  WRational phi = norm2(n) * q(n, 1, 4);
  MetricField g = conformal_metric(flat(n), phi);
  ConnectionPack pack = connection(g);
  EXPECT_TRUE(conformal_torsion_law(phi, pack));
  ConformalTripod t = conformal_tripod(flat(n), phi, g, pack);
  EXPECT_TRUE(t.torsion_holomorphic);
  EXPECT_TRUE(t.agree());
}

TEST(Conformal, PerturbedFactorBreaksTripod) {
  const int n = 2;
  WRational phi = num(n, 1) + z(n, 0) * z(n, 0) * zb(n, 0) * zb(n, 0);
  MetricField g = conformal_metric(flat(n), phi);
  ConnectionPack pack = connection(g);
  EXPECT_TRUE(conformal_torsion_law(phi, pack));
  ConformalTripod t = conformal_tripod(flat(n), phi, g, pack);
  EXPECT_FALSE(t.torsion_holomorphic);
  EXPECT_TRUE(t.agree());
}

TEST(Conformal, FubiniStudyQuadratic) {
  const int n = 2;
  FieldVector grad;
  WPoly s = WPoly::constant(n, GaussQ(1));
  for (int k = 0; k < n; ++k) s += WPoly::z(n, k);
  for (int k = 0; k < n; ++k) grad.push_back(WRational(s).inverse());
  MetricField fs = metric_from_radial(radial_potential_from_gradient(grad));
  WRational onep = WRational(WPoly::constant(n, GaussQ(1)) + WPoly::norm_squared(n));
  WRational quad = num(n, 3) + z(n, 0) * zb(n, 1) + zb(n, 0) * z(n, 1) + (z(n, 1) + zb(n, 1)).scaled(GaussQ(Rational(1, 2)));
  ConformalTripod good = conformal_tripod(fs, quad / onep);
  EXPECT_TRUE(good.torsion_holomorphic);
  EXPECT_TRUE(good.agree());
  ConformalTripod bad = conformal_tripod(fs, quad / onep + z(n, 0) * z(n, 0) * zb(n, 0) * zb(n, 0));
  EXPECT_FALSE(bad.torsion_holomorphic);
  EXPECT_TRUE(bad.agree());
}

TEST(Multiradial, FlatNeedsNoCorrection) {
  const int n = 2;
  RadialPotential p = radial_potential(z(n, 0) + z(n, 1));
  Point pt{{{0.3, -0.2}, {0.1, 0.4}}};
  RadialTable t = radial_table(p, pt);
  for (int j = 0; j < n; ++j) {
    for (double v : multiradial_inverse_correction(t, j)) EXPECT_NEAR(v, 0.0, 1e-15);
  }
}

TEST(Multiradial, C2ExampleAssembledInverse) {
  const int n = 2;
  RadialPotential p = radial_potential(c2_potential());
  MetricField h = metric_from_radial(p);
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 5; ++trial) {
    Point pt = sample(n, rng, 0.3 + 0.4 * trial);
    auto inv = assembled_inverse(radial_table(p, pt), pt);
    double r1 = std::norm(pt.z[0]), r2 = std::norm(pt.z[1]);
    double delta = r1 * r1 + 2 * r1 + r2 + 1;
    std::complex<double> z1 = pt.z[0], z2 = pt.z[1];
    std::complex<double> expected[2][2] = {{(r1 + 1) / delta, -z1 * std::conj(z2) / delta},
                                           {-std::conj(z1) * z2 / delta, (r1 + r2 + 1) / delta}};
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        EXPECT_NEAR(std::abs(inv[j][k] - expected[j][k]), 0.0, 1e-12);
        EXPECT_NEAR(std::abs(inv[j][k] - h.h_inv[j][k].evaluate(pt.z)), 0.0, 1e-12);
      }
    }
  }
}

TEST(Multiradial, DecoupledIsDiagonal) {
  const int n = 2;
  // F1 = -log(1 - r), F2 = r + r^2
  FieldVector grad{WRational(WPoly::constant(n, GaussQ(1)) - WPoly::z(n, 0)).inverse(), num(n, 1) + z(n, 1).scaled(2)};
  RadialPotential p = radial_potential_from_gradient(grad);
  Point pt{{{0.4, 0.3}, {-0.5, 0.2}}};
  auto inv = assembled_inverse(radial_table(p, pt), pt);
  double r1 = std::norm(pt.z[0]), r2 = std::norm(pt.z[1]);
  double d1 = 1 / (1 - r1) + r1 / ((1 - r1) * (1 - r1));
  double d2 = 1 + 2 * r2 + 2 * r2;
  EXPECT_NEAR(std::abs(inv[0][0] - 1.0 / d1), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(inv[1][1] - 1.0 / d2), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(inv[0][1]), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(inv[1][0]), 0.0, 1e-14);
}

TEST(Multiradial, SingularSystemReported) {
  RadialTable t{{0.5, 0.5}, {1.0, 1.0}, {{-2.0, 0.0}, {0.0, 1.0}}};
  EXPECT_THROW(multiradial_inverse_correction(t, 0), std::domain_error);
}
