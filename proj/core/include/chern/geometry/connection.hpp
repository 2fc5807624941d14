#pragma once

#include <array>
#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "chern/geometry/metric.hpp"

namespace chern::geometry {

/// Dense rank-R array of fields, every index running over 0..n-1.
template <std::size_t R>
class FieldTensor {
 public:
  FieldTensor() = default;
  explicit FieldTensor(int n) : n_(n), data_(size_for(n), WRational(n)) {}

  int dimension() const { return n_; }

  template <class... I>
  WRational& operator()(I... idx) {
    static_assert(sizeof...(I) == R);
    return data_[offset({static_cast<int>(idx)...})];
  }
  template <class... I>
  const WRational& operator()(I... idx) const {
    static_assert(sizeof...(I) == R);
    return data_[offset({static_cast<int>(idx)...})];
  }

  const std::vector<WRational>& data() const { return data_; }

 private:
  static std::size_t size_for(int n) {
    std::size_t s = 1;
    for (std::size_t i = 0; i < R; ++i) s *= static_cast<std::size_t>(n);
    return s;
  }
  std::size_t offset(std::array<int, R> idx) const {
    std::size_t o = 0;
    for (int i : idx) o = o * n_ + i;
    return o;
  }

  int n_ = 0;
  std::vector<WRational> data_;
};

using Tensor3 = FieldTensor<3>;
using Tensor4 = FieldTensor<4>;

/// gamma(i,j,k) = Gamma^i_{jk}; torsion(i,j,k) = T^i_{jk}; tau[j] = tau_j;
/// raised(p,r,s) = T_p^{rs}; curvature(i,j,k,l) = R_{i jbar k lbar}.
struct ConnectionPack {
  int n = 0;
  Tensor3 gamma;
  Tensor3 torsion;
  FieldVector tau;
  Tensor3 raised;
  std::optional<Tensor4> curvature;
};

struct CurvatureReport {
  FieldMatrix ricci1;
  FieldMatrix ricci2;
  FieldMatrix ricci3;
  WRational scalar_s;
  WRational scalar_hat;
  Tensor4 curvature;
};

ConnectionPack connection(const MetricField& h, bool with_curvature = false);
Tensor4 curvature_tensor(const MetricField& h, const ConnectionPack& pack);
CurvatureReport curvature_report(const MetricField& h);
CurvatureReport curvature_report(const MetricField& h, const ConnectionPack& pack);

bool has_holomorphic_torsion(const MetricField& h);
bool has_holomorphic_torsion(const ConnectionPack& pack);

/// Antisymmetry of T^i_{jk}, T_p^{rs} and the trace identity for tau.
bool torsion_identities_hold(const ConnectionPack& pack);

/// R(xi, xibar, xi, xibar) / h(xi, xi)^2 at z.
double holomorphic_sectional_curvature(const MetricField& h, const wirtinger::Point& z,
                                       std::span<const std::complex<double>> xi,
                                       const Tensor4* curvature = nullptr);

}  // namespace chern::geometry
