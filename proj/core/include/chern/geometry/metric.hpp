#pragma once

#include <vector>

#include "chern/wirtinger/identity.hpp"
#include "chern/wirtinger/wrational.hpp"

namespace chern::geometry {

using wirtinger::WRational;
using FieldVector = std::vector<WRational>;
using FieldMatrix = std::vector<FieldVector>;

FieldMatrix zero_matrix(int n);
FieldMatrix identity_matrix(int n);

/// h[j][k] = h_{j kbar}; h_inv[j][k] = h^{j kbar}, normalized so that
/// sum_k h^{j kbar} h_{l kbar} = delta_{jl}.
struct MetricField {
  int n = 0;
  FieldMatrix h;
  FieldMatrix h_inv;
  WRational det;
};

/// scale * (diag(diagonal) + u v^T), inverted by Sherman-Morrison for any n.
struct RankOneTemplate {
  FieldVector diagonal;
  FieldVector u;
  FieldVector v;
  WRational scale;
};

/// Gradient a_j = d chi / d r_j and Hessian b_jk of a radial potential,
/// all fields over r_1..r_n held in the z slots.
struct RadialPotential {
  int n = 0;
  FieldVector gradient;
  FieldMatrix hessian;
};

/// Inverse by adjugate (n <= 4) or directly when the matrix is diagonal.
MetricField metric_from_entries(FieldMatrix h);
MetricField metric_from_rank_one(const RankOneTemplate& t);
/// Complex Hessian h_{j kbar} = d_j d_kbar chi of a rational potential.
MetricField metric_from_potential(const WRational& chi);
RadialPotential radial_potential(const WRational& chi_tilde);
/// Potential data from the gradient only; b_jk = d a_j / d r_k.
RadialPotential radial_potential_from_gradient(FieldVector gradient);
/// h_{j kbar} = a_j delta_jk + zbar_j z_k b_jk with r_k -> |z_k|^2.
MetricField metric_from_radial(const RadialPotential& p);
MetricField conformal_metric(const MetricField& h, const WRational& phi);

/// h . h_inv^T, which must be the identity.
FieldMatrix inverse_product(const MetricField& m);
bool inverse_is_consistent(const MetricField& m);
bool is_hermitian(const FieldMatrix& h);
bool determinant_is_consistent(const MetricField& m);
WRational determinant(const FieldMatrix& h);

/// Numerical positive-definiteness of h at a point (Cholesky).
bool positive_definite_at(const MetricField& m, const wirtinger::Point& p);

}  // namespace chern::geometry
