#include "chern/geometry/metric.hpp"

#include <Eigen/Dense>

#include <stdexcept>

namespace chern::geometry {

using wirtinger::GaussQ;
using wirtinger::WPoly;

namespace {

WRational one(int n) { return WRational::constant(n, GaussQ(1)); }

bool is_diagonal(const FieldMatrix& h) {
  for (std::size_t j = 0; j < h.size(); ++j) {
    for (std::size_t k = 0; k < h.size(); ++k) {
      if (j != k && !h[j][k].is_zero()) return false;
    }
  }
  return true;
}

FieldMatrix minor_of(const FieldMatrix& h, std::size_t row, std::size_t col) {
  FieldMatrix out;
  for (std::size_t j = 0; j < h.size(); ++j) {
    if (j == row) continue;
    FieldVector r;
    for (std::size_t k = 0; k < h.size(); ++k) {
      if (k != col) r.push_back(h[j][k]);
    }
    out.push_back(std::move(r));
  }
  return out;
}

WRational laplace_det(const FieldMatrix& h, int n) {
  std::size_t m = h.size();
  if (m == 0) return one(n);
  if (m == 1) return h[0][0];
  if (m == 2) return h[0][0] * h[1][1] - h[0][1] * h[1][0];
  WRational acc(n);
  for (std::size_t k = 0; k < m; ++k) {
    if (h[0][k].is_zero()) continue;
    WRational term = h[0][k] * laplace_det(minor_of(h, 0, k), n);
    if (k % 2) {
      acc -= term;
    } else {
      acc += term;
    }
  }
  return acc;
}

int dimension_of(const FieldMatrix& h) {
  if (h.empty()) throw std::invalid_argument("empty metric");
  for (const auto& row : h) {
    if (row.size() != h.size()) throw std::invalid_argument("metric must be square");
  }
  return h[0][0].dimension();
}

}  // namespace

FieldMatrix zero_matrix(int n) { return FieldMatrix(n, FieldVector(n, WRational(n))); }

FieldMatrix identity_matrix(int n) {
  FieldMatrix m = zero_matrix(n);
  for (int j = 0; j < n; ++j) m[j][j] = one(n);
  return m;
}

WRational determinant(const FieldMatrix& h) { return laplace_det(h, dimension_of(h)); }

MetricField metric_from_entries(FieldMatrix h) {
  const int n = dimension_of(h);
  MetricField m;
  m.n = n;
  if (is_diagonal(h)) {
    m.det = one(n);
    m.h_inv = zero_matrix(n);
    for (int j = 0; j < n; ++j) {
      if (wirtinger::is_identically_zero(h[j][j])) throw std::domain_error("metric determinant is identically zero");
      m.det *= h[j][j];
      m.h_inv[j][j] = h[j][j].inverse();
    }
    m.h = std::move(h);
    return m;
  }
  if (n > 4) throw std::invalid_argument("symbolic inversion beyond n = 4 needs a rank-one template");
  m.det = laplace_det(h, n);
  if (wirtinger::is_identically_zero(m.det)) throw std::domain_error("metric determinant is identically zero");
  WRational inv_det = m.det.inverse();
  m.h_inv = zero_matrix(n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      WRational cof = laplace_det(minor_of(h, j, k), n);
      if ((j + k) % 2) cof = -cof;
      m.h_inv[j][k] = cof * inv_det;
    }
  }
  m.h = std::move(h);
  return m;
}

MetricField metric_from_rank_one(const RankOneTemplate& t) {
  const int n = static_cast<int>(t.diagonal.size());
  if (n == 0 || t.u.size() != t.diagonal.size() || t.v.size() != t.diagonal.size()) {
    throw std::invalid_argument("rank-one template sizes disagree");
  }
  const int dim = t.scale.dimension();
  if (wirtinger::is_identically_zero(t.scale)) throw std::domain_error("metric determinant is identically zero");
  FieldVector dinv;
  for (const auto& d : t.diagonal) {
    if (wirtinger::is_identically_zero(d)) throw std::domain_error("metric determinant is identically zero");
    dinv.push_back(d.inverse());
  }
  WRational denom = one(dim);
  for (int i = 0; i < n; ++i) denom += t.v[i] * t.u[i] * dinv[i];
  if (wirtinger::is_identically_zero(denom)) throw std::domain_error("metric determinant is identically zero");
  WRational denom_inv = denom.inverse();
  WRational scale_inv = t.scale.inverse();

  MetricField m;
  m.n = n;
  m.h = zero_matrix(dim);
  m.h_inv = zero_matrix(dim);
  FieldVector ud(n), vd(n);
  for (int i = 0; i < n; ++i) {
    ud[i] = t.u[i] * dinv[i];
    vd[i] = t.v[i] * dinv[i];
  }
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      WRational base = t.u[j] * t.v[k];
      if (j == k) base += t.diagonal[j];
      m.h[j][k] = t.scale * base;
      WRational inv = -(ud[k] * vd[j] * denom_inv);
      if (j == k) inv += dinv[j];
      m.h_inv[j][k] = scale_inv * inv;
    }
  }
  m.det = t.scale.pow(n) * denom;
  for (const auto& d : t.diagonal) m.det *= d;
  return m;
}

MetricField metric_from_potential(const WRational& chi) {
  const int n = chi.dimension();
  FieldMatrix h = zero_matrix(n);
  for (int k = 0; k < n; ++k) {
    WRational dk = chi.derivative(k, true);
    for (int j = 0; j < n; ++j) h[j][k] = dk.derivative(j, false);
  }
  if (!is_hermitian(h)) throw std::invalid_argument("potential Hessian is not Hermitian");
  return metric_from_entries(std::move(h));
}

RadialPotential radial_potential_from_gradient(FieldVector gradient) {
  RadialPotential p;
  p.n = static_cast<int>(gradient.size());
  p.hessian = zero_matrix(gradient.at(0).dimension());
  for (int j = 0; j < p.n; ++j) {
    for (int k = 0; k < p.n; ++k) p.hessian[j][k] = gradient[j].derivative(k, false);
  }
  for (int j = 0; j < p.n; ++j) {
    for (int k = j + 1; k < p.n; ++k) {
      if (!wirtinger::rational_equal(p.hessian[j][k], p.hessian[k][j])) {
        throw std::invalid_argument("radial gradient is not closed");
      }
    }
  }
  p.gradient = std::move(gradient);
  return p;
}

RadialPotential radial_potential(const WRational& chi_tilde) {
  FieldVector g;
  for (int j = 0; j < chi_tilde.dimension(); ++j) g.push_back(chi_tilde.derivative(j, false));
  return radial_potential_from_gradient(std::move(g));
}

MetricField metric_from_radial(const RadialPotential& p) {
  const int n = p.n;
  FieldMatrix h = zero_matrix(n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      WRational b = p.hessian[j][k].radial_to_complex(n);
      WRational entry = WRational::zbar(n, j) * WRational::z(n, k) * b;
      if (j == k) entry += p.gradient[j].radial_to_complex(n);
      h[j][k] = std::move(entry);
    }
  }
  return metric_from_entries(std::move(h));
}

MetricField conformal_metric(const MetricField& h, const WRational& phi) {
  if (wirtinger::is_identically_zero(phi)) throw std::domain_error("conformal factor is identically zero");
  MetricField g;
  g.n = h.n;
  WRational inv = phi.inverse();
  g.h = h.h;
  g.h_inv = h.h_inv;
  for (int j = 0; j < h.n; ++j) {
    for (int k = 0; k < h.n; ++k) {
      g.h[j][k] *= inv;
      g.h_inv[j][k] *= phi;
    }
  }
  g.det = h.det * inv.pow(h.n);
  return g;
}

FieldMatrix inverse_product(const MetricField& m) {
  FieldMatrix out = zero_matrix(m.n);
  for (int j = 0; j < m.n; ++j) {
    for (int l = 0; l < m.n; ++l) {
      for (int k = 0; k < m.n; ++k) out[j][l] += m.h[j][k] * m.h_inv[l][k];
    }
  }
  return out;
}

bool inverse_is_consistent(const MetricField& m) {
  FieldMatrix p = inverse_product(m);
  FieldMatrix id = identity_matrix(m.n);
  for (int j = 0; j < m.n; ++j) {
    for (int l = 0; l < m.n; ++l) {
      if (!wirtinger::rational_equal(p[j][l], id[j][l])) return false;
    }
  }
  return true;
}

bool is_hermitian(const FieldMatrix& h) {
  for (std::size_t j = 0; j < h.size(); ++j) {
    for (std::size_t k = j; k < h.size(); ++k) {
      if (!wirtinger::rational_equal(h[j][k], h[k][j].conjugate())) return false;
    }
  }
  return true;
}

bool determinant_is_consistent(const MetricField& m) {
  if (m.n <= 4) return wirtinger::rational_equal(determinant(m.h), m.det);
  for (int trial = 1; trial <= 3; ++trial) {
    wirtinger::Point p;
    for (int k = 0; k < m.n; ++k) p.z.emplace_back(0.05 * trial + 0.01 * k, 0.02 * k - 0.03 * trial);
    Eigen::MatrixXcd a(m.n, m.n);
    for (int j = 0; j < m.n; ++j) {
      for (int k = 0; k < m.n; ++k) a(j, k) = m.h[j][k].evaluate(p.z);
    }
    std::complex<double> expected = m.det.evaluate(p.z);
    if (std::abs(a.determinant() - expected) > 1e-10 * (1.0 + std::abs(expected))) return false;
  }
  return true;
}

bool positive_definite_at(const MetricField& m, const wirtinger::Point& p) {
  Eigen::MatrixXcd a(m.n, m.n);
  for (int j = 0; j < m.n; ++j) {
    for (int k = 0; k < m.n; ++k) a(j, k) = m.h[j][k].evaluate(p.z);
  }
  if ((a - a.adjoint()).norm() > 1e-9 * (1.0 + a.norm())) return false;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a);
  return es.eigenvalues().minCoeff() > 0.0;
}

}  // namespace chern::geometry
