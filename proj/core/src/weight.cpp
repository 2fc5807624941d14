#include "chern/geometry/weight.hpp"

#include <Eigen/Dense>

#include <stdexcept>

namespace chern::geometry {

using wirtinger::is_holomorphic;
using wirtinger::rational_equal;

bool weight_is_closed(const WeightField& w) {
  for (int k = 0; k < w.n; ++k) {
    for (int l = k + 1; l < w.n; ++l) {
      if (!rational_equal(w.dbar_psi[k].derivative(l, true), w.dbar_psi[l].derivative(k, true))) return false;
    }
  }
  return true;
}

namespace {

FieldVector raise(const MetricField& h, const FieldVector& cov) {
  FieldVector out(h.n, WRational(h.n));
  for (int j = 0; j < h.n; ++j) {
    for (int k = 0; k < h.n; ++k) {
      if (h.h_inv[j][k].is_zero() || cov[k].is_zero()) continue;
      out[j] += h.h_inv[j][k] * cov[k];
    }
  }
  return out;
}

}  // namespace

FieldVector gradient_field(const MetricField& h, const WeightField& w) {
  if (w.n != h.n) throw std::invalid_argument("weight and metric dimensions differ");
  return raise(h, w.dbar_psi);
}

FieldVector gradient_minus_torsion_field(const MetricField& h, const WeightField& w, const ConnectionPack& pack) {
  if (w.n != h.n) throw std::invalid_argument("weight and metric dimensions differ");
  FieldVector cov = w.dbar_psi;
  for (int k = 0; k < h.n; ++k) cov[k] -= pack.tau[k].conjugate();
  return raise(h, cov);
}

FieldVector gradient_minus_torsion_field(const MetricField& h, const WeightField& w) {
  return gradient_minus_torsion_field(h, w, connection(h));
}

bool all_holomorphic(const FieldVector& v) {
  for (const auto& f : v) {
    if (!is_holomorphic(f)) return false;
  }
  return true;
}

bool is_real_holomorphic_gradient(const MetricField& h, const WeightField& w) {
  return all_holomorphic(gradient_field(h, w));
}

bool fields_equal(const FieldVector& a, const FieldVector& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!rational_equal(a[i], b[i])) return false;
  }
  return true;
}

ConformalTripod conformal_tripod(const MetricField& kahler, const WRational& phi, const MetricField& g,
                                 const ConnectionPack& g_pack) {
  if (kahler.n < 2) throw std::invalid_argument("the conformal tripod needs n >= 2");
  ConformalTripod t;
  t.torsion_holomorphic = has_holomorphic_torsion(g_pack);
  FieldVector tau_bar;
  for (const auto& c : g_pack.tau) tau_bar.push_back(c.conjugate());
  t.tau_sharp_holomorphic = all_holomorphic(raise(g, tau_bar));
  FieldVector dphi;
  for (int k = 0; k < kahler.n; ++k) dphi.push_back(phi.derivative(k, true));
  t.phi_sharp_holomorphic = all_holomorphic(raise(kahler, dphi));
  return t;
}

ConformalTripod conformal_tripod(const MetricField& kahler, const WRational& phi) {
  MetricField g = conformal_metric(kahler, phi);
  return conformal_tripod(kahler, phi, g, connection(g));
}

bool conformal_torsion_law(const WRational& phi, const ConnectionPack& g_pack) {
  const int n = g_pack.n;
  WRational inv = phi.inverse();
  FieldVector sigma;
  for (int k = 0; k < n; ++k) sigma.push_back(-(phi.derivative(k, false) * inv));
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      for (int l = 0; l < n; ++l) {
        WRational expected(n);
        if (j == l) expected += sigma[k];
        if (j == k) expected -= sigma[l];
        if (!rational_equal(g_pack.torsion(j, k, l), expected)) return false;
      }
    }
  }
  for (int k = 0; k < n; ++k) {
    if (!rational_equal(g_pack.tau[k], sigma[k].scaled(wirtinger::GaussQ(long(n - 1))))) return false;
  }
  return true;
}

RadialTable radial_table(const RadialPotential& p, const wirtinger::Point& z) {
  RadialTable t;
  std::vector<std::complex<double>> r;
  for (const auto& v : z.z) {
    t.r.push_back(std::norm(v));
    r.emplace_back(std::norm(v), 0.0);
  }
  for (int j = 0; j < p.n; ++j) {
    t.a.push_back(p.gradient[j].evaluate(r).real());
    std::vector<double> row;
    for (int k = 0; k < p.n; ++k) row.push_back(p.hessian[j][k].evaluate(r).real());
    t.b.push_back(std::move(row));
  }
  return t;
}

std::vector<double> multiradial_inverse_correction(const RadialTable& t, int j) {
  const int n = static_cast<int>(t.a.size());
  if (j < 0 || j >= n) throw std::out_of_range("row index out of range");
  Eigen::MatrixXd m(n, n);
  Eigen::VectorXd rhs(n);
  for (int l = 0; l < n; ++l) {
    for (int k = 0; k < n; ++k) m(l, k) = (l == k ? t.a[l] : 0.0) + t.r[k] * t.b[l][k];
    rhs(l) = -t.b[l][j] / t.a[j];
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  lu.setThreshold(1e-12);
  if (!lu.isInvertible()) throw std::domain_error("singular correction system at the sample point");
  Eigen::VectorXd v = lu.solve(rhs);
  return {v.data(), v.data() + n};
}

std::vector<std::vector<std::complex<double>>> assembled_inverse(const RadialTable& t, const wirtinger::Point& z) {
  const int n = static_cast<int>(t.a.size());
  std::vector<std::vector<std::complex<double>>> out(n, std::vector<std::complex<double>>(n));
  for (int j = 0; j < n; ++j) {
    auto v = multiradial_inverse_correction(t, j);
    for (int k = 0; k < n; ++k) {
      out[j][k] = v[k] * z.z[j] * std::conj(z.z[k]);
      if (j == k) out[j][k] += 1.0 / t.a[j];
    }
  }
  return out;
}

}  // namespace chern::geometry
