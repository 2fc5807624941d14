#include "chern/geometry/connection.hpp"

#include <cmath>
#include <stdexcept>

namespace chern::geometry {

using wirtinger::is_holomorphic;
using wirtinger::is_identically_zero;
using wirtinger::rational_equal;

ConnectionPack connection(const MetricField& h, bool with_curvature) {
  const int n = h.n;
  ConnectionPack pack;
  pack.n = n;

  Tensor3 dh(n);  // dh(j,k,l) = d_j h_{k lbar}
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) {
      if (h.h[k][l].is_zero()) continue;
      for (int j = 0; j < n; ++j) dh(j, k, l) = h.h[k][l].derivative(j, false);
    }
  }

  pack.gamma = Tensor3(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        WRational acc(n);
        for (int l = 0; l < n; ++l) {
          if (h.h_inv[i][l].is_zero() || dh(j, k, l).is_zero()) continue;
          acc += h.h_inv[i][l] * dh(j, k, l);
        }
        pack.gamma(i, j, k) = std::move(acc);
      }
    }
  }

  pack.torsion = Tensor3(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        WRational t = pack.gamma(i, j, k) - pack.gamma(i, k, j);
        pack.torsion(i, k, j) = -t;
        pack.torsion(i, j, k) = std::move(t);
      }
    }
  }

  pack.tau.assign(n, WRational(n));
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) pack.tau[j] += pack.torsion(i, j, i);
  }

  // T_p^{rs} = conj(T^i_{jk}) h_{p ibar} h^{r jbar} h^{s kbar}, contracted one index at a time.
  Tensor3 conj_t(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        if (!pack.torsion(i, j, k).is_zero()) conj_t(i, j, k) = pack.torsion(i, j, k).conjugate();
      }
    }
  }
  Tensor3 s1(n);  // s1(i,r,k) = sum_j conj(T)^i_{jk} h^{r jbar}
  for (int i = 0; i < n; ++i) {
    for (int r = 0; r < n; ++r) {
      for (int k = 0; k < n; ++k) {
        WRational acc(n);
        for (int j = 0; j < n; ++j) {
          if (conj_t(i, j, k).is_zero() || h.h_inv[r][j].is_zero()) continue;
          acc += conj_t(i, j, k) * h.h_inv[r][j];
        }
        s1(i, r, k) = std::move(acc);
      }
    }
  }
  Tensor3 s2(n);  // s2(i,r,s) = sum_k s1(i,r,k) h^{s kbar}
  for (int i = 0; i < n; ++i) {
    for (int r = 0; r < n; ++r) {
      for (int s = 0; s < n; ++s) {
        WRational acc(n);
        for (int k = 0; k < n; ++k) {
          if (s1(i, r, k).is_zero() || h.h_inv[s][k].is_zero()) continue;
          acc += s1(i, r, k) * h.h_inv[s][k];
        }
        s2(i, r, s) = std::move(acc);
      }
    }
  }
  pack.raised = Tensor3(n);
  for (int p = 0; p < n; ++p) {
    for (int r = 0; r < n; ++r) {
      for (int s = 0; s < n; ++s) {
        WRational acc(n);
        for (int i = 0; i < n; ++i) {
          if (s2(i, r, s).is_zero() || h.h[p][i].is_zero()) continue;
          acc += h.h[p][i] * s2(i, r, s);
        }
        pack.raised(p, r, s) = std::move(acc);
      }
    }
  }

  if (with_curvature) pack.curvature = curvature_tensor(h, pack);
  return pack;
}

Tensor4 curvature_tensor(const MetricField& h, const ConnectionPack& pack) {
  const int n = h.n;
  Tensor4 r(n);
  // R_{i jbar k lbar} = - h_{p lbar} d_jbar Gamma^p_{ik}
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      for (int j = 0; j < n; ++j) {
        FieldVector dg(n, WRational(n));
        for (int p = 0; p < n; ++p) {
          if (!pack.gamma(p, i, k).is_zero()) dg[p] = pack.gamma(p, i, k).derivative(j, true);
        }
        for (int l = 0; l < n; ++l) {
          WRational acc(n);
          for (int p = 0; p < n; ++p) {
            if (dg[p].is_zero() || h.h[p][l].is_zero()) continue;
            acc -= h.h[p][l] * dg[p];
          }
          r(i, j, k, l) = std::move(acc);
        }
      }
    }
  }
  return r;
}

CurvatureReport curvature_report(const MetricField& h) { return curvature_report(h, connection(h, true)); }

CurvatureReport curvature_report(const MetricField& h, const ConnectionPack& pack) {
  const int n = h.n;
  CurvatureReport rep;
  rep.curvature = pack.curvature ? *pack.curvature : curvature_tensor(h, pack);
  const Tensor4& r = rep.curvature;
  rep.ricci1 = zero_matrix(n);
  rep.ricci2 = zero_matrix(n);
  rep.ricci3 = zero_matrix(n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
          const WRational& hinv = h.h_inv[x][y];
          if (hinv.is_zero()) continue;
          // R1_{a bbar} = h^{x ybar} R_{a bbar x ybar}
          if (!r(a, b, x, y).is_zero()) rep.ricci1[a][b] += hinv * r(a, b, x, y);
          // R2_{a bbar} = h^{x ybar} R_{x ybar a bbar}
          if (!r(x, y, a, b).is_zero()) rep.ricci2[a][b] += hinv * r(x, y, a, b);
          // R3_{a bbar} = h^{x ybar} R_{x bbar a ybar}
          if (!r(x, b, a, y).is_zero()) rep.ricci3[a][b] += hinv * r(x, b, a, y);
        }
      }
    }
  }
  rep.scalar_s = WRational(n);
  rep.scalar_hat = WRational(n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (h.h_inv[a][b].is_zero()) continue;
      rep.scalar_s += h.h_inv[a][b] * rep.ricci1[a][b];
      rep.scalar_hat += h.h_inv[a][b] * rep.ricci3[a][b];
    }
  }
  return rep;
}

bool has_holomorphic_torsion(const ConnectionPack& pack) {
  for (const auto& t : pack.raised.data()) {
    if (!is_holomorphic(t)) return false;
  }
  return true;
}

bool has_holomorphic_torsion(const MetricField& h) { return has_holomorphic_torsion(connection(h)); }

bool torsion_identities_hold(const ConnectionPack& pack) {
  const int n = pack.n;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        if (!is_identically_zero(pack.torsion(a, b, c) + pack.torsion(a, c, b))) return false;
        if (!is_identically_zero(pack.raised(a, b, c) + pack.raised(a, c, b))) return false;
        if (!rational_equal(pack.torsion(a, b, c), pack.gamma(a, b, c) - pack.gamma(a, c, b))) return false;
      }
    }
    WRational trace(n);
    for (int i = 0; i < n; ++i) trace += pack.torsion(i, a, i);
    if (!rational_equal(trace, pack.tau[a])) return false;
  }
  return true;
}

double holomorphic_sectional_curvature(const MetricField& h, const wirtinger::Point& z,
                                       std::span<const std::complex<double>> xi, const Tensor4* curvature) {
  const int n = h.n;
  if (static_cast<int>(xi.size()) != n) throw std::invalid_argument("xi dimension mismatch");
  double xnorm = 0.0;
  for (auto v : xi) xnorm += std::norm(v);
  if (xnorm == 0.0) throw std::invalid_argument("xi must be nonzero");
  if (!positive_definite_at(h, z)) throw std::domain_error("metric is not positive definite at the point");
  Tensor4 local;
  if (!curvature) {
    local = curvature_tensor(h, connection(h));
    curvature = &local;
  }
  std::complex<double> hxx = 0.0;
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) hxx += h.h[j][k].evaluate(z.z) * xi[j] * std::conj(xi[k]);
  }
  std::complex<double> num = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
          const WRational& r = (*curvature)(i, j, k, l);
          if (r.is_zero()) continue;
          num += r.evaluate(z.z) * xi[i] * std::conj(xi[j]) * xi[k] * std::conj(xi[l]);
        }
      }
    }
  }
  std::complex<double> value = num / (hxx * hxx);
  if (std::abs(value.imag()) > 1e-10 * (1.0 + std::abs(value))) {
    throw std::domain_error("holomorphic sectional curvature has a non-real residue");
  }
  return value.real();
}

}  // namespace chern::geometry
