#pragma once

#include <string>

#include "chern/geometry/connection.hpp"

namespace chern::geometry {

/// A real weight psi, carried by its antiholomorphic gradient psi_kbar.
struct WeightField {
  int n = 0;
  FieldVector dbar_psi;
  std::string descriptor;
};

/// d_lbar psi_kbar == d_kbar psi_lbar for all k, l.
bool weight_is_closed(const WeightField& w);

/// X^j = h^{j kbar} psi_kbar.
FieldVector gradient_field(const MetricField& h, const WeightField& w);
/// h^{j kbar} (psi_kbar - conj(tau_k)).
FieldVector gradient_minus_torsion_field(const MetricField& h, const WeightField& w);
FieldVector gradient_minus_torsion_field(const MetricField& h, const WeightField& w, const ConnectionPack& pack);

bool all_holomorphic(const FieldVector& v);
bool is_real_holomorphic_gradient(const MetricField& h, const WeightField& w);
/// Componentwise rational identity.
bool fields_equal(const FieldVector& a, const FieldVector& b);

/// The three equivalent conditions for g = phi^{-1} h with h Kahler, n >= 2.
struct ConformalTripod {
  bool torsion_holomorphic = false;  ///< g has holomorphic torsion
  bool tau_sharp_holomorphic = false;  ///< g^{j kbar} conj(tau^g_k) holomorphic
  bool phi_sharp_holomorphic = false;  ///< h^{j kbar} phi_kbar holomorphic
  bool agree() const {
    return torsion_holomorphic == tau_sharp_holomorphic && tau_sharp_holomorphic == phi_sharp_holomorphic;
  }
};

ConformalTripod conformal_tripod(const MetricField& kahler, const WRational& phi, const MetricField& g,
                                 const ConnectionPack& g_pack);
ConformalTripod conformal_tripod(const MetricField& kahler, const WRational& phi);

/// Checks T^j_{kl} = sigma_k delta^j_l - sigma_l delta^j_k and
/// tau^g = (n - 1) sigma with sigma_k = -phi_k / phi.
bool conformal_torsion_law(const WRational& phi, const ConnectionPack& g_pack);

/// Numerical values of a_j = d chi/d r_j and b_jk at one point.
struct RadialTable {
  std::vector<double> r;
  std::vector<double> a;
  std::vector<std::vector<double>> b;
};

RadialTable radial_table(const RadialPotential& p, const wirtinger::Point& z);

/// Row V_{j.} of the correction in h^{j kbar} = delta_jk / a_j + V_jk z_j zbar_k.
/// Throws std::domain_error on a singular system.
std::vector<double> multiradial_inverse_correction(const RadialTable& t, int j);

/// Inverse metric assembled from the correction rows at z.
std::vector<std::vector<std::complex<double>>> assembled_inverse(const RadialTable& t, const wirtinger::Point& z);

}  // namespace chern::geometry
