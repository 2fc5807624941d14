#pragma once

#include <vector>

#include "chern/dbar/forms.hpp"

namespace chern::dbar {

/// Box~ for the non-decoupled C^2 example with C = (0, 1, 0):
/// (u_1 + z_1 du_1/dz_1) dz_1 + z_1 du_2/dz_1 dz_2.
MonomialForm c2_box_apply(const MonomialForm& u);

/// Orthogonal basis of the (0,0) Bergman space: z_1^k z_2^l with k >= 2, 0 <= l <= k - 2.
bool c2_admissible(int k, int l);

struct C2Eigenvalue {
  int value = 0;
  int multiplicity = 0;
  int from_dz1 = 0;  ///< contributions z_1^k z_2^l dz_1 with k = value - 1
  int from_dz2 = 0;  ///< contributions z_1^k z_2^l dz_2 with k = value
};

/// Eigenvalues 2..value_max read off by applying c2_box_apply to every admissible
/// basis form; throws std::logic_error if a basis form is not an eigenvector.
std::vector<C2Eigenvalue> c2_spectrum(int value_max);

}  // namespace chern::dbar
