#include "chern/dbar/c2.hpp"

#include <map>

namespace chern::dbar {

MonomialForm c2_box_apply(const MonomialForm& u) {
  if (u.n() != 2 || u.degree() != 1) throw std::invalid_argument("the C^2 operator acts on 1-forms in two variables");
  MonomialForm u1 = u.component({0});
  MonomialForm u2 = u.component({1});
  MonomialForm first = u1 + u1.derivative(0).times_z(0);
  MonomialForm second = u2.derivative(0).times_z(0);
  MonomialForm out(2, 1);
  for (const auto& [key, c] : first.terms()) out.add(key.exponents, {0}, c);
  for (const auto& [key, c] : second.terms()) out.add(key.exponents, {1}, c);
  return out;
}

bool c2_admissible(int k, int l) { return k >= 2 && l >= 0 && l <= k - 2; }

std::vector<C2Eigenvalue> c2_spectrum(int value_max) {
  if (value_max < 2) throw std::invalid_argument("value_max must be at least 2");
  std::map<int, C2Eigenvalue> acc;
  for (int k = 2; k <= value_max; ++k) {
    for (int l = 0; l <= k - 2; ++l) {
      if (!c2_admissible(k, l)) continue;
      for (int slot = 0; slot < 2; ++slot) {
        MonomialForm v = monomial(2, {k, l}, {slot});
        MonomialForm image = c2_box_apply(v);
        GaussQ ratio = image.coefficient({k, l}, {slot});
        if (image != v.scaled(ratio) || !ratio.is_real() || ratio.re().get_den() != 1) {
          throw std::logic_error("basis form " + v.str() + " is not an eigenvector");
        }
        int value = static_cast<int>(ratio.re().get_num().get_si());
        if (value > value_max) continue;
        auto& e = acc[value];
        e.value = value;
        e.multiplicity += 1;
        (slot == 0 ? e.from_dz1 : e.from_dz2) += 1;
      }
    }
  }
  std::vector<C2Eigenvalue> out;
  for (auto& [v, e] : acc) out.push_back(e);
  return out;
}

}  // namespace chern::dbar
