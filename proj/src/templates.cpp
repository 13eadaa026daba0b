#include "knaster/templates.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace knaster {

std::string to_string(BoxClass c) {
  switch (c) {
    case BoxClass::cube: return "cube";
    case BoxClass::square_based: return "square-based";
    case BoxClass::general: return "general";
  }
  return "unknown";
}

std::array<Vec3, 8> BoxTemplate::vertices() const {
  return {v[0], v[1], v[2], v[3], -v[0], -v[1], -v[2], -v[3]};
}

BoxTemplate make_template(double a1, double a2, double a3) {
  std::array<double, 3> a{a1, a2, a3};
  for (double x : a)
    if (!std::isfinite(x) || x <= 0.0) throw std::invalid_argument("box ratios must be positive");
  std::sort(a.begin(), a.end());

  BoxTemplate t;
  t.ratios = Vec3(a[0], a[1], a[2]);
  const Vec3 corner = t.ratios.normalized();
  const double x = corner[0], y = corner[1], z = corner[2];
  t.v = {Vec3(x, y, z), Vec3(-x, y, z), Vec3(-x, -y, z), Vec3(x, -y, z)};

  const int distinct = 1 + (a[0] != a[1]) + (a[1] != a[2]);
  t.box_class = distinct == 1 ? BoxClass::cube
                : distinct == 2 ? BoxClass::square_based
                                : BoxClass::general;
  return t;
}

BoxTemplate square_based_template(double rho) {
  if (!std::isfinite(rho) || rho <= 0.0) throw std::invalid_argument("height ratio must be positive");
  return make_template(1.0, 1.0, rho);
}

std::vector<Rotation> symmetry_group(const BoxTemplate& t) {
  std::vector<Rotation> group;
  std::array<int, 3> perm{0, 1, 2};
  do {
    // Candidate sends e_k to sign_k * e_perm[k]; it preserves the box iff
    // each axis keeps its edge ratio.
    if (t.ratios[perm[0]] != t.ratios[0] || t.ratios[perm[1]] != t.ratios[1] ||
        t.ratios[perm[2]] != t.ratios[2])
      continue;
    for (int signs = 0; signs < 8; ++signs) {
      Mat3 m = Mat3::Zero();
      for (int k = 0; k < 3; ++k) m(perm[k], k) = (signs >> k) & 1 ? -1.0 : 1.0;
      if (m.determinant() > 0.0) group.push_back(Rotation::from_matrix(m));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return group;
}

}  // namespace knaster
