// Axis-aligned box templates inscribed in the unit sphere.

#pragma once

#include <array>
#include <string>
#include <vector>

#include "knaster/rotations.hpp"

namespace knaster {

enum class BoxClass { cube, square_based, general };

std::string to_string(BoxClass c);

/// One face of a box inscribed in S^2. The face is z > 0 and the vertices
/// are listed cyclically; the full vertex set is {+-v_i}.
struct BoxTemplate {
  std::array<Vec3, 4> v;
  Vec3 ratios;  // sorted edge ratios a1 <= a2 <= a3, along x, y, z
  BoxClass box_class = BoxClass::cube;

  /// All 8 vertices: v_1..v_4 followed by -v_1..-v_4.
  std::array<Vec3, 8> vertices() const;
};

/// Box similar to a1 x a2 x a3. Ratios are sorted before use; throws
/// std::invalid_argument if any is not positive and finite.
BoxTemplate make_template(double a1, double a2, double a3);

inline BoxTemplate cube_template() { return make_template(1.0, 1.0, 1.0); }

/// Square-based box with height / basic edge = rho.
BoxTemplate square_based_template(double rho);

/// Rotations mapping {+-v_i} onto itself: 24, 8 or 4 of them.
std::vector<Rotation> symmetry_group(const BoxTemplate& t);

}  // namespace knaster
