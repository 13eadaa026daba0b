#include <doctest.h>

#include <cmath>

#include "knaster/templates.hpp"

using namespace knaster;

namespace {

bool in_vertex_set(const BoxTemplate& t, const Vec3& x) {
  for (const Vec3& v : t.vertices())
    if ((v - x).norm() < 1e-10) return true;
  return false;
}

}  // namespace

TEST_CASE("cube template") {
  const BoxTemplate t = cube_template();
  CHECK(t.box_class == BoxClass::cube);
  const double s = 1.0 / std::sqrt(3.0);
  const std::array<Vec3, 4> expected{Vec3(s, s, s), Vec3(-s, s, s), Vec3(-s, -s, s), Vec3(s, -s, s)};
  for (int i = 0; i < 4; ++i) CHECK((t.v[i] - expected[i]).norm() < 1e-15);
}

TEST_CASE("square-based and general templates") {
  const BoxTemplate sq = make_template(1, 1, 2);
  CHECK(sq.box_class == BoxClass::square_based);
  CHECK((sq.v[0] - Vec3(1, 1, 2) / std::sqrt(6.0)).norm() < 1e-15);
  CHECK(square_based_template(2.0).v[2].isApprox(sq.v[2]));

  const BoxTemplate g = make_template(12, 3, 4);
  CHECK(g.box_class == BoxClass::general);
  CHECK(g.ratios == Vec3(3, 4, 12));
  for (const Vec3& v : g.vertices()) CHECK(std::abs(v.norm() - 1.0) < 1e-15);
}

TEST_CASE("template vertices form a box with the given ratios") {
  for (const BoxTemplate& t : {cube_template(), make_template(1, 1, 2), make_template(3, 4, 12)}) {
    // v1 -> v2 crosses x, v2 -> v3 crosses y, v1 -> -v3 ... spans z.
    const double ex = (t.v[0] - t.v[1]).norm(), ey = (t.v[1] - t.v[2]).norm();
    const double ez = (t.v[0] - (-t.v[2])).norm();
    CHECK(std::abs(ex / ey - t.ratios[0] / t.ratios[1]) < 1e-10);
    CHECK(std::abs(ez / ey - t.ratios[2] / t.ratios[1]) < 1e-10);
    // Adjacent edges of the face are orthogonal.
    CHECK(std::abs((t.v[1] - t.v[0]).dot(t.v[3] - t.v[0])) < 1e-12);
  }
}

TEST_CASE("template errors") {
  CHECK_THROWS_AS(make_template(0, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(make_template(1, -2, 1), std::invalid_argument);
  CHECK_THROWS_AS(square_based_template(0.0), std::invalid_argument);
  CHECK_THROWS_AS(make_template(1, 1, std::nan("")), std::invalid_argument);
}

TEST_CASE("symmetry group orders") {
  CHECK(symmetry_group(cube_template()).size() == 24);
  CHECK(symmetry_group(make_template(1, 1, 2)).size() == 8);
  CHECK(symmetry_group(make_template(1, 2, 2)).size() == 8);
  CHECK(symmetry_group(make_template(3, 4, 12)).size() == 4);
}

TEST_CASE("symmetries permute the vertex set and form a group") {
  for (const BoxTemplate& t : {cube_template(), make_template(1, 1, 2), make_template(3, 4, 12)}) {
    const std::vector<Rotation> g = symmetry_group(t);
    CHECK(closure_defect(g) < 1e-9);
    for (const Rotation& r : g) {
      CHECK(std::abs(r.matrix().determinant() - 1.0) < 1e-12);
      for (const Vec3& v : t.vertices()) CHECK(in_vertex_set(t, r * v));
      bool has_inverse = false;
      for (const Rotation& s : g) has_inverse = has_inverse || geodesic_distance(r.inverse(), s) < 1e-9;
      CHECK(has_inverse);
    }
  }
}
