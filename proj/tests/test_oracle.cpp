#include <doctest.h>

#include <cmath>
#include <random>

#include "knaster/oracle.hpp"

using namespace knaster;

namespace {

const Ellipsoid kReference(Vec3(0.5, 1.0, 1.5) / 3.0);

std::vector<Vec3> box_vertices(const Vec3& half, const Rotation& r = Rotation(), const Vec3& c = Vec3::Zero()) {
  std::vector<Vec3> v;
  for (int m = 0; m < 8; ++m)
    v.push_back(c + r * half.cwiseProduct(Vec3((m & 1) ? 1 : -1, (m & 2) ? 1 : -1, (m & 4) ? 1 : -1)));
  return v;
}

void check_box_space(const std::vector<Vec3>& verts, const Vec3& half) {
  const QuadricSolutionSpace q = box_quadric_space(verts);
  CHECK(q.dimension == 3);
  CHECK(q.max_residual < 1e-9);
  CHECK(q.max_off_diagonal_in_frame < 1e-9);
  // In the box frame every basis quadric is a11 x^2 + a22 y^2 + a33 z^2 + c
  // vanishing at the corner (h1, h2, h3); the frame may list the axes in any
  // order, so compare against the frame's own half edges.
  for (const QuadricCoefficients& k : q.basis) {
    const Quadric local = Quadric::from_coefficients(k).in_frame(q.frame.orientation, q.frame.center);
    const Vec3 h = q.frame.half_edges;
    CHECK(std::abs(local.a.diagonal().dot(h.cwiseProduct(h)) + local.c) < 1e-9);
  }
  Vec3 sorted_half = q.frame.half_edges, sorted_in = half;
  std::sort(sorted_half.data(), sorted_half.data() + 3);
  std::sort(sorted_in.data(), sorted_in.data() + 3);
  CHECK((sorted_half - sorted_in).norm() < 1e-9);
}

}  // namespace

TEST_CASE("quadric coefficient order and frame change") {
  QuadricCoefficients k;
  k << 1, 2, 3, 0.5, -0.25, 0.75, 1, -1, 2, -4;
  const Quadric q = Quadric::from_coefficients(k);
  CHECK((q.coefficients() - k).norm() == 0.0);
  const Vec3 x(0.3, -0.7, 1.1);
  const double direct = x[0] * x[0] + 2 * x[1] * x[1] + 3 * x[2] * x[2] + 2 * 0.5 * x[0] * x[1] +
                        2 * -0.25 * x[0] * x[2] + 2 * 0.75 * x[1] * x[2] + x[0] - x[1] + 2 * x[2] - 4;
  CHECK(q(x) == doctest::Approx(direct).epsilon(1e-14));
  const Rotation r = Rotation::from_axis_angle(Vec3(1, 1, 0), 0.4);
  const Vec3 t(0.5, 0.1, -0.2), y(0.2, 0.4, 0.6);
  CHECK(q.in_frame(r, t)(y) == doctest::Approx(q(r * y + t)).epsilon(1e-13));
}

TEST_CASE("quadrics through box vertices") {
  check_box_space(box_vertices(Vec3(1, 1, 1)), Vec3(1, 1, 1));
  check_box_space(box_vertices(Vec3(1, 2, 3)), Vec3(1, 2, 3));
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> e(0.3, 2.0), c(-3, 3);
  for (int k = 0; k < 20; ++k) {
    const Vec3 half(e(rng), e(rng), e(rng));
    std::vector<Vec3> v = box_vertices(half, sample_uniform(rng), Vec3(c(rng), c(rng), c(rng)));
    std::shuffle(v.begin(), v.end(), rng);
    check_box_space(v, half);
  }
}

TEST_CASE("degenerate boxes are rejected") {
  std::vector<Vec3> flat = box_vertices(Vec3(1, 1, 0));
  CHECK_THROWS_AS(box_quadric_space(flat), std::invalid_argument);
  std::vector<Vec3> skew = box_vertices(Vec3(1, 2, 3));
  skew[7] += Vec3(0.1, 0, 0);
  CHECK_THROWS_AS(box_quadric_space(skew), std::invalid_argument);
  CHECK_THROWS_AS(box_quadric_space(std::vector<Vec3>(7, Vec3::Zero())), std::invalid_argument);
}

TEST_CASE("inscriptions in the reference ellipsoid") {
  const EllipsoidInscriptions cube = ellipsoid_inscriptions(kReference, cube_template());
  REQUIRE(cube.boxes.size() == 1);
  CHECK_FALSE(cube.repeated_axes);
  for (const Vec3& v : cube.boxes[0].vertices) CHECK((v.cwiseAbs() - Vec3::Ones()).norm() < 1e-14);
  CHECK(ellipsoid_inscriptions(kReference, make_template(1, 1, 2)).boxes.size() == 3);
  CHECK(ellipsoid_inscriptions(kReference, make_template(1, 2, 3)).boxes.size() == 6);

  for (const BoxTemplate& t : {make_template(1, 1, 2), make_template(1, 2, 3)})
    for (const InscribedBox& b : ellipsoid_inscriptions(kReference, t).boxes) {
      for (const Vec3& v : b.vertices) CHECK(std::abs(gauge(Body(kReference), v) - 1.0) < 1e-13);
      const BoxFrame f = box_frame(b.vertices);
      Vec3 h = f.half_edges;
      std::sort(h.data(), h.data() + 3);
      CHECK((h / h[0] - t.ratios / t.ratios[0]).norm() < 1e-12);
      CHECK(f.center.norm() < 1e-14);
    }
}

TEST_CASE("inscriptions on a placed ellipsoid and repeated axes") {
  const Ellipsoid e(Vec3(0.2, 0.5, 1.0), Rotation::from_axis_angle(Vec3(0, 1, 1), 0.8), Vec3(1, 2, 3));
  for (const InscribedBox& b : ellipsoid_inscriptions(e, make_template(1, 2, 3)).boxes)
    for (const Vec3& v : b.vertices) {
      const Vec3 y = e.orientation().inverse() * (v - e.center());
      CHECK(std::abs((e.coeffs().array() * y.array().square()).sum() - 1.0) < 1e-12);
    }
  const Ellipsoid spheroid(Vec3(1, 1, 2));
  CHECK(ellipsoid_inscriptions(spheroid, make_template(1, 2, 3)).repeated_axes);
}

TEST_CASE("analytic inscriptions are fixed points of the solver") {
  const SphereFunction f = [](const Vec3& u) { return gauge(Body(kReference), u); };
  for (const BoxTemplate& t : {cube_template(), make_template(1, 1, 2), make_template(1, 2, 3)})
    for (const InscribedBox& b : ellipsoid_inscriptions(kReference, t).boxes) {
      MultistartConfig c;
      c.starts = 1;
      const std::vector<Rotation> start{b.rotation};
      const KnasterResult r = solve_knaster(f, t, c, start);
      REQUIRE(r.clusters.size() == 1);
      CHECK(r.total_iterations <= 3);
      CHECK(r.clusters[0].solution.residual < 1e-12);
      CHECK(quotient_distance(r.clusters[0].solution.rotation, b.rotation, symmetry_group(t)) < 1e-9);
    }
}

TEST_CASE("Jacobian rows") {
  const std::vector<Vec3> face{Vec3(1, 1, 1), Vec3(-1, 1, 1), Vec3(-1, -1, 1), Vec3(1, -1, 1)};
  const JacobianReport r = knaster_jacobian(kReference, face);
  CHECK((r.j.row(0) - Eigen::RowVector3d(-1.0 / 3, -2.0 / 3, -1.0 / 3)).norm() < 1e-15);
  CHECK(r.rank == 3);
  CHECK(r.transversal);

  const Ellipsoid sphere(Vec3(1, 1, 1) / 3.0);
  const JacobianReport s = knaster_jacobian(sphere, face);
  CHECK(s.j.norm() == 0.0);
  CHECK(s.rank == 0);
  CHECK_FALSE(s.transversal);

  std::vector<Vec3> off = face;
  off[2] *= 1.01;
  CHECK_THROWS_AS(knaster_jacobian(kReference, off), std::invalid_argument);
}

TEST_CASE("Jacobian matches finite differences of the Knaster residual") {
  // The gauge on the unit vector v_i equals lambda sqrt(q(x_i) + 1) with
  // x_i = v_i / lambda, so d residual = P (lambda / 2) J.
  const SphereFunction f = [](const Vec3& u) { return gauge(Body(kReference), u); };
  const BoxTemplate t = cube_template();
  const double lambda = 1.0 / std::sqrt(3.0);
  std::vector<Vec3> face;
  for (const Vec3& v : t.v) face.push_back(v / lambda);
  const JacobianReport r = knaster_jacobian(kReference, face);
  const Mat3 analytic = diagonal_complement_basis() * (lambda / 2 * r.j);
  const RotationResidual res = [&](const Rotation& a) { return knaster_residual(f, t, a); };
  const Mat3 fd = chart_jacobian(res, Rotation(), 1e-6);
  CHECK((fd - analytic).norm() / analytic.norm() < 1e-5);
}

TEST_CASE("octahedron points") {
  const auto p = octahedron_points();
  for (const Vec3& x : p) {
    CHECK(x.cwiseAbs() == Vec3::Ones());
    CHECK(std::abs(x.sum()) == 1.0);
  }
}

TEST_CASE("Eggleston family") {
  const EgglestonReport r0 = eggleston_family(0.0);
  Mat3 a0 = Mat3::Zero();
  a0.diagonal() << 0.5, 1.0, 1.5;
  CHECK((r0.quadric.a - a0).norm() < 1e-13);
  CHECK(r0.quadric.b.norm() == 0.0);
  CHECK(std::abs(r0.quadric.c + 3.0) < 1e-13);
  for (int m = 0; m < 8; ++m) {
    const Vec3 x((m & 1) ? 1 : -1, (m & 2) ? 1 : -1, (m & 4) ? 1 : -1);
    CHECK(std::abs(r0.quadric(x)) < 1e-12);
  }
  CHECK_FALSE(r0.ones_off_boundary);

  double sign_minus = 0, sign_plus = 0;
  for (double eps : {-0.05, -0.01, 0.01, 0.05}) {
    const EgglestonReport r = eggleston_family(eps);
    CAPTURE(eps);
    CHECK(r.octahedron_on_boundary);
    CHECK(r.octahedron_defect < 1e-9);
    CHECK(r.ones_off_boundary);
    CHECK(std::abs(r.value_at_ones) > 1e-4 * std::abs(eps));
    CHECK(r.distinct_axes);
    CHECK(r.min_eigen_gap > 1e-4);
    if (eps == -0.01) sign_minus = r.value_at_ones;
    if (eps == 0.01) sign_plus = r.value_at_ones;
  }
  CHECK(sign_minus * sign_plus < 0.0);
  CHECK_THROWS_AS(eggleston_family(-2.0), std::invalid_argument);
  CHECK_THROWS_AS(eggleston_family(std::nan("")), std::invalid_argument);
}
