#include <doctest.h>

#include <cmath>
#include <random>

#include "knaster/inscribe.hpp"
#include "knaster/oracle.hpp"

using namespace knaster;

namespace {

const Ellipsoid kReference(Vec3(0.5, 1.0, 1.5) / 3.0);

SphereFunction gauge_of(const Body& b) {
  return [b](const Vec3& u) { return gauge(b, u); };
}

MultistartConfig small_config(int starts = 64, std::uint64_t seed = 1) {
  MultistartConfig c;
  c.starts = starts;
  c.seed = seed;
  return c;
}

}  // namespace

TEST_CASE("diagonal complement basis is orthonormal and kills the diagonal") {
  const auto& b = diagonal_complement_basis();
  CHECK((b * b.transpose() - Mat3::Identity()).norm() < 1e-15);
  CHECK((b * Eigen::Vector4d::Ones()).norm() < 1e-15);
}

TEST_CASE("knaster residual examples") {
  const SphereFunction ball = gauge_of(Ellipsoid(Vec3(1, 1, 1)));
  std::mt19937_64 rng(2);
  for (int k = 0; k < 10; ++k) CHECK(knaster_residual(ball, cube_template(), sample_uniform(rng)).norm() < 1e-15);

  const SphereFunction f = gauge_of(kReference);
  CHECK(knaster_residual(f, cube_template(), Rotation()).norm() < 1e-15);
  const KnasterSolution s = evaluate_knaster(f, cube_template(), Rotation());
  CHECK(s.lambda == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));

  const Rotation a = Rotation::from_axis_angle(Vec3(1, 2, 3), 0.3);
  const Vec3 r = knaster_residual(f, cube_template(), a);
  CHECK(r.norm() > 1e-3);
  Eigen::Vector4d direct;
  for (int i = 0; i < 4; ++i) {
    const Vec3 x = a.matrix() * cube_template().v[i];
    direct[i] = std::sqrt(x[0] * x[0] / 6 + x[1] * x[1] / 3 + x[2] * x[2] / 2);
  }
  CHECK((r - diagonal_complement_basis() * direct).norm() < 1e-14);
  CHECK(std::abs(r.norm() - (direct.array() - direct.mean()).matrix().norm()) < 1e-14);
}

TEST_CASE("non-finite values are rejected") {
  const SphereFunction bad = [](const Vec3&) { return std::nan(""); };
  CHECK_THROWS_AS(knaster_residual(bad, cube_template(), Rotation()), std::domain_error);
}

TEST_CASE("residual norm is invariant under the template's symmetries") {
  const SphereFunction f = gauge_of(kReference);
  std::mt19937_64 rng(3);
  for (const BoxTemplate& t : {cube_template(), make_template(1, 1, 2), make_template(1, 2, 3)}) {
    const std::vector<Rotation> g = symmetry_group(t);
    for (int k = 0; k < 100; ++k) {
      const Rotation a = sample_uniform(rng);
      const Rotation& h = g[k % g.size()];
      CHECK(std::abs(knaster_residual(f, t, a * h).norm() - knaster_residual(f, t, a).norm()) < 1e-10);
    }
  }
}

TEST_CASE("solver counts on the reference ellipsoid") {
  const SphereFunction f = gauge_of(kReference);
  MultistartConfig c;
  CHECK(solve_knaster(f, cube_template(), c).clusters.size() == 1);
  CHECK(solve_knaster(f, make_template(1, 1, 2), c).clusters.size() == 3);
  CHECK(solve_knaster(f, make_template(1, 2, 3), c).clusters.size() == 6);
}

TEST_CASE("every reported solution carries its certificate") {
  const SphereFunction f = gauge_of(kReference);
  const MultistartConfig c = small_config(128, 4);
  const KnasterResult r = solve_knaster(f, make_template(1, 2, 3), c);
  REQUIRE_FALSE(r.clusters.empty());
  for (const KnasterCluster& k : r.clusters) {
    const KnasterSolution again = evaluate_knaster(f, make_template(1, 2, 3), k.solution.rotation);
    CHECK(std::abs(again.residual - k.solution.residual) < 1e-12);
    for (double v : k.solution.values) CHECK(std::abs(v - k.solution.lambda) < c.tol);
  }
}

TEST_CASE("scaling F leaves the solution set unchanged") {
  const SphereFunction f = gauge_of(kReference);
  const SphereFunction g = [&](const Vec3& u) { return 7.5 * f(u); };
  const BoxTemplate t = make_template(1, 1, 2);
  const MultistartConfig c = small_config(128, 5);
  const KnasterResult a = solve_knaster(f, t, c), b = solve_knaster(g, t, c);
  REQUIRE(a.clusters.size() == b.clusters.size());
  const std::vector<Rotation> group = symmetry_group(t);
  for (const KnasterCluster& x : a.clusters) {
    double best = 10.0;
    for (const KnasterCluster& y : b.clusters)
      best = std::min(best, quotient_distance(x.solution.rotation, y.solution.rotation, group));
    CHECK(best < c.cluster_radius);
  }
}

TEST_CASE("no convergence is an empty result, not an error") {
  // One iteration from one random start cannot reach 1e-10.
  MultistartConfig c = small_config(1, 6);
  c.max_iter = 1;
  const SphereFunction f = gauge_of(kReference);
  const KnasterResult r = solve_knaster(f, make_template(1, 2, 3), c);
  CHECK(r.clusters.empty());
  CHECK(r.starts == 1);
  CHECK(r.best_residual > 0.0);
}

TEST_CASE("inscribe_box on the reference ellipsoid gives the cube with vertices (+-1,+-1,+-1)") {
  const InscribedBox b = inscribe_box(Body(kReference), cube_template(), MultistartConfig{});
  for (const Vec3& v : b.vertices) CHECK((v.cwiseAbs() - Vec3::Ones()).norm() < 1e-7);
  CHECK_FALSE(b.degenerate);
}

TEST_CASE("inscribe_box on the unit ball accepts any rotation") {
  const InscribedBox b = inscribe_box(Body(Ellipsoid(Vec3(1, 1, 1))), cube_template(), small_config());
  CHECK(b.degenerate);
  for (const Vec3& v : b.vertices) CHECK(std::abs(v.norm() - 1.0) < 1e-12);
}

TEST_CASE("inscribe_box on a symmetrized point cloud") {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> n;
  std::vector<Vec3> pts;
  for (int k = 0; k < 500; ++k) pts.push_back(Vec3(n(rng), 0.8 * n(rng), 0.6 * n(rng)).normalized());
  const Body cloud = PointCloudBody(pts, true);
  const InscribedBox b = inscribe_box(cloud, cube_template(), small_config(16, 17));
  for (const Vec3& v : b.vertices) CHECK(std::abs(gauge(cloud, v) - 1.0) < 1e-6);
  // Vertices form a cube.
  const BoxFrame frame = box_frame(b.vertices);
  CHECK(std::abs(frame.half_edges[0] - frame.half_edges[1]) < 1e-8 * frame.half_edges[0]);
  CHECK(std::abs(frame.half_edges[0] - frame.half_edges[2]) < 1e-8 * frame.half_edges[0]);
}

TEST_CASE("inscribe_box errors") {
  const Body set = GeneralSet({Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(0, 0, 1), Vec3(1, 1, 1)});
  CHECK_THROWS_AS(inscribe_box(set, cube_template(), small_config()), std::invalid_argument);
  MultistartConfig c = small_config(1, 6);
  c.max_iter = 1;
  CHECK_THROWS_AS(inscribe_box(Body(kReference), make_template(1, 2, 3), c), NoSolutionError);
  MultistartConfig bad;
  bad.starts = 0;
  CHECK_THROWS_AS(inscribe_box(Body(kReference), cube_template(), bad), std::invalid_argument);
}

TEST_CASE("inscribe_in_surface") {
  SUBCASE("constant radius") {
    const InscribedBox b = inscribe_in_surface([](const Vec3&) { return 1.0; }, cube_template(), small_config());
    for (const Vec3& v : b.vertices) CHECK(std::abs(v.norm() - 1.0) < 1e-15);
  }
  SUBCASE("radial function of the reference ellipsoid matches inscribe_box") {
    const Body e(kReference);
    const InscribedBox s = inscribe_in_surface([&](const Vec3& u) { return 1.0 / gauge(e, u); }, cube_template(),
                                               MultistartConfig{});
    const InscribedBox b = inscribe_box(e, cube_template(), MultistartConfig{});
    for (const Vec3& v : s.vertices) {
      double best = 1e9;
      for (const Vec3& w : b.vertices) best = std::min(best, (v - w).norm());
      CHECK(best < 1e-7);
    }
  }
  SUBCASE("quartic surface") {
    const SphereFunction g = [](const Vec3& u) {
      return 1.0 + 0.2 * (std::pow(u[0], 4) + std::pow(u[1], 4) + std::pow(u[2], 4));
    };
    const InscribedBox b = inscribe_in_surface(g, make_template(1, 1, 2), small_config(64, 9));
    for (const Vec3& v : b.vertices) CHECK(std::abs(v.norm() - g(v.normalized())) < 1e-7);
    // All vertices at one radius: the box is inscribed.
    for (const Vec3& v : b.vertices) CHECK(std::abs(v.norm() - b.vertices[0].norm()) < 1e-7);
  }
  SUBCASE("non-positive radius") {
    CHECK_THROWS_AS(inscribe_in_surface([](const Vec3&) { return -1.0; }, cube_template(), small_config()),
                    std::domain_error);
  }
}
