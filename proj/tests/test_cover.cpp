#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "knaster/cover.hpp"
#include "knaster/groups.hpp"
#include "knaster/inscribe.hpp"

using namespace knaster;

namespace {

using Vec2 = Eigen::Vector2d;

std::vector<Vec3> tetra_points() {
  const TetraFrame& t = unit_tetrahedron();
  return {t.v.begin(), t.v.end()};
}

// Uniform points in the ball of diameter d around c.
std::vector<Vec3> ball_cloud(int n, std::uint64_t seed, double d = 1.0, const Vec3& c = Vec3::Zero()) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  std::vector<Vec3> pts;
  while (static_cast<int>(pts.size()) < n) {
    const Vec3 p(u(rng), u(rng), u(rng));
    if (p.norm() <= 0.5) pts.push_back(c + d * p);
  }
  return pts;
}

CoverConfig config(int starts, std::uint64_t seed) {
  CoverConfig c;
  c.search.starts = starts;
  c.search.seed = seed;
  return c;
}

}  // namespace

TEST_CASE("unit tetrahedron frame") {
  const TetraFrame& t = unit_tetrahedron();
  Vec3 sum = Vec3::Zero();
  for (int i = 0; i < 4; ++i) {
    sum += t.v[i];
    for (int j = i + 1; j < 4; ++j) CHECK(std::abs((t.v[i] - t.v[j]).norm() - 1.0) < 1e-15);
  }
  CHECK(sum.norm() < 1e-15);
  for (const Vec3& u : t.u) CHECK(std::abs(u.norm() - 1.0) < 1e-15);
  CHECK((t.u[0] - (t.v[1] - t.v[0])).norm() == 0.0);
  CHECK((t.u[5] - (t.v[3] - t.v[2])).norm() == 0.0);
  // Edge directions are face diagonals of the cube.
  CHECK((t.u[0] - Vec3(0, -1, -1) / std::sqrt(2.0)).norm() < 1e-15);
  CHECK(cover_symmetry_group().size() == 24);
}

TEST_CASE("phi examples") {
  std::mt19937_64 rng(1);
  const OddFunction sym = odd_width_function(GeneralSet({Vec3(1, 2, 0), Vec3(-1, -2, 0), Vec3(0, 0.5, 1), Vec3(0, -0.5, -1)}));
  for (int k = 0; k < 10; ++k) CHECK(phi(sym, sample_uniform(rng)).norm() == 0.0);

  const OddFunction tetra = odd_width_function(GeneralSet(tetra_points()));
  CHECK(phi(tetra, Rotation()).norm() < 1e-15);

  const Vec3 p(0.3, -0.1, 0.7);
  const OddFunction point = odd_width_function(GeneralSet({p}));
  const VWDecomposition& vw = vw_decomposition();
  for (int k = 0; k < 20; ++k) {
    const Rotation a = sample_uniform(rng);
    const Vec6 v = phi(point, a);
    for (int j = 0; j < 6; ++j) CHECK(v[j] == doctest::Approx(p.dot(a * unit_tetrahedron().u[j])).epsilon(1e-14));
    CHECK((v - vw.v.transpose() * (vw.v * v)).norm() < 1e-12);
    CHECK(w_residual(point, a).norm() < 1e-12);
  }
  CHECK_THROWS_AS(phi([](const Vec3&) { return INFINITY; }, Rotation()), std::domain_error);
}

TEST_CASE("w residual is the W part of phi") {
  const OddFunction f0 = odd_width_function(GeneralSet(ball_cloud(60, 2)));
  const VWDecomposition& vw = vw_decomposition();
  std::mt19937_64 rng(3);
  bool nonzero = false;
  for (int k = 0; k < 20; ++k) {
    const Rotation a = sample_uniform(rng);
    const Vec6 v = phi(f0, a);
    const Vec3 w = w_residual(f0, a);
    CHECK((vw.w.transpose() * w - (v - vw.v.transpose() * (vw.v * v))).norm() < 1e-12);
    nonzero = nonzero || w.norm() > 1e-6;
  }
  CHECK(nonzero);
}

TEST_CASE("contains examples") {
  const Rotation a = Rotation::from_axis_angle(Vec3(0.2, 1, -0.4), 0.9);
  const Vec3 x(0.1, 0.2, 0.3);
  const Vec3 u = a * unit_tetrahedron().u[0];
  const std::vector<Vec3> one{x};
  Containment c = contains(a, x, one, 1e-9);
  CHECK(c.contained);
  CHECK(c.max_violation == doctest::Approx(-0.5).epsilon(1e-15));
  const std::vector<Vec3> pair{x + u / 2, x - u / 2};
  c = contains(a, x, pair, 1e-9);
  CHECK(c.contained);
  CHECK(std::abs(c.max_violation) < 1e-15);
  const std::vector<Vec3> far{x + 0.6 * u};
  c = contains(a, x, far, 1e-9);
  CHECK_FALSE(c.contained);
  CHECK(c.max_violation == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("cover of the unit tetrahedron") {
  const CoverResult r = solve_cover(GeneralSet(tetra_points()), config(64, 20240611));
  CHECK(r.contained);
  CHECK(r.center.norm() < 1e-7);
  CHECK(quotient_distance(r.rotation, Rotation(), cover_symmetry_group()) < 1e-3);
  CHECK(r.w_residual_norm < 1e-10);
  CHECK(r.ls_residual < 1e-8);
}

TEST_CASE("cover of a single point") {
  const Vec3 p(2.0, -1.0, 0.5);
  const CoverResult r = solve_cover(GeneralSet({p}), config(8, 1));
  CHECK(r.contained);
  CHECK(r.degenerate);
  CHECK((r.center - p).norm() < 1e-12);
  CHECK(r.max_violation == doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("cover of a random ball sample") {
  const CoverResult r = solve_cover(GeneralSet(ball_cloud(200, 4)), config(64, 4));
  CHECK(r.w_residual_norm < 1e-8);
  CHECK(r.ls_residual < 1e-8);
  CHECK(r.contained);
  CHECK(r.max_violation <= 0.0);
  CHECK(r.max_violation >= -0.5 - 1e-9);
}

TEST_CASE("converged clusters have consistent planes and sound certificates") {
  for (std::uint64_t seed = 10; seed < 20; ++seed) {
    const std::vector<Vec3> pts = ball_cloud(30, seed);
    const OddFunction f0 = odd_width_function(GeneralSet(pts));
    const CoverResult r = solve_cover(GeneralSet(pts), config(32, seed));
    for (const SolutionCluster& c : r.clusters) {
      if (c.best.residual_norm >= 1e-10) continue;
      double ls = 0.0;
      const Vec3 x = concurrency_point(f0, c.best.rotation, &ls);
      CHECK(ls < 1e-8);
      CHECK(contains(c.best.rotation, x, pts, 1e-9).max_violation >= -0.5 - 1e-9);
    }
  }
}

TEST_CASE("cover is translation covariant") {
  const std::vector<Vec3> pts = ball_cloud(50, 5);
  const Vec3 t(3.0, -2.0, 1.5);
  std::vector<Vec3> moved;
  for (const Vec3& p : pts) moved.push_back(p + t);
  const CoverResult a = solve_cover(GeneralSet(pts), config(32, 5));
  const CoverResult b = solve_cover(GeneralSet(moved), config(32, 5));
  CHECK(quotient_distance(a.rotation, b.rotation, cover_symmetry_group()) < 1e-3);
  CHECK((b.center - a.center - t).norm() < 1e-8);
}

TEST_CASE("cover rejects sets of diameter above 1") {
  CHECK_THROWS_AS(solve_cover(GeneralSet({Vec3::Zero(), Vec3(1.001, 0, 0)})), std::invalid_argument);
  CHECK_NOTHROW(solve_cover(GeneralSet({Vec3::Zero(), Vec3(1.0, 0, 0)}), config(8, 1)));
}

TEST_CASE("cover reports failure when no start converges") {
  CoverConfig c = config(1, 3);
  c.search.max_iter = 1;
  CHECK_THROWS_AS(solve_cover(GeneralSet(ball_cloud(40, 3)), c), NoSolutionError);
}

// ---------------------------------------------------------------------------

TEST_CASE("hexagon cover of a disk") {
  const Vec2 c(0.4, -1.3);
  std::vector<Vec2> pts;
  for (int k = 0; k < 360; ++k) {
    const double a = 2 * std::numbers::pi * k / 360;
    pts.push_back(c + 0.5 * Vec2(std::cos(a), std::sin(a)));
  }
  const HexagonCover h = solve_cover_2d(pts);
  CHECK((h.center - c).norm() < 1e-9);
  CHECK(h.contained);
  CHECK(h.evaluations < 60);
}

TEST_CASE("hexagon cover of the unit triangle is tight on three sides") {
  const std::vector<Vec2> tri{Vec2(0, 0), Vec2(1, 0), Vec2(0.5, std::sqrt(3.0) / 2)};
  const HexagonCover h = solve_cover_2d(tri);
  CHECK(h.contained);
  CHECK(h.evaluations < 60);
  int tight = 0;
  for (int k = 0; k < 3; ++k) {
    const double a = h.theta + k * std::numbers::pi / 3;
    const Vec2 n(std::cos(a), std::sin(a));
    double hi = -1e9, lo = 1e9;
    for (const Vec2& p : tri) {
      hi = std::max(hi, (p - h.center).dot(n));
      lo = std::min(lo, (p - h.center).dot(n));
    }
    tight += std::abs(hi - 0.5) < 1e-9;
    tight += std::abs(lo + 0.5) < 1e-9;
  }
  CHECK(tight >= 3);
}

TEST_CASE("hexagon cover of a unit segment and random sets") {
  const std::vector<Vec2> seg{Vec2(0.1, 0.2), Vec2(0.1 + std::cos(0.3), 0.2 + std::sin(0.3))};
  CHECK(solve_cover_2d(seg).contained);

  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Vec2> pts;
    for (int k = 0; k < 30; ++k) pts.emplace_back(u(rng), u(rng));
    double d = 0;
    for (const Vec2& p : pts)
      for (const Vec2& q : pts) d = std::max(d, (p - q).norm());
    for (Vec2& p : pts) p /= d;
    const HexagonCover h = solve_cover_2d(pts);
    CHECK(h.contained);
    CHECK(h.evaluations < 60);
    CHECK(std::abs(h.concurrency_residual) < 1e-12);
    for (const Vec2& v : h.vertices) CHECK(std::abs((v - h.center).norm() - 1 / std::sqrt(3.0)) < 1e-12);
  }
  CHECK_THROWS_AS(solve_cover_2d(std::vector<Vec2>{}), std::invalid_argument);
}
