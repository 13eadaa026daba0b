#include "knaster/cover.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "knaster/groups.hpp"
#include "knaster/inscribe.hpp"
#include "knaster/templates.hpp"

namespace knaster {

const TetraFrame& unit_tetrahedron() {
  static const TetraFrame frame = [] {
    TetraFrame f;
    const double r = std::sqrt(3.0 / 8.0);  // circumradius of the unit-edge tetrahedron
    for (int i = 0; i < 4; ++i) f.v[i] = r * tetrahedron_vertices()[i];
    int k = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) f.u[k++] = f.v[j] - f.v[i];
    return f;
  }();
  return frame;
}

const std::vector<Rotation>& cover_symmetry_group() {
  static const std::vector<Rotation> group = symmetry_group(cube_template());
  return group;
}

Vec6 phi(const OddFunction& f0, const Rotation& a) {
  const TetraFrame& t = unit_tetrahedron();
  Vec6 out;
  for (int k = 0; k < 6; ++k) {
    out[k] = f0(a * t.u[k]);
    if (!std::isfinite(out[k])) throw std::domain_error("odd function returned a non-finite value");
  }
  return out;
}

Vec3 w_residual(const OddFunction& f0, const Rotation& a) { return vw_decomposition().w * phi(f0, a); }

Containment contains(const Rotation& a, const Vec3& x, std::span<const Vec3> points, double tol) {
  const TetraFrame& t = unit_tetrahedron();
  Containment c;
  c.max_violation = -std::numeric_limits<double>::infinity();
  for (const Vec3& p : points)
    for (const Vec3& u : t.u) c.max_violation = std::max(c.max_violation, std::abs((p - x).dot(a * u)) - 0.5);
  c.contained = c.max_violation <= tol;
  return c;
}

Vec3 concurrency_point(const OddFunction& f0, const Rotation& a, double* ls_residual) {
  const TetraFrame& t = unit_tetrahedron();
  Eigen::Matrix<double, 6, 3> m;
  for (int k = 0; k < 6; ++k) m.row(k) = (a * t.u[k]).transpose();
  const Vec6 rhs = phi(f0, a);
  const Vec3 x = m.colPivHouseholderQr().solve(rhs);
  if (ls_residual) *ls_residual = (m * x - rhs).norm();
  return x;
}

namespace {

// A set stored by value so the odd function can outlive the caller's copy.
struct PointSetOdd {
  std::vector<Vec3> points;
  double operator()(const Vec3& u) const {
    double hi = -std::numeric_limits<double>::infinity(), lo = hi;
    for (const Vec3& p : points) {
      const double d = p.dot(u);
      hi = std::max(hi, d);
      lo = std::max(lo, -d);
    }
    return 0.5 * (hi - lo);
  }
};

}  // namespace

OddFunction odd_width_function(const GeneralSet& set) { return PointSetOdd{set.points()}; }

CoverResult solve_cover(const GeneralSet& set, const CoverConfig& config) {
  const double diam = diameter(set);
  if (diam > 1.0 + 1e-12) {
    std::ostringstream os;
    os << "set diameter " << diam << " exceeds 1";
    throw std::invalid_argument(os.str());
  }
  const OddFunction f0 = odd_width_function(set);
  const RotationResidual residual = [&](const Rotation& a) { return w_residual(f0, a); };
  const MultistartReport report = solve_multistart(residual, cover_symmetry_group(), config.search);

  CoverResult out;
  out.starts = report.starts;
  out.converged = report.converged;
  out.total_iterations = report.total_iterations;
  out.clusters = report.clusters;
  if (report.clusters.empty()) {
    std::ostringstream os;
    os << "no start converged (" << report.starts << " starts, best residual " << report.best_residual << ")";
    throw NoSolutionError(os.str());
  }

  // Among clusters whose placement certifies containment, the one with the
  // smallest canonical rotation angle; residuals near zero are too noisy to
  // rank. Without any certified cluster, the best residual.
  bool chosen = false;
  double chosen_angle = 0.0;
  for (const SolutionCluster& c : report.clusters) {
    double ls = 0.0;
    const Vec3 x = concurrency_point(f0, c.best.rotation, &ls);
    const Containment cert = contains(c.best.rotation, x, set.points(), config.containment_tol);
    const double angle = c.best.rotation.angle();
    const bool better = !chosen || (cert.contained && !out.contained) ||
                        (cert.contained && out.contained && angle < chosen_angle - 1e-9);
    if (better) {
      out.rotation = c.best.rotation;
      out.center = x;
      out.w_residual_norm = c.best.residual_norm;
      out.ls_residual = ls;
      out.contained = cert.contained;
      out.max_violation = cert.max_violation;
      out.degenerate = c.degenerate;
      chosen = true;
      chosen_angle = angle;
    }
  }
  return out;
}

std::vector<Halfspace> rd_halfspaces(const Rotation& a, const Vec3& x) {
  std::vector<Halfspace> hs;
  for (const Vec3& u : unit_tetrahedron().u) {
    const Vec3 n = a * u;
    hs.push_back({n, 0.5 + n.dot(x)});
    hs.push_back({-n, 0.5 - n.dot(x)});
  }
  return hs;
}

Polytope rd_mesh(const Rotation& a, const Vec3& x) { return intersect_halfspaces(rd_halfspaces(a, x)); }

Polytope octahedron_mesh() {
  std::vector<Halfspace> hs;
  for (int sx : {-1, 1})
    for (int sy : {-1, 1})
      for (int sz : {-1, 1}) hs.push_back({Vec3(sx, sy, sz) / std::sqrt(3.0), 0.5});
  return intersect_halfspaces(hs);
}

// ---------------------------------------------------------------------------
// Planar hexagon

namespace {

using Vec2 = Eigen::Vector2d;

Vec2 direction(double angle) { return {std::cos(angle), std::sin(angle)}; }

double mid_offset(std::span<const Vec2> pts, const Vec2& n) {
  double hi = -std::numeric_limits<double>::infinity(), lo = hi;
  for (const Vec2& p : pts) {
    hi = std::max(hi, p.dot(n));
    lo = std::max(lo, -p.dot(n));
  }
  return 0.5 * (hi - lo);
}

// n0 - n1 + n2 = 0 for normals at theta, theta + pi/3, theta + 2pi/3, so the
// three mid-lines are concurrent iff m0 - m1 + m2 = 0.
double concurrency(std::span<const Vec2> pts, double theta) {
  constexpr double third = std::numbers::pi / 3.0;
  return mid_offset(pts, direction(theta)) - mid_offset(pts, direction(theta + third)) +
         mid_offset(pts, direction(theta + 2 * third));
}

}  // namespace

HexagonCover solve_cover_2d(std::span<const Vec2> points, double tol) {
  if (points.empty()) throw std::invalid_argument("point set must be nonempty");
  constexpr double third = std::numbers::pi / 3.0;
  HexagonCover h;

  // r(theta + pi/3) = -r(theta), so [0, pi/3] always brackets a root.
  double lo = 0.0, hi = third;
  double r_lo = concurrency(points, lo);
  h.evaluations = 1;
  double theta = 0.0, r = r_lo;
  if (r_lo != 0.0) {
    for (;;) {
      theta = 0.5 * (lo + hi);
      r = concurrency(points, theta);
      ++h.evaluations;
      if (r == 0.0 || hi - lo <= 4e-16) break;
      if ((r < 0.0) == (r_lo < 0.0)) {
        lo = theta;
        r_lo = r;
      } else {
        hi = theta;
      }
    }
  }
  h.theta = theta;
  h.concurrency_residual = r;

  Eigen::Matrix<double, 3, 2> m;
  Eigen::Vector3d rhs;
  for (int k = 0; k < 3; ++k) {
    const Vec2 n = direction(theta + k * third);
    m.row(k) = n.transpose();
    rhs[k] = mid_offset(points, n);
  }
  h.center = m.colPivHouseholderQr().solve(rhs);

  h.max_violation = -std::numeric_limits<double>::infinity();
  for (const Vec2& p : points)
    for (int k = 0; k < 3; ++k)
      h.max_violation = std::max(h.max_violation, std::abs((p - h.center).dot(m.row(k).transpose())) - 0.5);
  h.contained = h.max_violation <= tol;

  // Vertices sit at distance 1/sqrt(3) from the centre, between strip normals.
  for (int k = 0; k < 6; ++k)
    h.vertices[k] = h.center + direction(theta + third / 2 + k * third) / std::sqrt(3.0);
  return h;
}

}  // namespace knaster
