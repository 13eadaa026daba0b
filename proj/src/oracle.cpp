#include "knaster/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace knaster {

// ---------------------------------------------------------------------------
// Quadrics

Quadric Quadric::from_coefficients(const QuadricCoefficients& k) {
  Quadric q;
  q.a << k[0], k[3], k[4],
      k[3], k[1], k[5],
      k[4], k[5], k[2];
  q.b = Vec3(k[6], k[7], k[8]);
  q.c = k[9];
  return q;
}

QuadricCoefficients Quadric::coefficients() const {
  QuadricCoefficients k;
  k << a(0, 0), a(1, 1), a(2, 2), a(0, 1), a(0, 2), a(1, 2), b[0], b[1], b[2], c;
  return k;
}

Quadric Quadric::in_frame(const Rotation& r, const Vec3& t) const {
  const Mat3& m = r.matrix();
  Quadric q;
  q.a = m.transpose() * a * m;
  q.b = m.transpose() * (2.0 * a * t + b);
  q.c = t.dot(a * t) + b.dot(t) + c;
  return q;
}

BoxFrame box_frame(std::span<const Vec3> vertices) {
  if (vertices.size() != 8) throw std::invalid_argument("a box has exactly 8 vertices");
  Vec3 center = Vec3::Zero();
  for (const Vec3& p : vertices) center += p / 8.0;

  const Vec3& p0 = vertices[0];
  const Vec3 opposite = 2.0 * center - p0;
  double scale = 0.0;
  for (const Vec3& p : vertices) scale = std::max(scale, (p - p0).norm());
  if (!(scale > 0.0)) throw std::invalid_argument("degenerate box: coincident vertices");
  const double tol = 1e-9 * scale;

  for (int i = 1; i < 8; ++i)
    for (int j = i + 1; j < 8; ++j)
      for (int l = j + 1; l < 8; ++l) {
        const Vec3 di = vertices[i] - p0, dj = vertices[j] - p0, dl = vertices[l] - p0;
        if (std::abs(di.dot(dj)) > tol * scale || std::abs(di.dot(dl)) > tol * scale ||
            std::abs(dj.dot(dl)) > tol * scale)
          continue;
        if ((p0 + di + dj + dl - opposite).norm() > tol) continue;
        if (std::min({di.norm(), dj.norm(), dl.norm()}) <= tol) continue;
        // Every vertex must be p0 plus a subset sum of the three edges.
        std::set<int> hit;
        for (const Vec3& p : vertices) {
          for (int mask = 0; mask < 8; ++mask) {
            const Vec3 q = p0 + ((mask & 1) ? di : Vec3::Zero()) + ((mask & 2) ? dj : Vec3::Zero()) +
                           ((mask & 4) ? dl : Vec3::Zero());
            if ((q - p).norm() <= tol) {
              hit.insert(mask);
              break;
            }
          }
        }
        if (hit.size() != 8) continue;
        Mat3 frame;
        frame.col(0) = di.normalized();
        frame.col(1) = dj.normalized();
        frame.col(2) = dl.normalized();
        if (frame.determinant() < 0.0) frame.col(2) *= -1.0;
        BoxFrame out;
        out.orientation = Rotation::from_matrix(frame);
        out.center = center;
        out.half_edges = Vec3(di.norm(), dj.norm(), dl.norm()) / 2.0;
        return out;
      }
  throw std::invalid_argument("degenerate box: vertices do not form a rectangular box");
}

QuadricSolutionSpace box_quadric_space(std::span<const Vec3> vertices) {
  QuadricSolutionSpace out;
  out.frame = box_frame(vertices);

  Eigen::Matrix<double, 8, 10> m;
  for (int r = 0; r < 8; ++r) {
    const Vec3& p = vertices[r];
    m.row(r) << p[0] * p[0], p[1] * p[1], p[2] * p[2], 2 * p[0] * p[1], 2 * p[0] * p[2],
        2 * p[1] * p[2], p[0], p[1], p[2], 1.0;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  const Eigen::VectorXd s = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s[i] > 1e-9 * s[0]) ++rank;
  out.dimension = 10 - rank;
  for (int k = rank; k < 10; ++k) out.basis.push_back(svd.matrixV().col(k));

  for (const QuadricCoefficients& k : out.basis) {
    const Quadric q = Quadric::from_coefficients(k);
    for (const Vec3& p : vertices) out.max_residual = std::max(out.max_residual, std::abs(q(p)));
    const Quadric local = q.in_frame(out.frame.orientation, out.frame.center);
    const double off = std::max({std::abs(local.a(0, 1)), std::abs(local.a(0, 2)), std::abs(local.a(1, 2)),
                                 local.b.cwiseAbs().maxCoeff()});
    out.max_off_diagonal_in_frame = std::max(out.max_off_diagonal_in_frame, off);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Boxes in ellipsoids

EllipsoidInscriptions ellipsoid_inscriptions(const Ellipsoid& e, const BoxTemplate& t) {
  EllipsoidInscriptions out;
  const Vec3& k = e.coeffs();
  out.repeated_axes = k[0] == k[1] || k[1] == k[2] || k[0] == k[2];

  std::set<std::array<double, 3>> seen;
  std::array<int, 3> perm{0, 1, 2};  // axis i carries template edge class perm[i]
  do {
    const std::array<double, 3> d{t.ratios[perm[0]], t.ratios[perm[1]], t.ratios[perm[2]]};
    if (!seen.insert(d).second) continue;

    Mat3 p = Mat3::Zero();
    for (int i = 0; i < 3; ++i) p(i, perm[i]) = 1.0;
    if (p.determinant() < 0.0) p.col(0) *= -1.0;
    const Rotation a = e.orientation() * Rotation::from_matrix(p);

    double q = 0.0;
    for (int i = 0; i < 3; ++i) q += k[i] * d[i] * d[i];
    const double s = 1.0 / std::sqrt(q);

    KnasterSolution sol;
    sol.rotation = a;
    sol.lambda = 1.0 / (s * t.ratios.norm());
    sol.values.fill(sol.lambda);
    sol.residual = 0.0;
    InscribedBox box = box_from_solution(sol, t);
    for (Vec3& v : box.vertices) v += e.center();
    out.boxes.push_back(box);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

// ---------------------------------------------------------------------------
// First-order variation

JacobianReport knaster_jacobian(const Ellipsoid& e, std::span<const Vec3> face_vertices) {
  if (face_vertices.size() != 4) throw std::invalid_argument("expected the four vertices of one face");
  const Vec3& a = e.coeffs();
  JacobianReport r;
  for (int k = 0; k < 4; ++k) {
    const Vec3 x = e.orientation().matrix().transpose() * (face_vertices[k] - e.center());
    const double level = (a.array() * x.array().square()).sum() - 1.0;
    if (std::abs(level) > 1e-8) throw std::invalid_argument("vertex is not on the ellipsoid boundary");
    r.j(k, 0) = 2.0 * (a[0] - a[1]) * x[0] * x[1];
    r.j(k, 1) = 2.0 * (a[0] - a[2]) * x[0] * x[2];
    r.j(k, 2) = 2.0 * (a[1] - a[2]) * x[1] * x[2];
  }
  r.singular_values = Eigen::JacobiSVD<Eigen::Matrix<double, 4, 3>>(r.j).singularValues();
  const double top = r.singular_values[0];
  for (int i = 0; i < 3; ++i)
    if (top > 0.0 && r.singular_values[i] > 1e-9 * top) ++r.rank;

  // Transversal iff [J | 1] has full rank 4: no nonzero tangent direction
  // moves the four values along the diagonal (or leaves them fixed).
  Eigen::Matrix4d aug;
  aug.leftCols<3>() = r.j;
  aug.col(3).setConstant(0.5);
  const Eigen::Vector4d s = Eigen::JacobiSVD<Eigen::Matrix4d>(aug).singularValues();
  r.transversal = s[0] > 0.0 && s[3] > 1e-9 * s[0];
  return r;
}

// ---------------------------------------------------------------------------
// Ellipsoids through an octahedron

std::array<Vec3, 6> octahedron_points() {
  std::array<Vec3, 6> out;
  int n = 0;
  for (int x : {-1, 1})
    for (int y : {-1, 1})
      for (int z : {-1, 1})
        if (std::abs(x + y + z) == 1) out[n++] = Vec3(x, y, z);
  return out;
}

EgglestonReport eggleston_family(double epsilon) {
  if (!std::isfinite(epsilon)) throw std::invalid_argument("epsilon must be finite");
  // Constant term -1.5 = A33 + C with A33 = 1.5, C = -3 reproduces
  // 0.5x^2 + y^2 + 1.5z^2 = 3 at epsilon = 0.
  constexpr double kConicConstant = -1.5;
  constexpr double kA33 = 1.5;

  const std::array<Eigen::Vector2d, 5> pts = {Eigen::Vector2d(-1, -1), Eigen::Vector2d(-1, 1),
                                              Eigen::Vector2d(1, -1), Eigen::Vector2d(1 + epsilon, 1),
                                              Eigen::Vector2d(std::sqrt(3.0), 0)};
  Eigen::Matrix<double, 5, 5> m;
  Eigen::Matrix<double, 5, 1> rhs;
  for (int i = 0; i < 5; ++i) {
    const double x = pts[i][0], y = pts[i][1];
    m.row(i) << x * x, 2 * x * y, y * y, x, y;
    rhs[i] = -kConicConstant;
  }
  Eigen::FullPivLU<Eigen::Matrix<double, 5, 5>> lu(m);
  if (!lu.isInvertible() || lu.rcond() < 1e-12)
    throw std::invalid_argument("conic through the five points is not unique");

  // Closed form of the solution: symmetry of the first three points forces
  // d = e = 2 a12, and the remaining two points fix a11. Exact at epsilon = 0.
  EgglestonReport r;
  r.epsilon = epsilon;
  const double a = 0.5 / (1.0 - epsilon / (2.0 * std::sqrt(3.0)));
  const double d = -a * epsilon / 2.0;
  r.conic << a, d / 2.0, -kConicConstant - a + d, d, d;
  if (!r.conic.allFinite() || (m * r.conic - rhs).cwiseAbs().maxCoeff() > 1e-9 * (1.0 + r.conic.norm()))
    throw std::logic_error("closed-form conic disagrees with the interpolation system");
  const double a11 = r.conic[0], a12 = r.conic[1], a22 = r.conic[2];
  if (a11 * a22 - a12 * a12 <= 0.0 || a11 <= 0.0)
    throw std::invalid_argument("conic through the five points is not an ellipse");

  Quadric& q = r.quadric;
  q.a << a11, a12, r.conic[3] / 2.0,
      a12, a22, r.conic[4] / 2.0,
      r.conic[3] / 2.0, r.conic[4] / 2.0, kA33;
  q.c = kConicConstant - kA33;

  Eigen::SelfAdjointEigenSolver<Mat3> eig(q.a);
  r.eigenvalues = eig.eigenvalues();
  if (r.eigenvalues[0] <= 0.0) throw std::invalid_argument("lifted quadric is not an ellipsoid");
  r.min_eigen_gap = std::min(r.eigenvalues[1] - r.eigenvalues[0], r.eigenvalues[2] - r.eigenvalues[1]);

  for (const Vec3& p : octahedron_points())
    r.octahedron_defect = std::max(r.octahedron_defect, std::abs(q(p)));
  r.value_at_ones = q(Vec3(1, 1, 1));

  r.octahedron_on_boundary = r.octahedron_defect <= 1e-9;
  r.ones_off_boundary = std::abs(r.value_at_ones) > std::max(1e-4 * std::abs(epsilon), 1e-12);
  r.distinct_axes = r.min_eigen_gap > 1e-4;
  return r;
}

}  // namespace knaster
