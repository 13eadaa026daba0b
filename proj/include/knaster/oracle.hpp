// Closed-form ground truth for ellipsoids and boxes: quadrics through a
// box's vertices, enumeration of boxes inscribed in an ellipsoid, the
// first-order variation of the vertex values under rotation, and the
// ellipsoid family through an octahedron that misses (1,1,1).

#pragma once

#include <array>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "knaster/bodies.hpp"
#include "knaster/inscribe.hpp"
#include "knaster/templates.hpp"

namespace knaster {

using QuadricCoefficients = Eigen::Matrix<double, 10, 1>;

/// x^T A x + b.x + c with A symmetric. Coefficient vectors are ordered
/// (a11, a22, a33, a12, a13, a23, b1, b2, b3, c).
struct Quadric {
  Mat3 a = Mat3::Zero();
  Vec3 b = Vec3::Zero();
  double c = 0.0;

  static Quadric from_coefficients(const QuadricCoefficients& k);
  QuadricCoefficients coefficients() const;
  double operator()(const Vec3& x) const { return x.dot(a * x) + b.dot(x) + c; }
  /// Same quadric in coordinates y with x = R y + t.
  Quadric in_frame(const Rotation& r, const Vec3& t) const;
};

struct BoxFrame {
  Rotation orientation;  // columns are edge directions
  Vec3 center = Vec3::Zero();
  Vec3 half_edges = Vec3::Zero();
};

/// Recovers centre, edge directions and half-edges of a box from its 8
/// vertices in any order. Throws std::invalid_argument for a degenerate box.
BoxFrame box_frame(std::span<const Vec3> vertices);

struct QuadricSolutionSpace {
  std::vector<QuadricCoefficients> basis;  // unit-norm, world coordinates
  int dimension = 0;
  double max_residual = 0.0;  // max |q(p)| over basis and input points
  BoxFrame frame;
  /// max |a12|, |a13|, |a23|, |b_i| over the basis rewritten in the box frame.
  double max_off_diagonal_in_frame = 0.0;
};

/// Null space of the 8 x 10 evaluation matrix of the box vertices.
QuadricSolutionSpace box_quadric_space(std::span<const Vec3> vertices);

struct EllipsoidInscriptions {
  std::vector<InscribedBox> boxes;
  bool repeated_axes = false;  // count may collapse when coefficients repeat
};

/// One box per assignment of the template's edge classes to the ellipsoid's
/// axes, scaled onto the boundary and centred at the ellipsoid's centre.
EllipsoidInscriptions ellipsoid_inscriptions(const Ellipsoid& e, const BoxTemplate& t);

struct JacobianReport {
  Eigen::Matrix<double, 4, 3> j = Eigen::Matrix<double, 4, 3>::Zero();
  Vec3 singular_values = Vec3::Zero();
  int rank = 0;
  bool transversal = false;
};

/// Derivative of sum a_ii x_i^2 - 1 at the four vertices with respect to the
/// skew coordinates (a12, a13, a23) of a rotation about the ellipsoid's
/// centre: J[k][(i,j)] = 2 (a_ii - a_jj) x_i x_j. Vertices are given in world
/// coordinates and must lie on the boundary within 1e-8.
JacobianReport knaster_jacobian(const Ellipsoid& e, std::span<const Vec3> face_vertices);

struct EgglestonReport {
  double epsilon = 0.0;
  Eigen::Matrix<double, 5, 1> conic;  // (a11, a12, a22, b1, b2), constant -1.5
  Quadric quadric;                    // x^T A x + C
  Vec3 eigenvalues = Vec3::Zero();    // ascending
  double min_eigen_gap = 0.0;
  double octahedron_defect = 0.0;     // max |Q(p)| over the six points of V
  double value_at_ones = 0.0;         // Q(1,1,1)
  bool octahedron_on_boundary = false;
  bool ones_off_boundary = false;
  bool distinct_axes = false;
};

/// The six points (x,y,z) in {-1,1}^3 with x+y+z in {-1,1}.
std::array<Vec3, 6> octahedron_points();

/// Ellipsoid through the conic in z = 1 passing through (-1,-1), (-1,1),
/// (1,-1), (1+eps,1), (sqrt 3,0), lifted with A33 = 1.5. Throws
/// std::invalid_argument when the conic or the lifted quadric degenerates.
EgglestonReport eggleston_family(double epsilon);

}  // namespace knaster
