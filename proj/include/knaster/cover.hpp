// Covering sets of diameter at most 1 by the rhombic dodecahedron U3, the
// intersection of the six width-1 strips orthogonal to the edges of a unit
// regular tetrahedron. A rotation A is sought for which the six mid-planes
// <x, A u_ij> = F0(A u_ij) of the set are concurrent; their common point x
// then places A U3 + x around the set. The planar analogue with the regular
// hexagon is included as a cheap oracle.

#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "knaster/bodies.hpp"
#include "knaster/descent.hpp"
#include "knaster/polytope.hpp"

namespace knaster {

using Vec6 = Eigen::Matrix<double, 6, 1>;

/// Odd function on the sphere.
using OddFunction = std::function<double(const Vec3&)>;

/// Regular tetrahedron with unit edges centred at the origin, vertex i on
/// the direction of tetrahedron_vertices()[i]. u_ij = v_j - v_i in the
/// order (12, 13, 14, 23, 24, 34).
struct TetraFrame {
  std::array<Vec3, 4> v;
  std::array<Vec3, 6> u;
};

const TetraFrame& unit_tetrahedron();

/// Rotation group of U3 (the 24 rotations of the cube in this orientation).
const std::vector<Rotation>& cover_symmetry_group();

/// (F0(A u_12), ..., F0(A u_34)). Throws std::domain_error on non-finite values.
Vec6 phi(const OddFunction& f0, const Rotation& a);

/// Coordinates of phi in the orthonormal W basis.
Vec3 w_residual(const OddFunction& f0, const Rotation& a);

/// F0 of a finite set, from its support function.
OddFunction odd_width_function(const GeneralSet& set);

struct Containment {
  bool contained = false;
  double max_violation = 0.0;
};

/// max over p, (i,j) of |<p - x, A u_ij>| - 1/2.
Containment contains(const Rotation& a, const Vec3& x, std::span<const Vec3> points, double tol);

/// Least-squares common point of the six planes <x, A u_ij> = F0(A u_ij).
/// Returns the point and writes the residual norm of the 6 x 3 system.
Vec3 concurrency_point(const OddFunction& f0, const Rotation& a, double* ls_residual = nullptr);

struct CoverResult {
  Rotation rotation;
  Vec3 center = Vec3::Zero();
  double w_residual_norm = 0.0;
  double ls_residual = 0.0;
  bool contained = false;
  double max_violation = 0.0;
  bool degenerate = false;
  /// Every cluster found, best first.
  std::vector<SolutionCluster> clusters;
  int starts = 0;
  int converged = 0;
  int total_iterations = 0;
};

struct CoverConfig {
  MultistartConfig search{64, 20240611, 1e-10, 100, 1e-3, 1e-6};
  double containment_tol = 1e-9;
};

/// Throws std::invalid_argument if the set's diameter exceeds 1 + 1e-12 and
/// NoSolutionError if no start reaches the tolerance.
CoverResult solve_cover(const GeneralSet& set, const CoverConfig& config = {});

/// The 12 halfspaces |<p - x, A u_ij>| <= 1/2.
std::vector<Halfspace> rd_halfspaces(const Rotation& a, const Vec3& x);
Polytope rd_mesh(const Rotation& a = Rotation(), const Vec3& x = Vec3::Zero());

/// Regular octahedron with distance 1 between opposite faces.
Polytope octahedron_mesh();

struct HexagonCover {
  double theta = 0.0;  // strip normals at theta, theta + pi/3, theta + 2 pi/3
  Eigen::Vector2d center = Eigen::Vector2d::Zero();
  double concurrency_residual = 0.0;
  int evaluations = 0;
  bool contained = false;
  double max_violation = 0.0;
  std::array<Eigen::Vector2d, 6> vertices;
};

/// Places the regular hexagon with unit distance between opposite sides
/// around a planar set of diameter at most 1 by bisection on theta.
HexagonCover solve_cover_2d(std::span<const Eigen::Vector2d> points, double tol = 1e-9);

}  // namespace knaster
