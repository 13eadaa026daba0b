// Knaster-type equalization on a box's vertex orbit, and the reductions that
// inscribe boxes into symmetric convex bodies and star-shaped surfaces.

#pragma once

#include <array>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "knaster/bodies.hpp"
#include "knaster/descent.hpp"
#include "knaster/templates.hpp"

namespace knaster {

/// Even function on the unit sphere.
using SphereFunction = std::function<double(const Vec3&)>;

/// Raised when every start fails; the message carries the diagnostics.
class NoSolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct KnasterSolution {
  Rotation rotation;
  std::array<double, 4> values{};  // F(A v_i)
  double residual = 0.0;           // |values - mean|
  double lambda = 0.0;             // mean value
};

struct KnasterCluster {
  KnasterSolution solution;
  int members = 0;
  bool degenerate = false;
};

struct KnasterResult {
  std::vector<KnasterCluster> clusters;
  int starts = 0;
  int converged = 0;
  int total_iterations = 0;
  int total_evaluations = 0;
  double best_residual = 0.0;
  bool degenerate = false;
};

struct InscribedBox {
  std::array<Vec3, 8> vertices;  // lambda^-1 A (+-v_i)
  BoxTemplate box;
  Rotation rotation;
  double lambda = 0.0;
  double residual = 0.0;
  bool degenerate = false;
};

/// Rows form an orthonormal basis of the complement of the diagonal of R^4.
const Eigen::Matrix<double, 3, 4>& diagonal_complement_basis();

/// Projection of (F(A v_1), ..., F(A v_4)) along the diagonal, in the basis
/// above. Throws std::domain_error on a non-finite value of F.
Vec3 knaster_residual(const SphereFunction& f, const BoxTemplate& t, const Rotation& a);

KnasterSolution evaluate_knaster(const SphereFunction& f, const BoxTemplate& t, const Rotation& a);

/// Multistart search for rotations equalizing F on the template, clustered
/// modulo the template's symmetry group.
KnasterResult solve_knaster(const SphereFunction& f, const BoxTemplate& t,
                            const MultistartConfig& config,
                            std::span<const Rotation> explicit_starts = {});

/// Box with vertices lambda^-1 A (+-v_i) for a solution with common value lambda.
InscribedBox box_from_solution(const KnasterSolution& s, const BoxTemplate& t);

/// Boxes for every cluster of a gauge equalization on the body.
std::vector<InscribedBox> inscribed_boxes(const Body& body, const BoxTemplate& t,
                                          const MultistartConfig& config, KnasterResult* diagnostics = nullptr);

/// Best inscribed box, centred at the origin. Throws std::invalid_argument
/// for a body without a gauge and NoSolutionError if no start converges.
InscribedBox inscribe_box(const Body& body, const BoxTemplate& t, const MultistartConfig& config);

/// Box with vertices on the star-shaped surface {g(u) u}; g must be even
/// and positive (std::domain_error on a non-positive sample).
InscribedBox inscribe_in_surface(const SphereFunction& g, const BoxTemplate& t,
                                 const MultistartConfig& config);

}  // namespace knaster
