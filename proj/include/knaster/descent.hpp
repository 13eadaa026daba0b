// Zero-finding for maps SO(3) -> R^3: damped Gauss-Newton in the exponential
// chart re-centred at every iterate, run from many Haar-random starts, with
// the converged rotations clustered modulo a finite symmetry group.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "knaster/rotations.hpp"

namespace knaster {

using RotationResidual = std::function<Vec3(const Rotation&)>;

struct DescentOptions {
  double fd_step = 1e-6;
  int max_iter = 100;
  double max_step = 0.5;  // radians per iteration
};

struct DescentTrace {
  Rotation rotation;
  Vec3 residual = Vec3::Zero();
  double residual_norm = 0.0;
  int iterations = 0;
  int evaluations = 0;
};

/// Central-difference Jacobian of f at A in the chart t -> A * exp(t).
Mat3 chart_jacobian(const RotationResidual& f, const Rotation& a, double step);

/// Levenberg-damped Gauss-Newton from one start. Stops when the residual
/// cannot be decreased further or max_iter is reached.
DescentTrace descend(const RotationResidual& f, const Rotation& start,
                     const DescentOptions& options = {});

struct MultistartConfig {
  int starts = 256;
  std::uint64_t seed = 20240611;
  double tol = 1e-10;
  int max_iter = 100;
  double cluster_radius = 1e-3;
  double fd_step = 1e-6;
};

struct SolutionCluster {
  DescentTrace best;  // rotation replaced by its coset representative
  int members = 0;
  bool degenerate = false;
};

struct MultistartReport {
  std::vector<SolutionCluster> clusters;
  int starts = 0;
  int converged = 0;
  int total_iterations = 0;
  int total_evaluations = 0;
  bool degenerate = false;
  double best_residual = 0.0;  // over all starts, converged or not
};

/// Runs descend() from config.starts Haar-random starts (or the given
/// explicit starts), keeps those with residual < tol, and clusters them by
/// quotient distance modulo the group. When more than half of the converged
/// solutions sit on a continuum (rank-deficient Jacobian), everything is
/// reported as one cluster flagged degenerate.
MultistartReport solve_multistart(const RotationResidual& f, std::span<const Rotation> group,
                                  const MultistartConfig& config,
                                  std::span<const Rotation> explicit_starts = {});

void validate(const MultistartConfig& config);

}  // namespace knaster
