// Dense two-phase revised simplex for small equality-form linear programs:
//   minimize c^T w  subject to  Q w = b,  w >= 0.
// Row count is tiny (3 for gauge queries); column count is desk-scale.

#pragma once

#include <vector>

#include <Eigen/Dense>

namespace knaster::detail {

enum class LpStatus { optimal, infeasible, unbounded, iteration_limit };

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  double value = 0.0;
  Eigen::VectorXd weights;
  int iterations = 0;
};

LpResult solve_equality_lp(const Eigen::MatrixXd& columns, const Eigen::VectorXd& costs,
                           const Eigen::VectorXd& rhs);

}  // namespace knaster::detail
