#include "knaster/detail/simplex.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace knaster::detail {

namespace {

constexpr double kPivotTol = 1e-11;
constexpr double kCostTol = 1e-12;

struct Tableau {
  const Eigen::MatrixXd& a;  // m x (n + m), artificials last
  Eigen::VectorXd b;
  std::vector<int> basis;
  Eigen::VectorXd xb;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu;

  int rows() const { return static_cast<int>(a.rows()); }

  void refactor() {
    Eigen::MatrixXd bm(rows(), rows());
    for (int i = 0; i < rows(); ++i) bm.col(i) = a.col(basis[i]);
    lu.compute(bm);
    xb = lu.solve(b);
  }

  // Runs simplex iterations for the given cost vector over the allowed
  // column range.
  LpStatus run(const Eigen::VectorXd& cost, int allowed_cols, int& iterations, int max_iter) {
    int degenerate_streak = 0;
    for (;;) {
      if (iterations >= max_iter) return LpStatus::iteration_limit;
      Eigen::VectorXd cb(rows());
      for (int i = 0; i < rows(); ++i) cb[i] = cost[basis[i]];
      const Eigen::VectorXd y = lu.transpose().solve(cb);

      // Dantzig pricing; Bland's rule after a run of degenerate pivots.
      const bool bland = degenerate_streak > 20;
      int entering = -1;
      double best = -kCostTol;
      for (int j = 0; j < allowed_cols; ++j) {
        const double r = cost[j] - y.dot(a.col(j));
        if (r < best) {
          entering = j;
          if (bland) break;
          best = r;
        }
      }
      if (entering < 0) return LpStatus::optimal;

      const Eigen::VectorXd d = lu.solve(a.col(entering));
      int leaving = -1;
      double ratio = std::numeric_limits<double>::infinity();
      for (int i = 0; i < rows(); ++i) {
        if (d[i] > kPivotTol) {
          const double t = std::max(xb[i], 0.0) / d[i];
          if (t < ratio - 1e-15 ||
              (t <= ratio + 1e-15 && leaving >= 0 && basis[i] < basis[leaving])) {
            ratio = t;
            leaving = i;
          }
        }
      }
      if (leaving < 0) return LpStatus::unbounded;
      degenerate_streak = ratio <= 1e-15 ? degenerate_streak + 1 : 0;
      basis[leaving] = entering;
      refactor();
      ++iterations;
    }
  }
};

}  // namespace

LpResult solve_equality_lp(const Eigen::MatrixXd& columns, const Eigen::VectorXd& costs,
                           const Eigen::VectorXd& rhs) {
  const int m = static_cast<int>(columns.rows());
  const int n = static_cast<int>(columns.cols());
  if (costs.size() != n || rhs.size() != m)
    throw std::invalid_argument("linear program dimensions disagree");

  Eigen::MatrixXd a(m, n + m);
  Eigen::VectorXd b = rhs;
  a.leftCols(n) = columns;
  for (int i = 0; i < m; ++i) {
    if (b[i] < 0.0) {
      a.row(i).head(n) *= -1.0;
      b[i] = -b[i];
    }
  }
  a.rightCols(m).setIdentity();

  Tableau t{a, b, {}, {}, {}};
  for (int i = 0; i < m; ++i) t.basis.push_back(n + i);
  t.refactor();

  LpResult result;
  const int max_iter = 50 * (n + m) + 100;

  Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(n + m);
  phase1.tail(m).setOnes();
  LpStatus s = t.run(phase1, n + m, result.iterations, max_iter);
  if (s == LpStatus::iteration_limit) {
    result.status = s;
    return result;
  }
  const double infeas = t.xb.cwiseMax(0.0).dot(
      Eigen::VectorXd::NullaryExpr(m, [&](Eigen::Index i) { return phase1[t.basis[i]]; }));
  if (infeas > 1e-9 * (1.0 + b.norm())) {
    result.status = LpStatus::infeasible;
    return result;
  }

  // Pivot zero-level artificials out of the basis where a structural column
  // can replace them.
  for (int i = 0; i < m; ++i) {
    if (t.basis[i] < n) continue;
    Eigen::MatrixXd bm(m, m);
    for (int k = 0; k < m; ++k) bm.col(k) = a.col(t.basis[k]);
    const Eigen::MatrixXd binv = bm.inverse();
    for (int j = 0; j < n; ++j) {
      bool in_basis = false;
      for (int k : t.basis) in_basis = in_basis || k == j;
      if (in_basis) continue;
      if (std::abs(binv.row(i).dot(a.col(j))) > 1e-9) {
        t.basis[i] = j;
        t.refactor();
        break;
      }
    }
  }

  Eigen::VectorXd phase2 = Eigen::VectorXd::Zero(n + m);
  phase2.head(n) = costs;
  s = t.run(phase2, n, result.iterations, max_iter);
  result.status = s;
  if (s != LpStatus::optimal) return result;

  result.weights = Eigen::VectorXd::Zero(n);
  result.value = 0.0;
  for (int i = 0; i < m; ++i) {
    if (t.basis[i] < n) {
      result.weights[t.basis[i]] = std::max(t.xb[i], 0.0);
      result.value += costs[t.basis[i]] * result.weights[t.basis[i]];
    }
  }
  return result;
}

}  // namespace knaster::detail
