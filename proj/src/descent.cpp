#include "knaster/descent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace knaster {

namespace {

Vec3 checked(const RotationResidual& f, const Rotation& a) {
  const Vec3 r = f(a);
  if (!r.allFinite()) throw std::domain_error("residual function returned a non-finite value");
  return r;
}

// Finite differences of a residual that vanishes identically leave only
// rounding noise, hence the absolute floor next to the relative one.
bool rank_deficient(const Mat3& j) {
  const Eigen::Vector3d s = Eigen::JacobiSVD<Mat3>(j).singularValues();
  return s[2] <= std::max(1e-6 * s[0], 1e-7);
}

// Moves the trace to the canonical member of its coset and re-evaluates there.
void canonicalize(DescentTrace& t, const RotationResidual& f, std::span<const Rotation> group) {
  t.rotation = coset_representative(t.rotation, group);
  t.residual = checked(f, t.rotation);
  t.residual_norm = t.residual.norm();
}

bool trace_less(const DescentTrace& a, const DescentTrace& b) {
  if (a.residual_norm != b.residual_norm) return a.residual_norm < b.residual_norm;
  return quaternion_less(a.rotation, b.rotation);
}

}  // namespace

Mat3 chart_jacobian(const RotationResidual& f, const Rotation& a, double step) {
  Mat3 j;
  for (int k = 0; k < 3; ++k) {
    Vec3 e = Vec3::Zero();
    e[k] = step;
    const Vec3 plus = checked(f, a * exp(TangentVector::from_vector(e)));
    const Vec3 minus = checked(f, a * exp(TangentVector::from_vector(-e)));
    j.col(k) = (plus - minus) / (2.0 * step);
  }
  return j;
}

DescentTrace descend(const RotationResidual& f, const Rotation& start,
                     const DescentOptions& options) {
  DescentTrace t;
  t.rotation = start;
  t.residual = checked(f, start);
  t.residual_norm = t.residual.norm();
  t.evaluations = 1;
  double damping = 1e-6;

  while (t.iterations < options.max_iter && t.residual_norm > 0.0) {
    const Mat3 j = chart_jacobian(f, t.rotation, options.fd_step);
    t.evaluations += 6;
    ++t.iterations;
    const Mat3 jtj = j.transpose() * j;
    const Vec3 g = j.transpose() * t.residual;
    const double scale = std::max(jtj.diagonal().maxCoeff(), 1e-300);

    bool improved = false;
    while (damping < 1e12) {
      Mat3 lhs = jtj;
      lhs.diagonal().array() += damping * scale;
      Vec3 step = -lhs.ldlt().solve(g);
      if (!step.allFinite()) break;
      if (step.norm() > options.max_step) step *= options.max_step / step.norm();
      const Rotation candidate = t.rotation * exp(TangentVector::from_vector(step));
      const Vec3 r = checked(f, candidate);
      ++t.evaluations;
      if (r.norm() < t.residual_norm) {
        t.rotation = candidate;
        t.residual = r;
        t.residual_norm = r.norm();
        damping = std::max(damping * 0.1, 1e-12);
        improved = true;
        break;
      }
      damping *= 10.0;
    }
    if (!improved) break;
  }
  return t;
}

void validate(const MultistartConfig& config) {
  if (config.starts < 1) throw std::invalid_argument("starts must be at least 1");
  if (!(config.tol > 0.0)) throw std::invalid_argument("tol must be positive");
  if (config.max_iter < 1) throw std::invalid_argument("max_iter must be at least 1");
  if (!(config.cluster_radius > 0.0)) throw std::invalid_argument("cluster radius must be positive");
}

MultistartReport solve_multistart(const RotationResidual& f, std::span<const Rotation> group,
                                  const MultistartConfig& config,
                                  std::span<const Rotation> explicit_starts) {
  validate(config);
  if (group.empty()) throw std::invalid_argument("symmetry group is empty");
  if (closure_defect(group) > 1e-9)
    throw std::invalid_argument("symmetry group is not closed under composition");

  std::vector<Rotation> starts(explicit_starts.begin(), explicit_starts.end());
  if (starts.empty()) {
    std::mt19937_64 rng(config.seed);
    for (int i = 0; i < config.starts; ++i) starts.push_back(sample_uniform(rng));
  }

  DescentOptions options;
  options.max_iter = config.max_iter;
  options.fd_step = config.fd_step;

  MultistartReport report;
  report.starts = static_cast<int>(starts.size());
  report.best_residual = std::numeric_limits<double>::infinity();
  std::vector<DescentTrace> solutions;
  for (const Rotation& s : starts) {
    DescentTrace t = descend(f, s, options);
    report.total_iterations += t.iterations;
    report.total_evaluations += t.evaluations;
    report.best_residual = std::min(report.best_residual, t.residual_norm);
    if (t.residual_norm < config.tol) solutions.push_back(t);
  }
  report.converged = static_cast<int>(solutions.size());
  if (solutions.empty()) return report;

  std::sort(solutions.begin(), solutions.end(), trace_less);

  int continuum = 0;
  for (const DescentTrace& s : solutions)
    if (rank_deficient(chart_jacobian(f, s.rotation, config.fd_step))) ++continuum;
  if (2 * continuum > report.converged) {
    SolutionCluster c;
    c.best = solutions.front();
    canonicalize(c.best, f, group);
    c.members = report.converged;
    c.degenerate = true;
    report.clusters.push_back(c);
    report.degenerate = true;
    return report;
  }

  std::vector<std::pair<Rotation, SolutionCluster>> found;  // (first member, cluster)
  for (const DescentTrace& s : solutions) {
    bool placed = false;
    for (auto& [anchor, c] : found) {
      if (quotient_distance_unchecked(anchor, s.rotation, group) < config.cluster_radius) {
        ++c.members;
        placed = true;
        break;
      }
    }
    if (!placed) found.push_back({s.rotation, SolutionCluster{s, 1, false}});
  }
  for (auto& [anchor, c] : found) {
    canonicalize(c.best, f, group);
    report.clusters.push_back(c);
  }
  std::sort(report.clusters.begin(), report.clusters.end(),
            [](const SolutionCluster& a, const SolutionCluster& b) { return trace_less(a.best, b.best); });
  return report;
}

}  // namespace knaster
