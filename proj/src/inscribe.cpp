#include "knaster/inscribe.hpp"

#include <cmath>
#include <sstream>

namespace knaster {

namespace {

std::array<double, 4> values_at(const SphereFunction& f, const BoxTemplate& t, const Rotation& a) {
  std::array<double, 4> v{};
  for (int i = 0; i < 4; ++i) {
    v[i] = f(a * t.v[i]);
    if (!std::isfinite(v[i])) throw std::domain_error("sphere function returned a non-finite value");
  }
  return v;
}

KnasterResult to_result(const MultistartReport& report, const SphereFunction& f, const BoxTemplate& t) {
  KnasterResult r;
  r.starts = report.starts;
  r.converged = report.converged;
  r.total_iterations = report.total_iterations;
  r.total_evaluations = report.total_evaluations;
  r.best_residual = report.best_residual;
  r.degenerate = report.degenerate;
  for (const SolutionCluster& c : report.clusters)
    r.clusters.push_back({evaluate_knaster(f, t, c.best.rotation), c.members, c.degenerate});
  return r;
}

std::string diagnostics(const KnasterResult& r) {
  std::ostringstream os;
  os << "no start converged (" << r.starts << " starts, " << r.total_iterations
     << " iterations, best residual " << r.best_residual << ")";
  return os.str();
}

}  // namespace

const Eigen::Matrix<double, 3, 4>& diagonal_complement_basis() {
  static const Eigen::Matrix<double, 3, 4> basis = [] {
    Eigen::Matrix<double, 3, 4> b;
    b << 1.0, -1.0, 0.0, 0.0,
        1.0, 1.0, -2.0, 0.0,
        1.0, 1.0, 1.0, -3.0;
    b.row(0) /= std::sqrt(2.0);
    b.row(1) /= std::sqrt(6.0);
    b.row(2) /= std::sqrt(12.0);
    return b;
  }();
  return basis;
}

Vec3 knaster_residual(const SphereFunction& f, const BoxTemplate& t, const Rotation& a) {
  const std::array<double, 4> v = values_at(f, t, a);
  return diagonal_complement_basis() * Eigen::Vector4d(v[0], v[1], v[2], v[3]);
}

KnasterSolution evaluate_knaster(const SphereFunction& f, const BoxTemplate& t, const Rotation& a) {
  KnasterSolution s;
  s.rotation = a;
  s.values = values_at(f, t, a);
  const Eigen::Vector4d v(s.values[0], s.values[1], s.values[2], s.values[3]);
  s.lambda = v.mean();
  s.residual = (v.array() - s.lambda).matrix().norm();
  return s;
}

KnasterResult solve_knaster(const SphereFunction& f, const BoxTemplate& t,
                            const MultistartConfig& config,
                            std::span<const Rotation> explicit_starts) {
  const std::vector<Rotation> group = symmetry_group(t);
  const RotationResidual residual = [&](const Rotation& a) { return knaster_residual(f, t, a); };
  return to_result(solve_multistart(residual, group, config, explicit_starts), f, t);
}

InscribedBox box_from_solution(const KnasterSolution& s, const BoxTemplate& t) {
  InscribedBox box;
  box.box = t;
  box.rotation = s.rotation;
  box.lambda = s.lambda;
  box.residual = s.residual;
  const std::array<Vec3, 8> v = t.vertices();
  for (int i = 0; i < 8; ++i) box.vertices[i] = (s.rotation * v[i]) / s.lambda;
  return box;
}

std::vector<InscribedBox> inscribed_boxes(const Body& body, const BoxTemplate& t,
                                          const MultistartConfig& config, KnasterResult* diagnostics_out) {
  if (!is_origin_symmetric(body))
    throw std::invalid_argument("inscription requires a body symmetric about the origin");
  const SphereFunction f = [&](const Vec3& u) { return gauge(body, u); };
  const KnasterResult r = solve_knaster(f, t, config);
  if (diagnostics_out) *diagnostics_out = r;
  std::vector<InscribedBox> boxes;
  for (const KnasterCluster& c : r.clusters) {
    InscribedBox b = box_from_solution(c.solution, t);
    b.degenerate = c.degenerate;
    boxes.push_back(b);
  }
  return boxes;
}

InscribedBox inscribe_box(const Body& body, const BoxTemplate& t, const MultistartConfig& config) {
  KnasterResult r;
  std::vector<InscribedBox> boxes = inscribed_boxes(body, t, config, &r);
  if (boxes.empty()) throw NoSolutionError(diagnostics(r));
  return boxes.front();
}

InscribedBox inscribe_in_surface(const SphereFunction& g, const BoxTemplate& t,
                                 const MultistartConfig& config) {
  const SphereFunction checked = [&](const Vec3& u) {
    const double v = g(u);
    if (!(v > 0.0)) throw std::domain_error("surface radial function must be positive");
    return v;
  };
  const KnasterResult r = solve_knaster(checked, t, config);
  if (r.clusters.empty()) throw NoSolutionError(diagnostics(r));
  const KnasterCluster& best = r.clusters.front();

  InscribedBox box;
  box.box = t;
  box.rotation = best.solution.rotation;
  box.lambda = 1.0 / best.solution.lambda;
  box.residual = best.solution.residual;
  box.degenerate = best.degenerate;
  const std::array<Vec3, 8> v = t.vertices();
  for (int i = 0; i < 8; ++i) {
    const Vec3 dir = box.rotation * v[i];
    box.vertices[i] = checked(dir) * dir;
  }
  return box;
}

}  // namespace knaster
