#include "knaster/borsuk.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "knaster/cover.hpp"

namespace knaster {

namespace {

constexpr double kPi = std::numbers::pi;

struct CutGeometry {
  Vec3 n, e1, e2, origin;
};

CutGeometry geometry(const CutParameters& t) {
  const double phi = t[0], psi = t[1];
  CutGeometry g;
  g.n = Vec3(std::sin(phi) * std::cos(psi), std::sin(phi) * std::sin(psi), std::cos(phi));
  g.e1 = Vec3(std::cos(phi) * std::cos(psi), std::cos(phi) * std::sin(psi), -std::sin(phi));
  g.e2 = Vec3(-std::sin(psi), std::cos(psi), 0.0);
  g.origin = t[3] * g.e1 + t[4] * g.e2;
  return g;
}

// Normal of the half-plane at angle beta, pointing towards increasing angle.
Vec3 angular_normal(const CutGeometry& g, double beta) {
  return -std::sin(beta) * g.e1 + std::cos(beta) * g.e2;
}

double wrap(double a) {
  a = std::fmod(a, 2 * kPi);
  return a < 0 ? a + 2 * kPi : a;
}

}  // namespace

CutParameters default_cut() {
  return {std::acos(1.0 / std::sqrt(3.0)), kPi / 4, 0.2, 0.0, 0.0, 0.0, 2 * kPi / 3, 4 * kPi / 3};
}

Partition4 partition_u3(const CutParameters& theta) {
  Partition4 out;
  out.theta = theta;
  for (double v : theta)
    if (!std::isfinite(v)) {
      out.degenerate = true;
      out.defect = "non-finite cut parameter";
      return out;
    }
  const std::vector<Halfspace> body = rd_halfspaces(Rotation(), Vec3::Zero());
  const CutGeometry g = geometry(theta);
  const double c = theta[2];

  std::array<double, 3> beta{wrap(theta[5]), wrap(theta[6]), wrap(theta[7])};
  std::sort(beta.begin(), beta.end());

  out.halfspaces[0] = body;
  out.halfspaces[0].push_back({-g.n, -c});
  for (int k = 0; k < 3; ++k) {
    const double lo = beta[k], hi = k == 2 ? beta[0] + 2 * kPi : beta[k + 1];
    if (hi - lo > kPi) {
      out.degenerate = true;
      out.defect = "wedge wider than pi is not convex";
      return out;
    }
    std::vector<Halfspace>& hs = out.halfspaces[k + 1];
    hs = body;
    hs.push_back({g.n, c});
    const Vec3 m_lo = angular_normal(g, lo), m_hi = angular_normal(g, hi);
    hs.push_back({-m_lo, -m_lo.dot(g.origin)});
    hs.push_back({m_hi, m_hi.dot(g.origin)});
  }
  for (int k = 0; k < 4; ++k) {
    out.pieces[k] = intersect_halfspaces(out.halfspaces[k]);
    if (out.pieces[k].empty()) {
      out.degenerate = true;
      out.defect = "piece " + std::to_string(k) + " is empty";
    }
  }
  return out;
}

double max_piece_diameter(const Partition4& p) {
  if (p.degenerate) throw std::invalid_argument("degenerate partition: " + p.defect);
  double best = 0.0;
  for (const Polytope& piece : p.pieces) best = std::max(best, vertex_diameter(piece));
  return best;
}

BorsukResult optimize_partition(const BorsukConfig& config) {
  if (config.budget < 0) throw std::invalid_argument("budget must be nonnegative");
  std::mt19937_64 rng(config.seed);
  const std::array<double, 8> base_step{0.2, 0.2, 0.05, 0.05, 0.05, 0.2, 0.2, 0.2};

  BorsukResult r;
  long evals = 0;
  auto objective = [&](const CutParameters& t) {
    ++evals;
    const Partition4 p = partition_u3(t);
    return p.degenerate ? std::numeric_limits<double>::infinity() : max_piece_diameter(p);
  };

  CutParameters best = default_cut();
  double best_value = objective(best);
  CutParameters cur = best;
  double cur_value = best_value;
  std::array<double, 8> step = base_step;
  r.history.push_back(best_value);

  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  while (evals < config.budget) {
    bool improved = false;
    for (int i = 0; i < 8 && evals < config.budget; ++i) {
      for (double sign : {1.0, -1.0}) {
        if (evals >= config.budget) break;
        CutParameters t = cur;
        t[i] += sign * step[i];
        const double v = objective(t);
        if (v < cur_value - 1e-12) {
          cur = t;
          cur_value = v;
          improved = true;
          break;
        }
      }
    }
    if (cur_value < best_value) {
      best = cur;
      best_value = cur_value;
    }
    r.history.push_back(best_value);
    if (improved) continue;

    for (double& s : step) s *= 0.5;
    if (*std::max_element(step.begin(), step.end()) < 1e-7) {
      // Restart from a random perturbation of the best cut.
      ++r.restarts;
      step = base_step;
      cur = best;
      for (int i = 0; i < 8; ++i) cur[i] += 2.0 * base_step[i] * unit(rng);
      cur_value = evals < config.budget ? objective(cur) : std::numeric_limits<double>::infinity();
    }
  }

  r.theta = best;
  r.value = best_value;
  r.evaluations = evals;
  r.partition = partition_u3(best);
  r.certificate = max_piece_diameter(r.partition);
  return r;
}

}  // namespace knaster
