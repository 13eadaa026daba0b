#include "knaster/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <set>

namespace knaster {

Polytope intersect_halfspaces(std::span<const Halfspace> hs, double tol) {
  Polytope out;
  const std::size_t n = hs.size();
  std::vector<Halfspace> unit(hs.begin(), hs.end());
  for (Halfspace& h : unit) {
    const double len = h.normal.norm();
    h.normal /= len;
    h.offset /= len;
  }

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        Mat3 m;
        m.row(0) = unit[i].normal.transpose();
        m.row(1) = unit[j].normal.transpose();
        m.row(2) = unit[k].normal.transpose();
        if (std::abs(m.determinant()) < 1e-12) continue;
        const Vec3 p = m.partialPivLu().solve(Vec3(unit[i].offset, unit[j].offset, unit[k].offset));
        if (signed_distance(unit, p) > tol) continue;
        const bool dup = std::any_of(out.vertices.begin(), out.vertices.end(),
                                     [&](const Vec3& q) { return (q - p).norm() <= 10 * tol; });
        if (!dup) out.vertices.push_back(p);
      }
  if (out.vertices.size() < 4) return {};

  Vec3 centroid = Vec3::Zero();
  for (const Vec3& v : out.vertices) centroid += v / static_cast<double>(out.vertices.size());

  std::set<std::vector<int>> seen;
  for (const Halfspace& h : unit) {
    std::vector<int> on;
    for (std::size_t v = 0; v < out.vertices.size(); ++v)
      if (std::abs(h.normal.dot(out.vertices[v]) - h.offset) <= 10 * tol) on.push_back(static_cast<int>(v));
    if (on.size() < 3) continue;
    std::vector<int> key = on;
    std::sort(key.begin(), key.end());
    if (!seen.insert(key).second) continue;

    Vec3 c = Vec3::Zero();
    for (int v : on) c += out.vertices[v] / static_cast<double>(on.size());
    const Vec3 e1 = (out.vertices[on[0]] - c).normalized();
    const Vec3 e2 = h.normal.cross(e1);
    std::sort(on.begin(), on.end(), [&](int a, int b) {
      const Vec3 da = out.vertices[a] - c, db = out.vertices[b] - c;
      return std::atan2(da.dot(e2), da.dot(e1)) < std::atan2(db.dot(e2), db.dot(e1));
    });
    out.faces.push_back(on);
  }
  if (out.faces.size() < 4 || volume(out) <= 1e-12) return {};
  return out;
}

double volume(const Polytope& p) {
  double vol = 0.0;
  for (const std::vector<int>& f : p.faces) {
    const Vec3& a = p.vertices[f[0]];
    for (std::size_t k = 1; k + 1 < f.size(); ++k)
      vol += a.dot(p.vertices[f[k]].cross(p.vertices[f[k + 1]])) / 6.0;
  }
  return vol;
}

double vertex_diameter(const Polytope& p) {
  double best = 0.0;
  for (std::size_t i = 0; i < p.vertices.size(); ++i)
    for (std::size_t j = i + 1; j < p.vertices.size(); ++j)
      best = std::max(best, (p.vertices[i] - p.vertices[j]).squaredNorm());
  return std::sqrt(best);
}

double signed_distance(std::span<const Halfspace> halfspaces, const Vec3& p) {
  double worst = -std::numeric_limits<double>::infinity();
  for (const Halfspace& h : halfspaces)
    worst = std::max(worst, (h.normal.dot(p) - h.offset) / h.normal.norm());
  return worst;
}

void write_off(std::ostream& os, const Polytope& p) {
  os << "OFF\n" << p.vertices.size() << ' ' << p.faces.size() << " 0\n";
  os << std::setprecision(17);
  for (const Vec3& v : p.vertices) os << v[0] << ' ' << v[1] << ' ' << v[2] << '\n';
  for (const std::vector<int>& f : p.faces) {
    os << f.size();
    for (int v : f) os << ' ' << v;
    os << '\n';
  }
}

}  // namespace knaster
