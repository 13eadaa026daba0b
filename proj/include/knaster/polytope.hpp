// Bounded halfspace intersections in 3-space as vertex/face meshes.

#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "knaster/rotations.hpp"

namespace knaster {

/// {p : <normal, p> <= offset}.
struct Halfspace {
  Vec3 normal;
  double offset = 0.0;
};

struct Polytope {
  std::vector<Vec3> vertices;
  /// Vertex indices per face, counter-clockwise seen from outside.
  std::vector<std::vector<int>> faces;

  bool empty() const { return vertices.size() < 4 || faces.size() < 4; }
};

/// Vertex enumeration over all plane triples. Returns an empty polytope if
/// the intersection has no interior.
Polytope intersect_halfspaces(std::span<const Halfspace> halfspaces, double tol = 1e-9);

/// Volume by the divergence theorem over the faces.
double volume(const Polytope& p);

double vertex_diameter(const Polytope& p);

/// max_k (<n_k, p> - d_k) / |n_k|; <= 0 inside.
double signed_distance(std::span<const Halfspace> halfspaces, const Vec3& p);

/// ASCII OFF: "OFF", counts line, vertex lines, face index lines.
void write_off(std::ostream& os, const Polytope& p);

}  // namespace knaster
