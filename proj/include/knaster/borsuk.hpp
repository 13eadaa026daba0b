// Four-piece partitions of the rhombic dodecahedron U3 (canonical placement,
// opposite-face distance 1) and a pattern search over the cut parameters.
//
// Parameters theta (8 scalars):
//   [0] polar angle, [1] azimuth of the axis direction n
//   [2] cap offset c: the cap is U3 intersected with {<n, p> >= c}
//   [3], [4] axis offset inside the plane orthogonal to n
//   [5], [6], [7] angles of three half-planes bounded by the axis
// The remainder {<n, p> <= c} is split into three wedges by the half-planes.

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "knaster/polytope.hpp"

namespace knaster {

using CutParameters = std::array<double, 8>;

struct Partition4 {
  std::array<Polytope, 4> pieces;
  std::array<std::vector<Halfspace>, 4> halfspaces;
  CutParameters theta{};
  bool degenerate = false;
  std::string defect;  // why the cut is degenerate
};

/// Symmetric starting cut: axis along (1,1,1), half-planes 120 degrees apart,
/// cap offset 0.2.
CutParameters default_cut();

/// Never throws on bad parameters; degenerate cuts are flagged instead.
Partition4 partition_u3(const CutParameters& theta);

/// Max vertex-pair diameter over the pieces. Throws std::invalid_argument on
/// a degenerate partition.
double max_piece_diameter(const Partition4& p);

struct BorsukConfig {
  long budget = 10000;  // partition evaluations
  std::uint64_t seed = 20240611;
};

struct BorsukResult {
  CutParameters theta{};
  double value = 0.0;        // best value found by the search
  double certificate = 0.0;  // recomputed from scratch on the final pieces
  long evaluations = 0;
  int restarts = 0;
  std::vector<double> history;  // best value after each poll round
  Partition4 partition;
};

inline constexpr double kLiteratureBorsukValue = 0.98;

BorsukResult optimize_partition(const BorsukConfig& config = {});

}  // namespace knaster
