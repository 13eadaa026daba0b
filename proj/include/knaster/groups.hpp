// The symmetric group S4 and its actions: the embedding into SO(3) as the
// rotation group of the cube, the symmetry action on the regular
// tetrahedron, the coordinate permutation action on R^4, and the signed
// action tau6 on R^6 = span{e_ij}. Also subgroup classification, the
// invariant splitting R^6 = V + W, fixed points and equivariance checks.

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "knaster/rotations.hpp"

namespace knaster {

/// Bijection of {1,2,3,4}, stored 0-based: image[i] = sigma(i).
struct Permutation {
  std::array<int, 4> image{0, 1, 2, 3};

  static Permutation identity() { return {}; }
  /// Parses cycle notation over letters 1..4, e.g. "(12)(34)", "(1234)", "()".
  static Permutation from_cycles(const std::string& cycles);
  /// All 24 permutations in lexicographic order of their images.
  static const std::array<Permutation, 24>& all();

  int operator()(int i) const { return image[i]; }
  int sign() const;
  bool even() const { return sign() > 0; }
  int order() const;
  Permutation inverse() const;
  /// Position in all().
  int index() const;
  std::string to_string() const;

  /// (a * b)(i) = a(b(i)).
  friend Permutation operator*(const Permutation& a, const Permutation& b);
  friend bool operator==(const Permutation& a, const Permutation& b) = default;
};

/// Vertices of the regular tetrahedron inscribed in S^2 with vertex i on the
/// diagonal of the cube template's vertex v_i: (1,1,1), (1,-1,-1), (-1,-1,1),
/// (-1,1,-1), scaled by 1/sqrt(3).
const std::array<Vec3, 4>& tetrahedron_vertices();

/// Orthogonal map sending tetrahedron vertex i to vertex sigma(i); det = sign.
Mat3 tetra_action(const Permutation& sigma);

/// Rotation of the cube: tetra_action for even sigma, its negative for odd.
Rotation iota(const Permutation& sigma);

/// Coordinate permutation on R^4: e_i -> e_sigma(i).
Eigen::Matrix4d permutation_matrix(const Permutation& sigma);

/// Coordinates of R^6 are ordered (12, 13, 14, 23, 24, 34); e_ji = -e_ij.
/// Returns the coordinate index and sign of e_ij for distinct 0-based i, j.
std::pair<int, double> pair_coordinate(int i, int j);

/// tau6(sigma) e_ij = sign(sigma) e_{sigma(i) sigma(j)}.
Eigen::Matrix<double, 6, 6> tau6(const Permutation& sigma);

/// A representation of S4 by orthogonal (signed permutation) matrices.
class SignedPermAction {
 public:
  SignedPermAction(int dimension, const std::function<Eigen::MatrixXd(const Permutation&)>& matrix_of);

  int dimension() const { return dimension_; }
  const Eigen::MatrixXd& operator()(const Permutation& sigma) const { return matrices_[sigma.index()]; }

  /// max |M(st) - M(s) M(t)| over all 576 pairs.
  double homomorphism_defect() const;
  /// max |M^T M - I| over the group.
  double orthogonality_defect() const;

 private:
  int dimension_;
  std::array<Eigen::MatrixXd, 24> matrices_;
};

SignedPermAction tetra_representation();
SignedPermAction permutation_representation();
SignedPermAction tau6_representation();

using SubgroupMask = std::uint32_t;  // bit k <=> Permutation::all()[k]

std::vector<Permutation> members(SubgroupMask mask);
SubgroupMask generated_subgroup(std::span<const Permutation> generators);
/// All 30 subgroups.
std::vector<SubgroupMask> all_subgroups();

struct SubgroupClass {
  std::string label;        // C1, C2, C3, C4, D2, D3, D4, A4, S4
  std::string description;  // generators in bracket notation, e.g. "[(12)(34)]"
  std::vector<Permutation> generators;
  int order = 0;
  int class_size = 0;       // subgroups in the conjugacy class
  SubgroupMask representative = 0;
};

/// Conjugacy classes of subgroups, sorted by order then label.
std::vector<SubgroupClass> subgroup_classes();

struct VWDecomposition {
  Eigen::Matrix<double, 3, 6> v;  // orthonormal rows
  Eigen::Matrix<double, 3, 6> w;  // orthonormal rows
  /// e_k1 + e_k2 + e_k3 + e_k4 (terms with k == m dropped), k = 1..4.
  std::array<Eigen::Matrix<double, 6, 1>, 4> v_generators;
  /// e23+e34+e42, e31+e14+e43, e12+e24+e41, e21+e13+e32.
  std::array<Eigen::Matrix<double, 6, 1>, 4> w_generators;
};

const VWDecomposition& vw_decomposition();

/// tau6(sigma) w_k = sign * w_{target}; fails (std::logic_error) if tau6
/// does not permute the W generators up to sign.
struct SignedIndex {
  int target = 0;
  double sign = 1.0;
};
std::array<SignedIndex, 4> w_generator_action(const Permutation& sigma);

/// Common fixed unit vector of the action restricted to the subgroup, or
/// nothing if only 0 is fixed. The fixed space comes from the null space of
/// the stacked (M(g) - I); among fixed vectors, the normalized sum of the
/// tetrahedron vertices over the first letter orbit with nonzero sum is
/// returned.
std::optional<Vec3> fixed_point(std::span<const Permutation> subgroup,
                                const SignedPermAction& action = tetra_representation());

/// Dimension of the common fixed space.
int fixed_space_dimension(std::span<const Permutation> subgroup, const SignedPermAction& action);

using RotationMap = std::function<Eigen::VectorXd(const Rotation&)>;

/// max over `samples` Haar-random A and all g of
/// |map(A * iota(g)^-1) - action(g) map(A)|.
/// Right multiplication by iota(g)^-1 turns the right action of S4 on SO(3)
/// into a left action, matching action(g) which is a homomorphism.
double check_equivariance(const RotationMap& map, const SignedPermAction& action, int samples,
                          std::uint64_t seed);

enum class SectionConvention { rows, columns };

/// Checks s_i(A g) = g^-1 s_i(A) for g in the subgroup (A4 when empty, via
/// iota) and `samples` random A, where s_i(A) is row i of A (= A^-1 e_i) or
/// column i (A e_i).
double frame_sections_check(int samples, std::uint64_t seed,
                            SectionConvention convention = SectionConvention::rows,
                            std::span<const Permutation> subgroup = {});

}  // namespace knaster
