// Rotations of 3-space: quaternion storage, exponential chart, Haar sampling,
// and distances modulo a finite rotation group.

#pragma once

#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace knaster {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Coordinates (a12, a13, a23) of the skew matrix S with S(i,j) = a_ij,
/// S(j,i) = -a_ij for i < j.
struct TangentVector {
  double a12 = 0.0;
  double a13 = 0.0;
  double a23 = 0.0;

  static TangentVector from_vector(const Vec3& v) { return {v[0], v[1], v[2]}; }
  Vec3 as_vector() const { return {a12, a13, a23}; }
  Mat3 skew() const;
  double norm() const { return as_vector().norm(); }
};

/// Element of SO(3). The unit quaternion is canonical (first nonzero
/// component positive); the matrix is derived from it at construction.
class Rotation {
 public:
  Rotation();

  static Rotation from_quaternion(const Eigen::Quaterniond& q);
  static Rotation from_matrix(const Mat3& m);
  static Rotation from_axis_angle(const Vec3& axis, double angle);

  const Eigen::Quaterniond& quaternion() const { return q_; }
  /// (w, x, y, z) of the canonical quaternion.
  Eigen::Vector4d wxyz() const { return {q_.w(), q_.x(), q_.y(), q_.z()}; }
  const Mat3& matrix() const { return m_; }

  Rotation inverse() const;
  /// Rotation angle in [0, pi].
  double angle() const;

  Vec3 operator*(const Vec3& v) const { return m_ * v; }
  friend Rotation operator*(const Rotation& a, const Rotation& b);

 private:
  explicit Rotation(const Eigen::Quaterniond& q);

  Eigen::Quaterniond q_;
  Mat3 m_;
};

Rotation exp(const TangentVector& t);
/// Inverse of exp on rotations with angle < pi.
TangentVector log(const Rotation& r);

Vec3 apply(const Rotation& r, const Vec3& v);

/// Haar-uniform rotation from a normalized 4-dim Gaussian.
Rotation sample_uniform(std::mt19937_64& rng);

/// Rotation angle of a^-1 b.
double geodesic_distance(const Rotation& a, const Rotation& b);

/// Max deviation from closure: for every pair (g, h) in the set, the
/// distance from g*h to the nearest member. Also covers inverses since a
/// closed finite subset of a group is a subgroup.
double closure_defect(std::span<const Rotation> group);

/// min over g in group of geodesic_distance(a, b*g). Throws
/// std::invalid_argument if the group is empty or not closed within 1e-9.
double quotient_distance(const Rotation& a, const Rotation& b,
                         std::span<const Rotation> group);

/// quotient_distance without the closure check, for callers that have
/// already validated the group.
double quotient_distance_unchecked(const Rotation& a, const Rotation& b,
                                   std::span<const Rotation> group);

/// Member of the coset {r*g} closest to the identity; ties go to the
/// lexicographically largest canonical quaternion.
Rotation coset_representative(const Rotation& r, std::span<const Rotation> group);

/// Lexicographic order on canonical (w, x, y, z).
bool quaternion_less(const Rotation& a, const Rotation& b);

}  // namespace knaster
