// Convex bodies and the scalar functions the solvers consume: support
// function, Minkowski gauge, and the odd part of the support function.

#pragma once

#include <span>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "knaster/rotations.hpp"

namespace knaster {

/// {c + R y : sum a_i y_i^2 <= 1}.
class Ellipsoid {
 public:
  explicit Ellipsoid(const Vec3& coeffs, const Rotation& orientation = Rotation(),
                     const Vec3& center = Vec3::Zero());

  const Vec3& coeffs() const { return coeffs_; }
  const Rotation& orientation() const { return orientation_; }
  const Vec3& center() const { return center_; }

 private:
  Vec3 coeffs_;
  Rotation orientation_;
  Vec3 center_;
};

/// Convex hull of a finite point list, or of its symmetrization {+-p}.
class PointCloudBody {
 public:
  PointCloudBody(std::vector<Vec3> points, bool symmetrize);

  const std::vector<Vec3>& points() const { return points_; }
  bool symmetrized() const { return symmetrize_; }
  /// Columns +-p for every input point; the generators of the symmetrized hull.
  const Eigen::MatrixXd& signed_columns() const { return columns_; }

 private:
  std::vector<Vec3> points_;
  bool symmetrize_;
  Eigen::MatrixXd columns_;
};

/// Finite point set with no symmetry assumption.
class GeneralSet {
 public:
  explicit GeneralSet(std::vector<Vec3> points);

  const std::vector<Vec3>& points() const { return points_; }

 private:
  std::vector<Vec3> points_;
};

using Body = std::variant<Ellipsoid, PointCloudBody, GeneralSet>;

double support(const Body& body, const Vec3& u);

/// Minkowski gauge. Requires a body symmetric about the origin; throws
/// std::invalid_argument otherwise.
double gauge(const Body& body, const Vec3& x);

/// (h(u) - h(-u)) / 2, the signed offset of the mid-plane orthogonal to u.
double odd_width(const Body& body, const Vec3& u);

/// Max pairwise distance, brute force.
double diameter(std::span<const Vec3> points);
double diameter(const GeneralSet& set);

/// True when gauge() is defined for the body.
bool is_origin_symmetric(const Body& body);

}  // namespace knaster
