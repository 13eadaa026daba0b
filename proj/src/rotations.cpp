#include "knaster/rotations.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace knaster {

namespace {

Eigen::Quaterniond canonical(Eigen::Quaterniond q) {
  q.normalize();
  const double c[4] = {q.w(), q.x(), q.y(), q.z()};
  for (double v : c) {
    if (v > 0.0) break;
    if (v < 0.0) {
      q.coeffs() = -q.coeffs();
      break;
    }
  }
  return q;
}

// Skew matrix S(t) acts as the cross product with this axis vector.
Vec3 axis_of(const TangentVector& t) { return {-t.a23, t.a13, -t.a12}; }

}  // namespace

Mat3 TangentVector::skew() const {
  Mat3 s;
  s << 0.0, a12, a13,
      -a12, 0.0, a23,
      -a13, -a23, 0.0;
  return s;
}

Rotation::Rotation() : Rotation(Eigen::Quaterniond::Identity()) {}

Rotation::Rotation(const Eigen::Quaterniond& q)
    : q_(canonical(q)), m_(q_.toRotationMatrix()) {}

Rotation Rotation::from_quaternion(const Eigen::Quaterniond& q) {
  if (!(q.norm() > 0.0) || !std::isfinite(q.norm()))
    throw std::invalid_argument("quaternion must be finite and nonzero");
  return Rotation(q);
}

Rotation Rotation::from_matrix(const Mat3& m) { return Rotation(Eigen::Quaterniond(m)); }

Rotation Rotation::from_axis_angle(const Vec3& axis, double angle) {
  if (!(axis.norm() > 0.0)) throw std::invalid_argument("rotation axis must be nonzero");
  return Rotation(Eigen::Quaterniond(Eigen::AngleAxisd(angle, axis.normalized())));
}

Rotation Rotation::inverse() const { return Rotation(q_.conjugate()); }

double Rotation::angle() const {
  const double vn = q_.vec().norm();
  return 2.0 * std::atan2(vn, std::abs(q_.w()));
}

Rotation operator*(const Rotation& a, const Rotation& b) { return Rotation(a.q_ * b.q_); }

Rotation exp(const TangentVector& t) {
  const Vec3 w = axis_of(t);
  const double theta = w.norm();
  if (theta == 0.0) return Rotation();
  const double half = 0.5 * theta;
  const Vec3 v = std::sin(half) / theta * w;
  return Rotation::from_quaternion(Eigen::Quaterniond(std::cos(half), v[0], v[1], v[2]));
}

TangentVector log(const Rotation& r) {
  const Eigen::Quaterniond& q = r.quaternion();
  const double vn = q.vec().norm();
  if (vn == 0.0) return {};
  const double sign = q.w() < 0.0 ? -1.0 : 1.0;
  const double theta = 2.0 * std::atan2(vn, std::abs(q.w()));
  const Vec3 w = sign * theta / vn * q.vec();
  return {-w[2], w[1], -w[0]};
}

Vec3 apply(const Rotation& r, const Vec3& v) { return r.matrix() * v; }

Rotation sample_uniform(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  for (;;) {
    const double w = n(rng), x = n(rng), y = n(rng), z = n(rng);
    const double norm = std::sqrt(w * w + x * x + y * y + z * z);
    if (norm > 1e-12) return Rotation::from_quaternion(Eigen::Quaterniond(w, x, y, z));
  }
}

double geodesic_distance(const Rotation& a, const Rotation& b) {
  // |<qa, qb>| = cos(theta / 2); atan2 form keeps precision near 0.
  const Eigen::Quaterniond d = a.quaternion().conjugate() * b.quaternion();
  return 2.0 * std::atan2(d.vec().norm(), std::abs(d.w()));
}

double closure_defect(std::span<const Rotation> group) {
  double worst = 0.0;
  for (const Rotation& g : group) {
    for (const Rotation& h : group) {
      const Rotation gh = g * h;
      double best = std::numeric_limits<double>::infinity();
      for (const Rotation& k : group) best = std::min(best, geodesic_distance(gh, k));
      worst = std::max(worst, best);
    }
  }
  return worst;
}

double quotient_distance_unchecked(const Rotation& a, const Rotation& b,
                                   std::span<const Rotation> group) {
  double best = std::numeric_limits<double>::infinity();
  for (const Rotation& g : group) best = std::min(best, geodesic_distance(a, b * g));
  return best;
}

double quotient_distance(const Rotation& a, const Rotation& b,
                         std::span<const Rotation> group) {
  if (group.empty()) throw std::invalid_argument("symmetry group is empty");
  if (closure_defect(group) > 1e-9)
    throw std::invalid_argument("symmetry group is not closed under composition");
  return quotient_distance_unchecked(a, b, group);
}

bool quaternion_less(const Rotation& a, const Rotation& b) {
  const Eigen::Vector4d x = a.wxyz(), y = b.wxyz();
  return std::lexicographical_compare(x.data(), x.data() + 4, y.data(), y.data() + 4);
}

Rotation coset_representative(const Rotation& r, std::span<const Rotation> group) {
  Rotation best = r;
  double best_angle = r.angle();
  for (const Rotation& g : group) {
    const Rotation c = r * g;
    const double a = c.angle();
    if (a < best_angle - 1e-12 ||
        (std::abs(a - best_angle) <= 1e-12 && quaternion_less(best, c))) {
      best = c;
      best_angle = a;
    }
  }
  return best;
}

}  // namespace knaster
