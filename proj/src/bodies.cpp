#include "knaster/bodies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "knaster/detail/simplex.hpp"

namespace knaster {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_nonzero(const Vec3& u) {
  if (!(u.squaredNorm() > 0.0)) throw std::invalid_argument("direction must be nonzero");
}

void require_finite(const std::vector<Vec3>& pts) {
  for (const Vec3& p : pts)
    if (!p.allFinite()) throw std::invalid_argument("point coordinates must be finite");
}

double max_dot(const std::vector<Vec3>& pts, const Vec3& u) {
  double best = -std::numeric_limits<double>::infinity();
  for (const Vec3& p : pts) best = std::max(best, p.dot(u));
  return best;
}

double point_cloud_gauge(const PointCloudBody& body, const Vec3& x) {
  const Eigen::MatrixXd& cols = body.signed_columns();
  const Eigen::VectorXd costs = Eigen::VectorXd::Ones(cols.cols());
  const detail::LpResult r = detail::solve_equality_lp(cols, costs, x);
  if (r.status != detail::LpStatus::optimal)
    throw std::runtime_error("gauge linear program did not reach an optimum");
  return r.value;
}

}  // namespace

Ellipsoid::Ellipsoid(const Vec3& coeffs, const Rotation& orientation, const Vec3& center)
    : coeffs_(coeffs), orientation_(orientation), center_(center) {
  if (!coeffs.allFinite() || coeffs.minCoeff() <= 0.0)
    throw std::invalid_argument("ellipsoid coefficients must be positive");
  if (!center.allFinite()) throw std::invalid_argument("ellipsoid center must be finite");
}

PointCloudBody::PointCloudBody(std::vector<Vec3> points, bool symmetrize)
    : points_(std::move(points)), symmetrize_(symmetrize) {
  require_finite(points_);
  const std::size_t count = symmetrize_ ? 2 * points_.size() : points_.size();
  if (count < 4) throw std::invalid_argument("point cloud body needs at least 4 points");
  Eigen::MatrixXd m(3, points_.size());
  for (std::size_t i = 0; i < points_.size(); ++i) m.col(i) = points_[i];
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const Eigen::VectorXd s = svd.singularValues();
  if (s.size() < 3 || s[2] <= 1e-12 * std::max(1.0, s[0]))
    throw std::invalid_argument("point cloud body does not span 3-space");
  columns_.resize(3, 2 * points_.size());
  for (std::size_t i = 0; i < points_.size(); ++i) {
    columns_.col(2 * i) = points_[i];
    columns_.col(2 * i + 1) = -points_[i];
  }
}

GeneralSet::GeneralSet(std::vector<Vec3> points) : points_(std::move(points)) {
  if (points_.empty()) throw std::invalid_argument("point set must be nonempty");
  require_finite(points_);
}

double support(const Body& body, const Vec3& u) {
  require_nonzero(u);
  return std::visit(
      overloaded{
          [&](const Ellipsoid& e) {
            const Vec3 local = e.orientation().matrix().transpose() * u;
            return e.center().dot(u) + std::sqrt((local.array().square() / e.coeffs().array()).sum());
          },
          [&](const PointCloudBody& p) {
            const double h = max_dot(p.points(), u);
            return p.symmetrized() ? std::max(h, max_dot(p.points(), -u)) : h;
          },
          [&](const GeneralSet& s) { return max_dot(s.points(), u); },
      },
      body);
}

bool is_origin_symmetric(const Body& body) {
  return std::visit(overloaded{
                        [](const Ellipsoid& e) { return e.center().squaredNorm() == 0.0; },
                        [](const PointCloudBody& p) { return p.symmetrized(); },
                        [](const GeneralSet&) { return false; },
                    },
                    body);
}

double gauge(const Body& body, const Vec3& x) {
  if (!is_origin_symmetric(body))
    throw std::invalid_argument("gauge requires a body symmetric about the origin");
  if (!x.allFinite()) throw std::invalid_argument("gauge argument must be finite");
  if (x.squaredNorm() == 0.0) return 0.0;
  return std::visit(
      overloaded{
          [&](const Ellipsoid& e) {
            const Vec3 local = e.orientation().matrix().transpose() * x;
            return std::sqrt((e.coeffs().array() * local.array().square()).sum());
          },
          [&](const PointCloudBody& p) { return point_cloud_gauge(p, x); },
          [&](const GeneralSet&) { return 0.0; },
      },
      body);
}

double odd_width(const Body& body, const Vec3& u) {
  require_nonzero(u);
  return 0.5 * (support(body, u) - support(body, -u));
}

double diameter(std::span<const Vec3> points) {
  double best = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      best = std::max(best, (points[i] - points[j]).squaredNorm());
  return std::sqrt(best);
}

double diameter(const GeneralSet& set) { return diameter(std::span<const Vec3>(set.points())); }

}  // namespace knaster
