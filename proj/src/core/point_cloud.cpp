#include "vsa/core/point_cloud.hpp"

#include <cmath>
#include <string>

#include "vsa/core/error.hpp"

namespace vsa {

namespace {

bool finite(const Vec3& v) { return std::isfinite(v.x()) && std::isfinite(v.y()) && std::isfinite(v.z()); }

}  // namespace

PointCloud::PointCloud(std::vector<Vec3> points, std::vector<Vec3> normals)
    : PointCloud(std::move(points), std::move(normals), {}) {}

PointCloud::PointCloud(std::vector<Vec3> points, std::vector<Vec3> normals, std::vector<double> weights)
    : points_(std::move(points)), normals_(std::move(normals)), weights_(std::move(weights)) {
  if (weights_.empty()) weights_.assign(points_.size(), 1.0);
  if (points_.empty()) throw InvalidArgument("point cloud must contain at least one point");
  if (normals_.size() != points_.size() || weights_.size() != points_.size()) {
    throw InvalidArgument("point cloud needs one normal and one weight per point");
  }
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!finite(points_[i]) || !finite(normals_[i])) {
      throw DataError("non-finite coordinate at point " + std::to_string(i));
    }
    if (std::abs(normals_[i].norm() - 1.0) > kNormalTolerance) {
      throw InvalidArgument("normal of point " + std::to_string(i) + " is not unit length");
    }
    if (!(weights_[i] >= 0.0) || !std::isfinite(weights_[i])) {
      throw InvalidArgument("weight of point " + std::to_string(i) + " must be finite and >= 0");
    }
  }
}

PointCloud PointCloud::with_weights(std::vector<double> weights) const {
  return PointCloud(points_, normals_, std::move(weights));
}

}  // namespace vsa
