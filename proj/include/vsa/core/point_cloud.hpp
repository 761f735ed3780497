#pragma once

#include <span>
#include <vector>

#include "vsa/core/types.hpp"

namespace vsa {

/// Oriented point set with per-point area weights.
///
/// Immutable once built. Construction validates sizes, unit normals
/// (|n| = 1 within 1e-9), finite coordinates and non-negative weights.
class PointCloud {
 public:
  static constexpr double kNormalTolerance = 1e-9;

  PointCloud(std::vector<Vec3> points, std::vector<Vec3> normals);
  PointCloud(std::vector<Vec3> points, std::vector<Vec3> normals, std::vector<double> weights);

  std::size_t size() const { return points_.size(); }
  const Vec3& point(std::size_t i) const { return points_[i]; }
  const Vec3& normal(std::size_t i) const { return normals_[i]; }
  double weight(std::size_t i) const { return weights_[i]; }

  std::span<const Vec3> points() const { return points_; }
  std::span<const Vec3> normals() const { return normals_; }
  std::span<const double> weights() const { return weights_; }

  /// Same geometry with a replaced weight vector.
  PointCloud with_weights(std::vector<double> weights) const;

 private:
  std::vector<Vec3> points_;
  std::vector<Vec3> normals_;
  std::vector<double> weights_;
};

}  // namespace vsa
