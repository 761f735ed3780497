#pragma once

#include <span>
#include <vector>

#include "vsa/core/types.hpp"

namespace vsa {

struct Neighbor {
  PointIndex index;
  double dist2;
};

// Exact 3D kd-tree. Results are ordered by (squared distance, index), which
// makes tie handling deterministic.
class KdTree {
 public:
  explicit KdTree(std::span<const Vec3> points);

  // k nearest points to points[query], excluding the query itself.
  std::vector<Neighbor> knn(PointIndex query, std::size_t k) const;

  // All points with squared distance <= radius2 to points[query], query excluded.
  std::vector<Neighbor> radius(PointIndex query, double radius2) const;

 private:
  struct Node {
    std::int32_t begin, end;  // range in order_
    std::int32_t left = -1, right = -1;
    int axis = -1;
    double split = 0.0;
  };

  std::int32_t build(std::int32_t begin, std::int32_t end);

  std::span<const Vec3> points_;
  std::vector<PointIndex> order_;
  std::vector<Node> nodes_;
};

}  // namespace vsa
