#include "vsa/core/kdtree.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

namespace vsa {

namespace {

constexpr std::int32_t kLeafSize = 12;

bool closer(const Neighbor& a, const Neighbor& b) {
  return a.dist2 < b.dist2 || (a.dist2 == b.dist2 && a.index < b.index);
}

}  // namespace

KdTree::KdTree(std::span<const Vec3> points) : points_(points), order_(points.size()) {
  std::iota(order_.begin(), order_.end(), 0);
  nodes_.reserve(2 * points.size() / kLeafSize + 1);
  if (!points.empty()) build(0, static_cast<std::int32_t>(points.size()));
}

std::int32_t KdTree::build(std::int32_t begin, std::int32_t end) {
  const auto id = static_cast<std::int32_t>(nodes_.size());
  nodes_.push_back(Node{begin, end});
  if (end - begin <= kLeafSize) return id;

  Vec3 lo = points_[order_[begin]], hi = lo;
  for (std::int32_t i = begin + 1; i < end; ++i) {
    lo = lo.cwiseMin(points_[order_[i]]);
    hi = hi.cwiseMax(points_[order_[i]]);
  }
  int axis = 0;
  (hi - lo).maxCoeff(&axis);
  if (hi[axis] == lo[axis]) return id;  // all coincident

  const std::int32_t mid = begin + (end - begin) / 2;
  std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                   [&](PointIndex a, PointIndex b) {
                     const double pa = points_[a][axis], pb = points_[b][axis];
                     return pa < pb || (pa == pb && a < b);
                   });
  const double split = points_[order_[mid]][axis];
  nodes_[id].axis = axis;
  nodes_[id].split = split;
  const std::int32_t left = build(begin, mid);
  const std::int32_t right = build(mid, end);
  nodes_[id].left = left;
  nodes_[id].right = right;
  return id;
}

std::vector<Neighbor> KdTree::knn(PointIndex query, std::size_t k) const {
  const Vec3& q = points_[query];
  auto cmp = [](const Neighbor& a, const Neighbor& b) { return closer(a, b); };
  std::priority_queue<Neighbor, std::vector<Neighbor>, decltype(cmp)> best(cmp);  // worst on top

  auto visit = [&](auto&& self, std::int32_t id) -> void {
    const Node& node = nodes_[id];
    if (node.axis < 0) {
      for (std::int32_t i = node.begin; i < node.end; ++i) {
        const PointIndex p = order_[i];
        if (p == query) continue;
        const Neighbor cand{p, (points_[p] - q).squaredNorm()};
        if (best.size() < k) {
          best.push(cand);
        } else if (closer(cand, best.top())) {
          best.pop();
          best.push(cand);
        }
      }
      return;
    }
    const double delta = q[node.axis] - node.split;
    const std::int32_t near = delta < 0 ? node.left : node.right;
    const std::int32_t far = delta < 0 ? node.right : node.left;
    self(self, near);
    // Points on the far side are at least |delta| away; equal distances still
    // have to be visited for index tie-breaking.
    if (best.size() < k || delta * delta <= best.top().dist2) self(self, far);
  };
  if (!nodes_.empty() && k > 0) visit(visit, 0);

  std::vector<Neighbor> out;
  out.reserve(best.size());
  while (!best.empty()) {
    out.push_back(best.top());
    best.pop();
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::vector<Neighbor> KdTree::radius(PointIndex query, double radius2) const {
  const Vec3& q = points_[query];
  std::vector<Neighbor> out;
  auto visit = [&](auto&& self, std::int32_t id) -> void {
    const Node& node = nodes_[id];
    if (node.axis < 0) {
      for (std::int32_t i = node.begin; i < node.end; ++i) {
        const PointIndex p = order_[i];
        if (p == query) continue;
        const double d2 = (points_[p] - q).squaredNorm();
        if (d2 <= radius2) out.push_back({p, d2});
      }
      return;
    }
    const double delta = q[node.axis] - node.split;
    const std::int32_t near = delta < 0 ? node.left : node.right;
    const std::int32_t far = delta < 0 ? node.right : node.left;
    self(self, near);
    if (delta * delta <= radius2) self(self, far);
  };
  if (!nodes_.empty()) visit(visit, 0);
  std::sort(out.begin(), out.end(), closer);
  return out;
}

}  // namespace vsa
