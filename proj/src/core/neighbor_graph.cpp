#include "vsa/core/neighbor_graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>
#include <tuple>

#include "vsa/core/error.hpp"
#include "vsa/core/kdtree.hpp"

namespace vsa {

namespace {

std::size_t count_distinct(std::span<const Vec3> points) {
  std::set<std::tuple<double, double, double>> distinct;
  for (const Vec3& p : points) distinct.emplace(p.x(), p.y(), p.z());
  return distinct.size();
}

std::vector<std::vector<PointIndex>> symmetrize(const std::vector<std::vector<PointIndex>>& lists) {
  std::vector<std::vector<PointIndex>> out(lists.size());
  for (std::size_t i = 0; i < lists.size(); ++i) {
    for (PointIndex j : lists[i]) {
      out[i].push_back(j);
      out[j].push_back(static_cast<PointIndex>(i));
    }
  }
  for (auto& l : out) {
    std::sort(l.begin(), l.end());
    l.erase(std::unique(l.begin(), l.end()), l.end());
  }
  return out;
}

}  // namespace

NeighborGraph NeighborGraph::from_adjacency(const PointCloud& cloud,
                                            std::vector<std::vector<PointIndex>> adjacency) {
  const std::size_t n = cloud.size();
  if (adjacency.size() != n) throw InvalidArgument("adjacency needs one list per point");
  NeighborGraph g;
  g.radius.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (PointIndex j : adjacency[i]) {
      if (j < 0 || static_cast<std::size_t>(j) >= n) throw InvalidArgument("adjacency index out of range");
      if (static_cast<std::size_t>(j) == i) throw InvalidArgument("a point cannot be its own neighbor");
      g.radius[i] = std::max(g.radius[i], (cloud.point(j) - cloud.point(i)).norm());
    }
    g.k = std::max(g.k, adjacency[i].size());
  }
  g.knn = std::move(adjacency);
  g.links = symmetrize(g.knn);
  g.ball = g.links;
  return g;
}

NeighborGraph build_neighbor_graph(const PointCloud& cloud, std::size_t k) {
  const std::size_t n = cloud.size();
  if (k < 1) throw InvalidArgument("k must be at least 1");
  if (n <= k) {
    throw InvalidArgument("k-nearest-neighbor graph needs more than k = " + std::to_string(k) +
                          " points, got " + std::to_string(n));
  }
  if (const std::size_t distinct = count_distinct(cloud.points()); k > distinct) {
    throw InvalidArgument("k = " + std::to_string(k) + " exceeds the number of distinct points (" +
                          std::to_string(distinct) + ")");
  }

  const KdTree tree(cloud.points());
  NeighborGraph g;
  g.k = k;
  g.knn.resize(n);
  g.radius.resize(n);
  g.ball.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto idx = static_cast<PointIndex>(i);
    const auto nearest = tree.knn(idx, k);
    g.knn[i].reserve(k);
    for (const Neighbor& nb : nearest) g.knn[i].push_back(nb.index);
    const double r2 = nearest.back().dist2;
    g.radius[i] = std::sqrt(r2);
    for (const Neighbor& nb : tree.radius(idx, r2)) g.ball[i].push_back(nb.index);
    std::sort(g.ball[i].begin(), g.ball[i].end());
  }
  g.links = symmetrize(g.knn);
  return g;
}

std::vector<double> compute_area_weights(const PointCloud& cloud, const NeighborGraph& graph) {
  if (graph.size() != cloud.size()) throw InvalidArgument("graph was built over a different cloud");
  std::vector<double> w(cloud.size(), 0.0);
  for (std::size_t j = 0; j < cloud.size(); ++j) {
    for (PointIndex l : graph.knn[j]) w[j] += (cloud.point(l) - cloud.point(j)).squaredNorm();
  }
  return w;
}

std::size_t count_components(const NeighborGraph& graph) {
  const std::size_t n = graph.size();
  std::vector<char> seen(n, 0);
  std::vector<PointIndex> stack;
  std::size_t components = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    ++components;
    seen[s] = 1;
    stack.push_back(static_cast<PointIndex>(s));
    while (!stack.empty()) {
      const PointIndex p = stack.back();
      stack.pop_back();
      for (PointIndex q : graph.links[p]) {
        if (!seen[q]) {
          seen[q] = 1;
          stack.push_back(q);
        }
      }
    }
  }
  return components;
}

}  // namespace vsa
