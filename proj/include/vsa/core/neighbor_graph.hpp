#pragma once

#include <vector>

#include "vsa/core/point_cloud.hpp"

namespace vsa {

/// Neighborhood structure over a point cloud.
///
/// `knn` holds the combinatorial k-nearest-neighbor lists as queried (directed).
/// `links` is their symmetrization (i~j if either lists the other) and drives
/// flooding, switching and connectivity. `ball` lists every point within the
/// k-th-neighbor distance of i and is the geometric neighborhood used for
/// proxy adjacency. All lists are sorted by point index except `knn`, which is
/// ordered by (distance, index).
struct NeighborGraph {
  std::size_t k = 0;
  std::vector<std::vector<PointIndex>> knn;
  std::vector<double> radius;
  std::vector<std::vector<PointIndex>> links;
  std::vector<std::vector<PointIndex>> ball;

  std::size_t size() const { return knn.size(); }

  /// Graph from explicit adjacency lists (e.g. a chain). `k` becomes the
  /// longest list; radius is the farthest listed neighbor; ball equals links.
  static NeighborGraph from_adjacency(const PointCloud& cloud,
                                      std::vector<std::vector<PointIndex>> adjacency);
};

/// Exact k-nearest-neighbor graph. Requires size > k >= 1, and k no larger
/// than the number of distinct positions.
NeighborGraph build_neighbor_graph(const PointCloud& cloud, std::size_t k);

/// Area weights: w_j = sum over listed neighbors l of |p_l - p_j|^2.
std::vector<double> compute_area_weights(const PointCloud& cloud, const NeighborGraph& graph);

/// Number of connected components of the symmetrized graph.
std::size_t count_components(const NeighborGraph& graph);

}  // namespace vsa
