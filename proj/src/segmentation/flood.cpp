#include <queue>
#include <tuple>

#include "vsa/core/energy.hpp"
#include "vsa/core/error.hpp"
#include "vsa/segmentation/operations.hpp"

namespace vsa {

Segmentation flood(const PointCloud& cloud, const NeighborGraph& graph, std::span<const PointIndex> seeds,
                   std::span<const Vec3> seed_normals) {
  const std::size_t n = cloud.size();
  if (graph.size() != n) throw InvalidArgument("graph was built over a different cloud");
  if (seeds.empty()) throw InvalidArgument("flood needs at least one seed");
  if (seed_normals.size() != seeds.size()) throw InvalidArgument("one normal per seed required");

  Segmentation seg;
  seg.assignment.assign(n, kUnassigned);
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    const PointIndex s = seeds[i];
    if (s < 0 || static_cast<std::size_t>(s) >= n) throw InvalidArgument("seed index out of range");
    if (seg.assignment[s] != kUnassigned) throw InvalidArgument("seeds must be distinct");
    seg.assignment[s] = static_cast<ProxyId>(i);
  }

  using Entry = std::tuple<double, ProxyId, PointIndex>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
  auto push_neighbors = [&](PointIndex p, ProxyId owner) {
    const Vec3& normal = seed_normals[owner];
    for (PointIndex q : graph.links[p]) {
      if (seg.assignment[q] == kUnassigned) queue.emplace((cloud.normal(q) - normal).squaredNorm(), owner, q);
    }
  };
  for (std::size_t i = 0; i < seeds.size(); ++i) push_neighbors(seeds[i], static_cast<ProxyId>(i));

  while (!queue.empty()) {
    const auto [priority, owner, p] = queue.top();
    queue.pop();
    if (seg.assignment[p] != kUnassigned) continue;
    seg.assignment[p] = owner;
    push_neighbors(p, owner);
  }

  std::vector<PointIndex> unreached;
  for (std::size_t j = 0; j < n; ++j) {
    if (seg.assignment[j] == kUnassigned) unreached.push_back(static_cast<PointIndex>(j));
  }
  if (!unreached.empty()) throw UnreachedPoints(std::move(unreached));

  seg.rebuild_members(seeds.size());
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    Proxy& p = seg.proxies[i];
    p.center = seeds[i];
    p.normal = seed_normals[i];
    p.energy = proxy_energy(cloud, p.members, p.normal);
  }
  return seg;
}

Segmentation flood(const PointCloud& cloud, const NeighborGraph& graph, std::span<const PointIndex> seeds) {
  std::vector<Vec3> normals;
  normals.reserve(seeds.size());
  for (PointIndex s : seeds) {
    if (s < 0 || static_cast<std::size_t>(s) >= cloud.size()) throw InvalidArgument("seed index out of range");
    normals.push_back(cloud.normal(s));
  }
  return flood(cloud, graph, seeds, normals);
}

}  // namespace vsa
