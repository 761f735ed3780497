#include <algorithm>

#include "vsa/core/energy.hpp"
#include "vsa/segmentation/operations.hpp"

namespace vsa {

std::vector<std::pair<ProxyId, ProxyId>> proxy_adjacency(const NeighborGraph& graph, const Segmentation& seg) {
  std::vector<std::pair<ProxyId, ProxyId>> pairs;
  for (std::size_t i = 0; i < graph.size(); ++i) {
    const ProxyId a = seg.assignment[i];
    for (PointIndex j : graph.ball[i]) {
      const ProxyId b = seg.assignment[j];
      if (a != b) pairs.emplace_back(std::min(a, b), std::max(a, b));
    }
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return pairs;
}

std::size_t relabel_components(const PointCloud& cloud, const NeighborGraph& graph, Segmentation& seg) {
  const std::size_t n = cloud.size();
  const std::size_t original = seg.proxies.size();
  std::vector<char> seen(n, 0);
  std::vector<PointIndex> stack;
  std::vector<std::vector<PointIndex>> extra;  // components beyond the first, per proxy order

  for (std::size_t id = 0; id < original; ++id) {
    std::vector<std::vector<PointIndex>> components;
    for (PointIndex start : seg.proxies[id].members) {
      if (seen[start]) continue;
      components.emplace_back();
      seen[start] = 1;
      stack.push_back(start);
      while (!stack.empty()) {
        const PointIndex p = stack.back();
        stack.pop_back();
        components.back().push_back(p);
        for (PointIndex q : graph.links[p]) {
          if (!seen[q] && seg.assignment[q] == static_cast<ProxyId>(id)) {
            seen[q] = 1;
            stack.push_back(q);
          }
        }
      }
    }
    // Members are scanned in ascending order, so components are ordered by their
    // smallest index; the first keeps the proxy id.
    for (std::size_t c = 1; c < components.size(); ++c) extra.push_back(std::move(components[c]));
  }

  for (std::size_t c = 0; c < extra.size(); ++c) {
    const auto id = static_cast<ProxyId>(original + c);
    for (PointIndex j : extra[c]) seg.assignment[j] = id;
  }
  seg.rebuild_members(original + extra.size());
  for (Proxy& p : seg.proxies) {
    p.normal = fit_normal(cloud, p.members, p.id);
    p.center = least_deviating_member(cloud, p.members, p.normal);
    p.energy = proxy_energy(cloud, p.members, p.normal);
  }
  return extra.size();
}

}  // namespace vsa
