#include <algorithm>

#include "vsa/core/energy.hpp"
#include "vsa/core/error.hpp"
#include "vsa/segmentation/operations.hpp"

namespace vsa {

std::optional<SwitchMove> best_switch(const PointCloud& cloud, const NeighborGraph& graph, const Segmentation& seg) {
  std::optional<SwitchMove> best;
  std::vector<ProxyId> targets;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const ProxyId from = seg.assignment[i];
    if (seg.proxies[from].members.size() < 2) continue;

    targets.clear();
    for (PointIndex j : graph.links[i]) {
      if (seg.assignment[j] != from) targets.push_back(seg.assignment[j]);
    }
    if (targets.empty()) continue;
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());

    const Vec3& n = cloud.normal(i);
    const double w = cloud.weight(i);
    const double current = (n - seg.proxies[from].normal).squaredNorm();
    for (ProxyId to : targets) {
      const double delta = w * ((n - seg.proxies[to].normal).squaredNorm() - current);
      // Scan order is (point, target) ascending, so strict < keeps the lowest on ties.
      if (delta < -kSwitchTolerance && (!best || delta < best->delta)) {
        best = SwitchMove{static_cast<PointIndex>(i), from, to, delta};
      }
    }
  }
  return best;
}

void apply_move(const PointCloud& cloud, Segmentation& seg, PointIndex point, ProxyId to) {
  const ProxyId from = seg.assignment.at(point);
  if (from == to) return;
  Proxy& src = seg.proxies.at(from);
  Proxy& dst = seg.proxies.at(to);
  if (src.members.size() < 2) throw InvalidArgument("move would empty a proxy");

  src.members.erase(std::lower_bound(src.members.begin(), src.members.end(), point));
  dst.members.insert(std::lower_bound(dst.members.begin(), dst.members.end(), point), point);
  seg.assignment[point] = to;
  if (src.center == point) src.center = least_deviating_member(cloud, src.members, src.normal);
  src.energy = proxy_energy(cloud, src.members, src.normal);
  dst.energy = proxy_energy(cloud, dst.members, dst.normal);
}

std::optional<SwitchMove> switch_step(const PointCloud& cloud, const NeighborGraph& graph, Segmentation& seg) {
  auto move = best_switch(cloud, graph, seg);
  if (move) apply_move(cloud, seg, move->point, move->to);
  return move;
}

}  // namespace vsa
