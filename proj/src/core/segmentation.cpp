#include "vsa/core/segmentation.hpp"

#include <cmath>
#include <string>

#include "vsa/core/energy.hpp"
#include "vsa/core/error.hpp"

namespace vsa {

void Segmentation::rebuild_members(std::size_t count) {
  proxies.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    proxies[i].id = static_cast<ProxyId>(i);
    proxies[i].members.clear();
  }
  for (std::size_t j = 0; j < assignment.size(); ++j) {
    const ProxyId a = assignment[j];
    if (a != kUnassigned) proxies.at(a).members.push_back(static_cast<PointIndex>(j));
  }
}

void Segmentation::recache_energies(const PointCloud& cloud) {
  for (Proxy& p : proxies) p.energy = proxy_energy(cloud, p.members, p.normal);
}

void Segmentation::compact() {
  std::vector<ProxyId> remap(proxies.size(), kUnassigned);
  std::vector<Proxy> kept;
  kept.reserve(proxies.size());
  for (Proxy& p : proxies) {
    if (p.members.empty()) continue;
    remap[p.id] = static_cast<ProxyId>(kept.size());
    p.id = remap[p.id];
    kept.push_back(std::move(p));
  }
  for (ProxyId& a : assignment) {
    if (a != kUnassigned) a = remap[a];
  }
  proxies = std::move(kept);
}

Segmentation segmentation_from_assignment(const PointCloud& cloud, std::vector<ProxyId> assignment) {
  if (assignment.size() != cloud.size()) throw InvalidArgument("assignment size differs from cloud size");
  ProxyId max_id = -1;
  for (ProxyId a : assignment) {
    if (a < 0) throw InvalidArgument("assignment contains an unassigned point");
    max_id = std::max(max_id, a);
  }
  Segmentation seg;
  seg.assignment = std::move(assignment);
  seg.rebuild_members(static_cast<std::size_t>(max_id + 1));
  for (Proxy& p : seg.proxies) {
    if (p.members.empty()) throw InvalidArgument("proxy id " + std::to_string(p.id) + " has no members");
    p.normal = fit_normal(cloud, p.members, p.id);
    p.center = least_deviating_member(cloud, p.members, p.normal);
    p.energy = proxy_energy(cloud, p.members, p.normal);
  }
  return seg;
}

void check_partition(const PointCloud& cloud, const Segmentation& seg) {
  const std::size_t n = cloud.size();
  if (seg.assignment.size() != n) throw InvalidArgument("assignment size differs from cloud size");
  std::vector<int> seen(n, 0);
  for (std::size_t i = 0; i < seg.proxies.size(); ++i) {
    const Proxy& p = seg.proxies[i];
    if (p.id != static_cast<ProxyId>(i)) throw InvalidArgument("proxy ids are not dense");
    if (p.members.empty()) throw InvalidArgument("proxy " + std::to_string(i) + " is empty");
    if (std::abs(p.normal.norm() - 1.0) > 1e-9) throw InvalidArgument("proxy normal is not unit length");
    bool center_found = false;
    for (std::size_t m = 0; m < p.members.size(); ++m) {
      const PointIndex j = p.members[m];
      if (m > 0 && p.members[m - 1] >= j) throw InvalidArgument("proxy members are not sorted");
      if (seg.assignment[j] != p.id) throw InvalidArgument("member list disagrees with assignment");
      ++seen[j];
      center_found |= (j == p.center);
    }
    if (!center_found) throw InvalidArgument("proxy center is not a member");
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (seen[j] != 1) throw InvalidArgument("point " + std::to_string(j) + " is not covered exactly once");
  }
}

}  // namespace vsa
