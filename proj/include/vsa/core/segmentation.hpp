#pragma once

#include <vector>

#include "vsa/core/point_cloud.hpp"

namespace vsa {

/// Planar proxy (P_i, C_i, N_i) plus its cached normal-deviation energy.
struct Proxy {
  ProxyId id = kUnassigned;
  std::vector<PointIndex> members;  // sorted ascending
  PointIndex center = -1;
  Vec3 normal = Vec3::UnitZ();
  double energy = 0.0;
};

/// Partition of a cloud into proxies.
///
/// Proxy ids are dense: proxies[i].id == i. `assignment[j]` is the id owning
/// point j, or kUnassigned while a flood is in progress.
struct Segmentation {
  std::vector<ProxyId> assignment;
  std::vector<Proxy> proxies;

  std::size_t proxy_count() const { return proxies.size(); }

  /// Rebuild member lists from `assignment` for `count` proxies. Normals,
  /// centers and energies of existing proxies are kept.
  void rebuild_members(std::size_t count);

  /// Recompute every cached energy from members and normals.
  void recache_energies(const PointCloud& cloud);

  /// Renumber proxies so ids are dense again after some were emptied.
  void compact();
};

/// Build a segmentation from a full assignment: member lists, fitted normals,
/// least-deviating centers and energies. Ids must be in [0, count).
Segmentation segmentation_from_assignment(const PointCloud& cloud, std::vector<ProxyId> assignment);

/// Throws InvalidArgument unless the segmentation is a partition of the cloud
/// with consistent ids, members, centers and unit normals.
void check_partition(const PointCloud& cloud, const Segmentation& seg);

}  // namespace vsa
