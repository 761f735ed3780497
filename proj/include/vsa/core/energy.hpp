#pragma once

#include <span>

#include "vsa/core/point_cloud.hpp"

namespace vsa {

struct Segmentation;

/// Normal-deviation energy of one proxy: sum_j w_j |n_j - N|^2.
double proxy_energy(const PointCloud& cloud, std::span<const PointIndex> members, const Vec3& normal);

/// Sum of proxy energies, recomputed from members and normals (not the cache).
double total_energy(const PointCloud& cloud, const Segmentation& seg);

/// Mean squared distance of each point to the plane of its proxy
/// (through the proxy's center point, with the proxy normal).
double mse(const PointCloud& cloud, const Segmentation& seg);

/// Weighted normal average direction; throws DegenerateNormalSum (tagged with
/// `proxy`) when |sum w_j n_j| < 1e-12.
Vec3 fit_normal(const PointCloud& cloud, std::span<const PointIndex> members, ProxyId proxy = kUnassigned);

/// Member with least |n_j - N|^2; ties go to the lowest point index.
PointIndex least_deviating_member(const PointCloud& cloud, std::span<const PointIndex> members,
                                  const Vec3& normal);

}  // namespace vsa
