#include "vsa/core/energy.hpp"

#include "vsa/core/error.hpp"
#include "vsa/core/segmentation.hpp"

namespace vsa {

double proxy_energy(const PointCloud& cloud, std::span<const PointIndex> members, const Vec3& normal) {
  double e = 0.0;
  for (PointIndex j : members) e += cloud.weight(j) * (cloud.normal(j) - normal).squaredNorm();
  return e;
}

double total_energy(const PointCloud& cloud, const Segmentation& seg) {
  double e = 0.0;
  for (const Proxy& p : seg.proxies) e += proxy_energy(cloud, p.members, p.normal);
  return e;
}

double mse(const PointCloud& cloud, const Segmentation& seg) {
  double sum = 0.0;
  for (std::size_t j = 0; j < cloud.size(); ++j) {
    const Proxy& p = seg.proxies.at(seg.assignment[j]);
    const double d = p.normal.dot(cloud.point(j) - cloud.point(p.center));
    sum += d * d;
  }
  return sum / static_cast<double>(cloud.size());
}

Vec3 fit_normal(const PointCloud& cloud, std::span<const PointIndex> members, ProxyId proxy) {
  Vec3 sum = Vec3::Zero();
  for (PointIndex j : members) sum += cloud.weight(j) * cloud.normal(j);
  const double len = sum.norm();
  if (len < 1e-12) throw DegenerateNormalSum(proxy);
  return sum / len;
}

PointIndex least_deviating_member(const PointCloud& cloud, std::span<const PointIndex> members,
                                  const Vec3& normal) {
  PointIndex best = -1;
  double best_dev = 0.0;
  for (PointIndex j : members) {
    const double dev = (cloud.normal(j) - normal).squaredNorm();
    if (best < 0 || dev < best_dev || (dev == best_dev && j < best)) {
      best = j;
      best_dev = dev;
    }
  }
  return best;
}

}  // namespace vsa
