#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/SVD>

#include "vsa/core/error.hpp"
#include "vsa/simplify/vertices.hpp"

namespace vsa {

namespace {

std::string join_ids(const std::vector<ProxyId>& ids) {
  std::string out;
  for (ProxyId id : ids) out += (out.empty() ? "" : ",") + std::to_string(id);
  return out;
}

}  // namespace

Intersection intersect_three_planes(const std::array<Plane, 3>& planes) {
  Eigen::Matrix3d a;
  Vec3 b;
  for (int r = 0; r < 3; ++r) {
    a.row(r) = planes[r].normal.transpose();
    b[r] = planes[r].normal.dot(planes[r].anchor);
  }
  const Eigen::JacobiSVD<Eigen::Matrix3d> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Intersection out;
  out.sigma_max = svd.singularValues()[0];
  out.sigma_min = svd.singularValues()[2];
  if (!(out.sigma_min >= kConditionThreshold * out.sigma_max) || out.sigma_max == 0.0) {
    out.diagnostic = "near-parallel planes (sigma_min / sigma_max = " +
                     std::to_string(out.sigma_max > 0.0 ? out.sigma_min / out.sigma_max : 0.0) + ")";
    return out;
  }
  out.point = svd.solve(b);
  return out;
}

std::vector<ProxyFrame> proxy_frames(const PointCloud& cloud, const Segmentation& seg, Anchor anchor) {
  std::vector<ProxyFrame> frames;
  frames.reserve(seg.proxy_count());
  for (const Proxy& p : seg.proxies) {
    if (p.members.empty()) throw InvalidArgument("proxy " + std::to_string(p.id) + " has no members");
    double total = 0.0;
    for (PointIndex j : p.members) total += cloud.weight(j);
    Vec3 centroid = Vec3::Zero();
    for (PointIndex j : p.members) centroid += (total > 0.0 ? cloud.weight(j) : 1.0) * cloud.point(j);
    centroid /= total > 0.0 ? total : static_cast<double>(p.members.size());
    double radius = 0.0;
    for (PointIndex j : p.members) radius = std::max(radius, (cloud.point(j) - centroid).norm());
    const Vec3 a = anchor == Anchor::Centroid ? centroid : cloud.point(p.center);
    frames.push_back({a, p.normal, centroid, radius});
  }
  return frames;
}

SimplifiedMesh solve_vertices_naive(const std::vector<ProxyFrame>& frames, const std::vector<QTuple>& tuples) {
  SimplifiedMesh mesh;
  for (const QTuple& tuple : tuples) {
    const auto& ids = tuple.proxy_ids;
    const std::size_t q = ids.size();
    Intersection best;
    bool have = false;
    for (std::size_t a = 0; a < q; ++a) {
      for (std::size_t b = a + 1; b < q; ++b) {
        for (std::size_t c = b + 1; c < q; ++c) {
          const auto& fa = frames.at(ids[a]);
          const auto& fb = frames.at(ids[b]);
          const auto& fc = frames.at(ids[c]);
          Intersection candidate = intersect_three_planes(
              {Plane{fa.anchor, fa.normal}, Plane{fb.anchor, fb.normal}, Plane{fc.anchor, fc.normal}});
          const double score = candidate.sigma_max > 0.0 ? candidate.sigma_min / candidate.sigma_max : 0.0;
          const double held = best.sigma_max > 0.0 ? best.sigma_min / best.sigma_max : 0.0;
          if (!have || score > held) {
            best = std::move(candidate);
            have = true;
          }
        }
      }
    }
    if (!best.point) {
      mesh.diagnostics.push_back("tuple {" + join_ids(ids) + "} skipped: " + best.diagnostic);
      continue;
    }
    const Vec3 x = *best.point;
    bool far = false;
    for (ProxyId id : ids) far = far || (x - frames[id].centroid).norm() > 3.0 * frames[id].radius;
    if (far) {
      mesh.diagnostics.push_back("tuple {" + join_ids(ids) + "} skipped: intersection too far from its proxies");
      continue;
    }
    for (ProxyId id : ids) {
      mesh.max_plane_residual =
          std::max(mesh.max_plane_residual, std::abs(frames[id].normal.dot(x - frames[id].anchor)));
    }
    mesh.vertices.push_back(x);
    mesh.vertex_proxies.push_back(ids);
  }
  return mesh;
}

}  // namespace vsa
