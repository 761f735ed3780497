#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "vsa/core/error.hpp"
#include "vsa/simplify/simplify.hpp"

namespace vsa {

namespace {

using Vec2 = Eigen::Vector2d;

double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

double segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a;
  const double len2 = ab.squaredNorm();
  const double t = len2 > 0.0 ? std::clamp((p - a).dot(ab) / len2, 0.0, 1.0) : 0.0;
  return (p - (a + t * ab)).norm();
}

// Even-odd rule.
bool inside(const Vec2& p, const std::vector<Vec2>& poly) {
  bool in = false;
  for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[j];
    if ((a.y() > p.y()) != (b.y() > p.y())) {
      const double x = a.x() + (p.y() - a.y()) * (b.x() - a.x()) / (b.y() - a.y());
      if (p.x() < x) in = !in;
    }
  }
  return in;
}

Vec3 reference_axis(const Vec3& normal) {
  int axis = 0;
  for (int k = 1; k < 3; ++k) {
    if (std::abs(normal[k]) < std::abs(normal[axis])) axis = k;
  }
  return (Vec3::Unit(axis) - normal[axis] * normal).normalized();
}

}  // namespace

void build_faces(const PointCloud& cloud, const NeighborGraph& graph, const Segmentation& seg,
                 const std::vector<Vec3>& normals, SimplifiedMesh& mesh) {
  if (normals.size() != seg.proxy_count()) throw InvalidArgument("one plane normal per proxy is required");
  std::vector<std::vector<int>> incident(seg.proxy_count());
  for (std::size_t v = 0; v < mesh.vertex_proxies.size(); ++v) {
    for (ProxyId id : mesh.vertex_proxies[v]) incident.at(id).push_back(static_cast<int>(v));
  }

  mesh.faces.clear();
  for (const Proxy& proxy : seg.proxies) {
    const std::vector<int>& ids = incident[proxy.id];
    if (ids.size() < 3) {
      mesh.diagnostics.push_back("proxy " + std::to_string(proxy.id) + " has " + std::to_string(ids.size()) +
                                 " vertices; face skipped");
      continue;
    }
    const Vec3 normal = normals[proxy.id].normalized();
    const Vec3 ax = reference_axis(normal);
    const Vec3 ay = normal.cross(ax);
    auto project = [&](const Vec3& p) { return Vec2(p.dot(ax), p.dot(ay)); };

    Vec2 center = Vec2::Zero();
    for (int v : ids) center += project(mesh.vertices[v]);
    center /= static_cast<double>(ids.size());

    std::vector<std::pair<double, int>> order;
    for (int v : ids) {
      const Vec2 d = project(mesh.vertices[v]) - center;
      order.emplace_back(std::atan2(d.y(), d.x()), v);
    }
    std::sort(order.begin(), order.end());

    Face face;
    face.proxy = proxy.id;
    for (const auto& [angle, v] : order) face.cycle.push_back(v);
    for (std::size_t k = 1; k + 1 < face.cycle.size(); ++k) {
      face.triangles.push_back({face.cycle[0], face.cycle[k], face.cycle[k + 1]});
    }

    double widest = 0.0;
    for (std::size_t k = 0; k < order.size(); ++k) {
      const double next = k + 1 < order.size() ? order[k + 1].first : order[0].first + 2.0 * std::numbers::pi;
      widest = std::max(widest, next - order[k].first);
    }
    if (widest >= std::numbers::pi) {
      face.warning = true;
      face.warning_reason = "vertex barycenter lies outside the polygon";
    } else {
      std::vector<Vec2> poly;
      for (int v : face.cycle) poly.push_back(project(mesh.vertices[v]));
      double area = 0.0;
      for (std::size_t k = 0; k < poly.size(); ++k) area += cross2(poly[k], poly[(k + 1) % poly.size()]);
      std::size_t outside = 0;
      for (PointIndex j : proxy.members) {
        const Vec2 p = project(cloud.point(j));
        if (inside(p, poly)) continue;
        double d = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < poly.size(); ++k) d = std::min(d, segment_distance(p, poly[k], poly[(k + 1) % poly.size()]));
        outside += d > graph.radius[j];
      }
      if (area <= 0.0) {
        face.warning = true;
        face.warning_reason = "degenerate polygon";
      } else if (static_cast<double>(outside) > kOutsideFraction * static_cast<double>(proxy.members.size())) {
        face.warning = true;
        face.warning_reason = std::to_string(outside) + " of " + std::to_string(proxy.members.size()) +
                              " members lie outside the polygon";
      }
    }
    mesh.faces.push_back(std::move(face));
  }
}

}  // namespace vsa
