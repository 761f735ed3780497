#pragma once

#include <array>
#include <string>
#include <vector>

#include "vsa/core/types.hpp"

namespace vsa {

/// Pairwise adjacent proxies meeting at one mesh vertex.
struct QTuple {
  std::vector<ProxyId> proxy_ids;  // sorted, size >= 3
  Vec3 vertex = Vec3::Zero();
};

struct Face {
  ProxyId proxy = kUnassigned;
  std::vector<int> cycle;                    // vertex indices, counterclockwise about the proxy normal
  std::vector<std::array<int, 3>> triangles; // fan from cycle[0]
  bool warning = false;                      // polygon does not represent the proxy region faithfully
  std::string warning_reason;
};

struct SimplifiedMesh {
  std::vector<Vec3> vertices;
  std::vector<std::vector<ProxyId>> vertex_proxies;  // proxies each vertex belongs to
  std::vector<Face> faces;
  std::vector<Vec3> corrected_normals;  // per proxy; empty for the intersection strategy
  bool feasible = true;                 // optimization met its tolerances
  double max_plane_residual = 0.0;      // max |n_i . (x_j - C_i)| over face incidences
  std::vector<std::string> diagnostics;
};

}  // namespace vsa
