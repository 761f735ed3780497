#include "vsa/simplify/simplify.hpp"

#include "vsa/core/error.hpp"
#include "vsa/segmentation/operations.hpp"

namespace vsa {

std::string to_string(Strategy strategy) { return strategy == Strategy::Intersect ? "intersect" : "optimize"; }

Strategy parse_strategy(const std::string& text) {
  if (text == "intersect") return Strategy::Intersect;
  if (text == "optimize") return Strategy::Optimize;
  throw InvalidArgument("unknown strategy '" + text + "' (expected intersect or optimize)");
}

SimplifiedMesh simplify(const PointCloud& cloud, const NeighborGraph& graph, const Segmentation& seg,
                        const SimplifyOptions& options) {
  if (graph.size() != cloud.size() || seg.assignment.size() != cloud.size()) {
    throw InvalidArgument("cloud, graph and segmentation sizes differ");
  }
  const auto adjacency = proxy_adjacency(graph, seg);
  const auto tuples = witnessed_tuples(graph, seg, enumerate_q_tuples(adjacency, seg.proxy_count()));
  const auto frames = proxy_frames(cloud, seg, options.anchor);

  SimplifiedMesh mesh;
  std::vector<Vec3> normals;
  if (options.strategy == Strategy::Intersect) {
    mesh = solve_vertices_naive(frames, tuples);
    for (const ProxyFrame& f : frames) normals.push_back(f.normal);
  } else {
    mesh = solve_vertices_optimized(frames, tuples, options.solver);
    normals = mesh.corrected_normals;
  }
  build_faces(cloud, graph, seg, normals, mesh);
  return mesh;
}

}  // namespace vsa
