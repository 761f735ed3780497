#pragma once

#include "vsa/core/neighbor_graph.hpp"
#include "vsa/core/point_cloud.hpp"
#include "vsa/core/segmentation.hpp"
#include "vsa/simplify/mesh.hpp"
#include "vsa/simplify/tuples.hpp"
#include "vsa/simplify/vertices.hpp"

namespace vsa {

enum class Strategy { Intersect, Optimize };

std::string to_string(Strategy strategy);
Strategy parse_strategy(const std::string& text);

struct SimplifyOptions {
  Strategy strategy = Strategy::Optimize;
  SolverConfig solver;
  Anchor anchor = Anchor::Centroid;
};

/// Fraction of projected members allowed outside their polygon before a face is flagged.
inline constexpr double kOutsideFraction = 0.05;

/// One polygon per proxy with at least three vertices: vertices projected to
/// the proxy plane, sorted by angle about their barycenter from a reference
/// direction (the axis least aligned with the normal), oriented
/// counterclockwise about the normal and fanned from the first vertex.
/// `normals` are the plane normals to use (corrected or proxy normals).
///
/// A face is flagged when its barycenter lies outside the polygon (an angular
/// gap of at least pi) or when more than kOutsideFraction of the proxy members,
/// projected to the plane, fall outside the polygon by more than their
/// k-th-neighbor radius.
void build_faces(const PointCloud& cloud, const NeighborGraph& graph, const Segmentation& seg,
                 const std::vector<Vec3>& normals, SimplifiedMesh& mesh);

/// Adjacency, tuples, vertices by the chosen strategy, and faces.
SimplifiedMesh simplify(const PointCloud& cloud, const NeighborGraph& graph, const Segmentation& seg,
                        const SimplifyOptions& options = {});

}  // namespace vsa
