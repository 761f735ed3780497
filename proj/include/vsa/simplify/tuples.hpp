#pragma once

#include <utility>
#include <vector>

#include "vsa/core/neighbor_graph.hpp"
#include "vsa/core/segmentation.hpp"
#include "vsa/simplify/mesh.hpp"

namespace vsa {

/// Maximal cliques of size >= 3 of the proxy adjacency graph given by sorted
/// pairs (a < b) over `proxy_count` proxies. Each clique is sorted; the list
/// is sorted lexicographically.
std::vector<QTuple> enumerate_q_tuples(const std::vector<std::pair<ProxyId, ProxyId>>& adjacency,
                                       std::size_t proxy_count);

/// Restrict cliques to proxy sets that actually meet near one point: a set
/// is kept if the neighborhood of a single point (the point, its ball, and the
/// points whose ball contains it) touches every proxy of the set. Cliques
/// without such a witness are reduced to their largest witnessed subsets of
/// size >= 3. The result is again inclusion-maximal and sorted.
std::vector<QTuple> witnessed_tuples(const NeighborGraph& graph, const Segmentation& seg,
                                     const std::vector<QTuple>& cliques);

/// True if no tuple is a subset of another and every tuple is a clique of `adjacency`.
bool tuples_well_formed(const std::vector<QTuple>& tuples,
                        const std::vector<std::pair<ProxyId, ProxyId>>& adjacency);

}  // namespace vsa
