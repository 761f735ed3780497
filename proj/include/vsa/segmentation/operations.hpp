#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vsa/core/neighbor_graph.hpp"
#include "vsa/core/segmentation.hpp"
#include "vsa/segmentation/config.hpp"

namespace vsa {

// Energy decrease a switch must achieve to be applied.
inline constexpr double kSwitchTolerance = 1e-12;

/// Initial seed indices. SeedCount draws m distinct indices reproducibly
/// from `rng_seed` and returns them ascending; SeedList is validated and
/// returned unchanged; SeedAll returns 0..n-1.
std::vector<PointIndex> select_seeds(std::size_t cloud_size, const SeedSpec& spec, std::uint64_t rng_seed);

/// Priority-queue region growing from `seeds`, proxy i carrying
/// `seed_normals[i]`. Queue order is (|n_j - N_i|^2, proxy id, point index).
/// Throws UnreachedPoints when some component holds no seed.
Segmentation flood(const PointCloud& cloud, const NeighborGraph& graph, std::span<const PointIndex> seeds,
                   std::span<const Vec3> seed_normals);

/// Flood seeded with each seed's own point normal.
Segmentation flood(const PointCloud& cloud, const NeighborGraph& graph, std::span<const PointIndex> seeds);

/// Refit every proxy normal to its weighted normal average and recache energies.
void proxy_update(const PointCloud& cloud, Segmentation& seg);

/// Per proxy, the member whose normal deviates least from the proxy normal.
std::vector<PointIndex> seed_step(const PointCloud& cloud, const Segmentation& seg);

struct SwitchMove {
  PointIndex point = -1;
  ProxyId from = kUnassigned;
  ProxyId to = kUnassigned;
  double delta = 0.0;  // change of total energy, negative when improving
};

/// Best single boundary reassignment under the current proxy normals, ties
/// broken by (point, target proxy). Moves emptying a proxy are excluded.
/// Returns nothing when no candidate lowers the energy by more than kSwitchTolerance.
std::optional<SwitchMove> best_switch(const PointCloud& cloud, const NeighborGraph& graph, const Segmentation& seg);

/// Applies best_switch() if there is one.
std::optional<SwitchMove> switch_step(const PointCloud& cloud, const NeighborGraph& graph, Segmentation& seg);

/// Move one point between proxies, keeping members sorted and energies cached.
void apply_move(const PointCloud& cloud, Segmentation& seg, PointIndex point, ProxyId to);

struct SplitAxis {
  Vec3 mean;
  Vec3 direction;
};

/// Weighted-PCA most-spread direction of member positions, sign-canonical.
SplitAxis split_axis(const PointCloud& cloud, std::span<const PointIndex> members);

struct SplitOutcome {
  bool applied = false;
  ProxyId kept = kUnassigned;   // positive side, keeps the parent id
  ProxyId added = kUnassigned;  // negative side, new id
  std::string reason;           // why a split was rejected
};

/// Split a proxy across the hyperplane through the weighted mean orthogonal to
/// its most-spread direction. Needs at least two members.
SplitOutcome split(const PointCloud& cloud, Segmentation& seg, ProxyId id);

/// (|P_i| N_i + |P_j| N_j) normalized, or nothing when it vanishes.
std::optional<Vec3> merged_normal(const Segmentation& seg, ProxyId i, ProxyId j);

/// Energy of P_i u P_j about merged_normal(); nothing when that is undefined.
std::optional<double> merged_energy(const PointCloud& cloud, const Segmentation& seg, ProxyId i, ProxyId j);

/// Replace adjacent proxies i and j by their union. Throws InvalidArgument
/// unless they are adjacent and the merged energy is below eta. The union
/// keeps min(i, j); ids above max(i, j) shift down by one.
void merge(const PointCloud& cloud, const NeighborGraph& graph, Segmentation& seg, ProxyId i, ProxyId j,
           double eta);

/// Proxy pairs (a < b) such that some point of one has a point of the other
/// inside its k-th-neighbor ball. Sorted.
std::vector<std::pair<ProxyId, ProxyId>> proxy_adjacency(const NeighborGraph& graph, const Segmentation& seg);

/// Split proxies whose members are disconnected in the neighbor graph into
/// one proxy per component, then refit every normal and center. Returns the
/// number of proxies added.
std::size_t relabel_components(const PointCloud& cloud, const NeighborGraph& graph, Segmentation& seg);

struct PassResult {
  std::size_t applied = 0;
  std::vector<double> energies;  // total energy after each applied operation
  std::vector<std::string> rejected;
};

/// Split every proxy with energy > eta once, largest energy first.
PassResult split_pass(const PointCloud& cloud, Segmentation& seg, double eta);

/// Greedily merge adjacent pairs in order of ascending merged energy while
/// some pair stays below eta. Adjacency follows every applied merge.
PassResult merge_pass(const PointCloud& cloud, const NeighborGraph& graph, Segmentation& seg, double eta);

}  // namespace vsa
