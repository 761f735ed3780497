#include "vsa/segmentation/pipeline.hpp"

#include <unordered_set>

#include "vsa/core/energy.hpp"
#include "vsa/core/error.hpp"
#include "vsa/segmentation/operations.hpp"

namespace vsa {

namespace {

double cached_total(const Segmentation& seg) {
  double total = 0.0;
  for (const Proxy& p : seg.proxies) total += p.energy;
  return total;
}

std::uint64_t fingerprint(const std::vector<ProxyId>& assignment) {
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a
  for (ProxyId a : assignment) {
    auto v = static_cast<std::uint32_t>(a);
    for (int b = 0; b < 4; ++b) {
      h ^= (v >> (8 * b)) & 0xffu;
      h *= 1099511628211ull;
    }
  }
  return h;
}

std::size_t count_changed(const std::vector<ProxyId>& before, const std::vector<ProxyId>& after) {
  if (before.size() != after.size()) return after.size();
  std::size_t changed = 0;
  for (std::size_t j = 0; j < after.size(); ++j) changed += before[j] != after[j];
  return changed;
}

std::vector<Vec3> own_normals(const PointCloud& cloud, const std::vector<PointIndex>& seeds) {
  std::vector<Vec3> normals;
  normals.reserve(seeds.size());
  for (PointIndex s : seeds) normals.push_back(cloud.normal(s));
  return normals;
}

class Recorder {
 public:
  explicit Recorder(PipelineResult& result) : result_(result) {}
  void operator()(std::size_t iteration, const Segmentation& seg, Operation op, std::size_t reassigned,
                  double energy) {
    result_.reports.push_back({iteration, energy, seg.proxy_count(), op, reassigned});
  }
  void operator()(std::size_t iteration, const Segmentation& seg, Operation op, std::size_t reassigned) {
    (*this)(iteration, seg, op, reassigned, cached_total(seg));
  }

 private:
  PipelineResult& result_;
};

void run_classic(const PointCloud& cloud, const NeighborGraph& graph, const PipelineConfig& config,
                 PipelineResult& result) {
  Recorder record(result);
  std::vector<PointIndex> seeds = select_seeds(cloud.size(), config.seeds, config.rng_seed);
  std::vector<Vec3> normals = own_normals(cloud, seeds);
  std::vector<ProxyId> previous;
  for (std::size_t it = 1; it <= config.max_iterations; ++it) {
    Segmentation seg = flood(cloud, graph, seeds, normals);
    record(it, seg, Operation::Flood, count_changed(previous, seg.assignment));
    proxy_update(cloud, seg);
    record(it, seg, Operation::Update, 0);
    const std::vector<PointIndex> next = seed_step(cloud, seg);
    std::size_t moved = 0;
    for (std::size_t i = 0; i < next.size(); ++i) {
      moved += next[i] != seeds[i];
      seg.proxies[i].center = next[i];
    }
    record(it, seg, Operation::Seed, moved);

    const bool repeated = seg.assignment == previous;
    previous = seg.assignment;
    result.segmentation = std::move(seg);
    result.iterations = it;
    if (repeated) {
      result.converged = true;
      return;
    }
    seeds = next;
    normals.clear();
    for (const Proxy& p : result.segmentation.proxies) normals.push_back(p.normal);
  }
  result.note = "classic mode reached max_iterations without a repeated assignment";
}

void run_switch(const PointCloud& cloud, const NeighborGraph& graph, const PipelineConfig& config,
                PipelineResult& result) {
  Recorder record(result);
  const std::vector<PointIndex> seeds = select_seeds(cloud.size(), config.seeds, config.rng_seed);
  Segmentation seg = flood(cloud, graph, seeds);
  record(0, seg, Operation::Flood, cloud.size());

  std::unordered_set<std::uint64_t> visited;
  bool finished = false;
  std::size_t it = 1;
  for (; it <= config.max_switch_iterations; ++it) {
    proxy_update(cloud, seg);
    record(it, seg, Operation::Update, 0);
    if (config.enable_split) {
      const std::size_t before = seg.proxy_count();
      const PassResult pass = split_pass(cloud, seg, config.eta);
      for (std::size_t a = 0; a < pass.energies.size(); ++a) {
        record(it, seg, Operation::Split, 0, pass.energies[a]);
        result.reports.back().proxy_count = before + a + 1;
      }
    }
    if (config.enable_merge) {
      const std::size_t before = seg.proxy_count();
      const PassResult pass = merge_pass(cloud, graph, seg, config.eta);
      for (std::size_t a = 0; a < pass.energies.size(); ++a) {
        record(it, seg, Operation::Merge, 0, pass.energies[a]);
        result.reports.back().proxy_count = before - a - 1;
      }
    }
    const auto move = switch_step(cloud, graph, seg);
    if (!move) {
      finished = true;
      break;
    }
    record(it, seg, Operation::Switch, 1);
    if (!visited.insert(fingerprint(seg.assignment)).second) {
      result.note = "assignment state repeated at iteration " + std::to_string(it);
      break;
    }
  }
  result.iterations = std::min(it, config.max_switch_iterations);

  const std::vector<ProxyId> before = seg.assignment;
  relabel_components(cloud, graph, seg);
  record(result.iterations, seg, Operation::Relabel, count_changed(before, seg.assignment));
  result.segmentation = std::move(seg);
  result.converged = finished;
  if (!finished && result.note.empty()) result.note = "switch mode reached max_switch_iterations";
}

}  // namespace

PointCloud prepare_cloud(const PointCloud& cloud, const NeighborGraph& graph, WeightScheme scheme) {
  if (scheme == WeightScheme::Area) return cloud.with_weights(compute_area_weights(cloud, graph));
  return cloud.with_weights(std::vector<double>(cloud.size(), 1.0));
}

PipelineResult run_pipeline(const PointCloud& cloud, const NeighborGraph& graph, const PipelineConfig& config) {
  config.validate();
  if (graph.size() != cloud.size()) throw InvalidArgument("neighbor graph size differs from cloud size");
  PipelineResult result;
  result.weights.assign(cloud.weights().begin(), cloud.weights().end());
  if (config.mode == Mode::Classic) {
    run_classic(cloud, graph, config, result);
  } else {
    run_switch(cloud, graph, config, result);
  }
  return result;
}

PipelineResult run_pipeline(const PointCloud& cloud, const PipelineConfig& config) {
  config.validate();
  const NeighborGraph graph = build_neighbor_graph(cloud, config.k);
  return run_pipeline(prepare_cloud(cloud, graph, config.weights), graph, config);
}

}  // namespace vsa
