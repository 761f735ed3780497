#include <algorithm>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "vsa/core/energy.hpp"
#include "vsa/core/error.hpp"
#include "vsa/segmentation/operations.hpp"

namespace vsa {

void PipelineConfig::validate() const {
  if (!(eta >= 0.0)) throw InvalidArgument("eta must be >= 0");
  if (max_iterations < 1 || max_switch_iterations < 1) throw InvalidArgument("iteration bounds must be >= 1");
  if (k < 1) throw InvalidArgument("k must be >= 1");
}

std::string to_string(Mode mode) { return mode == Mode::Classic ? "classic" : "switch"; }

std::string to_string(WeightScheme scheme) { return scheme == WeightScheme::Unit ? "unit" : "area"; }

std::string to_string(Operation op) {
  switch (op) {
    case Operation::Flood: return "flood";
    case Operation::Update: return "update";
    case Operation::Seed: return "seed";
    case Operation::Switch: return "switch";
    case Operation::Split: return "split";
    case Operation::Merge: return "merge";
    case Operation::Relabel: return "relabel";
  }
  return "?";
}

Mode parse_mode(const std::string& text) {
  if (text == "classic") return Mode::Classic;
  if (text == "switch") return Mode::Switch;
  throw InvalidArgument("unknown mode '" + text + "'");
}

WeightScheme parse_weight_scheme(const std::string& text) {
  if (text == "unit") return WeightScheme::Unit;
  if (text == "area") return WeightScheme::Area;
  throw InvalidArgument("unknown weight scheme '" + text + "'");
}

namespace {

// Uniform draw in [0, bound) from the raw engine output. std::uniform_int_distribution
// is implementation-defined, which would make seeds differ between standard libraries.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

}  // namespace

std::vector<PointIndex> select_seeds(std::size_t cloud_size, const SeedSpec& spec, std::uint64_t rng_seed) {
  if (const auto* all = std::get_if<SeedAll>(&spec)) {
    (void)all;
    std::vector<PointIndex> seeds(cloud_size);
    std::iota(seeds.begin(), seeds.end(), 0);
    return seeds;
  }
  if (const auto* list = std::get_if<SeedList>(&spec)) {
    if (list->indices.empty()) throw InvalidArgument("explicit seed list is empty");
    std::vector<PointIndex> sorted = list->indices;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw InvalidArgument("explicit seed list contains duplicates");
    }
    if (sorted.front() < 0 || static_cast<std::size_t>(sorted.back()) >= cloud_size) {
      throw InvalidArgument("explicit seed index out of range");
    }
    return list->indices;
  }
  const std::size_t m = std::get<SeedCount>(spec).m;
  if (m < 1 || m > cloud_size) {
    throw InvalidArgument("seed count " + std::to_string(m) + " must lie in [1, " + std::to_string(cloud_size) + "]");
  }
  // Partial Fisher-Yates shuffle.
  std::vector<PointIndex> pool(cloud_size);
  std::iota(pool.begin(), pool.end(), 0);
  std::mt19937_64 rng(rng_seed);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t j = i + bounded(rng, cloud_size - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(m);
  // Ascending order ties proxy ids to point order; m = size gives the identity.
  std::sort(pool.begin(), pool.end());
  return pool;
}

void proxy_update(const PointCloud& cloud, Segmentation& seg) {
  for (Proxy& p : seg.proxies) {
    p.normal = fit_normal(cloud, p.members, p.id);
    p.energy = proxy_energy(cloud, p.members, p.normal);
  }
}

std::vector<PointIndex> seed_step(const PointCloud& cloud, const Segmentation& seg) {
  std::vector<PointIndex> seeds;
  seeds.reserve(seg.proxies.size());
  for (const Proxy& p : seg.proxies) seeds.push_back(least_deviating_member(cloud, p.members, p.normal));
  return seeds;
}

}  // namespace vsa
