#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "vsa/core/types.hpp"

namespace vsa {

enum class Mode { Classic, Switch };
enum class WeightScheme { Unit, Area };

// Initial seeding: a random count, an explicit index list, or every point.
struct SeedCount {
  std::size_t m = 1;
};
struct SeedList {
  std::vector<PointIndex> indices;
};
struct SeedAll {};
using SeedSpec = std::variant<SeedCount, SeedList, SeedAll>;

struct PipelineConfig {
  Mode mode = Mode::Switch;
  double eta = 25.0;
  std::size_t k = 8;
  SeedSpec seeds = SeedCount{6};
  bool enable_split = true;
  bool enable_merge = true;
  WeightScheme weights = WeightScheme::Unit;
  // Classic mode: flood/update/seed rounds.
  std::size_t max_iterations = 100;
  // Switch mode: safety bound on update/split/merge/switch rounds. The loop
  // terminates on its own; hitting this bound is reported as non-convergence.
  std::size_t max_switch_iterations = 2'000'000;
  std::uint64_t rng_seed = 0;

  // Throws InvalidArgument on eta < 0 or zero iteration bounds.
  void validate() const;
};

enum class Operation { Flood, Update, Seed, Switch, Split, Merge, Relabel };

struct IterationReport {
  std::size_t iteration = 0;
  double energy = 0.0;
  std::size_t proxy_count = 0;
  Operation operation = Operation::Flood;
  std::size_t reassigned = 0;
};

std::string to_string(Mode mode);
std::string to_string(Operation op);
std::string to_string(WeightScheme scheme);
Mode parse_mode(const std::string& text);
WeightScheme parse_weight_scheme(const std::string& text);

}  // namespace vsa
