#include "vsa/io/manifest.hpp"

#include <variant>

#include "vsa/core/error.hpp"

namespace vsa::io {

namespace {

nlohmann::json seeds_to_json(const SeedSpec& seeds) {
  return std::visit(
      [](const auto& s) -> nlohmann::json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, SeedCount>) return {{"count", s.m}};
        if constexpr (std::is_same_v<T, SeedList>) return {{"list", s.indices}};
        return "all";
      },
      seeds);
}

SeedSpec seeds_from_json(const nlohmann::json& j) {
  if (j.is_string() && j.get<std::string>() == "all") return SeedAll{};
  if (j.is_number_unsigned()) return SeedCount{j.get<std::size_t>()};
  if (j.is_object() && j.contains("count")) return SeedCount{j.at("count").get<std::size_t>()};
  if (j.is_object() && j.contains("list")) return SeedList{j.at("list").get<std::vector<PointIndex>>()};
  if (j.is_array()) return SeedList{j.get<std::vector<PointIndex>>()};
  throw InvalidArgument("seeds must be a count, \"all\", or an index list");
}

}  // namespace

nlohmann::json to_json(const PipelineConfig& c) {
  return {{"mode", to_string(c.mode)},
          {"eta", c.eta},
          {"k", c.k},
          {"seeds", seeds_to_json(c.seeds)},
          {"split", c.enable_split},
          {"merge", c.enable_merge},
          {"weights", to_string(c.weights)},
          {"max_iterations", c.max_iterations},
          {"max_switch_iterations", c.max_switch_iterations},
          {"rng_seed", c.rng_seed}};
}

PipelineConfig pipeline_config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InvalidArgument("a pipeline config must be a JSON object");
  PipelineConfig c;
  try {
    if (j.contains("mode")) c.mode = parse_mode(j.at("mode").get<std::string>());
    if (j.contains("eta")) c.eta = j.at("eta").get<double>();
    if (j.contains("k")) c.k = j.at("k").get<std::size_t>();
    if (j.contains("seeds")) c.seeds = seeds_from_json(j.at("seeds"));
    if (j.contains("split")) c.enable_split = j.at("split").get<bool>();
    if (j.contains("merge")) c.enable_merge = j.at("merge").get<bool>();
    if (j.contains("weights")) c.weights = parse_weight_scheme(j.at("weights").get<std::string>());
    if (j.contains("max_iterations")) c.max_iterations = j.at("max_iterations").get<std::size_t>();
    if (j.contains("max_switch_iterations")) c.max_switch_iterations = j.at("max_switch_iterations").get<std::size_t>();
    if (j.contains("rng_seed")) c.rng_seed = j.at("rng_seed").get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("bad pipeline config: ") + e.what());
  }
  c.validate();
  return c;
}

nlohmann::json to_json(const RunManifest& m) {
  nlohmann::json j = {{"command", m.command}, {"input", m.input}, {"outputs", m.outputs}, {"version", m.version}};
  if (m.has_pipeline) {
    j["pipeline"] = to_json(m.pipeline);
    j["rng_seed"] = m.pipeline.rng_seed;
  }
  if (m.has_simplify) {
    j["simplify"] = {{"strategy", to_string(m.simplify.strategy)},
                     {"anchor", m.simplify.anchor == Anchor::Centroid ? "centroid" : "center"},
                     {"wtilde", m.simplify.solver.default_wtilde},
                     {"max_outer", m.simplify.solver.max_outer},
                     {"constraint_tol", m.simplify.solver.constraint_tol},
                     {"step_tol", m.simplify.solver.step_tol},
                     {"k", m.simplify_k},
                     {"weights", to_string(m.simplify_weights)},
                     {"triangulate", m.triangulate}};
  }
  return j;
}

void write_manifest(std::ostream& out, const RunManifest& manifest) { out << to_json(manifest).dump(2) << "\n"; }

}  // namespace vsa::io
