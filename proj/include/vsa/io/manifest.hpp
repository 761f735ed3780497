#pragma once

#include <map>
#include <ostream>
#include <string>

#include <json.hpp>

#include "vsa/segmentation/config.hpp"
#include "vsa/simplify/simplify.hpp"

namespace vsa::io {

inline constexpr const char* kToolVersion = "1.0.0";

/// Everything needed to reproduce one CLI run.
struct RunManifest {
  std::string command;
  std::string input;
  std::map<std::string, std::string> outputs;
  PipelineConfig pipeline;
  bool has_pipeline = false;
  SimplifyOptions simplify;
  bool has_simplify = false;
  // Simplify inputs outside SimplifyOptions that still change the output.
  std::size_t simplify_k = 8;
  WeightScheme simplify_weights = WeightScheme::Unit;
  bool triangulate = false;
  std::string version = kToolVersion;
};

nlohmann::json to_json(const PipelineConfig& config);
PipelineConfig pipeline_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const RunManifest& manifest);
void write_manifest(std::ostream& out, const RunManifest& manifest);

}  // namespace vsa::io
