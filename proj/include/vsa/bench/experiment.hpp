#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "vsa/core/point_cloud.hpp"
#include "vsa/segmentation/config.hpp"

namespace vsa::bench {

struct ExperimentRow {
  std::string config_id;
  Mode mode = Mode::Switch;
  double eta = 0.0;
  std::size_t k = 0;
  std::size_t m = 0;
  double energy = 0.0;
  double mse = 0.0;
  std::size_t iterations = 0;
  double ms = 0.0;
};

struct NamedConfig {
  std::string id;
  PipelineConfig config;
};

/// One pipeline run per config on the same cloud.
std::vector<ExperimentRow> experiment_report(const PointCloud& cloud, const std::vector<NamedConfig>& configs);

/// CSV with header config_id,mode,eta,k,m,energy,mse,iterations,ms.
void write_report_csv(std::ostream& out, const std::vector<ExperimentRow>& rows);

}  // namespace vsa::bench
