#pragma once

#include <string>
#include <vector>

#include "vsa/core/neighbor_graph.hpp"
#include "vsa/core/segmentation.hpp"
#include "vsa/segmentation/config.hpp"

namespace vsa {

struct PipelineResult {
  Segmentation segmentation;
  std::vector<IterationReport> reports;
  std::size_t iterations = 0;
  bool converged = false;
  std::string note;
  std::vector<double> weights;  // per-point weights the run used
};

/// Full segmentation run.
///
/// Classic mode repeats flood -> update -> seed until two consecutive floods
/// produce the same assignment or max_iterations is reached. Switch mode seeds
/// and floods once, then repeats update -> splits -> merges -> switch until
/// no switch improves the energy, and finally splits disconnected proxies
/// into their components.
///
/// The cloud's weights are used as given; see prepare_cloud() for area weights.
PipelineResult run_pipeline(const PointCloud& cloud, const NeighborGraph& graph, const PipelineConfig& config);

/// Builds the k-NN graph, applies the weight scheme, and runs the pipeline.
PipelineResult run_pipeline(const PointCloud& cloud, const PipelineConfig& config);

/// Cloud with weights replaced according to `scheme` (unit or area).
PointCloud prepare_cloud(const PointCloud& cloud, const NeighborGraph& graph, WeightScheme scheme);

}  // namespace vsa
