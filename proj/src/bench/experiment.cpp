#include "vsa/bench/experiment.hpp"

#include <chrono>
#include <cstdio>

#include "vsa/core/energy.hpp"
#include "vsa/segmentation/pipeline.hpp"

namespace vsa::bench {

std::vector<ExperimentRow> experiment_report(const PointCloud& cloud, const std::vector<NamedConfig>& configs) {
  std::vector<ExperimentRow> rows;
  rows.reserve(configs.size());
  for (const NamedConfig& named : configs) {
    const auto start = std::chrono::steady_clock::now();
    const PipelineResult result = run_pipeline(cloud, named.config);
    const auto stop = std::chrono::steady_clock::now();
    const PointCloud used = cloud.with_weights(result.weights);
    ExperimentRow row;
    row.config_id = named.id;
    row.mode = named.config.mode;
    row.eta = named.config.eta;
    row.k = named.config.k;
    row.m = result.segmentation.proxy_count();
    row.energy = total_energy(used, result.segmentation);
    row.mse = mse(used, result.segmentation);
    row.iterations = result.iterations;
    row.ms = std::chrono::duration<double, std::milli>(stop - start).count();
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_report_csv(std::ostream& out, const std::vector<ExperimentRow>& rows) {
  out << "config_id,mode,eta,k,m,energy,mse,iterations,ms\n";
  char buffer[256];
  for (const ExperimentRow& r : rows) {
    std::snprintf(buffer, sizeof buffer, ",%s,%.17g,%zu,%zu,%.17g,%.17g,%zu,%.3f\n", to_string(r.mode).c_str(),
                  r.eta, r.k, r.m, r.energy, r.mse, r.iterations, r.ms);
    out << r.config_id << buffer;
  }
}

}  // namespace vsa::bench
