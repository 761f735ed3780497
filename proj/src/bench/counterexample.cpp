#include "vsa/bench/counterexample.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "vsa/core/error.hpp"
#include "vsa/segmentation/operations.hpp"

namespace vsa::bench {

namespace {

Vec3 planar(double degrees) {
  const double t = degrees * std::numbers::pi / 180.0;
  return {std::cos(t), std::sin(t), 0.0};
}

double update_energy(const PipelineResult& result, std::size_t iteration) {
  for (const IterationReport& r : result.reports) {
    if (r.iteration == iteration && r.operation == Operation::Update) return r.energy;
  }
  throw Error("classic run stopped before iteration " + std::to_string(iteration));
}

}  // namespace

double counterexample_e1(std::size_t n) {
  const double nn = static_cast<double>(n);
  return -2.0 * (std::sqrt(nn * nn + 1.0) - nn - 1.0);
}

CounterexampleInstance build_counterexample(std::size_t n) {
  if (n < 2) throw InvalidArgument("counterexample needs n >= 2");
  const double nn = static_cast<double>(n);
  const std::size_t total = 2 * n + 2;
  std::vector<Vec3> points, normals;
  points.reserve(total);
  normals.reserve(total);
  const Vec3 diagonal = Vec3(1.0, 1.0, 0.0).normalized();
  for (std::size_t i = 0; i < n; ++i) {
    points.push_back(static_cast<double>(i) * diagonal);
    normals.push_back(Vec3(-1.0, 1.0, 0.0).normalized());
  }
  const Vec3 corner = points.back();
  for (std::size_t s = 0; s < n + 2; ++s) {
    points.push_back(corner + static_cast<double>(s + 1) * Vec3::UnitX());
  }
  for (std::size_t s = 0; s < n; ++s) normals.push_back(Vec3::UnitY());
  normals.push_back(-Vec3::UnitX());
  normals.push_back(Vec3(-1.0, nn, 0.0) / std::sqrt(nn * nn + 1.0));

  std::vector<std::vector<PointIndex>> chain(total);
  for (std::size_t i = 0; i < total; ++i) {
    if (i > 0) chain[i].push_back(static_cast<PointIndex>(i - 1));
    if (i + 1 < total) chain[i].push_back(static_cast<PointIndex>(i + 1));
  }
  PointCloud cloud(std::move(points), std::move(normals));
  NeighborGraph graph = NeighborGraph::from_adjacency(cloud, std::move(chain));
  return {n, std::move(cloud), std::move(graph), {0, static_cast<PointIndex>(n)}, counterexample_e1(n)};
}

CounterexampleRun run_counterexample(std::size_t n) {
  const CounterexampleInstance instance = build_counterexample(n);
  PipelineConfig config;
  config.mode = Mode::Classic;
  config.seeds = SeedList{instance.seeds};
  config.k = instance.graph.k;
  PipelineResult result = run_pipeline(instance.cloud, instance.graph, config);
  const double e1 = update_energy(result, 1);
  const double e2 = update_energy(result, 2);
  if (!(e2 > e1)) throw Error("counterexample energy did not grow: E1 = " + std::to_string(e1) +
                              ", E2 = " + std::to_string(e2));
  return {e1, e2, std::move(result)};
}

PipelineResult run_counterexample_switch(std::size_t n) {
  const CounterexampleInstance instance = build_counterexample(n);
  PipelineConfig config;
  config.mode = Mode::Switch;
  config.seeds = SeedList{instance.seeds};
  config.k = instance.graph.k;
  config.enable_split = false;
  config.enable_merge = false;
  return run_pipeline(instance.cloud, instance.graph, config);
}

RingInstance build_closed_ring(std::size_t n, std::size_t rows) {
  if (n < 2 || rows < 1) throw InvalidArgument("ring needs n >= 2 and rows >= 1");
  constexpr std::size_t kUnits = 10;
  constexpr double kTurn = 36.0;
  const std::size_t unit = 2 * n + 2;
  const std::size_t row_size = kUnits * unit;
  const double nn = static_cast<double>(n);
  const double radius = static_cast<double>(unit) / (2.0 * std::sin(std::numbers::pi / kUnits));

  std::vector<Vec3> row_normals, row_points;
  for (std::size_t u = 0; u < kUnits; ++u) {
    const double turn = -kTurn * static_cast<double>(u);
    const Vec3 outlier = planar(120.0 + turn);
    for (std::size_t t = 0; t < n; ++t) row_normals.push_back(planar(120.0 + turn));
    for (std::size_t t = 0; t < n; ++t) row_normals.push_back(planar(90.0 + turn));
    row_normals.push_back(outlier);
    row_normals.push_back((nn * planar(90.0 + turn) + outlier).normalized());
    // Unit u runs along the polygon edge between the vertices at 108 - 36u and 72 - 36u degrees.
    const Vec3 from = radius * planar(108.0 + turn);
    const Vec3 to = radius * planar(72.0 + turn);
    for (std::size_t t = 0; t < unit; ++t) {
      const double s = (static_cast<double>(t) + 0.5) / static_cast<double>(unit);
      row_points.push_back(from + s * (to - from));
    }
  }

  std::vector<Vec3> points, normals;
  std::vector<std::vector<PointIndex>> adjacency(rows * row_size);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t i = 0; i < row_size; ++i) {
      points.push_back(row_points[i] + static_cast<double>(r) * Vec3::UnitZ());
      normals.push_back(row_normals[i]);
      auto& list = adjacency[r * row_size + i];
      list.push_back(static_cast<PointIndex>(r * row_size + (i + row_size - 1) % row_size));
      list.push_back(static_cast<PointIndex>(r * row_size + (i + 1) % row_size));
      if (r > 0) list.push_back(static_cast<PointIndex>((r - 1) * row_size + i));
      if (r + 1 < rows) list.push_back(static_cast<PointIndex>((r + 1) * row_size + i));
    }
  }
  std::vector<PointIndex> seeds;
  for (std::size_t u = 0; u < kUnits; ++u) seeds.push_back(static_cast<PointIndex>(u * unit + n));

  PointCloud cloud(std::move(points), std::move(normals));
  NeighborGraph graph = NeighborGraph::from_adjacency(cloud, std::move(adjacency));
  return {std::move(cloud), std::move(graph), std::move(seeds)};
}

}  // namespace vsa::bench
