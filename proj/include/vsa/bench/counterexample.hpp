#pragma once

#include <vector>

#include "vsa/core/neighbor_graph.hpp"
#include "vsa/core/point_cloud.hpp"
#include "vsa/segmentation/pipeline.hpp"

namespace vsa::bench {

/// Two-line instance on which classic flooding increases the energy.
///
/// Points, in chain order: n points with normal (-1,1)/sqrt2, n points with
/// normal (0,1), one point with normal (-1,0), and one point with normal
/// (-1,n)/sqrt(n^2+1). Everything lies in the z = 0 plane.
struct CounterexampleInstance {
  std::size_t n = 0;
  PointCloud cloud;
  NeighborGraph graph;              // chain, two neighbors except at the ends
  std::vector<PointIndex> seeds;    // {0, n}: first point of each line
  double expected_e1 = 0.0;
};

/// -2 (sqrt(n^2+1) - n - 1).
double counterexample_e1(std::size_t n);

CounterexampleInstance build_counterexample(std::size_t n);

struct CounterexampleRun {
  double e1 = 0.0;  // energy after the first flood and update
  double e2 = 0.0;  // energy after the second flood and update
  PipelineResult classic;
};

/// Classic-mode run on the instance. Throws Error if e2 <= e1.
CounterexampleRun run_counterexample(std::size_t n);

/// Switch-mode run (no splits or merges) on the same instance and seeds.
PipelineResult run_counterexample_switch(std::size_t n);

/// Closed ring of ten copies of a two-line unit, unit u turned by -36 u
/// degrees about z, stacked into `rows` layers. Each unit holds n points with
/// normal at 120 degrees, n points at 90 degrees, an outlier at 120 degrees and
/// one point whose normal is the normalized sum of n line normals and the
/// outlier. Classic flooding from one seed per unit cycles without repeating.
struct RingInstance {
  PointCloud cloud;
  NeighborGraph graph;
  std::vector<PointIndex> seeds;  // first point of the second line of each unit, bottom row
};

RingInstance build_closed_ring(std::size_t n, std::size_t rows = 2);

}  // namespace vsa::bench
