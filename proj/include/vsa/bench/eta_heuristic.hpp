#pragma once

#include <cstddef>

namespace vsa::bench {

struct EtaHeuristicInput {
  double a = 1.0;
  double b = 1.0;
  std::size_t aleph = 1;  // target points per proxy
};

/// Mean curvature of (u, v, u^2/a^2 + v^2/b^2).
double paraboloid_mean_curvature(double a, double b, double u, double v);

/// ceil((sqrt(aleph) - 1) / 2), at least 1.
std::size_t grid_half_width(std::size_t aleph);

/// Normal-deviation energy of the (2 nu + 1)^2 grid u = j/nu, v = l/nu on the
/// paraboloid about N = (0,0,1); a value of eta for proxies of ~aleph points.
double eta_heuristic(const EtaHeuristicInput& input);

}  // namespace vsa::bench
