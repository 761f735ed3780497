#include "vsa/bench/eta_heuristic.hpp"

#include <algorithm>
#include <cmath>

#include "vsa/core/error.hpp"

namespace vsa::bench {

double paraboloid_mean_curvature(double a, double b, double u, double v) {
  if (!(a > 0.0) || !(b > 0.0)) throw InvalidArgument("paraboloid parameters must be positive");
  const double a2 = a * a, b2 = b * b;
  const double numerator = a2 + b2 + 4.0 * u * u / a2 + 4.0 * v * v / b2;
  const double g = 1.0 + 4.0 * u * u / (a2 * a2) + 4.0 * v * v / (b2 * b2);
  return numerator / (a2 * b2 * std::sqrt(g * g * g));
}

std::size_t grid_half_width(std::size_t aleph) {
  if (aleph < 1) throw InvalidArgument("aleph must be at least 1");
  const double nu = std::ceil((std::sqrt(static_cast<double>(aleph)) - 1.0) / 2.0);
  return std::max<std::size_t>(1, static_cast<std::size_t>(nu));
}

double eta_heuristic(const EtaHeuristicInput& input) {
  if (!(input.a > 0.0) || !(input.b > 0.0)) throw InvalidArgument("paraboloid parameters must be positive");
  const std::size_t nu = grid_half_width(input.aleph);
  const auto width = static_cast<long>(nu);
  const double scale_a = static_cast<double>(nu) * input.a * input.a;
  const double scale_b = static_cast<double>(nu) * input.b * input.b;
  const double side = 2.0 * static_cast<double>(nu) + 1.0;
  double sum = 0.0;
  for (long j = -width; j <= width; ++j) {
    for (long l = -width; l <= width; ++l) {
      const double x = static_cast<double>(j) / scale_a;
      const double y = static_cast<double>(l) / scale_b;
      sum += 1.0 / std::sqrt(x * x + y * y + 0.25);
    }
  }
  return 2.0 * side * side - sum;
}

}  // namespace vsa::bench
