#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

namespace vsa {

using Vec3 = Eigen::Vector3d;
using PointIndex = std::int32_t;
using ProxyId = std::int32_t;

inline constexpr ProxyId kUnassigned = -1;

}  // namespace vsa
