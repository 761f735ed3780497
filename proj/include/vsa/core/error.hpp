#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "vsa/core/types.hpp"

namespace vsa {

// Base for every failure the library reports.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller violated an operation's precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Input data is malformed or unusable (file contents, NaN coordinates, ...).
class DataError : public Error {
 public:
  using Error::Error;
};

// Weighted normal sum of a proxy vanished, so no normal can be fitted.
class DegenerateNormalSum : public Error {
 public:
  explicit DegenerateNormalSum(ProxyId proxy)
      : Error("weighted normal sum of proxy " + std::to_string(proxy) + " is zero"),
        proxy_(proxy) {}
  ProxyId proxy() const { return proxy_; }

 private:
  ProxyId proxy_;
};

// Flooding could not reach every point from the seeds.
class UnreachedPoints : public Error {
 public:
  explicit UnreachedPoints(std::vector<PointIndex> points)
      : Error(describe(points)), points_(std::move(points)) {}
  const std::vector<PointIndex>& points() const { return points_; }

 private:
  static std::string describe(const std::vector<PointIndex>& points) {
    std::string msg = std::to_string(points.size()) +
                      " point(s) cannot be reached from any seed through the neighbor graph:";
    const std::size_t shown = std::min<std::size_t>(points.size(), 16);
    for (std::size_t i = 0; i < shown; ++i) msg += " " + std::to_string(points[i]);
    if (shown < points.size()) msg += " ...";
    return msg;
  }
  std::vector<PointIndex> points_;
};

}  // namespace vsa
