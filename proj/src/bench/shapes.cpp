#include "vsa/bench/shapes.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>

#include "vsa/core/error.hpp"
#include "vsa/core/kdtree.hpp"

namespace vsa::bench {

PointCloud fibonacci_sphere(std::size_t count) {
  if (count < 2) throw InvalidArgument("sphere needs at least two points");
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  std::vector<Vec3> points;
  points.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(count);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * static_cast<double>(i);
    points.push_back(Vec3(r * std::cos(phi), r * std::sin(phi), z).normalized());
  }
  std::vector<Vec3> normals = points;
  return {std::move(points), std::move(normals)};
}

PointCloud cube_cloud(std::size_t per_side) {
  if (per_side < 1) throw InvalidArgument("cube needs per_side >= 1");
  std::vector<Vec3> points, normals;
  for (int axis = 0; axis < 3; ++axis) {
    for (int sign : {1, -1}) {
      const int u = (axis + 1) % 3, v = (axis + 2) % 3;
      for (std::size_t a = 0; a < per_side; ++a) {
        for (std::size_t b = 0; b < per_side; ++b) {
          Vec3 p;
          p[axis] = sign;
          p[u] = -1.0 + (2.0 * static_cast<double>(a) + 1.0) / static_cast<double>(per_side);
          p[v] = -1.0 + (2.0 * static_cast<double>(b) + 1.0) / static_cast<double>(per_side);
          points.push_back(p);
          normals.push_back(static_cast<double>(sign) * Vec3::Unit(axis));
        }
      }
    }
  }
  return {std::move(points), std::move(normals)};
}

PointCloud octahedron_cloud(std::size_t resolution) {
  if (resolution < 1) throw InvalidArgument("octahedron needs resolution >= 1");
  const double r = static_cast<double>(resolution);
  std::vector<Vec3> points, normals;
  for (int face = 0; face < 8; ++face) {
    const Vec3 s((face & 1) ? -1.0 : 1.0, (face & 2) ? -1.0 : 1.0, (face & 4) ? -1.0 : 1.0);
    const Vec3 a(s.x(), 0, 0), b(0, s.y(), 0), c(0, 0, s.z());
    const Vec3 normal = s.normalized();
    auto emit = [&](double i, double j) {
      const double wa = i / r, wb = j / r;
      points.push_back(wa * a + wb * b + (1.0 - wa - wb) * c);
      normals.push_back(normal);
    };
    for (std::size_t i = 0; i < resolution; ++i) {
      for (std::size_t j = 0; i + j < resolution; ++j) {
        emit(static_cast<double>(i) + 1.0 / 3.0, static_cast<double>(j) + 1.0 / 3.0);
        if (i + j + 2 <= resolution) emit(static_cast<double>(i) + 2.0 / 3.0, static_cast<double>(j) + 2.0 / 3.0);
      }
    }
  }
  return {std::move(points), std::move(normals)};
}

std::vector<Vec3> dodecahedron_normals() {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Vec3> normals;
  for (double s1 : {1.0, -1.0}) {
    for (double s2 : {1.0, -1.0}) {
      normals.push_back(Vec3(0.0, s1, s2 * phi).normalized());
      normals.push_back(Vec3(s1, s2 * phi, 0.0).normalized());
      normals.push_back(Vec3(s1 * phi, 0.0, s2).normalized());
    }
  }
  return normals;
}

PointCloud noisy_dodecahedron(std::size_t count, double noise, std::uint64_t seed) {
  constexpr std::size_t kNeighbors = 12;
  if (count <= kNeighbors) throw InvalidArgument("dodecahedron needs more than 12 points");
  const std::vector<Vec3> faces = dodecahedron_normals();
  const PointCloud sphere = fibonacci_sphere(count);

  std::vector<Vec3> points, face_normal;
  for (const Vec3& d : sphere.points()) {
    std::size_t best = 0;
    for (std::size_t f = 1; f < faces.size(); ++f) {
      if (faces[f].dot(d) > faces[best].dot(d)) best = f;
    }
    points.push_back(d / faces[best].dot(d));
    face_normal.push_back(faces[best]);
  }

  double spacing = 0.0;
  {
    const KdTree tree(points);
    for (std::size_t i = 0; i < points.size(); ++i) {
      for (const Neighbor& nb : tree.knn(static_cast<PointIndex>(i), kNeighbors)) spacing += std::sqrt(nb.dist2);
    }
    spacing /= static_cast<double>(points.size() * kNeighbors);
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, noise * spacing);
  for (std::size_t i = 0; i < points.size(); ++i) points[i] += gauss(rng) * face_normal[i];

  const KdTree tree(points);
  std::vector<Vec3> normals;
  normals.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Vec3& p = points[i];
    Vec3 mean = p;
    const auto near = tree.knn(static_cast<PointIndex>(i), kNeighbors);
    for (const Neighbor& nb : near) mean += points[nb.index];
    mean /= static_cast<double>(near.size() + 1);
    Eigen::Matrix3d cov = (p - mean) * (p - mean).transpose();
    for (const Neighbor& nb : near) cov += (points[nb.index] - mean) * (points[nb.index] - mean).transpose();
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(cov);
    Vec3 n = eig.eigenvectors().col(0).normalized();
    if (n.dot(p) < 0.0) n = -n;
    normals.push_back(n);
  }
  return {std::move(points), std::move(normals)};
}

PointCloud plane_cloud(std::size_t per_side) {
  std::vector<Vec3> points, normals;
  for (std::size_t a = 0; a < per_side; ++a) {
    for (std::size_t b = 0; b < per_side; ++b) {
      points.emplace_back(static_cast<double>(a), static_cast<double>(b), 0.0);
      normals.push_back(Vec3::UnitZ());
    }
  }
  return {std::move(points), std::move(normals)};
}

}  // namespace vsa::bench
