#pragma once

#include <cstdint>

#include "vsa/core/point_cloud.hpp"

namespace vsa::bench {

/// Fibonacci lattice on the unit sphere with exact radial normals.
PointCloud fibonacci_sphere(std::size_t count = 5122);

/// Cube [-1,1]^3: a per_side x per_side cell-centered grid on each face, exact normals.
PointCloud cube_cloud(std::size_t per_side = 20);

/// Octahedron |x|+|y|+|z| = 1: resolution^2 sub-triangle centroids per face, exact normals.
PointCloud octahedron_cloud(std::size_t resolution = 20);

/// Unit-inradius dodecahedron sampled by radially projecting a Fibonacci
/// sphere, positions displaced along the face normal by Gaussian noise with
/// standard deviation `noise` times the mean 12-nearest-neighbor distance, and
/// normals re-estimated by PCA over 12 neighbors, oriented outward.
PointCloud noisy_dodecahedron(std::size_t count = 962, double noise = 0.25, std::uint64_t seed = 1);

/// Outward unit face normals of the unit-inradius dodecahedron (plane n.x = 1).
std::vector<Vec3> dodecahedron_normals();

/// Flat grid in the z = 0 plane with normals (0,0,1).
PointCloud plane_cloud(std::size_t per_side = 20);

}  // namespace vsa::bench
