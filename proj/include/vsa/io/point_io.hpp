#pragma once

#include <filesystem>
#include <istream>
#include <ostream>

#include "vsa/core/point_cloud.hpp"
#include "vsa/simplify/mesh.hpp"

namespace vsa::io {

enum class PlyFormat { Ascii, BinaryLittleEndian };

/// PLY with a `vertex` element carrying x y z nx ny nz (any scalar types).
/// Normals are normalized on load; zero or non-finite values are errors that
/// name the line (ascii) or byte offset (binary).
PointCloud read_ply(std::istream& in);

/// Vertex element with double properties x y z nx ny nz.
void write_ply(std::ostream& out, const PointCloud& cloud, PlyFormat format);

/// `v` and `vn` records paired by order; both counts must match.
PointCloud read_obj(std::istream& in);

/// `v` then `vn` lines at 17 significant digits.
void write_obj_points(std::ostream& out, const PointCloud& cloud);

/// `v` lines at 9 significant digits, then one `f` line per polygon, or per
/// fan triangle when `triangulate` is set. Indices are 1-based.
void write_obj_mesh(std::ostream& out, const SimplifiedMesh& mesh, bool triangulate = false);

/// Dispatch on extension (.ply or .obj).
PointCloud load_point_cloud(const std::filesystem::path& path);
void save_point_cloud(const std::filesystem::path& path, const PointCloud& cloud,
                      PlyFormat format = PlyFormat::BinaryLittleEndian);
void save_mesh(const std::filesystem::path& path, const SimplifiedMesh& mesh, bool triangulate = false);

}  // namespace vsa::io
