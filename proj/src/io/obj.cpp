#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>

#include <fmt/format.h>

#include "vsa/core/error.hpp"
#include "vsa/io/point_io.hpp"

namespace vsa::io {

namespace {

std::string lower_extension(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext;
}

std::ofstream open_for_writing(const std::filesystem::path& path, std::ios::openmode mode = std::ios::out) {
  std::ofstream out(path, mode | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  return out;
}

}  // namespace

PointCloud read_obj(std::istream& in) {
  std::vector<Vec3> points, normals;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream tokens(line);
    std::string keyword;
    tokens >> keyword;
    if (keyword != "v" && keyword != "vn") continue;
    Vec3 value;
    if (!(tokens >> value.x() >> value.y() >> value.z())) {
      throw DataError("line " + std::to_string(line_no) + ": malformed '" + keyword + "' record");
    }
    if (!value.allFinite()) throw DataError("line " + std::to_string(line_no) + ": non-finite value");
    if (keyword == "v") {
      points.push_back(value);
    } else {
      const double len = value.norm();
      if (len == 0.0) throw DataError("line " + std::to_string(line_no) + ": zero normal");
      normals.push_back(value / len);
    }
  }
  if (normals.empty()) throw DataError("normals required: OBJ has no 'vn' records");
  if (normals.size() != points.size()) {
    throw DataError("OBJ has " + std::to_string(points.size()) + " 'v' but " + std::to_string(normals.size()) +
                    " 'vn' records");
  }
  return {std::move(points), std::move(normals)};
}

void write_obj_points(std::ostream& out, const PointCloud& cloud) {
  fmt::memory_buffer buf;
  for (const Vec3& p : cloud.points()) fmt::format_to(std::back_inserter(buf), "v {:.17g} {:.17g} {:.17g}\n", p.x(), p.y(), p.z());
  for (const Vec3& n : cloud.normals()) fmt::format_to(std::back_inserter(buf), "vn {:.17g} {:.17g} {:.17g}\n", n.x(), n.y(), n.z());
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

void write_obj_mesh(std::ostream& out, const SimplifiedMesh& mesh, bool triangulate) {
  fmt::memory_buffer buf;
  for (const Vec3& v : mesh.vertices) fmt::format_to(std::back_inserter(buf), "v {:.9g} {:.9g} {:.9g}\n", v.x(), v.y(), v.z());
  for (const Face& face : mesh.faces) {
    if (triangulate) {
      for (const auto& t : face.triangles) fmt::format_to(std::back_inserter(buf), "f {} {} {}\n", t[0] + 1, t[1] + 1, t[2] + 1);
    } else {
      buf.push_back('f');
      for (int v : face.cycle) fmt::format_to(std::back_inserter(buf), " {}", v + 1);
      buf.push_back('\n');
    }
  }
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

PointCloud load_point_cloud(const std::filesystem::path& path) {
  const std::string ext = lower_extension(path);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  try {
    if (ext == ".ply") return read_ply(in);
    if (ext == ".obj") return read_obj(in);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
  throw DataError("unsupported point cloud extension '" + ext + "' (expected .ply or .obj)");
}

void save_point_cloud(const std::filesystem::path& path, const PointCloud& cloud, PlyFormat format) {
  const std::string ext = lower_extension(path);
  if (ext == ".ply") {
    auto out = open_for_writing(path, std::ios::out | std::ios::binary);
    write_ply(out, cloud, format);
  } else if (ext == ".obj") {
    auto out = open_for_writing(path);
    write_obj_points(out, cloud);
  } else {
    throw DataError("unsupported point cloud extension '" + ext + "' (expected .ply or .obj)");
  }
}

void save_mesh(const std::filesystem::path& path, const SimplifiedMesh& mesh, bool triangulate) {
  auto out = open_for_writing(path, std::ios::out | std::ios::binary);
  write_obj_mesh(out, mesh, triangulate);
  if (!out) throw DataError("failed writing " + path.string());
}

}  // namespace vsa::io
