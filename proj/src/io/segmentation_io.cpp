#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "vsa/core/error.hpp"
#include "vsa/io/segmentation_io.hpp"

namespace vsa::io {

void write_labels_csv(std::ostream& out, const Segmentation& seg) {
  std::string text = "point_index,proxy_id\n";
  for (std::size_t j = 0; j < seg.assignment.size(); ++j) {
    text += std::to_string(j);
    text += ',';
    text += std::to_string(seg.assignment[j]);
    text += '\n';
  }
  out << text;
}

std::vector<ProxyId> read_labels_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw DataError("labels CSV is empty");
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "point_index,proxy_id") throw DataError("line 1: expected header 'point_index,proxy_id'");
  std::vector<ProxyId> labels;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    long long index = -1, id = -1;
    char comma = 0;
    std::istringstream fields(line);
    if (!(fields >> index >> comma >> id) || comma != ',' || !(fields >> std::ws).eof()) {
      throw DataError("line " + std::to_string(line_no) + ": malformed row '" + line + "'");
    }
    if (index != static_cast<long long>(labels.size())) {
      throw DataError("line " + std::to_string(line_no) + ": expected point index " + std::to_string(labels.size()));
    }
    if (id < 0) throw DataError("line " + std::to_string(line_no) + ": negative proxy id");
    labels.push_back(static_cast<ProxyId>(id));
  }
  return labels;
}

void write_proxies_json(std::ostream& out, const Segmentation& seg) {
  nlohmann::json proxies = nlohmann::json::array();
  for (const Proxy& p : seg.proxies) {
    proxies.push_back({{"id", p.id},
                       {"center", p.center},
                       {"normal", {p.normal.x(), p.normal.y(), p.normal.z()}},
                       {"energy", p.energy},
                       {"members", p.members.size()}});
  }
  out << proxies.dump(2) << "\n";
}

std::array<std::uint8_t, 3> palette_color(ProxyId id) {
  const int slot = ((id % 256) + 256) % 256;
  const double hue = std::fmod(0.61803398874989485 * slot, 1.0) * 6.0;
  const double s = slot % 2 ? 0.55 : 0.8;
  const double v = slot % 3 ? 0.95 : 0.75;
  const int sector = static_cast<int>(hue) % 6;
  const double f = hue - std::floor(hue);
  const double p = v * (1 - s), q = v * (1 - s * f), t = v * (1 - s * (1 - f));
  double rgb[3];
  switch (sector) {
    case 0: rgb[0] = v, rgb[1] = t, rgb[2] = p; break;
    case 1: rgb[0] = q, rgb[1] = v, rgb[2] = p; break;
    case 2: rgb[0] = p, rgb[1] = v, rgb[2] = t; break;
    case 3: rgb[0] = p, rgb[1] = q, rgb[2] = v; break;
    case 4: rgb[0] = t, rgb[1] = p, rgb[2] = v; break;
    default: rgb[0] = v, rgb[1] = p, rgb[2] = q; break;
  }
  return {static_cast<std::uint8_t>(std::lround(255 * rgb[0])), static_cast<std::uint8_t>(std::lround(255 * rgb[1])),
          static_cast<std::uint8_t>(std::lround(255 * rgb[2]))};
}

void write_colored_ply(std::ostream& out, const PointCloud& cloud, const Segmentation& seg) {
  out << "ply\nformat ascii 1.0\nelement vertex " << cloud.size() << "\n";
  for (const char* name : {"x", "y", "z", "nx", "ny", "nz"}) out << "property double " << name << "\n";
  out << "property uchar red\nproperty uchar green\nproperty uchar blue\nend_header\n";
  char buffer[200];
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const Vec3& p = cloud.point(i);
    const Vec3& n = cloud.normal(i);
    const auto c = palette_color(seg.assignment[i]);
    std::snprintf(buffer, sizeof buffer, "%.17g %.17g %.17g %.17g %.17g %.17g %u %u %u\n", p.x(), p.y(), p.z(), n.x(),
                  n.y(), n.z(), c[0], c[1], c[2]);
    out << buffer;
  }
}

void write_mesh_report(std::ostream& out, const SimplifiedMesh& mesh) {
  nlohmann::json faces = nlohmann::json::array();
  for (const Face& f : mesh.faces) {
    nlohmann::json face = {{"proxy", f.proxy}, {"vertices", f.cycle}, {"warning", f.warning}};
    if (f.warning) face["reason"] = f.warning_reason;
    faces.push_back(std::move(face));
  }
  nlohmann::json normals = nlohmann::json::array();
  for (const Vec3& n : mesh.corrected_normals) normals.push_back({n.x(), n.y(), n.z()});
  const nlohmann::json report = {{"vertices", mesh.vertices.size()},
                                 {"faces", std::move(faces)},
                                 {"corrected_normals", std::move(normals)},
                                 {"feasible", mesh.feasible},
                                 {"max_plane_residual", mesh.max_plane_residual},
                                 {"diagnostics", mesh.diagnostics}};
  out << report.dump(2) << "\n";
}

void save_segmentation(const std::filesystem::path& labels_csv, const std::filesystem::path& proxies_json,
                       const Segmentation& seg) {
  std::ofstream labels(labels_csv, std::ios::binary | std::ios::trunc);
  if (!labels) throw DataError("cannot write " + labels_csv.string());
  write_labels_csv(labels, seg);
  std::ofstream proxies(proxies_json, std::ios::binary | std::ios::trunc);
  if (!proxies) throw DataError("cannot write " + proxies_json.string());
  write_proxies_json(proxies, seg);
}

}  // namespace vsa::io
