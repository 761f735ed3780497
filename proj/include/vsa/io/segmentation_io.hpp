#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <ostream>
#include <vector>

#include "vsa/core/point_cloud.hpp"
#include "vsa/core/segmentation.hpp"
#include "vsa/simplify/mesh.hpp"

namespace vsa::io {

/// `point_index,proxy_id` header, then one row per point in index order.
void write_labels_csv(std::ostream& out, const Segmentation& seg);
std::vector<ProxyId> read_labels_csv(std::istream& in);

/// Array of {id, center, normal, energy, members}.
void write_proxies_json(std::ostream& out, const Segmentation& seg);

/// RGB for a proxy id: entry (id mod 256) of a fixed golden-ratio hue palette.
std::array<std::uint8_t, 3> palette_color(ProxyId id);

/// ASCII PLY of the cloud with per-point proxy colors.
void write_colored_ply(std::ostream& out, const PointCloud& cloud, const Segmentation& seg);

/// Faces with their proxy, cycle and warning flag, plus solver status and diagnostics.
void write_mesh_report(std::ostream& out, const SimplifiedMesh& mesh);

void save_segmentation(const std::filesystem::path& labels_csv, const std::filesystem::path& proxies_json,
                       const Segmentation& seg);

}  // namespace vsa::io
