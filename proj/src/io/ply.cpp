#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "vsa/core/error.hpp"
#include "vsa/io/point_io.hpp"

namespace vsa::io {

namespace {

enum class Scalar { Int8, UInt8, Int16, UInt16, Int32, UInt32, Float32, Float64 };

std::optional<Scalar> parse_scalar(const std::string& name) {
  if (name == "char" || name == "int8") return Scalar::Int8;
  if (name == "uchar" || name == "uint8") return Scalar::UInt8;
  if (name == "short" || name == "int16") return Scalar::Int16;
  if (name == "ushort" || name == "uint16") return Scalar::UInt16;
  if (name == "int" || name == "int32") return Scalar::Int32;
  if (name == "uint" || name == "uint32") return Scalar::UInt32;
  if (name == "float" || name == "float32") return Scalar::Float32;
  if (name == "double" || name == "float64") return Scalar::Float64;
  return std::nullopt;
}

std::size_t scalar_size(Scalar s) {
  switch (s) {
    case Scalar::Int8:
    case Scalar::UInt8: return 1;
    case Scalar::Int16:
    case Scalar::UInt16: return 2;
    case Scalar::Int32:
    case Scalar::UInt32:
    case Scalar::Float32: return 4;
    case Scalar::Float64: return 8;
  }
  return 0;
}

struct Property {
  std::string name;
  Scalar type = Scalar::Float32;
  bool list = false;
  Scalar count_type = Scalar::UInt8;
};

struct Element {
  std::string name;
  std::size_t count = 0;
  std::vector<Property> properties;
};

template <typename T>
T load_le(const unsigned char* bytes) {
  unsigned char buf[sizeof(T)];
  std::memcpy(buf, bytes, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) {
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(buf[i], buf[sizeof(T) - 1 - i]);
  }
  T value;
  std::memcpy(&value, buf, sizeof(T));
  return value;
}

double decode(Scalar s, const unsigned char* bytes) {
  switch (s) {
    case Scalar::Int8: return load_le<std::int8_t>(bytes);
    case Scalar::UInt8: return load_le<std::uint8_t>(bytes);
    case Scalar::Int16: return load_le<std::int16_t>(bytes);
    case Scalar::UInt16: return load_le<std::uint16_t>(bytes);
    case Scalar::Int32: return load_le<std::int32_t>(bytes);
    case Scalar::UInt32: return load_le<std::uint32_t>(bytes);
    case Scalar::Float32: return load_le<float>(bytes);
    case Scalar::Float64: return load_le<double>(bytes);
  }
  return 0.0;
}

template <typename T>
void store_le(std::ostream& out, T value) {
  unsigned char buf[sizeof(T)];
  std::memcpy(buf, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) {
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(buf[i], buf[sizeof(T) - 1 - i]);
  }
  out.write(reinterpret_cast<const char*>(buf), sizeof(T));
}

// Slots of x y z nx ny nz within the vertex element.
struct VertexLayout {
  int slot[6] = {-1, -1, -1, -1, -1, -1};
};

VertexLayout vertex_layout(const Element& vertex) {
  static const char* names[6] = {"x", "y", "z", "nx", "ny", "nz"};
  VertexLayout layout;
  for (std::size_t p = 0; p < vertex.properties.size(); ++p) {
    for (int k = 0; k < 6; ++k) {
      if (vertex.properties[p].name == names[k]) {
        if (vertex.properties[p].list) throw DataError("vertex property '" + vertex.properties[p].name + "' is a list");
        layout.slot[k] = static_cast<int>(p);
      }
    }
  }
  for (int k = 0; k < 3; ++k) {
    if (layout.slot[k] < 0) throw DataError(std::string("vertex property '") + names[k] + "' missing");
  }
  for (int k = 3; k < 6; ++k) {
    if (layout.slot[k] < 0) throw DataError("normals required: vertex property '" + std::string(names[k]) + "' missing");
  }
  return layout;
}

Vec3 unit_normal(const Vec3& n, const std::string& where) {
  const double len = n.norm();
  if (!std::isfinite(len) || len == 0.0) throw DataError("zero or non-finite normal at " + where);
  return n / len;
}

void check_finite(const Vec3& p, const std::string& where) {
  if (!p.allFinite()) throw DataError("non-finite coordinate at " + where);
}

}  // namespace

PointCloud read_ply(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&]() -> bool {
    if (!std::getline(in, line)) return false;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  };
  if (!next_line() || line != "ply") throw DataError("line 1: not a PLY file");

  bool binary = false, have_format = false;
  std::vector<Element> elements;
  while (true) {
    if (!next_line()) throw DataError("PLY header has no end_header");
    std::istringstream tokens(line);
    std::string keyword;
    tokens >> keyword;
    if (keyword == "end_header") break;
    if (keyword.empty() || keyword == "comment" || keyword == "obj_info") continue;
    const std::string where = "line " + std::to_string(line_no);
    if (keyword == "format") {
      std::string kind, version;
      tokens >> kind >> version;
      if (kind == "ascii") {
        binary = false;
      } else if (kind == "binary_little_endian") {
        binary = true;
      } else {
        throw DataError(where + ": unsupported PLY format '" + kind + "'");
      }
      have_format = true;
    } else if (keyword == "element") {
      Element e;
      long long count = -1;
      tokens >> e.name >> count;
      if (e.name.empty() || count < 0) throw DataError(where + ": malformed element record");
      e.count = static_cast<std::size_t>(count);
      elements.push_back(std::move(e));
    } else if (keyword == "property") {
      if (elements.empty()) throw DataError(where + ": property before any element");
      Property p;
      std::string type;
      tokens >> type;
      if (type == "list") {
        std::string count_type, item_type;
        tokens >> count_type >> item_type >> p.name;
        const auto ct = parse_scalar(count_type);
        const auto it = parse_scalar(item_type);
        if (!ct || !it || p.name.empty()) throw DataError(where + ": malformed list property");
        p.list = true;
        p.count_type = *ct;
        p.type = *it;
      } else {
        const auto t = parse_scalar(type);
        tokens >> p.name;
        if (!t || p.name.empty()) throw DataError(where + ": unknown property type '" + type + "'");
        p.type = *t;
      }
      elements.back().properties.push_back(std::move(p));
    } else {
      throw DataError(where + ": unexpected header keyword '" + keyword + "'");
    }
  }
  if (!have_format) throw DataError("PLY header has no format line");

  std::size_t vertex_index = elements.size();
  for (std::size_t e = 0; e < elements.size(); ++e) {
    if (elements[e].name == "vertex") vertex_index = e;
  }
  if (vertex_index == elements.size()) throw DataError("PLY has no vertex element");
  const VertexLayout layout = vertex_layout(elements[vertex_index]);
  const std::size_t count = elements[vertex_index].count;
  std::vector<Vec3> points(count), normals(count);

  if (!binary) {
    for (std::size_t e = 0; e <= vertex_index; ++e) {
      const Element& element = elements[e];
      for (std::size_t r = 0; r < element.count; ++r) {
        if (!next_line()) throw DataError("unexpected end of file in element '" + element.name + "'");
        const std::string where = "line " + std::to_string(line_no);
        std::istringstream tokens(line);
        std::vector<double> values;
        for (const Property& p : element.properties) {
          if (p.list) {
            long long n = -1;
            if (!(tokens >> n) || n < 0) throw DataError(where + ": malformed list count");
            for (long long i = 0; i < n; ++i) {
              double skip;
              if (!(tokens >> skip)) throw DataError(where + ": short list");
            }
            values.push_back(0.0);
          } else {
            std::string text;
            if (!(tokens >> text)) throw DataError(where + ": expected " + std::to_string(element.properties.size()) + " values");
            try {
              std::size_t used = 0;
              values.push_back(std::stod(text, &used));
              if (used != text.size()) throw std::invalid_argument(text);
            } catch (const std::exception&) {
              throw DataError(where + ": malformed number '" + text + "'");
            }
          }
        }
        if (e != vertex_index) continue;
        const Vec3 p(values[layout.slot[0]], values[layout.slot[1]], values[layout.slot[2]]);
        const Vec3 n(values[layout.slot[3]], values[layout.slot[4]], values[layout.slot[5]]);
        check_finite(p, where);
        points[r] = p;
        normals[r] = unit_normal(n, where);
      }
    }
  } else {
    std::size_t offset = static_cast<std::size_t>(in.tellg());
    auto read_bytes = [&](unsigned char* buf, std::size_t n, const std::string& what) {
      in.read(reinterpret_cast<char*>(buf), static_cast<std::streamsize>(n));
      if (static_cast<std::size_t>(in.gcount()) != n) {
        throw DataError("byte " + std::to_string(offset) + ": unexpected end of file in " + what);
      }
      offset += n;
    };
    unsigned char buf[8];
    for (std::size_t e = 0; e <= vertex_index; ++e) {
      const Element& element = elements[e];
      std::vector<double> values(element.properties.size());
      for (std::size_t r = 0; r < element.count; ++r) {
        const std::size_t record = offset;
        for (std::size_t k = 0; k < element.properties.size(); ++k) {
          const Property& p = element.properties[k];
          if (p.list) {
            read_bytes(buf, scalar_size(p.count_type), element.name);
            const double n = decode(p.count_type, buf);
            if (n < 0) throw DataError("byte " + std::to_string(record) + ": negative list count");
            for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) read_bytes(buf, scalar_size(p.type), element.name);
          } else {
            read_bytes(buf, scalar_size(p.type), element.name);
            values[k] = decode(p.type, buf);
          }
        }
        if (e != vertex_index) continue;
        const std::string where = "byte " + std::to_string(record);
        const Vec3 p(values[layout.slot[0]], values[layout.slot[1]], values[layout.slot[2]]);
        const Vec3 n(values[layout.slot[3]], values[layout.slot[4]], values[layout.slot[5]]);
        check_finite(p, where);
        points[r] = p;
        normals[r] = unit_normal(n, where);
      }
    }
  }
  return {std::move(points), std::move(normals)};
}

void write_ply(std::ostream& out, const PointCloud& cloud, PlyFormat format) {
  out << "ply\n"
      << (format == PlyFormat::Ascii ? "format ascii 1.0\n" : "format binary_little_endian 1.0\n")
      << "element vertex " << cloud.size() << "\n";
  for (const char* name : {"x", "y", "z", "nx", "ny", "nz"}) out << "property double " << name << "\n";
  out << "end_header\n";
  if (format == PlyFormat::Ascii) {
    char buffer[160];
    for (std::size_t i = 0; i < cloud.size(); ++i) {
      const Vec3& p = cloud.point(i);
      const Vec3& n = cloud.normal(i);
      std::snprintf(buffer, sizeof buffer, "%.17g %.17g %.17g %.17g %.17g %.17g\n", p.x(), p.y(), p.z(), n.x(), n.y(),
                    n.z());
      out << buffer;
    }
  } else {
    for (std::size_t i = 0; i < cloud.size(); ++i) {
      for (int k = 0; k < 3; ++k) store_le(out, cloud.point(i)[k]);
      for (int k = 0; k < 3; ++k) store_le(out, cloud.normal(i)[k]);
    }
  }
}

}  // namespace vsa::io
