// Copyright 2026 The silhull Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS-IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "silhull/mesh_io.h"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace silhull {

static_assert(std::endian::native == std::endian::little,
              "PLY I/O assumes a little-endian host");

namespace {

namespace fs = std::filesystem;

std::string lower_ext(const fs::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return ext;
}

[[noreturn]] void fail(const fs::path& path, std::size_t line,
                       const std::string& what) {
  throw IoError(path.string() + ":" + std::to_string(line) + ": " + what);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::optional<double> parse_double(std::string_view s) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::optional<long> parse_long(std::string_view s) {
  long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

// ----------------------------------------------------------------- OBJ

TriangleMesh load_obj(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());

  TriangleMesh mesh;
  std::vector<Vec3> vn;
  std::vector<Vec3> colors;
  bool any_color = false;
  // Per-vertex normal index referenced by faces, -1 unset, -2 conflicting.
  std::vector<long> vertex_normal;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tok = split_ws(line);
    if (tok.empty() || tok[0][0] == '#') continue;
    if (tok[0] == "v") {
      if (tok.size() != 4 && tok.size() != 7) {
        fail(path, line_no, "vertex record needs 3 or 6 numbers");
      }
      Vec3 p;
      for (int k = 0; k < 3; ++k) {
        auto v = parse_double(tok[1 + k]);
        if (!v) fail(path, line_no, "bad vertex coordinate");
        p[k] = *v;
      }
      mesh.vertices.push_back(p);
      Vec3 c = Vec3::Zero();
      if (tok.size() == 7) {
        any_color = true;
        for (int k = 0; k < 3; ++k) {
          auto v = parse_double(tok[4 + k]);
          if (!v) fail(path, line_no, "bad vertex color");
          c[k] = *v;
        }
      }
      colors.push_back(c);
      vertex_normal.push_back(-1);
    } else if (tok[0] == "vn") {
      if (tok.size() != 4) fail(path, line_no, "normal record needs 3 numbers");
      Vec3 n;
      for (int k = 0; k < 3; ++k) {
        auto v = parse_double(tok[1 + k]);
        if (!v) fail(path, line_no, "bad normal component");
        n[k] = *v;
      }
      vn.push_back(n);
    } else if (tok[0] == "f") {
      if (tok.size() < 4) fail(path, line_no, "face needs at least 3 vertices");
      std::vector<std::uint32_t> poly;
      const long nv = static_cast<long>(mesh.vertices.size());
      for (std::size_t k = 1; k < tok.size(); ++k) {
        const std::string_view ref = tok[k];
        const std::size_t s1 = ref.find('/');
        auto vi = parse_long(ref.substr(0, s1));
        if (!vi || *vi == 0) fail(path, line_no, "bad face index");
        long idx = *vi > 0 ? *vi - 1 : nv + *vi;
        if (idx < 0 || idx >= nv) {
          fail(path, line_no,
               "face index " + std::to_string(*vi) + " out of range (" +
                   std::to_string(nv) + " vertices)");
        }
        if (s1 != std::string_view::npos) {
          const std::size_t s2 = ref.find('/', s1 + 1);
          if (s2 != std::string_view::npos && s2 + 1 < ref.size()) {
            auto ni = parse_long(ref.substr(s2 + 1));
            if (!ni || *ni == 0) fail(path, line_no, "bad normal index");
            long nidx = *ni > 0 ? *ni - 1 : static_cast<long>(vn.size()) + *ni;
            if (nidx < 0 || nidx >= static_cast<long>(vn.size())) {
              fail(path, line_no, "normal index out of range");
            }
            long& slot = vertex_normal[idx];
            if (slot == -1) {
              slot = nidx;
            } else if (slot != nidx && vn[slot] != vn[nidx]) {
              slot = -2;
            }
          }
        }
        poly.push_back(static_cast<std::uint32_t>(idx));
      }
      for (std::size_t k = 1; k + 1 < poly.size(); ++k) {
        mesh.triangles.push_back({poly[0], poly[k], poly[k + 1]});
      }
    }
    // Other records (vt, o, g, s, usemtl, mtllib) carry nothing we keep.
  }

  if (any_color) mesh.colors = std::move(colors);
  const bool faces_ref_normals =
      std::any_of(vertex_normal.begin(), vertex_normal.end(),
                  [](long s) { return s != -1; });
  if (faces_ref_normals) {
    if (std::all_of(vertex_normal.begin(), vertex_normal.end(),
                    [](long s) { return s >= 0; })) {
      for (long s : vertex_normal) mesh.normals.push_back(vn[s]);
    }
  } else if (!vn.empty() && vn.size() == mesh.vertices.size()) {
    mesh.normals = vn;
  }
  try {
    mesh.validate();
  } catch (const GeometryError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
  return mesh;
}

void save_obj(const TriangleMesh& mesh, const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
    const Vec3& v = mesh.vertices[i];
    out << "v " << v.x() << ' ' << v.y() << ' ' << v.z();
    if (mesh.has_colors()) {
      const Vec3& c = mesh.colors[i];
      out << ' ' << c.x() << ' ' << c.y() << ' ' << c.z();
    }
    out << '\n';
  }
  for (const Vec3& n : mesh.normals) {
    out << "vn " << n.x() << ' ' << n.y() << ' ' << n.z() << '\n';
  }
  const bool with_normals = mesh.has_normals();
  for (const Triangle& t : mesh.triangles) {
    out << 'f';
    for (std::uint32_t i : t) {
      out << ' ' << (i + 1);
      if (with_normals) out << "//" << (i + 1);
    }
    out << '\n';
  }
  if (!out) throw IoError("failed writing " + path.string());
}

// ----------------------------------------------------------------- PLY

enum class PlyType { kInt8, kUInt8, kInt16, kUInt16, kInt32, kUInt32, kFloat32, kFloat64 };

std::optional<PlyType> ply_type(std::string_view s) {
  if (s == "char" || s == "int8") return PlyType::kInt8;
  if (s == "uchar" || s == "uint8") return PlyType::kUInt8;
  if (s == "short" || s == "int16") return PlyType::kInt16;
  if (s == "ushort" || s == "uint16") return PlyType::kUInt16;
  if (s == "int" || s == "int32") return PlyType::kInt32;
  if (s == "uint" || s == "uint32") return PlyType::kUInt32;
  if (s == "float" || s == "float32") return PlyType::kFloat32;
  if (s == "double" || s == "float64") return PlyType::kFloat64;
  return std::nullopt;
}

std::size_t ply_size(PlyType t) {
  switch (t) {
    case PlyType::kInt8:
    case PlyType::kUInt8: return 1;
    case PlyType::kInt16:
    case PlyType::kUInt16: return 2;
    case PlyType::kInt32:
    case PlyType::kUInt32:
    case PlyType::kFloat32: return 4;
    case PlyType::kFloat64: return 8;
  }
  return 0;
}

struct PlyProperty {
  std::string name;
  PlyType type = PlyType::kFloat32;
  bool is_list = false;
  PlyType count_type = PlyType::kUInt8;
};

struct PlyElement {
  std::string name;
  std::size_t count = 0;
  std::vector<PlyProperty> props;
};

class ByteReader {
 public:
  ByteReader(std::vector<char> data, std::size_t pos, const fs::path& path)
      : data_(std::move(data)), pos_(pos), path_(path) {}

  double read(PlyType t, std::size_t record) {
    const std::size_t n = ply_size(t);
    if (pos_ + n > data_.size()) {
      throw IoError(path_.string() + ": record " + std::to_string(record) +
                    ": unexpected end of file");
    }
    const char* p = data_.data() + pos_;
    pos_ += n;
    switch (t) {
      case PlyType::kInt8: return get<std::int8_t>(p);
      case PlyType::kUInt8: return get<std::uint8_t>(p);
      case PlyType::kInt16: return get<std::int16_t>(p);
      case PlyType::kUInt16: return get<std::uint16_t>(p);
      case PlyType::kInt32: return get<std::int32_t>(p);
      case PlyType::kUInt32: return get<std::uint32_t>(p);
      case PlyType::kFloat32: return get<float>(p);
      case PlyType::kFloat64: return get<double>(p);
    }
    return 0;
  }

 private:
  template <typename T>
  static double get(const char* p) {
    T v;
    std::memcpy(&v, p, sizeof(T));
    return static_cast<double>(v);
  }
  std::vector<char> data_;
  std::size_t pos_;
  const fs::path& path_;
};

TriangleMesh load_ply(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<char> data((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());

  // Header.
  std::size_t pos = 0;
  std::size_t line_no = 0;
  auto next_line = [&]() -> std::optional<std::string> {
    if (pos >= data.size()) return std::nullopt;
    std::size_t end = pos;
    while (end < data.size() && data[end] != '\n') ++end;
    std::string line(data.data() + pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    pos = std::min(end + 1, data.size());
    ++line_no;
    return line;
  };

  auto first = next_line();
  if (!first || *first != "ply") fail(path, 1, "missing 'ply' magic");
  std::vector<PlyElement> elements;
  bool format_ok = false;
  bool ended = false;
  while (auto line = next_line()) {
    const auto tok = split_ws(*line);
    if (tok.empty()) continue;
    if (tok[0] == "format") {
      if (tok.size() < 2 || tok[1] != "binary_little_endian") {
        fail(path, line_no, "only binary_little_endian PLY is supported");
      }
      format_ok = true;
    } else if (tok[0] == "element") {
      if (tok.size() != 3) fail(path, line_no, "bad element line");
      auto c = parse_long(tok[2]);
      if (!c || *c < 0) fail(path, line_no, "bad element count");
      elements.push_back({std::string(tok[1]), static_cast<std::size_t>(*c), {}});
    } else if (tok[0] == "property") {
      if (elements.empty()) fail(path, line_no, "property before element");
      PlyProperty prop;
      if (tok.size() == 5 && tok[1] == "list") {
        auto ct = ply_type(tok[2]);
        auto it = ply_type(tok[3]);
        if (!ct || !it) fail(path, line_no, "unknown list property type");
        prop = {std::string(tok[4]), *it, true, *ct};
      } else if (tok.size() == 3) {
        auto t = ply_type(tok[1]);
        if (!t) fail(path, line_no, "unknown property type");
        prop = {std::string(tok[2]), *t, false, PlyType::kUInt8};
      } else {
        fail(path, line_no, "bad property line");
      }
      elements.back().props.push_back(prop);
    } else if (tok[0] == "end_header") {
      ended = true;
      break;
    } else if (tok[0] != "comment" && tok[0] != "obj_info") {
      fail(path, line_no, "unexpected header line");
    }
  }
  if (!format_ok) fail(path, line_no, "missing format line");
  if (!ended) fail(path, line_no, "missing end_header");

  ByteReader reader(std::move(data), pos, path);
  TriangleMesh mesh;
  std::size_t record = 0;
  for (const PlyElement& el : elements) {
    const bool is_vertex = el.name == "vertex";
    const bool is_face = el.name == "face";
    auto find = [&](std::string_view name) -> int {
      for (std::size_t i = 0; i < el.props.size(); ++i) {
        if (el.props[i].name == name) return static_cast<int>(i);
      }
      return -1;
    };
    const int ix = find("x"), iy = find("y"), iz = find("z");
    const int inx = find("nx"), iny = find("ny"), inz = find("nz");
    const int ir = find("red"), ig = find("green"), ib = find("blue");
    const bool has_normals = inx >= 0 && iny >= 0 && inz >= 0;
    const bool has_colors = ir >= 0 && ig >= 0 && ib >= 0;
    if (is_vertex && (ix < 0 || iy < 0 || iz < 0)) {
      throw IoError(path.string() + ": vertex element lacks x/y/z");
    }
    int iface = -1;
    if (is_face) {
      iface = find("vertex_indices");
      if (iface < 0) iface = find("vertex_index");
      if (iface < 0 || !el.props[iface].is_list) {
        throw IoError(path.string() + ": face element lacks vertex_indices");
      }
    }

    std::vector<double> values;
    for (std::size_t r = 0; r < el.count; ++r, ++record) {
      values.assign(el.props.size(), 0.0);
      std::vector<long> list;
      for (std::size_t p = 0; p < el.props.size(); ++p) {
        const PlyProperty& prop = el.props[p];
        if (prop.is_list) {
          const double n = reader.read(prop.count_type, record);
          if (n < 0) fail(path, record, "negative list length");
          std::vector<long> items(static_cast<std::size_t>(n));
          for (auto& item : items) {
            item = static_cast<long>(reader.read(prop.type, record));
          }
          if (static_cast<int>(p) == iface) list = std::move(items);
        } else {
          values[p] = reader.read(prop.type, record);
        }
      }
      if (is_vertex) {
        mesh.vertices.emplace_back(values[ix], values[iy], values[iz]);
        if (has_normals) {
          mesh.normals.emplace_back(values[inx], values[iny], values[inz]);
        }
        if (has_colors) {
          const double scale =
              el.props[ir].type == PlyType::kFloat32 ||
                      el.props[ir].type == PlyType::kFloat64
                  ? 1.0
                  : 1.0 / 255.0;
          mesh.colors.emplace_back(values[ir] * scale, values[ig] * scale,
                                   values[ib] * scale);
        }
      } else if (is_face) {
        if (list.size() < 3) {
          throw IoError(path.string() + ": face " + std::to_string(r) +
                        " has fewer than 3 vertices");
        }
        for (long idx : list) {
          if (idx < 0 || static_cast<std::size_t>(idx) >= mesh.vertices.size()) {
            throw IoError(path.string() + ": face " + std::to_string(r) +
                          " index " + std::to_string(idx) + " out of range (" +
                          std::to_string(mesh.vertices.size()) + " vertices)");
          }
        }
        for (std::size_t k = 1; k + 1 < list.size(); ++k) {
          mesh.triangles.push_back({static_cast<std::uint32_t>(list[0]),
                                    static_cast<std::uint32_t>(list[k]),
                                    static_cast<std::uint32_t>(list[k + 1])});
        }
      }
    }
  }
  try {
    mesh.validate();
  } catch (const GeometryError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
  return mesh;
}

template <typename T>
void put(std::string& buf, T v) {
  char bytes[sizeof(T)];
  std::memcpy(bytes, &v, sizeof(T));
  buf.append(bytes, sizeof(T));
}

void save_ply(const TriangleMesh& mesh, const fs::path& path) {
  std::string header = "ply\nformat binary_little_endian 1.0\n";
  header += "element vertex " + std::to_string(mesh.vertices.size()) + "\n";
  header += "property double x\nproperty double y\nproperty double z\n";
  if (mesh.has_normals()) {
    header += "property double nx\nproperty double ny\nproperty double nz\n";
  }
  if (mesh.has_colors()) {
    header += "property uchar red\nproperty uchar green\nproperty uchar blue\n";
  }
  header += "element face " + std::to_string(mesh.triangles.size()) + "\n";
  header += "property list uchar uint vertex_indices\nend_header\n";

  std::string body;
  body.reserve(mesh.vertices.size() * 51 + mesh.triangles.size() * 13);
  for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
    for (int k = 0; k < 3; ++k) put(body, mesh.vertices[i][k]);
    if (mesh.has_normals()) {
      for (int k = 0; k < 3; ++k) put(body, mesh.normals[i][k]);
    }
    if (mesh.has_colors()) {
      for (int k = 0; k < 3; ++k) {
        const double c = std::clamp(mesh.colors[i][k], 0.0, 1.0);
        put(body, static_cast<std::uint8_t>(std::lround(c * 255.0)));
      }
    }
  }
  for (const Triangle& t : mesh.triangles) {
    put(body, std::uint8_t{3});
    for (std::uint32_t idx : t) put(body, idx);
  }

  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(header.data(), static_cast<std::streamsize>(header.size()));
  out.write(body.data(), static_cast<std::streamsize>(body.size()));
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace

TriangleMesh load_mesh(const fs::path& path) {
  if (!fs::exists(path)) throw IoError("no such file: " + path.string());
  const std::string ext = lower_ext(path);
  if (ext == ".obj") return load_obj(path);
  if (ext == ".ply") return load_ply(path);
  throw IoError("unsupported mesh format '" + ext + "': " + path.string());
}

void save_mesh(const TriangleMesh& mesh, const fs::path& path) {
  mesh.validate();
  const std::string ext = lower_ext(path);
  if (ext == ".obj") return save_obj(mesh, path);
  if (ext == ".ply") return save_ply(mesh, path);
  throw IoError("unsupported mesh format '" + ext + "': " + path.string());
}

JointSet load_joints(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(path.string() + ": " + e.what());
  }
  const auto& arr = j.contains("joints") ? j["joints"] : nlohmann::json();
  if (!arr.is_array()) throw IoError(path.string() + ": missing 'joints' array");
  if (arr.size() != kJointCount) {
    throw IoError(path.string() + ": expected " + std::to_string(kJointCount) +
                  " joints, found " + std::to_string(arr.size()));
  }
  JointSet js;
  std::array<bool, kJointCount> seen{};
  for (std::size_t r = 0; r < arr.size(); ++r) {
    const auto& e = arr[r];
    if (!e.contains("name") || !e["name"].is_string()) {
      throw IoError(path.string() + ": joint " + std::to_string(r) + " has no name");
    }
    const std::string name = e["name"];
    const std::size_t idx = joint_index(name);
    if (idx == kJointCount) {
      throw IoError(path.string() + ": unknown joint name '" + name + "'");
    }
    if (seen[idx]) {
      throw IoError(path.string() + ": duplicate joint '" + name + "'");
    }
    seen[idx] = true;
    const auto& p = e.contains("position") ? e["position"] : nlohmann::json();
    if (!p.is_array() || p.size() != 3) {
      throw IoError(path.string() + ": joint '" + name + "' needs a 3-vector position");
    }
    for (int k = 0; k < 3; ++k) {
      if (!p[k].is_number()) {
        throw IoError(path.string() + ": joint '" + name +
                      "' has a non-numeric coordinate");
      }
      js[idx][k] = p[k].get<double>();
    }
    if (!js[idx].allFinite()) {
      throw IoError(path.string() + ": joint '" + name +
                    "' has a non-finite coordinate");
    }
  }
  return js;
}

void save_joints(const JointSet& joints, const fs::path& path) {
  nlohmann::json arr = nlohmann::json::array();
  for (std::size_t i = 0; i < kJointCount; ++i) {
    arr.push_back({{"name", kJointNames[i]},
                   {"position", {joints[i].x(), joints[i].y(), joints[i].z()}}});
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << nlohmann::json{{"joints", arr}}.dump(2) << '\n';
}

}  // namespace silhull
