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

#include "silhull/mesh.h"

#include <cmath>
#include <string>
#include <unordered_map>
#include <unordered_set>

namespace silhull {

namespace {

std::uint64_t edge_key(std::uint32_t a, std::uint32_t b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

}  // namespace

void TriangleMesh::validate() const {
  const std::size_t n = vertices.size();
  for (std::size_t t = 0; t < triangles.size(); ++t) {
    for (std::uint32_t idx : triangles[t]) {
      if (idx >= n) {
        throw GeometryError("triangle " + std::to_string(t) +
                            " references vertex " + std::to_string(idx) +
                            " but the mesh has " + std::to_string(n));
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!vertices[i].allFinite()) {
      throw GeometryError("vertex " + std::to_string(i) + " is not finite");
    }
  }
  if (!colors.empty()) {
    if (colors.size() != n) {
      throw GeometryError("color count " + std::to_string(colors.size()) +
                          " != vertex count " + std::to_string(n));
    }
    for (std::size_t i = 0; i < n; ++i) {
      const Vec3& c = colors[i];
      if (!(c.minCoeff() >= 0.0 && c.maxCoeff() <= 1.0)) {
        throw GeometryError("color of vertex " + std::to_string(i) +
                            " outside [0,1]");
      }
    }
  }
  if (!normals.empty()) {
    if (normals.size() != n) {
      throw GeometryError("normal count " + std::to_string(normals.size()) +
                          " != vertex count " + std::to_string(n));
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (!(std::abs(normals[i].norm() - 1.0) <= 1e-6)) {
        throw GeometryError("normal of vertex " + std::to_string(i) +
                            " is not unit length");
      }
    }
  }
}

std::vector<Vec3> compute_vertex_normals(const TriangleMesh& mesh) {
  std::vector<Vec3> acc(mesh.vertices.size(), Vec3::Zero());
  for (const Triangle& t : mesh.triangles) {
    const Vec3& a = mesh.vertices[t[0]];
    const Vec3& b = mesh.vertices[t[1]];
    const Vec3& c = mesh.vertices[t[2]];
    // Cross product length is twice the area, so this is area weighted.
    const Vec3 n = (b - a).cross(c - a);
    for (std::uint32_t i : t) acc[i] += n;
  }
  for (Vec3& n : acc) {
    const double len = n.norm();
    n = len > 0 ? Vec3(n / len) : Vec3::UnitZ();
  }
  return acc;
}

double signed_volume(const TriangleMesh& mesh) {
  double v = 0.0;
  for (const Triangle& t : mesh.triangles) {
    v += mesh.vertices[t[0]].dot(
        mesh.vertices[t[1]].cross(mesh.vertices[t[2]]));
  }
  return v / 6.0;
}

double surface_area(const TriangleMesh& mesh) {
  double area = 0.0;
  for (const Triangle& t : mesh.triangles) {
    const Vec3& a = mesh.vertices[t[0]];
    area += 0.5 * (mesh.vertices[t[1]] - a).cross(mesh.vertices[t[2]] - a).norm();
  }
  return area;
}

long euler_characteristic(const TriangleMesh& mesh) {
  std::unordered_set<std::uint64_t> edges;
  edges.reserve(mesh.triangles.size() * 2);
  for (const Triangle& t : mesh.triangles) {
    for (int e = 0; e < 3; ++e) edges.insert(edge_key(t[e], t[(e + 1) % 3]));
  }
  return static_cast<long>(mesh.vertices.size()) -
         static_cast<long>(edges.size()) +
         static_cast<long>(mesh.triangles.size());
}

bool is_closed_manifold(const TriangleMesh& mesh) {
  std::unordered_map<std::uint64_t, int> count;
  count.reserve(mesh.triangles.size() * 2);
  for (const Triangle& t : mesh.triangles) {
    for (int e = 0; e < 3; ++e) ++count[edge_key(t[e], t[(e + 1) % 3])];
  }
  for (const auto& [key, c] : count) {
    if (c != 2) return false;
  }
  return !mesh.triangles.empty();
}

std::size_t joint_index(std::string_view name) {
  for (std::size_t i = 0; i < kJointCount; ++i) {
    if (kJointNames[i] == name) return i;
  }
  return kJointCount;
}

void JointSet::validate() const {
  for (std::size_t i = 0; i < kJointCount; ++i) {
    if (!joints[i].allFinite()) {
      throw GeometryError("joint '" + std::string(kJointNames[i]) +
                          "' has a non-finite coordinate");
    }
  }
}

}  // namespace silhull
