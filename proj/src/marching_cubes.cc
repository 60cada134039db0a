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

#include <unordered_map>

#include "silhull/vhull.h"

namespace silhull {

namespace {

// Standard 256-case triangle table (Lorensen & Cline layout as popularized
// by Paul Bourke). Corner c sits at kCorner[c]; edge e joins kEdge[e].
constexpr int kTriTable[256][16] = {
#include "mc_tables.inc"
};

constexpr int kCorner[8][3] = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0},
                               {0, 0, 1}, {1, 0, 1}, {1, 1, 1}, {0, 1, 1}};
constexpr int kEdge[12][2] = {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {4, 5}, {5, 6},
                              {6, 7}, {7, 4}, {0, 4}, {1, 5}, {2, 6}, {3, 7}};

}  // namespace

TriangleMesh marching_cubes(const std::vector<float>& values,
                            const std::array<int, 3>& dims, const Vec3& origin,
                            double spacing, float iso) {
  const std::size_t nx = dims[0], ny = dims[1], nz = dims[2];
  if (values.size() != nx * ny * nz) {
    throw GeometryError("marching_cubes: value count does not match dims");
  }
  auto at = [&](std::size_t i, std::size_t j, std::size_t k) {
    return values[(k * ny + j) * nx + i];
  };

  TriangleMesh mesh;
  // Lattice edge (base point index * 3 + axis) -> vertex index.
  std::unordered_map<std::uint64_t, std::uint32_t> edge_vertex;

  auto vertex_on_edge = [&](std::size_t i, std::size_t j, std::size_t k,
                            int e) -> std::uint32_t {
    const int* a = kCorner[kEdge[e][0]];
    const int* b = kCorner[kEdge[e][1]];
    int lo[3], axis = 0;
    for (int d = 0; d < 3; ++d) {
      lo[d] = std::min(a[d], b[d]);
      if (a[d] != b[d]) axis = d;
    }
    const std::size_t bi = i + lo[0], bj = j + lo[1], bk = k + lo[2];
    const std::uint64_t key = ((bk * ny + bj) * nx + bi) * 3 + axis;
    auto [it, inserted] = edge_vertex.try_emplace(key, 0);
    if (!inserted) return it->second;

    std::size_t ci = bi, cj = bj, ck = bk;
    (axis == 0 ? ci : axis == 1 ? cj : ck) += 1;
    const float v0 = at(bi, bj, bk);
    const float v1 = at(ci, cj, ck);
    const double t = v1 == v0 ? 0.5 : (iso - v0) / static_cast<double>(v1 - v0);
    Vec3 p = origin + spacing * Vec3(static_cast<double>(bi), static_cast<double>(bj),
                                     static_cast<double>(bk));
    p[axis] += t * spacing;
    it->second = static_cast<std::uint32_t>(mesh.vertices.size());
    mesh.vertices.push_back(p);
    return it->second;
  };

  for (std::size_t k = 0; k + 1 < nz; ++k) {
    for (std::size_t j = 0; j + 1 < ny; ++j) {
      for (std::size_t i = 0; i + 1 < nx; ++i) {
        int cube = 0;
        for (int c = 0; c < 8; ++c) {
          if (at(i + kCorner[c][0], j + kCorner[c][1], k + kCorner[c][2]) <= iso) {
            cube |= 1 << c;
          }
        }
        if (cube == 0 || cube == 255) continue;
        const int* row = kTriTable[cube];
        for (int n = 0; row[n] != -1; n += 3) {
          const std::uint32_t v0 = vertex_on_edge(i, j, k, row[n]);
          const std::uint32_t v1 = vertex_on_edge(i, j, k, row[n + 1]);
          const std::uint32_t v2 = vertex_on_edge(i, j, k, row[n + 2]);
          mesh.triangles.push_back({v0, v1, v2});
        }
      }
    }
  }
  return mesh;
}

}  // namespace silhull
