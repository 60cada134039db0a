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

#include "silhull/fixtures.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include "silhull/vhull.h"

namespace silhull {

namespace {

void orient_outward(TriangleMesh& mesh, const Vec3& inside) {
  for (Triangle& t : mesh.triangles) {
    const Vec3& a = mesh.vertices[t[0]];
    const Vec3 n = (mesh.vertices[t[1]] - a).cross(mesh.vertices[t[2]] - a);
    const Vec3 centroid = (a + mesh.vertices[t[1]] + mesh.vertices[t[2]]) / 3.0;
    if (n.dot(centroid - inside) < 0) std::swap(t[1], t[2]);
  }
}

double capsule_sdf(const Vec3& p, const Vec3& a, const Vec3& b, double r) {
  const Vec3 ab = b - a;
  const double t = std::clamp((p - a).dot(ab) / ab.squaredNorm(), 0.0, 1.0);
  return (p - (a + t * ab)).norm() - r;
}

}  // namespace

TriangleMesh make_sphere(const Vec3& center, double radius, int subdivisions) {
  const double g = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Vec3> dirs = {{-1, g, 0}, {1, g, 0},  {-1, -g, 0}, {1, -g, 0},
                            {0, -1, g}, {0, 1, g},  {0, -1, -g}, {0, 1, -g},
                            {g, 0, -1}, {g, 0, 1},  {-g, 0, -1}, {-g, 0, 1}};
  for (Vec3& d : dirs) d.normalize();
  std::vector<Triangle> tris = {
      {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
      {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
      {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
      {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
  for (int s = 0; s < subdivisions; ++s) {
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> mid;
    auto midpoint = [&](std::uint32_t a, std::uint32_t b) {
      const auto key = std::minmax(a, b);
      auto it = mid.find(key);
      if (it != mid.end()) return it->second;
      const auto idx = static_cast<std::uint32_t>(dirs.size());
      dirs.push_back((dirs[a] + dirs[b]).normalized());
      mid.emplace(key, idx);
      return idx;
    };
    std::vector<Triangle> next;
    next.reserve(tris.size() * 4);
    for (const Triangle& t : tris) {
      const std::uint32_t ab = midpoint(t[0], t[1]);
      const std::uint32_t bc = midpoint(t[1], t[2]);
      const std::uint32_t ca = midpoint(t[2], t[0]);
      next.push_back({t[0], ab, ca});
      next.push_back({t[1], bc, ab});
      next.push_back({t[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    tris = std::move(next);
  }
  TriangleMesh mesh;
  mesh.triangles = std::move(tris);
  mesh.vertices.reserve(dirs.size());
  for (const Vec3& d : dirs) mesh.vertices.push_back(center + radius * d);
  mesh.normals = dirs;
  orient_outward(mesh, center);
  return mesh;
}

TriangleMesh make_box(const Vec3& lo, const Vec3& hi) {
  TriangleMesh mesh;
  for (int c = 0; c < 8; ++c) {
    mesh.vertices.emplace_back(c & 1 ? hi.x() : lo.x(), c & 2 ? hi.y() : lo.y(),
                               c & 4 ? hi.z() : lo.z());
  }
  mesh.triangles = {{0, 2, 1}, {1, 2, 3}, {4, 5, 6}, {5, 7, 6},
                    {0, 1, 4}, {1, 5, 4}, {2, 6, 3}, {3, 6, 7},
                    {0, 4, 2}, {2, 4, 6}, {1, 3, 5}, {3, 7, 5}};
  orient_outward(mesh, 0.5 * (lo + hi));
  return mesh;
}

TriangleMesh make_colored_box(const Vec3& lo, const Vec3& hi) {
  TriangleMesh mesh;
  struct Face {
    int axis;
    bool positive;
    Vec3 color;
  };
  const Face faces[6] = {{0, true, {1, 0, 0}},  {0, false, {0, 1, 1}},
                         {1, true, {0, 1, 0}},  {1, false, {1, 0, 1}},
                         {2, true, {0, 0, 1}},  {2, false, {1, 1, 0}}};
  for (const Face& f : faces) {
    const int u = (f.axis + 1) % 3, v = (f.axis + 2) % 3;
    const auto base = static_cast<std::uint32_t>(mesh.vertices.size());
    for (int c = 0; c < 4; ++c) {
      Vec3 p;
      p[f.axis] = f.positive ? hi[f.axis] : lo[f.axis];
      p[u] = (c == 1 || c == 2) ? hi[u] : lo[u];
      p[v] = (c >= 2) ? hi[v] : lo[v];
      mesh.vertices.push_back(p);
      mesh.colors.push_back(f.color);
    }
    mesh.triangles.push_back({base, base + 1, base + 2});
    mesh.triangles.push_back({base, base + 2, base + 3});
  }
  orient_outward(mesh, 0.5 * (lo + hi));
  return mesh;
}

JointSet tpose_joints() {
  JointSet j;
  j[0] = {0.0, 1.78, 0.0};     // head (top)
  j[1] = {0.0, 1.52, 0.0};     // neck
  j[2] = {-0.19, 1.47, 0.0};   // right shoulder
  j[3] = {-0.46, 1.47, 0.0};   // right elbow
  j[4] = {-0.72, 1.47, 0.0};   // right wrist
  j[5] = {0.19, 1.47, 0.0};    // left shoulder
  j[6] = {0.46, 1.47, 0.0};    // left elbow
  j[7] = {0.72, 1.47, 0.0};    // left wrist
  j[8] = {0.0, 0.98, 0.0};     // pelvis
  j[9] = {-0.10, 0.53, 0.0};   // right knee
  j[10] = {-0.10, 0.08, 0.0};  // right ankle
  j[11] = {0.10, 0.53, 0.0};   // left knee
  j[12] = {0.10, 0.08, 0.0};   // left ankle
  return j;
}

TriangleMesh make_mannequin(double cell_size) {
  const JointSet j = tpose_joints();
  struct Capsule {
    Vec3 a, b;
    double r;
  };
  const Vec3 rhip(-0.10, 0.95, 0.0), lhip(0.10, 0.95, 0.0);
  const std::vector<Capsule> parts = {
      {{0, 1.665, 0}, {0, 1.665, 0}, 0.115},        // head
      {{0, 1.50, 0}, {0, 1.57, 0}, 0.055},          // neck
      {{0, 1.40, 0.01}, {0, 1.05, 0.01}, 0.14},     // torso
      {{-0.19, 1.45, 0}, {0.19, 1.45, 0}, 0.065},   // shoulder girdle
      {j[2], j[3], 0.05},  {j[3], j[4], 0.042},     // right arm
      {j[5], j[6], 0.05},  {j[6], j[7], 0.042},     // left arm
      {{-0.78, 1.47, 0}, {-0.78, 1.47, 0}, 0.05},   // right hand
      {{0.78, 1.47, 0}, {0.78, 1.47, 0}, 0.05},     // left hand
      {rhip, lhip, 0.11},                           // hips
      {rhip, j[9], 0.075}, {j[9], j[10], 0.055},    // right leg
      {lhip, j[11], 0.075}, {j[11], j[12], 0.055},  // left leg
      {j[10], {-0.10, 0.03, 0.13}, 0.045},          // right foot
      {j[12], {0.10, 0.03, 0.13}, 0.045},           // left foot
  };
  const Vec3 lo(-0.95, -0.10, -0.30), hi(0.95, 1.90, 0.35);
  std::array<int, 3> dims;
  for (int a = 0; a < 3; ++a) {
    dims[a] = static_cast<int>(std::ceil((hi[a] - lo[a]) / cell_size)) + 1;
  }
  std::vector<float> field(static_cast<std::size_t>(dims[0]) * dims[1] * dims[2]);
  std::size_t idx = 0;
  for (int k = 0; k < dims[2]; ++k) {
    for (int jj = 0; jj < dims[1]; ++jj) {
      for (int i = 0; i < dims[0]; ++i, ++idx) {
        const Vec3 p = lo + cell_size * Vec3(i, jj, k);
        double d = 1e9;
        for (const Capsule& c : parts) {
          d = std::min(d, c.a == c.b ? (p - c.a).norm() - c.r : capsule_sdf(p, c.a, c.b, c.r));
        }
        field[idx] = static_cast<float>(-d);
      }
    }
  }
  return marching_cubes(field, dims, lo, cell_size, 0.0f);
}

JointSet sphere_joints(const Vec3& c, double r) {
  JointSet j;
  j[0] = c + Vec3(0, r, 0);
  j[1] = c + Vec3(0, 0, r);
  j[2] = c + Vec3(-r, 0, 0);
  j[3] = c + Vec3(-0.5 * r, 0.5 * r, 0);
  j[4] = c + Vec3(-0.5 * r, 0, 0.5 * r);
  j[5] = c + Vec3(r, 0, 0);
  j[6] = c + Vec3(0.5 * r, 0.5 * r, 0);
  j[7] = c + Vec3(0.5 * r, 0, 0.5 * r);
  j[8] = c;
  j[9] = c + Vec3(0, 0, -r);
  j[10] = c + Vec3(0, -r, 0);
  j[11] = c + Vec3(0, -0.5 * r, -0.5 * r);
  j[12] = c + Vec3(0.5 * r, -0.5 * r, 0);
  return j;
}

}  // namespace silhull
