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

#ifndef SILHULL_MESH_H_
#define SILHULL_MESH_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Geometry>

#include "silhull/error.h"

namespace silhull {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Triangle = std::array<std::uint32_t, 3>;

// Indexed triangle geometry in meters. colors/normals are either empty or
// hold exactly one entry per vertex.
struct TriangleMesh {
  std::vector<Vec3> vertices;
  std::vector<Triangle> triangles;
  std::vector<Vec3> colors;   // RGB in [0,1]
  std::vector<Vec3> normals;  // unit length

  bool empty() const { return vertices.empty(); }
  bool has_colors() const { return !colors.empty(); }
  bool has_normals() const { return !normals.empty(); }

  // Throws GeometryError naming the first violated invariant.
  void validate() const;
};

// Area-weighted average of incident face normals. Isolated vertices get +z.
std::vector<Vec3> compute_vertex_normals(const TriangleMesh& mesh);

// Signed volume by the divergence theorem; positive for outward winding.
double signed_volume(const TriangleMesh& mesh);

double surface_area(const TriangleMesh& mesh);

// V - E + F over the undirected edge set.
long euler_characteristic(const TriangleMesh& mesh);

// True when every undirected edge is shared by exactly two triangles.
bool is_closed_manifold(const TriangleMesh& mesh);

// 13-joint MPII-compatible skeleton. Hips are folded into the pelvis.
inline constexpr std::size_t kJointCount = 13;
inline constexpr std::size_t kPelvis = 8;

inline constexpr std::array<std::string_view, kJointCount> kJointNames = {
    "head",          "neck",       "right_shoulder", "right_elbow",
    "right_wrist",   "left_shoulder", "left_elbow",  "left_wrist",
    "pelvis",        "right_knee", "right_ankle",    "left_knee",
    "left_ankle"};

// Returns kJointCount when the name is unknown.
std::size_t joint_index(std::string_view name);

struct JointSet {
  std::array<Vec3, kJointCount> joints;

  const Vec3& pelvis() const { return joints[kPelvis]; }
  const Vec3& operator[](std::size_t i) const { return joints[i]; }
  Vec3& operator[](std::size_t i) { return joints[i]; }

  // Throws GeometryError on non-finite coordinates.
  void validate() const;
};

}  // namespace silhull

#endif  // SILHULL_MESH_H_
