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

#ifndef SILHULL_TEXTURE_H_
#define SILHULL_TEXTURE_H_

#include <cstdint>
#include <vector>

#include <nlohmann/json.hpp>

#include "silhull/camera.h"
#include "silhull/image.h"
#include "silhull/mesh.h"

namespace silhull {

inline constexpr double kBlendEpsilon = 1.0e-4;

struct BakeReport {
  // Vertices whose projection fell outside the image (sampled at the
  // nearest edge) or behind the camera (left at the background color).
  std::vector<std::uint32_t> clamped;
  std::vector<std::uint32_t> behind_camera;
};

struct BakeResult {
  TriangleMesh mesh;
  BakeReport report;
};

// Per-vertex color from a pixel-aligned front/back image pair. With c the
// unit ray from the camera center through the vertex and n its normal:
// n.c < -eps samples the front image, n.c > eps the back image, and inside
// the band the two are mixed linearly with back weight (n.c + eps) / (2 eps).
// Normals are computed when the mesh has none.
BakeResult bake_vertex_colors(const TriangleMesh& mesh,
                              const RenderedImage& front,
                              const RenderedImage& back, const Camera& camera,
                              double epsilon = kBlendEpsilon);

// Bilinear lookup at a continuous pixel coordinate (centers at +0.5),
// clamped to the image.
Vec3 sample_bilinear(const RenderedImage& image, const Vec2& pixel);

// Back-image weight for a given n.c.
double back_weight(double n_dot_c, double epsilon);

nlohmann::json to_json(const BakeReport& report);

}  // namespace silhull

#endif  // SILHULL_TEXTURE_H_
