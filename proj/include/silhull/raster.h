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

#ifndef SILHULL_RASTER_H_
#define SILHULL_RASTER_H_

#include <array>
#include <vector>

#include "silhull/camera.h"
#include "silhull/image.h"
#include "silhull/mesh.h"

namespace silhull {

// Pixel-center sampling with a top-left fill rule and no culling. Triangles
// crossing the near plane are clipped.
SilhouetteImage render_silhouette(const TriangleMesh& mesh,
                                  const Camera& camera);

// Nearest (front) and furthest (back) hit per pixel ray. The two share
// coverage by construction.
RenderedImage render_front(const TriangleMesh& mesh, const Camera& camera);
RenderedImage render_back(const TriangleMesh& mesh, const Camera& camera);

struct FrontBackPair {
  RenderedImage front;
  RenderedImage back;
};
FrontBackPair render_front_back(const TriangleMesh& mesh, const Camera& camera);

std::array<Vec2, kJointCount> project_joints(const JointSet& joints,
                                             const Camera& camera);

}  // namespace silhull

#endif  // SILHULL_RASTER_H_
