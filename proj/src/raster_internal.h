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

#ifndef SILHULL_SRC_RASTER_INTERNAL_H_
#define SILHULL_SRC_RASTER_INTERNAL_H_

#include <functional>

#include "silhull/camera.h"
#include "silhull/mesh.h"

namespace silhull::internal {

// (pixel index, distance along the pixel ray, interpolated color)
using FragmentSink = std::function<void(std::size_t, double, const Vec3&)>;

// Emits one fragment per (triangle, covered pixel center). Depth and color
// are only computed when `attributes` is set.
void rasterize(const TriangleMesh& mesh, const Camera& camera, bool attributes,
               const FragmentSink& sink);

}  // namespace silhull::internal

#endif  // SILHULL_SRC_RASTER_INTERNAL_H_
