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

#include "silhull/texture.h"

#include <algorithm>
#include <cmath>

namespace silhull {

Vec3 sample_bilinear(const RenderedImage& image, const Vec2& pixel) {
  // Continuous coordinate of pixel centers: (x + 0.5, y + 0.5).
  const double fx = std::clamp(pixel.x() - 0.5, 0.0, image.width - 1.0);
  const double fy = std::clamp(pixel.y() - 0.5, 0.0, image.height - 1.0);
  const int x0 = static_cast<int>(std::floor(fx));
  const int y0 = static_cast<int>(std::floor(fy));
  const int x1 = std::min(x0 + 1, image.width - 1);
  const int y1 = std::min(y0 + 1, image.height - 1);
  const double tx = fx - x0, ty = fy - y0;
  const Vec3 top = (1 - tx) * image.pixel(x0, y0) + tx * image.pixel(x1, y0);
  const Vec3 bottom = (1 - tx) * image.pixel(x0, y1) + tx * image.pixel(x1, y1);
  return (1 - ty) * top + ty * bottom;
}

double back_weight(double n_dot_c, double epsilon) {
  if (n_dot_c < -epsilon) return 0.0;
  if (n_dot_c > epsilon) return 1.0;
  if (epsilon == 0.0) return 0.5;
  return (n_dot_c + epsilon) / (2.0 * epsilon);
}

BakeResult bake_vertex_colors(const TriangleMesh& mesh,
                              const RenderedImage& front,
                              const RenderedImage& back, const Camera& camera,
                              double epsilon) {
  if (!(epsilon >= 0)) throw GeometryError("bake: epsilon must be >= 0");
  if (front.width != camera.width || front.height != camera.height ||
      back.width != camera.width || back.height != camera.height) {
    throw GeometryError("bake: image and camera resolution disagree");
  }
  BakeResult result;
  result.mesh = mesh;
  if (!result.mesh.has_normals()) {
    result.mesh.normals = compute_vertex_normals(mesh);
  }
  const Vec3 center = camera.center();
  const Projector proj(camera);
  result.mesh.colors.assign(mesh.vertices.size(), kRenderBackground);
  for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
    const Vec3& v = mesh.vertices[i];
    Vec2 px;
    if (!proj(v, &px)) {
      result.report.behind_camera.push_back(static_cast<std::uint32_t>(i));
      continue;
    }
    if (px.x() < 0 || px.y() < 0 || px.x() > camera.width || px.y() > camera.height) {
      result.report.clamped.push_back(static_cast<std::uint32_t>(i));
    }
    const Vec3 ray = (v - center).normalized();
    const double ndc = result.mesh.normals[i].dot(ray);
    const double wb = back_weight(ndc, epsilon);
    Vec3 color;
    if (wb == 0.0) {
      color = sample_bilinear(front, px);
    } else if (wb == 1.0) {
      color = sample_bilinear(back, px);
    } else {
      color = (1 - wb) * sample_bilinear(front, px) + wb * sample_bilinear(back, px);
    }
    result.mesh.colors[i] = color.cwiseMax(0.0).cwiseMin(1.0);
  }
  return result;
}

nlohmann::json to_json(const BakeReport& report) {
  return {{"clamped", report.clamped},
          {"behind_camera", report.behind_camera},
          {"clamped_count", report.clamped.size()},
          {"behind_camera_count", report.behind_camera.size()}};
}

}  // namespace silhull
