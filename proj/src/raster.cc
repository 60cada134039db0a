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

#include "silhull/raster.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "raster_internal.h"

namespace silhull {
namespace internal {

namespace {

constexpr double kNearPlane = 1e-9;

struct ClipVertex {
  Vec3 cam;    // camera-space position (right, up, depth)
  Vec3 color;
};

// Edge function with a canonical vertex order so the shared edge of two
// adjacent triangles evaluates to exactly opposite values.
inline double edge(const Vec2& a, const Vec2& b, double px, double py) {
  const bool swap = a.x() > b.x() || (a.x() == b.x() && a.y() > b.y());
  const Vec2& p0 = swap ? b : a;
  const Vec2& p1 = swap ? a : b;
  const double e = (p1.x() - p0.x()) * (py - p0.y()) - (p1.y() - p0.y()) * (px - p0.x());
  return swap ? -e : e;
}

// Top-left rule for triangles with positive edge-function area (clockwise on
// screen with y down).
inline bool owns_edge(const Vec2& a, const Vec2& b) {
  const double dx = b.x() - a.x();
  const double dy = b.y() - a.y();
  return dy < 0 || (dy == 0 && dx > 0);
}

template <typename Sink>
void raster_triangle(const ClipVertex (&v)[3], const Vec2 (&s_in)[3],
                     int width, int height, bool attributes, Sink& sink) {
  Vec2 s[3] = {s_in[0], s_in[1], s_in[2]};
  int order[3] = {0, 1, 2};
  double area = edge(s[0], s[1], s[2].x(), s[2].y());
  if (area == 0.0 || !std::isfinite(area)) return;
  if (area < 0) {
    std::swap(s[1], s[2]);
    std::swap(order[1], order[2]);
    area = -area;
  }
  const double min_x = std::min({s[0].x(), s[1].x(), s[2].x()});
  const double max_x = std::max({s[0].x(), s[1].x(), s[2].x()});
  const double min_y = std::min({s[0].y(), s[1].y(), s[2].y()});
  const double max_y = std::max({s[0].y(), s[1].y(), s[2].y()});
  // Pixel x covers [x, x+1) with its center at x + 0.5.
  // Clamped in double first: near-plane vertices land far off screen.
  auto lo = [](double v, int n) {
    return static_cast<int>(std::clamp(std::ceil(v - 0.5), 0.0, static_cast<double>(n)));
  };
  auto hi = [](double v, int n) {
    return static_cast<int>(std::clamp(std::floor(v - 0.5), -1.0, n - 1.0));
  };
  const int x0 = lo(min_x, width), x1 = hi(max_x, width);
  const int y0 = lo(min_y, height), y1 = hi(max_y, height);
  if (x0 > x1 || y0 > y1) return;

  const bool own12 = owns_edge(s[1], s[2]);
  const bool own20 = owns_edge(s[2], s[0]);
  const bool own01 = owns_edge(s[0], s[1]);
  const double inv_area = 1.0 / area;

  for (int y = y0; y <= y1; ++y) {
    const double py = y + 0.5;
    for (int x = x0; x <= x1; ++x) {
      const double px = x + 0.5;
      const double w0 = edge(s[1], s[2], px, py);
      const double w1 = edge(s[2], s[0], px, py);
      const double w2 = edge(s[0], s[1], px, py);
      if (w0 < 0 || w1 < 0 || w2 < 0) continue;
      if ((w0 == 0 && !own12) || (w1 == 0 && !own20) || (w2 == 0 && !own01)) {
        continue;
      }
      const std::size_t idx = static_cast<std::size_t>(y) * width + x;
      if (!attributes) {
        sink(idx, 0.0, Vec3::Zero());
        continue;
      }
      // Perspective-correct barycentrics.
      const double b[3] = {w0 * inv_area, w1 * inv_area, w2 * inv_area};
      double l[3];
      double sum = 0;
      for (int k = 0; k < 3; ++k) {
        l[k] = b[k] / v[order[k]].cam.z();
        sum += l[k];
      }
      Vec3 hit = Vec3::Zero();
      Vec3 color = Vec3::Zero();
      for (int k = 0; k < 3; ++k) {
        const double lk = l[k] / sum;
        hit += lk * v[order[k]].cam;
        color += lk * v[order[k]].color;
      }
      sink(idx, hit.norm(), color);
    }
  }
}

}  // namespace

void rasterize(const TriangleMesh& mesh, const Camera& camera, bool attributes,
               const FragmentSink& sink) {
  const Vec3 center = camera.center();
  const Vec3 right = camera.right();
  const Vec3 up = camera.up();
  const Vec3 fwd = camera.forward();
  const double f = camera.focal_px();
  const double cx = camera.width * 0.5;
  const double cy = camera.height * 0.5;
  const bool colored = attributes && mesh.has_colors();

  std::vector<Vec3> cam_pts(mesh.vertices.size());
  for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
    const Vec3 d = mesh.vertices[i] - center;
    cam_pts[i] = Vec3(right.dot(d), up.dot(d), fwd.dot(d));
  }
  auto to_screen = [&](const Vec3& c) {
    return Vec2(cx + f * c.x() / c.z(), cy - f * c.y() / c.z());
  };

  for (const Triangle& t : mesh.triangles) {
    ClipVertex in[3];
    int behind = 0;
    for (int k = 0; k < 3; ++k) {
      in[k].cam = cam_pts[t[k]];
      in[k].color = colored ? mesh.colors[t[k]] : Vec3::Zero();
      if (!(in[k].cam.z() > kNearPlane)) ++behind;
    }
    if (behind == 3) continue;
    if (behind == 0) {
      const Vec2 s[3] = {to_screen(in[0].cam), to_screen(in[1].cam),
                         to_screen(in[2].cam)};
      raster_triangle(in, s, camera.width, camera.height, attributes, sink);
      continue;
    }
    // Clip against the near plane (Sutherland-Hodgman, one plane).
    ClipVertex poly[4];
    int n = 0;
    for (int k = 0; k < 3; ++k) {
      const ClipVertex& a = in[k];
      const ClipVertex& b = in[(k + 1) % 3];
      const bool a_in = a.cam.z() > kNearPlane;
      const bool b_in = b.cam.z() > kNearPlane;
      if (a_in) poly[n++] = a;
      if (a_in != b_in) {
        const double u = (kNearPlane - a.cam.z()) / (b.cam.z() - a.cam.z());
        ClipVertex c;
        c.cam = a.cam + u * (b.cam - a.cam);
        c.cam.z() = kNearPlane;
        c.color = a.color + u * (b.color - a.color);
        poly[n++] = c;
      }
    }
    for (int k = 1; k + 1 < n; ++k) {
      const ClipVertex tri[3] = {poly[0], poly[k], poly[k + 1]};
      const Vec2 s[3] = {to_screen(tri[0].cam), to_screen(tri[1].cam),
                         to_screen(tri[2].cam)};
      raster_triangle(tri, s, camera.width, camera.height, attributes, sink);
    }
  }
}

}  // namespace internal

SilhouetteImage render_silhouette(const TriangleMesh& mesh,
                                  const Camera& camera) {
  if (mesh.empty() || mesh.triangles.empty()) {
    throw GeometryError("render_silhouette: mesh is empty");
  }
  SilhouetteImage out(camera.width, camera.height, 0.0f);
  std::vector<float>& v = out.values();
  internal::rasterize(mesh, camera, false,
                      [&v](std::size_t idx, double, const Vec3&) { v[idx] = 1.0f; });
  return out;
}

FrontBackPair render_front_back(const TriangleMesh& mesh, const Camera& camera) {
  if (!mesh.has_colors()) throw GeometryError("render: mesh has no colors");
  FrontBackPair out{RenderedImage(camera.width, camera.height),
                    RenderedImage(camera.width, camera.height)};
  RenderedImage& front = out.front;
  RenderedImage& back = out.back;
  // Back depth starts at -inf so the first fragment always wins; it is reset
  // to +inf for uncovered pixels afterwards.
  std::fill(back.depth.begin(), back.depth.end(),
            -std::numeric_limits<double>::infinity());
  internal::rasterize(
      mesh, camera, true, [&](std::size_t idx, double depth, const Vec3& color) {
        front.coverage[idx] = 1;
        back.coverage[idx] = 1;
        if (depth < front.depth[idx]) {
          front.depth[idx] = depth;
          front.rgb[idx] = color;
        }
        if (depth > back.depth[idx]) {
          back.depth[idx] = depth;
          back.rgb[idx] = color;
        }
      });
  for (std::size_t i = 0; i < back.depth.size(); ++i) {
    if (!back.coverage[i]) back.depth[i] = std::numeric_limits<double>::infinity();
  }
  return out;
}

RenderedImage render_front(const TriangleMesh& mesh, const Camera& camera) {
  return render_front_back(mesh, camera).front;
}

RenderedImage render_back(const TriangleMesh& mesh, const Camera& camera) {
  return render_front_back(mesh, camera).back;
}

std::array<Vec2, kJointCount> project_joints(const JointSet& joints,
                                             const Camera& camera) {
  std::array<Vec2, kJointCount> out;
  const Projector proj(camera);
  for (std::size_t i = 0; i < kJointCount; ++i) {
    if (!proj(joints[i], &out[i])) {
      throw GeometryError("joint '" + std::string(kJointNames[i]) +
                          "' lies behind the camera");
    }
  }
  return out;
}

}  // namespace silhull
