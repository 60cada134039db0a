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

#include "silhull/camera.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "silhull/random.h"

namespace silhull {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

// Unit vector from target to camera center.
Vec3 orbit_direction(double yaw_deg, double pitch_deg) {
  const double yaw = yaw_deg * kDegToRad;
  const double pitch = pitch_deg * kDegToRad;
  return Vec3(std::sin(yaw) * std::cos(pitch), std::sin(pitch),
              std::cos(yaw) * std::cos(pitch));
}

}  // namespace

Vec3 Camera::center() const {
  return target + distance * orbit_direction(yaw_deg, pitch_deg);
}

Vec3 Camera::forward() const { return -orbit_direction(yaw_deg, pitch_deg); }

Vec3 Camera::right() const {
  const double yaw = yaw_deg * kDegToRad;
  return Vec3(std::cos(yaw), 0.0, -std::sin(yaw));
}

Vec3 Camera::up() const { return right().cross(forward()); }

Vec3 Camera::to_camera(const Vec3& p) const {
  const Vec3 d = p - center();
  return Vec3(right().dot(d), up().dot(d), forward().dot(d));
}

void Camera::validate() const {
  if (!(focal_35mm > 0)) throw GeometryError("camera focal length must be > 0");
  if (!(distance > 0)) throw GeometryError("camera distance must be > 0");
  if (!(pitch_deg >= -90.0 && pitch_deg <= 90.0)) {
    throw GeometryError("camera pitch must lie in [-90, 90]");
  }
  if (width <= 0 || height <= 0) throw GeometryError("camera image is empty");
  if (!target.allFinite() || !std::isfinite(yaw_deg)) {
    throw GeometryError("camera has non-finite parameters");
  }
}

Projector::Projector(const Camera& camera)
    : camera_(camera),
      center_(camera.center()),
      right_(camera.right()),
      up_(camera.up()),
      forward_(camera.forward()),
      focal_px_(camera.focal_px()),
      cx_(camera.width * 0.5),
      cy_(camera.height * 0.5) {}

bool Projector::operator()(const Vec3& point, Vec2* pixel) const {
  const Vec3 d = point - center_;
  const double z = forward_.dot(d);
  if (!(z > 0.0)) return false;
  const double inv = focal_px_ / z;
  *pixel = Vec2(cx_ + right_.dot(d) * inv, cy_ - up_.dot(d) * inv);
  return true;
}

Vec2 project(const Camera& camera, const Vec3& point) {
  Vec2 px;
  if (!Projector(camera)(point, &px)) {
    throw GeometryError("point lies behind the camera");
  }
  return px;
}

Vec3 pixel_ray(const Camera& camera, const Vec2& pixel) {
  const double f = camera.focal_px();
  const double x = (pixel.x() - camera.width * 0.5) / f;
  const double y = -(pixel.y() - camera.height * 0.5) / f;
  return (camera.forward() + x * camera.right() + y * camera.up()).normalized();
}

double normalize_yaw(double deg) {
  double r = std::fmod(deg, 360.0);
  if (r < 0) r += 360.0;
  if (r >= 360.0) r -= 360.0;
  return r;
}

Camera frame_subject(const JointSet& joints, double yaw_deg, double pitch_deg,
                     double focal_35mm, int width, int height,
                     double fill_ratio) {
  joints.validate();
  if (!(fill_ratio > 0.0 && fill_ratio <= 1.0)) {
    throw GeometryError("fill_ratio must lie in (0, 1]");
  }
  Camera cam;
  cam.yaw_deg = normalize_yaw(yaw_deg);
  cam.pitch_deg = pitch_deg;
  cam.focal_35mm = focal_35mm;
  cam.width = width;
  cam.height = height;
  cam.target = joints.pelvis();

  // Extent of the joints along the camera's up axis gives the distance in
  // closed form for joints at the pelvis depth; perspective from joints at
  // other depths is removed by a few fixed-point steps on the measured
  // height, which scales close to 1 / distance.
  const Vec3 up = cam.up();
  const Vec3 fwd = cam.forward();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  double depth_extent = 0.0;
  for (const Vec3& j : joints.joints) {
    const double u = up.dot(j - cam.target);
    lo = std::min(lo, u);
    hi = std::max(hi, u);
    depth_extent = std::max(depth_extent, std::abs(fwd.dot(j - cam.target)));
  }
  const double extent = hi - lo;
  if (!(extent > 1e-9)) {
    throw GeometryError("cannot frame subject: joints have no vertical extent");
  }
  const double wanted = fill_ratio * height;
  cam.distance = extent * cam.focal_px() / wanted;
  cam.distance = std::max(cam.distance, 2.0 * depth_extent + 1e-6);

  for (int iter = 0; iter < 100; ++iter) {
    const Projector proj(cam);
    double ymin = std::numeric_limits<double>::infinity();
    double ymax = -ymin;
    bool ok = true;
    for (const Vec3& j : joints.joints) {
      Vec2 px;
      if (!proj(j, &px)) {
        ok = false;
        break;
      }
      ymin = std::min(ymin, px.y());
      ymax = std::max(ymax, px.y());
    }
    if (!ok) {
      cam.distance *= 2.0;
      continue;
    }
    const double measured = ymax - ymin;
    const double ratio = measured / wanted;
    if (std::abs(ratio - 1.0) < 1e-12) break;
    cam.distance *= ratio;
  }
  return cam;
}

std::vector<Camera> sample_source_views(const JointSet& joints, int count,
                                        std::uint64_t seed, int image_size,
                                        double fill_ratio) {
  std::vector<Camera> out;
  if (count <= 0) return out;
  out.reserve(count);
  Rng rng(seed);
  for (int i = 0; i < count; ++i) {
    const double yaw = rng.uniform(0.0, 360.0);
    const double pitch = rng.uniform_closed(-10.0, 60.0);
    const double focal = rng.uniform_closed(40.0, 135.0);
    out.push_back(frame_subject(joints, yaw, pitch, focal, image_size,
                                image_size, fill_ratio));
  }
  return out;
}

std::vector<Camera> target_view_grid(const JointSet& joints, int image_size,
                                     double fill_ratio) {
  static constexpr double kPitches[] = {10, 15, 30, 45, 60};
  std::vector<Camera> out;
  out.reserve(48 * 5);
  for (int y = 0; y < 48; ++y) {
    for (double pitch : kPitches) {
      out.push_back(frame_subject(joints, 7.5 * y, pitch, kTargetFocal35mm,
                                  image_size, image_size, fill_ratio));
    }
  }
  return out;
}

std::vector<Camera> front_back_views(const JointSet& joints,
                                     const std::vector<double>& pitches_deg,
                                     int image_size, double fill_ratio) {
  std::vector<Camera> out;
  for (double pitch : pitches_deg) {
    out.push_back(frame_subject(joints, 0.0, pitch, kTargetFocal35mm,
                                image_size, image_size, fill_ratio));
  }
  return out;
}

std::vector<CandidateView> candidate_views(const Camera& input_camera) {
  input_camera.validate();
  std::vector<CandidateView> out;
  out.reserve(kCandidateCount + 1);
  CandidateView first{1, 0, input_camera};
  first.camera.yaw_deg = normalize_yaw(input_camera.yaw_deg);
  out.push_back(first);
  const double scale = kTargetFocal35mm / input_camera.focal_35mm;
  for (int bin = 2; bin <= kBinCount; ++bin) {
    for (int p = 0; p < static_cast<int>(kCandidatePitches.size()); ++p) {
      Camera cam = input_camera;
      cam.yaw_deg = normalize_yaw(input_camera.yaw_deg + 30.0 * (bin - 1));
      cam.pitch_deg = kCandidatePitches[p];
      cam.focal_35mm = kTargetFocal35mm;
      cam.distance = input_camera.distance * scale;
      out.push_back({bin, p, cam});
    }
  }
  return out;
}

nlohmann::json to_json(const Camera& c) {
  return {{"yaw_deg", c.yaw_deg},
          {"pitch_deg", c.pitch_deg},
          {"focal_35mm", c.focal_35mm},
          {"width", c.width},
          {"height", c.height},
          {"target", {c.target.x(), c.target.y(), c.target.z()}},
          {"distance", c.distance}};
}

Camera camera_from_json(const nlohmann::json& j) {
  Camera c;
  try {
    c.yaw_deg = j.at("yaw_deg").get<double>();
    c.pitch_deg = j.at("pitch_deg").get<double>();
    c.focal_35mm = j.at("focal_35mm").get<double>();
    c.width = j.at("width").get<int>();
    c.height = j.at("height").get<int>();
    const auto& t = j.at("target");
    if (!t.is_array() || t.size() != 3) throw IoError("camera target must be [x,y,z]");
    c.target = Vec3(t[0].get<double>(), t[1].get<double>(), t[2].get<double>());
    c.distance = j.at("distance").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("bad camera JSON: ") + e.what());
  }
  c.validate();
  return c;
}

}  // namespace silhull
