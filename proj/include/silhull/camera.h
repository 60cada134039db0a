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

#ifndef SILHULL_CAMERA_H_
#define SILHULL_CAMERA_H_

#include <cstdint>
#include <vector>

#include <nlohmann/json.hpp>

#include "silhull/mesh.h"

namespace silhull {

inline constexpr int kDefaultImageSize = 256;
inline constexpr double kDefaultFillRatio = 0.9;
inline constexpr double kTargetFocal35mm = 800.0;
inline constexpr double kFilmWidthMm = 36.0;

// Orbit camera looking at `target`. World up is +y; at yaw 0, pitch 0 the
// camera sits on +z and looks toward -z. Roll is always zero.
struct Camera {
  double yaw_deg = 0.0;
  double pitch_deg = 0.0;
  double focal_35mm = 50.0;
  int width = kDefaultImageSize;
  int height = kDefaultImageSize;
  Vec3 target = Vec3::Zero();
  double distance = 1.0;

  double focal_px() const { return focal_35mm / kFilmWidthMm * width; }
  Vec3 center() const;
  Vec3 forward() const;  // unit, from center toward target
  Vec3 right() const;
  Vec3 up() const;

  // Camera-space coordinates (right, up, forward depth).
  Vec3 to_camera(const Vec3& p) const;

  // Throws GeometryError unless focal > 0, distance > 0, pitch in [-90, 90]
  // and the image is non-empty.
  void validate() const;

  bool operator==(const Camera&) const = default;
};

// Pinhole projection, y pointing down. Throws GeometryError for points with
// non-positive camera depth.
Vec2 project(const Camera& camera, const Vec3& point);

// Precomputed projection for inner loops. Returns false instead of throwing
// when the point is behind the camera.
class Projector {
 public:
  explicit Projector(const Camera& camera);
  bool operator()(const Vec3& point, Vec2* pixel) const;
  const Camera& camera() const { return camera_; }

 private:
  Camera camera_;
  Vec3 center_, right_, up_, forward_;
  double focal_px_, cx_, cy_;
};

// Ray through a pixel coordinate (continuous, pixel centers at +0.5).
Vec3 pixel_ray(const Camera& camera, const Vec2& pixel);

// Angle in [0, 360).
double normalize_yaw(double deg);

// Places a camera at the given yaw/pitch/focal aimed at the pelvis, with the
// distance chosen so the projected joint bounding box height is
// fill_ratio * height. Throws GeometryError when all joints coincide.
Camera frame_subject(const JointSet& joints, double yaw_deg, double pitch_deg,
                     double focal_35mm, int width, int height,
                     double fill_ratio = kDefaultFillRatio);

// Random input views: yaw in [0, 360), pitch in [-10, 60], focal in
// [40, 135] mm. Pure function of (joints, count, seed).
std::vector<Camera> sample_source_views(const JointSet& joints, int count,
                                        std::uint64_t seed,
                                        int image_size = kDefaultImageSize,
                                        double fill_ratio = kDefaultFillRatio);

// 48 yaws every 7.5 deg x pitches {10, 15, 30, 45, 60} at 800 mm.
std::vector<Camera> target_view_grid(const JointSet& joints,
                                     int image_size = kDefaultImageSize,
                                     double fill_ratio = kDefaultFillRatio);

// Frontal front/back pair cameras at 800 mm for the given pitches.
std::vector<Camera> front_back_views(const JointSet& joints,
                                     const std::vector<double>& pitches_deg,
                                     int image_size = kDefaultImageSize,
                                     double fill_ratio = kDefaultFillRatio);

inline constexpr int kBinCount = 12;
inline constexpr std::array<double, 5> kCandidatePitches = {0, 15, 30, 45, 60};
// Selectable candidates in bins 2..12; bin 1 holds the input view on top.
inline constexpr int kCandidateCount = (kBinCount - 1) * 5;

struct CandidateView {
  int bin_index = 1;    // 1..12
  int pitch_index = 0;  // 0..4
  Camera camera;
};

// Bin 1 (the input camera alone) followed by the 55 candidates of bins
// 2..12, 56 entries in bin order. Candidate bins sit at input
// yaw + 30 deg * (bin - 1) with the five candidate pitches at 800 mm. The
// distance keeps the input's focal_px / distance ratio.
std::vector<CandidateView> candidate_views(const Camera& input_camera);

nlohmann::json to_json(const Camera& camera);
Camera camera_from_json(const nlohmann::json& j);

}  // namespace silhull

#endif  // SILHULL_CAMERA_H_
