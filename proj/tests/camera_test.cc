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
#include <set>

#include <gtest/gtest.h>

#include "silhull/error.h"
#include "silhull/fixtures.h"

namespace silhull {
namespace {

double projected_height(const JointSet& joints, const Camera& cam) {
  double lo = 1e300, hi = -1e300;
  for (const Vec3& j : joints.joints) {
    const double y = project(cam, j).y();
    lo = std::min(lo, y);
    hi = std::max(hi, y);
  }
  return hi - lo;
}

TEST(CameraTest, FocalPixelsUseThirtySixMillimeterFilm) {
  Camera c;
  c.focal_35mm = 36.0;
  c.width = 256;
  EXPECT_DOUBLE_EQ(c.focal_px(), 256.0);
  c.focal_35mm = 800.0;
  EXPECT_DOUBLE_EQ(c.focal_px(), 800.0 / 36.0 * 256.0);
}

TEST(CameraTest, FrameIsRightHandedAndOrthonormal) {
  for (double yaw : {0.0, 37.0, 200.0}) {
    for (double pitch : {-10.0, 0.0, 45.0, 90.0}) {
      Camera c;
      c.yaw_deg = yaw;
      c.pitch_deg = pitch;
      EXPECT_NEAR(c.right().norm(), 1.0, 1e-12);
      EXPECT_NEAR(c.up().norm(), 1.0, 1e-12);
      EXPECT_NEAR(c.right().dot(c.forward()), 0.0, 1e-12);
      EXPECT_NEAR(c.up().dot(c.forward()), 0.0, 1e-12);
      if (pitch < 90.0) EXPECT_GT(c.up().y(), 0.0);
    }
  }
  Camera front;
  EXPECT_NEAR((front.center() - Vec3(0, 0, 1)).norm(), 0.0, 1e-15);
  EXPECT_NEAR((front.forward() - Vec3(0, 0, -1)).norm(), 0.0, 1e-15);
}

TEST(CameraTest, TargetProjectsToCenter) {
  Camera c;
  c.yaw_deg = 123;
  c.pitch_deg = 33;
  c.target = Vec3(0.3, 1.2, -0.7);
  c.distance = 4.0;
  const Vec2 p = project(c, c.target);
  EXPECT_NEAR(p.x(), 128.0, 1e-9);
  EXPECT_NEAR(p.y(), 128.0, 1e-9);
}

TEST(CameraTest, PinholeClosedForm) {
  Camera c;
  c.focal_35mm = 50.0;
  c.distance = 3.0;
  // 128 + 0.1 * (50 / 36 * 256) / 3
  const Vec2 p = project(c, Vec3(0.1, 0, 0));
  EXPECT_NEAR(p.x(), 139.85185185185185, 1e-9);
  EXPECT_NEAR(p.y(), 128.0, 1e-12);
  // Image y points down.
  EXPECT_LT(project(c, Vec3(0, 0.1, 0)).y(), 128.0);
  // Same offset along the yaw-90 camera's right axis.
  c.yaw_deg = 90;
  EXPECT_NEAR(project(c, Vec3(0, 0, -0.1)).x(), 139.85185185185185, 1e-9);
}

TEST(CameraTest, BehindCameraThrows) {
  Camera c;
  c.distance = 2.0;
  EXPECT_THROW(project(c, Vec3(0, 0, 3)), GeometryError);
  EXPECT_THROW(project(c, c.center()), GeometryError);
}

TEST(CameraTest, PixelRayInvertsProjection) {
  Camera c;
  c.yaw_deg = 71;
  c.pitch_deg = 22;
  c.distance = 5;
  const Vec3 p(0.4, -0.3, 0.2);
  const Vec3 ray = pixel_ray(c, project(c, p));
  EXPECT_NEAR((ray - (p - c.center()).normalized()).norm(), 0.0, 1e-12);
}

TEST(CameraTest, ValidateRejectsBadParameters) {
  Camera c;
  EXPECT_NO_THROW(c.validate());
  c.pitch_deg = 91;
  EXPECT_THROW(c.validate(), GeometryError);
  c = Camera{};
  c.focal_35mm = 0;
  EXPECT_THROW(c.validate(), GeometryError);
  c = Camera{};
  c.distance = -1;
  EXPECT_THROW(c.validate(), GeometryError);
}

TEST(CameraTest, NormalizeYaw) {
  EXPECT_EQ(normalize_yaw(0), 0);
  EXPECT_EQ(normalize_yaw(360), 0);
  EXPECT_EQ(normalize_yaw(-30), 330);
  EXPECT_EQ(normalize_yaw(725), 5);
  EXPECT_LT(normalize_yaw(-1e-18), 360.0);
}

TEST(FrameSubjectTest, TposeDistanceMatchesSimilarTriangles) {
  // d = h * f_px / (fill * H) with h = 1.70 m, f = 50 mm, fill 0.9, H = 256.
  const Camera c = frame_subject(tpose_joints(), 0, 0, 50, 256, 256, 0.9);
  EXPECT_NEAR(c.distance, 2.623456790123457, 1e-9);
  EXPECT_EQ(c.target, tpose_joints().pelvis());
}

TEST(FrameSubjectTest, BodyHeightIndependentOfFocal) {
  const JointSet j = tpose_joints();
  for (double yaw : {0.0, 45.0, 90.0, 200.0}) {
    for (double pitch : {-10.0, 30.0, 60.0}) {
      const double h40 = projected_height(j, frame_subject(j, yaw, pitch, 40, 256, 256));
      const double h135 = projected_height(j, frame_subject(j, yaw, pitch, 135, 256, 256));
      EXPECT_NEAR(h40 / h135, 1.0, 0.01);
      EXPECT_NEAR(h40, 0.9 * 256, 0.01 * 0.9 * 256);
    }
  }
}

TEST(FrameSubjectTest, PelvisAtImageCenter) {
  const JointSet j = tpose_joints();
  const Camera c = frame_subject(j, 17, 41, 90, 256, 256);
  const Vec2 p = project(c, j.pelvis());
  EXPECT_NEAR(p.x(), 128.0, 1e-6);
  EXPECT_NEAR(p.y(), 128.0, 1e-6);
}

TEST(FrameSubjectTest, DegenerateJointsThrow) {
  JointSet j;
  for (auto& p : j.joints) p = Vec3(1, 2, 3);
  EXPECT_THROW(frame_subject(j, 0, 0, 50, 256, 256), GeometryError);
  EXPECT_THROW(frame_subject(tpose_joints(), 0, 0, 50, 256, 256, 0.0), GeometryError);
  EXPECT_THROW(frame_subject(tpose_joints(), 0, 0, 50, 256, 256, 1.5), GeometryError);
}

TEST(SourceViewsTest, EmptyForZeroCount) {
  EXPECT_TRUE(sample_source_views(tpose_joints(), 0, 1).empty());
}

TEST(SourceViewsTest, RangesHoldOverManySamples) {
  const JointSet j = tpose_joints();
  const auto cams = sample_source_views(j, 10000, 42);
  ASSERT_EQ(cams.size(), 10000u);
  for (const Camera& c : cams) {
    ASSERT_GE(c.yaw_deg, 0.0);
    ASSERT_LT(c.yaw_deg, 360.0);
    ASSERT_GE(c.pitch_deg, -10.0);
    ASSERT_LE(c.pitch_deg, 60.0);
    ASSERT_GE(c.focal_35mm, 40.0);
    ASSERT_LE(c.focal_35mm, 135.0);
    const Vec2 p = project(c, j.pelvis());
    ASSERT_NEAR(p.x(), 128.0, 1e-6);
    ASSERT_NEAR(p.y(), 128.0, 1e-6);
  }
}

TEST(SourceViewsTest, DeterministicPerSeed) {
  const JointSet j = tpose_joints();
  EXPECT_EQ(sample_source_views(j, 50, 9), sample_source_views(j, 50, 9));
  EXPECT_NE(sample_source_views(j, 50, 9), sample_source_views(j, 50, 10));
}

TEST(TargetGridTest, CountFocalAndYawLattice) {
  const JointSet j = tpose_joints();
  const auto cams = target_view_grid(j);
  ASSERT_EQ(cams.size(), 240u);
  std::set<std::pair<double, double>> seen;
  for (const Camera& c : cams) {
    EXPECT_EQ(c.focal_35mm, 800.0);
    const double steps = c.yaw_deg / 7.5;
    EXPECT_EQ(steps, std::floor(steps));
    EXPECT_TRUE(c.pitch_deg == 10 || c.pitch_deg == 15 || c.pitch_deg == 30 ||
                c.pitch_deg == 45 || c.pitch_deg == 60);
    seen.insert({c.yaw_deg, c.pitch_deg});
    const Vec2 p = project(c, j.pelvis());
    EXPECT_NEAR(p.x(), 128.0, 1e-6);
    EXPECT_NEAR(p.y(), 128.0, 1e-6);
  }
  EXPECT_EQ(seen.size(), 240u);
}

TEST(CandidateViewsTest, BinsPitchesAndSpacing) {
  const Camera input = frame_subject(tpose_joints(), 20, 5, 50, 256, 256);
  const auto views = candidate_views(input);
  ASSERT_EQ(views.size(), 1u + kCandidateCount);
  EXPECT_EQ(kCandidateCount, 55);
  EXPECT_EQ(views[0].bin_index, 1);
  EXPECT_EQ(views[0].pitch_index, 0);
  EXPECT_EQ(views[0].camera, input);
  for (std::size_t i = 1; i < views.size(); ++i) {
    const CandidateView& v = views[i];
    const int bin = 2 + static_cast<int>(i - 1) / 5;
    EXPECT_EQ(v.bin_index, bin);
    EXPECT_EQ(v.pitch_index, static_cast<int>(i - 1) % 5);
    EXPECT_EQ(v.camera.pitch_deg, kCandidatePitches[v.pitch_index]);
    EXPECT_EQ(v.camera.focal_35mm, 800.0);
    EXPECT_NEAR(v.camera.yaw_deg, normalize_yaw(20.0 + 30.0 * (bin - 1)), 1e-9);
    EXPECT_EQ(v.camera.target, input.target);
    EXPECT_NEAR(v.camera.focal_px() / v.camera.distance,
                input.focal_px() / input.distance, 1e-9);
  }
}

TEST(CandidateViewsTest, YawSetInvariantUnderFullTurn) {
  Camera a = frame_subject(tpose_joints(), 20, 5, 50, 256, 256);
  Camera b = a;
  b.yaw_deg += 360.0;
  const auto va = candidate_views(a);
  const auto vb = candidate_views(b);
  ASSERT_EQ(va.size(), vb.size());
  for (std::size_t i = 0; i < va.size(); ++i) {
    EXPECT_NEAR(va[i].camera.yaw_deg, vb[i].camera.yaw_deg, 1e-9);
  }
}

TEST(CameraJsonTest, RoundTrip) {
  const Camera c = frame_subject(tpose_joints(), 33.3, 12.5, 77, 320, 240);
  EXPECT_EQ(camera_from_json(to_json(c)), c);
  nlohmann::json bad = to_json(c);
  bad.erase("distance");
  EXPECT_THROW(camera_from_json(bad), IoError);
}

}  // namespace
}  // namespace silhull
