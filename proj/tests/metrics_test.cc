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

#include "silhull/metrics.h"

#include <random>

#include <gtest/gtest.h>

#include "silhull/error.h"
#include "silhull/fixtures.h"

namespace silhull {
namespace {

double brute_distance(const TriangleMesh& m, const Vec3& p) {
  double best = 1e300;
  for (const Triangle& t : m.triangles) {
    const Vec3 q = closest_point_on_triangle(p, m.vertices[t[0]], m.vertices[t[1]],
                                             m.vertices[t[2]]);
    best = std::min(best, (q - p).norm());
  }
  return best;
}

TEST(IouTest, IdenticalDisjointAndHalf) {
  SilhouetteImage a(10, 10), b(10, 10), full(10, 10, 1.0f), left(10, 10);
  a.at(1, 1) = 1.0f;
  b.at(8, 8) = 1.0f;
  for (int y = 0; y < 10; ++y)
    for (int x = 0; x < 5; ++x) left.at(x, y) = 1.0f;
  EXPECT_EQ(iou(a, a), 1.0);
  EXPECT_EQ(iou(a, b), 0.0);
  EXPECT_EQ(iou(left, full), 0.5);
  EXPECT_EQ(iou(SilhouetteImage(4, 4), SilhouetteImage(4, 4)), 1.0);
}

TEST(IouTest, ThresholdsAtHalf) {
  SilhouetteImage a(2, 1), b(2, 1);
  a.at(0, 0) = 0.5f;
  b.at(0, 0) = 0.49f;
  b.at(1, 0) = 0.7f;
  EXPECT_EQ(iou(a, b), 0.0);
}

TEST(IouTest, SizeMismatchThrows) {
  EXPECT_THROW(iou(SilhouetteImage(4, 4), SilhouetteImage(4, 5)), GeometryError);
}

TEST(IouTest, SymmetricOnRandomMasks) {
  std::mt19937 rng(2);
  for (int t = 0; t < 50; ++t) {
    SilhouetteImage a(16, 16), b(16, 16);
    for (auto& v : a.values()) v = static_cast<float>(rng() % 2);
    for (auto& v : b.values()) v = static_cast<float>(rng() % 2);
    EXPECT_EQ(iou(a, b), iou(b, a));
    if (a.mask_count()) EXPECT_EQ(iou(a, a), 1.0);
  }
}

TEST(ClosestPointTest, AllVoronoiRegions) {
  const Vec3 a(0, 0, 0), b(1, 0, 0), c(0, 1, 0);
  EXPECT_NEAR((closest_point_on_triangle(Vec3(0.2, 0.2, 3), a, b, c) - Vec3(0.2, 0.2, 0)).norm(), 0, 1e-15);
  EXPECT_EQ(closest_point_on_triangle(Vec3(-1, -1, 0), a, b, c), a);
  EXPECT_EQ(closest_point_on_triangle(Vec3(2, -1, 0), a, b, c), b);
  EXPECT_EQ(closest_point_on_triangle(Vec3(-1, 2, 1), a, b, c), c);
  EXPECT_NEAR((closest_point_on_triangle(Vec3(0.5, -2, 0), a, b, c) - Vec3(0.5, 0, 0)).norm(), 0, 1e-15);
  EXPECT_NEAR((closest_point_on_triangle(Vec3(1, 1, 0), a, b, c) - Vec3(0.5, 0.5, 0)).norm(), 0, 1e-15);
  EXPECT_NEAR((closest_point_on_triangle(Vec3(-3, 0.4, 0), a, b, c) - Vec3(0, 0.4, 0)).norm(), 0, 1e-15);
}

TEST(BvhTest, MatchesBruteForce) {
  const TriangleMesh m = make_mannequin(0.04);
  const TriangleBvh bvh(m);
  std::mt19937 rng(8);
  std::uniform_real_distribution<double> ux(-1, 1), uy(-0.2, 2.0), uz(-0.5, 0.5);
  for (int i = 0; i < 200; ++i) {
    const Vec3 p(ux(rng), uy(rng), uz(rng));
    ASSERT_NEAR(bvh.distance(p), brute_distance(m, p), 1e-12);
  }
}

TEST(SampleSurfaceTest, PointsLieOnSurfaceAndFollowArea) {
  // Two triangles, the second with 3x the area.
  TriangleMesh m;
  m.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 5}, {3, 0, 5}, {0, 1, 5}};
  m.triangles = {{0, 1, 2}, {3, 4, 5}};
  const auto pts = sample_surface(m, 40000, 1);
  ASSERT_EQ(pts.size(), 40000u);
  int upper = 0;
  for (const Vec3& p : pts) {
    if (p.z() > 2.5) ++upper;
    ASSERT_LT(brute_distance(m, p), 1e-12);
  }
  EXPECT_NEAR(upper / 40000.0, 0.75, 0.01);
  EXPECT_EQ(sample_surface(m, 100, 7), sample_surface(m, 100, 7));
}

TEST(ChamferTest, SelfDistanceIsZero) {
  const TriangleMesh s = make_sphere(Vec3::Zero(), 1.0, 3);
  EXPECT_LE(chamfer(s, s, 10000, 0), 1e-9);
}

TEST(ChamferTest, ConcentricSpheresTenCentimeters) {
  // Nearest distance between concentric spheres is |r2 - r1| = 0.1 m.
  const TriangleMesh a = make_sphere(Vec3::Zero(), 1.0, 5);
  const TriangleMesh b = make_sphere(Vec3::Zero(), 1.1, 5);
  const double d0 = chamfer(a, b, 100000, 0);
  const double d1 = chamfer(a, b, 100000, 1);
  EXPECT_NEAR(d0, 10.0, 0.2);
  EXPECT_NEAR(d0 / d1, 1.0, 0.01);
}

TEST(ChamferTest, SymmetricAndMonotoneInRadiusGap) {
  const TriangleMesh r1 = make_sphere(Vec3::Zero(), 1.0, 3);
  const TriangleMesh r2 = make_sphere(Vec3::Zero(), 1.05, 3);
  const TriangleMesh r3 = make_sphere(Vec3::Zero(), 1.2, 3);
  EXPECT_EQ(chamfer(r1, r2, 5000, 4), chamfer(r2, r1, 5000, 4));
  EXPECT_GT(chamfer(r1, r3, 5000, 4), chamfer(r1, r2, 5000, 4));
  EXPECT_GE(chamfer(r1, r2, 5000, 4), 0.0);
}

TEST(ChamferTest, ErrorsOnEmptyInputs) {
  const TriangleMesh s = make_sphere(Vec3::Zero(), 1.0, 1);
  EXPECT_THROW(chamfer(TriangleMesh{}, s), GeometryError);
  EXPECT_THROW(chamfer(s, s, 0), GeometryError);
}

TEST(ChamferReferenceTest, MatchesDirectComputation) {
  const TriangleMesh gt = make_sphere(Vec3::Zero(), 1.0, 3);
  const TriangleMesh cand = make_box(Vec3::Constant(-0.9), Vec3::Constant(0.9));
  const ChamferReference ref(gt, 3000, 17);
  EXPECT_EQ(ref.chamfer_cm(cand), chamfer(cand, gt, 3000, 17));
}

}  // namespace
}  // namespace silhull
