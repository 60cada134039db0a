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

#include "silhull/pipeline.h"

#include <gtest/gtest.h>

#include "silhull/fixtures.h"
#include "silhull/metrics.h"

namespace silhull {
namespace {

Scene sphere_scene() {
  Scene s;
  s.subject = make_sphere(Vec3(0, 1, 0), 0.5, 4);
  s.joints = sphere_joints(Vec3(0, 1, 0), 0.5);
  s.input_camera = frame_subject(s.joints, 20.0, 5.0, 50.0, 256, 256);
  return s;
}

TEST(PipelineTest, CandidatePoolShape) {
  const CandidatePool pool = build_candidate_pool(sphere_scene(), std::nullopt);
  ASSERT_EQ(pool.size(), static_cast<std::size_t>(kBinCount));
  EXPECT_EQ(pool[0].size(), 1u);
  for (int b = 1; b < kBinCount; ++b) EXPECT_EQ(pool[b].size(), 5u);
  validate_pool(pool);
}

TEST(PipelineTest, SphereReconstructionIsCloseAndContainsSurface) {
  ReconstructOptions opts;
  opts.resolution = 64;
  const Scene scene = sphere_scene();
  const Reconstruction r = reconstruct(scene, opts);
  EXPECT_TRUE(is_closed_manifold(r.mesh));
  EXPECT_EQ(r.plan.entries.size(), static_cast<std::size_t>(kBinCount));
  const double voxel_cm = r.grid.voxel_size() * 100.0;
  EXPECT_LT(chamfer(r.mesh, scene.subject, 20000, 3), 2.0 * voxel_cm);
  const auto pts = sample_surface(scene.subject, 5000, 9);
  EXPECT_EQ(fraction_inside_hull(r.grid, pts, 1.0), 1.0);
}

TEST(PipelineTest, Deterministic) {
  ReconstructOptions opts;
  opts.resolution = 32;
  opts.perturb = PerturbConfig{};
  opts.perturb->seed = 5;
  const Reconstruction a = reconstruct(sphere_scene(), opts);
  const Reconstruction b = reconstruct(sphere_scene(), opts);
  EXPECT_EQ(a.grid.occupancy(), b.grid.occupancy());
  EXPECT_EQ(a.mesh.vertices, b.mesh.vertices);
}

TEST(FractionInsideHullTest, SlackControlsAcceptance) {
  VoxelGrid g(Vec3::Zero(), 1.0, {3, 3, 3}, false);
  g.set(1, 1, 1, true);
  const std::vector<Vec3> inside = {{1.5, 1.5, 1.5}};
  const std::vector<Vec3> near = {{2.5, 1.5, 1.5}};
  const std::vector<Vec3> far = {{0.2, 0.2, 0.2}, {2.5, 1.5, 1.5}};
  EXPECT_EQ(fraction_inside_hull(g, inside, 0.0), 1.0);
  EXPECT_EQ(fraction_inside_hull(g, near, 0.0), 0.0);
  EXPECT_EQ(fraction_inside_hull(g, near, 1.0), 1.0);
  // (0.2,0.2,0.2) is sqrt(3)*0.8 from the box; only the second point is within 1.
  EXPECT_EQ(fraction_inside_hull(g, far, 1.0), 0.5);
}

}  // namespace
}  // namespace silhull
