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

#ifndef SILHULL_PIPELINE_H_
#define SILHULL_PIPELINE_H_

#include <optional>

#include "silhull/camera.h"
#include "silhull/mesh.h"
#include "silhull/perturb.h"
#include "silhull/vhull.h"

namespace silhull {

// Ground-truth subject seen from one input camera.
struct Scene {
  TriangleMesh subject;
  JointSet joints;
  Camera input_camera;
};

struct ReconstructOptions {
  int resolution = kDefaultResolution;
  double padding = kDefaultPadding;
  std::optional<PerturbConfig> perturb;
};

// Renders the 55 candidate silhouettes of the scene; applies the
// perturbation model to bins 2..12 when configured.
CandidatePool build_candidate_pool(const Scene& scene,
                                   const std::optional<PerturbConfig>& perturb);

struct Reconstruction {
  TriangleMesh mesh;
  ViewPlan plan;
  VoxelGrid grid;
};

// candidate_views -> render_silhouette (+ perturbation) -> greedy_select ->
// extract_mesh.
Reconstruction reconstruct(const Scene& scene,
                           const ReconstructOptions& options = {});

// Fraction of `points` that lie in an occupied voxel or within
// `slack_voxels` voxel edges of one.
double fraction_inside_hull(const VoxelGrid& grid,
                            const std::vector<Vec3>& points,
                            double slack_voxels = 1.0);

}  // namespace silhull

#endif  // SILHULL_PIPELINE_H_
