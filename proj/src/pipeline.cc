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

#include <algorithm>
#include <cmath>

#include "silhull/raster.h"

namespace silhull {

CandidatePool build_candidate_pool(const Scene& scene,
                                   const std::optional<PerturbConfig>& perturb) {
  CandidatePool pool(kBinCount);
  for (const CandidateView& view : candidate_views(scene.input_camera)) {
    pool[view.bin_index - 1].push_back(
        {view, render_silhouette(scene.subject, view.camera)});
  }
  if (perturb) perturb_pool(pool, *perturb);
  return pool;
}

Reconstruction reconstruct(const Scene& scene,
                           const ReconstructOptions& options) {
  if (options.perturb) options.perturb->validate();
  const CandidatePool pool = build_candidate_pool(scene, options.perturb);
  GreedyResult greedy =
      greedy_select(pool, scene.joints, options.resolution, options.padding);
  Reconstruction out;
  out.mesh = extract_mesh(greedy.grid);
  out.plan = std::move(greedy.plan);
  out.grid = std::move(greedy.grid);
  return out;
}

double fraction_inside_hull(const VoxelGrid& grid,
                            const std::vector<Vec3>& points,
                            double slack_voxels) {
  if (points.empty()) return 1.0;
  const double h = grid.voxel_size();
  const double slack = slack_voxels * h;
  const int reach = static_cast<int>(std::ceil(slack_voxels)) + 1;
  const auto& dims = grid.dims();
  std::size_t inside = 0;
  for (const Vec3& p : points) {
    const Vec3 rel = (p - grid.origin()) / h;
    const int ci = static_cast<int>(std::floor(rel.x()));
    const int cj = static_cast<int>(std::floor(rel.y()));
    const int ck = static_cast<int>(std::floor(rel.z()));
    bool hit = false;
    for (int k = std::max(ck - reach, 0); !hit && k <= std::min(ck + reach, dims[2] - 1); ++k) {
      for (int j = std::max(cj - reach, 0); !hit && j <= std::min(cj + reach, dims[1] - 1); ++j) {
        for (int i = std::max(ci - reach, 0); !hit && i <= std::min(ci + reach, dims[0] - 1); ++i) {
          if (!grid.occupied(i, j, k)) continue;
          const Vec3 lo = grid.origin() + h * Vec3(i, j, k);
          const Vec3 q = p.cwiseMax(lo).cwiseMin(lo + Vec3::Constant(h));
          hit = (p - q).norm() <= slack;
        }
      }
    }
    if (hit) ++inside;
  }
  return static_cast<double>(inside) / points.size();
}

}  // namespace silhull
