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

#ifndef SILHULL_VHULL_H_
#define SILHULL_VHULL_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <vector>

#include <nlohmann/json.hpp>

#include "silhull/camera.h"
#include "silhull/image.h"
#include "silhull/mesh.h"

namespace silhull {

inline constexpr int kDefaultResolution = 128;
inline constexpr double kDefaultPadding = 0.3;

// Axis-aligned occupancy lattice. Voxel (i,j,k) spans
// origin + voxel_size * [i, i+1) x [j, j+1) x [k, k+1).
class VoxelGrid {
 public:
  VoxelGrid() = default;
  VoxelGrid(const Vec3& origin, double voxel_size,
            const std::array<int, 3>& dims, bool occupied);

  const Vec3& origin() const { return origin_; }
  double voxel_size() const { return voxel_size_; }
  const std::array<int, 3>& dims() const { return dims_; }
  std::size_t voxel_count() const { return occupancy_.size(); }

  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(k) * dims_[1] + j) * dims_[0] + i;
  }
  bool occupied(int i, int j, int k) const {
    return occupancy_[index(i, j, k)] != 0;
  }
  void set(int i, int j, int k, bool value) {
    occupancy_[index(i, j, k)] = value ? 1 : 0;
  }
  Vec3 center(int i, int j, int k) const {
    return origin_ + voxel_size_ * Vec3(i + 0.5, j + 0.5, k + 0.5);
  }
  Vec3 max_corner() const {
    return origin_ + voxel_size_ * Vec3(dims_[0], dims_[1], dims_[2]);
  }

  std::size_t occupied_count() const;
  double occupied_volume() const;

  const std::vector<std::uint8_t>& occupancy() const { return occupancy_; }
  std::vector<std::uint8_t>& occupancy() { return occupancy_; }

  // Calls fn(i, j, k) for every voxel, k outermost.
  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (int k = 0; k < dims_[2]; ++k)
      for (int j = 0; j < dims_[1]; ++j)
        for (int i = 0; i < dims_[0]; ++i) fn(i, j, k);
  }

  bool operator==(const VoxelGrid&) const = default;

 private:
  Vec3 origin_ = Vec3::Zero();
  double voxel_size_ = 1.0;
  std::array<int, 3> dims_ = {0, 0, 0};
  std::vector<std::uint8_t> occupancy_;
};

// Joint AABB grown by padding * diagonal on every side, fully occupied.
// `resolution` voxels span the longest axis; voxels are cubic.
VoxelGrid init_bounding_volume(const JointSet& joints,
                               int resolution = kDefaultResolution,
                               double padding = kDefaultPadding);

// Keeps a voxel iff its center projects inside mask(silhouette). Centers
// behind the camera or outside the image are carved.
VoxelGrid carve(const VoxelGrid& grid, const SilhouetteImage& silhouette,
                const Camera& camera);
void carve_in_place(VoxelGrid& grid, const SilhouetteImage& silhouette,
                    const Camera& camera);

enum class ReprojectMode {
  // Exact image of the union of occupied voxel cubes (pixel-center rays).
  kVoxelFootprint,
  // Each occupied voxel center lights the single pixel it lands in.
  kCenterSplat,
};

SilhouetteImage reproject_hull(const VoxelGrid& grid, const Camera& camera,
                               ReprojectMode mode = ReprojectMode::kVoxelFootprint);

struct Candidate {
  CandidateView view;
  SilhouetteImage silhouette;
};

// pool[0] is bin 1 (the input pair alone); pool[b] holds bin b+1.
using CandidatePool = std::vector<std::vector<Candidate>>;

struct PlanEntry {
  CandidateView view;
  SilhouetteImage silhouette;
  double iou_at_selection = 1.0;
  // IoU of every candidate in the bin against the same hull projection.
  std::vector<double> candidate_ious;
};

struct ViewPlan {
  std::vector<PlanEntry> entries;
};

struct GreedyResult {
  ViewPlan plan;
  VoxelGrid grid;
};

// Carves the joint bounding volume with the input silhouette, then walks
// bins 2..12 in order: each bin contributes the candidate whose silhouette
// has the highest IoU with the current hull's reprojection (ties go to the
// lower pitch index), and the hull is carved by it before the next bin.
GreedyResult greedy_select(const CandidatePool& pool, const JointSet& joints,
                           int resolution = kDefaultResolution,
                           double padding = kDefaultPadding,
                           ReprojectMode mode = ReprojectMode::kVoxelFootprint);

// Same carving loop with a caller-supplied choice per bin (choice[b] indexes
// pool[b]; choice[0] must be 0). Used for random-selection baselines.
GreedyResult carve_with_choices(const CandidatePool& pool,
                                const std::vector<int>& choice,
                                const JointSet& joints,
                                int resolution = kDefaultResolution,
                                double padding = kDefaultPadding);

// Throws GeometryError unless the pool has 12 bins, bin 1 holds one
// candidate and bins 2..12 hold one to five each, all at matching
// resolution.
void validate_pool(const CandidatePool& pool);

// Marching cubes on a scalar lattice (values at lattice points, x fastest).
// Vertices are shared along lattice edges; triangles wind outward from the
// region where value > iso.
TriangleMesh marching_cubes(const std::vector<float>& values,
                            const std::array<int, 3>& dims,
                            const Vec3& origin, double spacing, float iso);

// Isosurface at 0.5 of the {0,1} occupancy sampled at voxel centers, padded
// by one empty layer so the result is closed. Throws GeometryError for
// fully occupied or fully empty grids.
TriangleMesh extract_mesh(const VoxelGrid& grid);

// Debug dump: origin (3 x f64), voxel_size (f64), dims (3 x u32), then
// occupancy bit-packed LSB-first in index order. All little-endian.
void write_voxel_dump(const VoxelGrid& grid, const std::filesystem::path& path);
VoxelGrid read_voxel_dump(const std::filesystem::path& path);

nlohmann::json to_json(const ViewPlan& plan);

}  // namespace silhull

#endif  // SILHULL_VHULL_H_
