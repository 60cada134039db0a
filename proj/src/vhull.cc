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

#include "silhull/vhull.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <string>

#include "silhull/metrics.h"
#include "silhull/raster.h"

namespace silhull {

VoxelGrid::VoxelGrid(const Vec3& origin, double voxel_size,
                     const std::array<int, 3>& dims, bool occupied)
    : origin_(origin), voxel_size_(voxel_size), dims_(dims) {
  if (!(voxel_size > 0)) throw GeometryError("voxel_size must be > 0");
  if (dims[0] < 1 || dims[1] < 1 || dims[2] < 1) {
    throw GeometryError("voxel grid dims must all be >= 1");
  }
  occupancy_.assign(static_cast<std::size_t>(dims[0]) * dims[1] * dims[2],
                    occupied ? 1 : 0);
}

std::size_t VoxelGrid::occupied_count() const {
  return static_cast<std::size_t>(
      std::count(occupancy_.begin(), occupancy_.end(), std::uint8_t{1}));
}

double VoxelGrid::occupied_volume() const {
  return static_cast<double>(occupied_count()) * voxel_size_ * voxel_size_ *
         voxel_size_;
}

VoxelGrid init_bounding_volume(const JointSet& joints, int resolution,
                               double padding) {
  joints.validate();
  if (resolution < 8) throw GeometryError("resolution must be >= 8");
  if (!(padding >= 0)) throw GeometryError("padding must be >= 0");
  Vec3 lo = joints[0], hi = joints[0];
  for (const Vec3& j : joints.joints) {
    lo = lo.cwiseMin(j);
    hi = hi.cwiseMax(j);
  }
  const double diag = (hi - lo).norm();
  if (!(diag > 1e-9)) {
    throw GeometryError("joints coincide; bounding volume has zero extent");
  }
  const Vec3 pad = Vec3::Constant(padding * diag);
  lo -= pad;
  hi += pad;
  const Vec3 extent = hi - lo;
  const double voxel = extent.maxCoeff() / resolution;
  std::array<int, 3> dims;
  for (int a = 0; a < 3; ++a) {
    dims[a] = std::max(1, static_cast<int>(std::ceil(extent[a] / voxel - 1e-9)));
  }
  // Center the lattice on the padded box.
  const Vec3 span(dims[0] * voxel, dims[1] * voxel, dims[2] * voxel);
  const Vec3 origin = 0.5 * (lo + hi) - 0.5 * span;
  return VoxelGrid(origin, voxel, dims, true);
}

void carve_in_place(VoxelGrid& grid, const SilhouetteImage& silhouette,
                    const Camera& camera) {
  if (silhouette.width() != camera.width || silhouette.height() != camera.height) {
    throw GeometryError("silhouette and camera resolution disagree");
  }
  const auto& dims = grid.dims();
  const Vec3 c = camera.center();
  const Vec3 axes[3] = {camera.right(), camera.up(), camera.forward()};
  const double f = camera.focal_px();
  const double cx = camera.width * 0.5;
  const double cy = camera.height * 0.5;
  const double s = grid.voxel_size();
  const Vec3 base = grid.origin() + Vec3::Constant(0.5 * s) - c;

  // Camera-space coordinates are affine in (i, j, k); tabulate per axis.
  std::array<std::vector<Vec3>, 3> step;
  for (int a = 0; a < 3; ++a) {
    step[a].resize(dims[a]);
    for (int n = 0; n < dims[a]; ++n) {
      Vec3 d = Vec3::Zero();
      d[a] = n * s;
      step[a][n] = Vec3(axes[0].dot(d), axes[1].dot(d), axes[2].dot(d));
    }
  }
  const Vec3 base_cam(axes[0].dot(base), axes[1].dot(base), axes[2].dot(base));
  auto& occ = grid.occupancy();
  const int w = camera.width;
  const int h = camera.height;
  std::size_t idx = 0;
  for (int k = 0; k < dims[2]; ++k) {
    for (int j = 0; j < dims[1]; ++j) {
      const Vec3 row = base_cam + step[2][k] + step[1][j];
      for (int i = 0; i < dims[0]; ++i, ++idx) {
        if (!occ[idx]) continue;
        const Vec3 p = row + step[0][i];
        bool keep = false;
        if (p.z() > 0) {
          const double px = cx + f * p.x() / p.z();
          const double py = cy - f * p.y() / p.z();
          if (px >= 0 && py >= 0 && px < w && py < h) {
            keep = silhouette.mask(static_cast<int>(px), static_cast<int>(py));
          }
        }
        if (!keep) occ[idx] = 0;
      }
    }
  }
}

VoxelGrid carve(const VoxelGrid& grid, const SilhouetteImage& silhouette,
                const Camera& camera) {
  VoxelGrid out = grid;
  carve_in_place(out, silhouette, camera);
  return out;
}

namespace {

// Exposed voxel faces as unshared quads. Coincident corners are computed by
// the same expression, so shared edges project to identical coordinates.
TriangleMesh exposed_faces(const VoxelGrid& grid) {
  TriangleMesh mesh;
  const auto& d = grid.dims();
  const double s = grid.voxel_size();
  const Vec3& o = grid.origin();
  auto corner = [&](int i, int j, int k) {
    return Vec3(o.x() + s * i, o.y() + s * j, o.z() + s * k);
  };
  auto filled = [&](int i, int j, int k) {
    return i >= 0 && j >= 0 && k >= 0 && i < d[0] && j < d[1] && k < d[2] &&
           grid.occupied(i, j, k);
  };
  auto quad = [&](const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& e) {
    const auto n = static_cast<std::uint32_t>(mesh.vertices.size());
    mesh.vertices.insert(mesh.vertices.end(), {a, b, c, e});
    mesh.triangles.push_back({n, n + 1, n + 2});
    mesh.triangles.push_back({n, n + 2, n + 3});
  };
  grid.for_each([&](int i, int j, int k) {
    if (!grid.occupied(i, j, k)) return;
    if (!filled(i - 1, j, k))
      quad(corner(i, j, k), corner(i, j, k + 1), corner(i, j + 1, k + 1), corner(i, j + 1, k));
    if (!filled(i + 1, j, k))
      quad(corner(i + 1, j, k), corner(i + 1, j + 1, k), corner(i + 1, j + 1, k + 1), corner(i + 1, j, k + 1));
    if (!filled(i, j - 1, k))
      quad(corner(i, j, k), corner(i + 1, j, k), corner(i + 1, j, k + 1), corner(i, j, k + 1));
    if (!filled(i, j + 1, k))
      quad(corner(i, j + 1, k), corner(i, j + 1, k + 1), corner(i + 1, j + 1, k + 1), corner(i + 1, j + 1, k));
    if (!filled(i, j, k - 1))
      quad(corner(i, j, k), corner(i, j + 1, k), corner(i + 1, j + 1, k), corner(i + 1, j, k));
    if (!filled(i, j, k + 1))
      quad(corner(i, j, k + 1), corner(i + 1, j, k + 1), corner(i + 1, j + 1, k + 1), corner(i, j + 1, k + 1));
  });
  return mesh;
}

}  // namespace

SilhouetteImage reproject_hull(const VoxelGrid& grid, const Camera& camera,
                               ReprojectMode mode) {
  SilhouetteImage out(camera.width, camera.height, 0.0f);
  if (grid.voxel_count() == 0) return out;
  if (mode == ReprojectMode::kVoxelFootprint) {
    const TriangleMesh faces = exposed_faces(grid);
    if (faces.triangles.empty()) return out;
    return render_silhouette(faces, camera);
  }
  const Projector proj(camera);
  grid.for_each([&](int i, int j, int k) {
    if (!grid.occupied(i, j, k)) return;
    Vec2 px;
    if (!proj(grid.center(i, j, k), &px)) return;
    if (px.x() < 0 || px.y() < 0 || px.x() >= camera.width ||
        px.y() >= camera.height) {
      return;
    }
    out.at(static_cast<int>(px.x()), static_cast<int>(px.y())) = 1.0f;
  });
  return out;
}

void validate_pool(const CandidatePool& pool) {
  if (pool.size() != static_cast<std::size_t>(kBinCount)) {
    throw GeometryError("candidate pool must have " + std::to_string(kBinCount) +
                        " bins, has " + std::to_string(pool.size()));
  }
  if (pool[0].size() != 1) {
    throw GeometryError("bin 1 must hold exactly the input view");
  }
  const Camera& input = pool[0][0].view.camera;
  for (std::size_t b = 0; b < pool.size(); ++b) {
    if (b > 0 && (pool[b].empty() || pool[b].size() > kCandidatePitches.size())) {
      throw GeometryError("bin " + std::to_string(b + 1) + " must hold 1 to " +
                          std::to_string(kCandidatePitches.size()) +
                          " candidates, has " + std::to_string(pool[b].size()));
    }
    for (const Candidate& c : pool[b]) {
      if (c.silhouette.width() != c.view.camera.width ||
          c.silhouette.height() != c.view.camera.height ||
          c.view.camera.width != input.width ||
          c.view.camera.height != input.height) {
        throw GeometryError("bin " + std::to_string(b + 1) +
                            " has a silhouette/camera size mismatch");
      }
    }
  }
}

GreedyResult greedy_select(const CandidatePool& pool, const JointSet& joints,
                           int resolution, double padding, ReprojectMode mode) {
  validate_pool(pool);
  GreedyResult result;
  result.grid = init_bounding_volume(joints, resolution, padding);
  const Candidate& input = pool[0][0];
  carve_in_place(result.grid, input.silhouette, input.view.camera);
  result.plan.entries.push_back({input.view, input.silhouette, 1.0, {1.0}});

  for (std::size_t b = 1; b < pool.size(); ++b) {
    const auto& bin = pool[b];
    std::vector<double> scores(bin.size());
    std::size_t best = 0;
    for (std::size_t c = 0; c < bin.size(); ++c) {
      const SilhouetteImage hull = reproject_hull(result.grid, bin[c].view.camera, mode);
      scores[c] = iou(bin[c].silhouette, hull);
      // Strict comparison keeps the lowest pitch index on ties.
      if (scores[c] > scores[best]) best = c;
    }
    carve_in_place(result.grid, bin[best].silhouette, bin[best].view.camera);
    result.plan.entries.push_back(
        {bin[best].view, bin[best].silhouette, scores[best], std::move(scores)});
  }
  return result;
}

GreedyResult carve_with_choices(const CandidatePool& pool,
                                const std::vector<int>& choice,
                                const JointSet& joints, int resolution,
                                double padding) {
  validate_pool(pool);
  if (choice.size() != pool.size() || choice[0] != 0) {
    throw GeometryError("choice vector must have one entry per bin, 0 for bin 1");
  }
  GreedyResult result;
  result.grid = init_bounding_volume(joints, resolution, padding);
  for (std::size_t b = 0; b < pool.size(); ++b) {
    if (choice[b] < 0 || static_cast<std::size_t>(choice[b]) >= pool[b].size()) {
      throw GeometryError("choice for bin " + std::to_string(b + 1) + " out of range");
    }
    const Candidate& c = pool[b][choice[b]];
    carve_in_place(result.grid, c.silhouette, c.view.camera);
    result.plan.entries.push_back(
        {c.view, c.silhouette, std::numeric_limits<double>::quiet_NaN(), {}});
  }
  return result;
}

TriangleMesh extract_mesh(const VoxelGrid& grid) {
  const std::size_t occupied = grid.occupied_count();
  if (occupied == 0) throw GeometryError("extract_mesh: grid is empty");
  if (occupied == grid.voxel_count()) {
    throw GeometryError("extract_mesh: grid is fully occupied");
  }
  const auto& d = grid.dims();
  const std::array<int, 3> pd = {d[0] + 2, d[1] + 2, d[2] + 2};
  std::vector<float> field(static_cast<std::size_t>(pd[0]) * pd[1] * pd[2], 0.0f);
  grid.for_each([&](int i, int j, int k) {
    if (grid.occupied(i, j, k)) {
      field[(static_cast<std::size_t>(k + 1) * pd[1] + (j + 1)) * pd[0] + (i + 1)] = 1.0f;
    }
  });
  // Lattice point (0,0,0) of the padded field is the center of voxel (-1,-1,-1).
  const Vec3 origin = grid.origin() - Vec3::Constant(0.5 * grid.voxel_size());
  return marching_cubes(field, pd, origin, grid.voxel_size(), 0.5f);
}

void write_voxel_dump(const VoxelGrid& grid, const std::filesystem::path& path) {
  std::string buf;
  auto put = [&buf](const auto& v) {
    char bytes[sizeof(v)];
    std::memcpy(bytes, &v, sizeof(v));
    buf.append(bytes, sizeof(v));
  };
  for (int a = 0; a < 3; ++a) put(grid.origin()[a]);
  put(grid.voxel_size());
  for (int a = 0; a < 3; ++a) put(static_cast<std::uint32_t>(grid.dims()[a]));
  const auto& occ = grid.occupancy();
  std::string bits((occ.size() + 7) / 8, '\0');
  for (std::size_t i = 0; i < occ.size(); ++i) {
    if (occ[i]) bits[i / 8] = static_cast<char>(bits[i / 8] | (1u << (i % 8)));
  }
  buf += bits;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!out) throw IoError("failed writing " + path.string());
}

VoxelGrid read_voxel_dump(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::string buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  constexpr std::size_t kHeader = 4 * sizeof(double) + 3 * sizeof(std::uint32_t);
  if (buf.size() < kHeader) throw IoError(path.string() + ": truncated header");
  std::size_t pos = 0;
  auto get = [&](auto& v) {
    std::memcpy(&v, buf.data() + pos, sizeof(v));
    pos += sizeof(v);
  };
  Vec3 origin;
  double size;
  std::uint32_t dims[3];
  for (int a = 0; a < 3; ++a) get(origin[a]);
  get(size);
  for (auto& dd : dims) get(dd);
  VoxelGrid grid(origin, size,
                 {static_cast<int>(dims[0]), static_cast<int>(dims[1]),
                  static_cast<int>(dims[2])},
                 false);
  auto& occ = grid.occupancy();
  if (buf.size() != kHeader + (occ.size() + 7) / 8) {
    throw IoError(path.string() + ": occupancy size does not match dims");
  }
  for (std::size_t i = 0; i < occ.size(); ++i) {
    occ[i] = (static_cast<unsigned char>(buf[kHeader + i / 8]) >> (i % 8)) & 1u;
  }
  return grid;
}

nlohmann::json to_json(const ViewPlan& plan) {
  nlohmann::json entries = nlohmann::json::array();
  for (const PlanEntry& e : plan.entries) {
    nlohmann::json j = {{"bin", e.view.bin_index},
                        {"pitch_index", e.view.pitch_index},
                        {"pitch_deg", e.view.camera.pitch_deg},
                        {"camera", to_json(e.view.camera)}};
    j["iou_at_selection"] = std::isnan(e.iou_at_selection)
                                ? nlohmann::json(nullptr)
                                : nlohmann::json(e.iou_at_selection);
    j["candidate_ious"] = e.candidate_ious;
    entries.push_back(std::move(j));
  }
  return {{"entries", entries}};
}

}  // namespace silhull
