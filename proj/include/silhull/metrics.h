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

#ifndef SILHULL_METRICS_H_
#define SILHULL_METRICS_H_

#include <cstdint>
#include <memory>
#include <vector>

#include "silhull/image.h"
#include "silhull/mesh.h"

namespace silhull {

inline constexpr int kDefaultChamferSamples = 100000;

// |A & B| / |A | B| over mask(); 1 when both masks are empty. Throws
// GeometryError on a size mismatch.
double iou(const SilhouetteImage& a, const SilhouetteImage& b);

// Closest point on triangle (a, b, c) to p.
Vec3 closest_point_on_triangle(const Vec3& p, const Vec3& a, const Vec3& b,
                               const Vec3& c);

// Bounding volume hierarchy over a mesh's triangles for exact
// point-to-surface distance queries. Immutable once built.
class TriangleBvh {
 public:
  explicit TriangleBvh(const TriangleMesh& mesh);
  ~TriangleBvh();
  TriangleBvh(TriangleBvh&&) noexcept;
  TriangleBvh& operator=(TriangleBvh&&) noexcept;

  double distance(const Vec3& p) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Area-weighted uniform samples on the surface.
std::vector<Vec3> sample_surface(const TriangleMesh& mesh, int count,
                                 std::uint64_t seed);

// Symmetric Chamfer distance in centimeters: the two directed means of exact
// sample-to-surface distances, averaged. Both meshes are sampled with the
// same seed, so swapping the arguments gives a bit-identical result.
// Throws GeometryError for empty meshes or samples < 1.
double chamfer(const TriangleMesh& a, const TriangleMesh& b,
               int samples = kDefaultChamferSamples, std::uint64_t seed = 0);

// Caches samples and the BVH of a fixed reference mesh so many candidates
// can be scored against it.
class ChamferReference {
 public:
  ChamferReference(const TriangleMesh& reference, int samples,
                   std::uint64_t seed);
  // Same quantity as chamfer(candidate, reference, samples, seed).
  double chamfer_cm(const TriangleMesh& candidate) const;
  const std::vector<Vec3>& samples() const { return samples_; }

 private:
  TriangleBvh bvh_;
  std::vector<Vec3> samples_;
  int sample_count_;
  std::uint64_t seed_;
};

}  // namespace silhull

#endif  // SILHULL_METRICS_H_
