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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>


#include "silhull/random.h"

namespace silhull {

double iou(const SilhouetteImage& a, const SilhouetteImage& b) {
  if (a.width() != b.width() || a.height() != b.height()) {
    throw GeometryError("iou: image sizes differ");
  }
  std::size_t inter = 0, uni = 0;
  const auto& va = a.values();
  const auto& vb = b.values();
  for (std::size_t i = 0; i < va.size(); ++i) {
    const bool ma = va[i] >= 0.5f;
    const bool mb = vb[i] >= 0.5f;
    inter += ma && mb;
    uni += ma || mb;
  }
  if (uni == 0) return 1.0;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

// Voronoi-region walk from Ericson, Real-Time Collision Detection 5.1.5.
Vec3 closest_point_on_triangle(const Vec3& p, const Vec3& a, const Vec3& b,
                               const Vec3& c) {
  const Vec3 ab = b - a, ac = c - a, ap = p - a;
  const double d1 = ab.dot(ap), d2 = ac.dot(ap);
  if (d1 <= 0 && d2 <= 0) return a;
  const Vec3 bp = p - b;
  const double d3 = ab.dot(bp), d4 = ac.dot(bp);
  if (d3 >= 0 && d4 <= d3) return b;
  const double vc = d1 * d4 - d3 * d2;
  if (vc <= 0 && d1 >= 0 && d3 <= 0) return a + (d1 / (d1 - d3)) * ab;
  const Vec3 cp = p - c;
  const double d5 = ab.dot(cp), d6 = ac.dot(cp);
  if (d6 >= 0 && d5 <= d6) return c;
  const double vb = d5 * d2 - d1 * d6;
  if (vb <= 0 && d2 >= 0 && d6 <= 0) return a + (d2 / (d2 - d6)) * ac;
  const double va = d3 * d6 - d5 * d4;
  if (va <= 0 && (d4 - d3) >= 0 && (d5 - d6) >= 0) {
    return b + ((d4 - d3) / ((d4 - d3) + (d5 - d6))) * (c - b);
  }
  const double denom = 1.0 / (va + vb + vc);
  return a + ab * (vb * denom) + ac * (vc * denom);
}

struct TriangleBvh::Impl {
  struct Node {
    Eigen::AlignedBox3d box;
    int left = -1, right = -1;   // children, -1 for leaves
    int first = 0, count = 0;    // triangle range for leaves
  };
  std::vector<Node> nodes;
  std::vector<std::array<Vec3, 3>> tris;

  int build(std::vector<int>& order, std::vector<Vec3>& centroids, int first,
            int count) {
    Node node;
    for (int n = first; n < first + count; ++n) {
      for (const Vec3& v : tris[order[n]]) node.box.extend(v);
    }
    const int id = static_cast<int>(nodes.size());
    nodes.push_back(node);
    if (count <= 4) {
      nodes[id].first = first;
      nodes[id].count = count;
      return id;
    }
    Eigen::AlignedBox3d cbox;
    for (int n = first; n < first + count; ++n) cbox.extend(centroids[order[n]]);
    int axis;
    cbox.sizes().maxCoeff(&axis);
    const int mid = first + count / 2;
    std::nth_element(order.begin() + first, order.begin() + mid,
                     order.begin() + first + count, [&](int x, int y) {
                       if (centroids[x][axis] != centroids[y][axis])
                         return centroids[x][axis] < centroids[y][axis];
                       return x < y;
                     });
    const int l = build(order, centroids, first, mid - first);
    const int r = build(order, centroids, mid, first + count - mid);
    nodes[id].left = l;
    nodes[id].right = r;
    return id;
  }
};

TriangleBvh::TriangleBvh(const TriangleMesh& mesh) : impl_(std::make_unique<Impl>()) {
  if (mesh.triangles.empty()) throw GeometryError("BVH over an empty mesh");
  const int n = static_cast<int>(mesh.triangles.size());
  impl_->tris.reserve(n);
  std::vector<Vec3> centroids;
  centroids.reserve(n);
  for (const Triangle& t : mesh.triangles) {
    impl_->tris.push_back({mesh.vertices[t[0]], mesh.vertices[t[1]], mesh.vertices[t[2]]});
    centroids.push_back((mesh.vertices[t[0]] + mesh.vertices[t[1]] + mesh.vertices[t[2]]) / 3.0);
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  impl_->nodes.reserve(2 * n / 4 + 2);
  impl_->build(order, centroids, 0, n);
  // Reorder triangles to leaf order so leaves index contiguous ranges.
  std::vector<std::array<Vec3, 3>> sorted(n);
  for (int i = 0; i < n; ++i) sorted[i] = impl_->tris[order[i]];
  impl_->tris = std::move(sorted);
}

TriangleBvh::~TriangleBvh() = default;
TriangleBvh::TriangleBvh(TriangleBvh&&) noexcept = default;
TriangleBvh& TriangleBvh::operator=(TriangleBvh&&) noexcept = default;

double TriangleBvh::distance(const Vec3& p) const {
  const auto& nodes = impl_->nodes;
  const auto& tris = impl_->tris;
  double best = std::numeric_limits<double>::infinity();
  int stack[64];
  int top = 0;
  stack[top++] = 0;
  while (top > 0) {
    const auto& node = nodes[stack[--top]];
    if (node.box.squaredExteriorDistance(p) >= best) continue;
    if (node.left < 0) {
      for (int t = node.first; t < node.first + node.count; ++t) {
        const auto& tri = tris[t];
        const double d = (closest_point_on_triangle(p, tri[0], tri[1], tri[2]) - p).squaredNorm();
        best = std::min(best, d);
      }
      continue;
    }
    const double dl = nodes[node.left].box.squaredExteriorDistance(p);
    const double dr = nodes[node.right].box.squaredExteriorDistance(p);
    // Push the farther child first so the nearer one is visited next.
    if (dl < dr) {
      if (dr < best) stack[top++] = node.right;
      if (dl < best) stack[top++] = node.left;
    } else {
      if (dl < best) stack[top++] = node.left;
      if (dr < best) stack[top++] = node.right;
    }
  }
  return std::sqrt(best);
}

std::vector<Vec3> sample_surface(const TriangleMesh& mesh, int count,
                                 std::uint64_t seed) {
  if (mesh.triangles.empty()) throw GeometryError("cannot sample an empty mesh");
  std::vector<double> cdf(mesh.triangles.size());
  double total = 0;
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
    const auto& tri = mesh.triangles[t];
    const Vec3& a = mesh.vertices[tri[0]];
    total += 0.5 * (mesh.vertices[tri[1]] - a).cross(mesh.vertices[tri[2]] - a).norm();
    cdf[t] = total;
  }
  if (!(total > 0)) throw GeometryError("cannot sample a zero-area mesh");
  Rng rng(seed);
  std::vector<Vec3> out;
  out.reserve(count);
  for (int s = 0; s < count; ++s) {
    const double u = rng.uniform() * total;
    std::size_t t = static_cast<std::size_t>(
        std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    t = std::min(t, cdf.size() - 1);
    const auto& tri = mesh.triangles[t];
    const double r1 = std::sqrt(rng.uniform());
    const double r2 = rng.uniform();
    out.push_back((1 - r1) * mesh.vertices[tri[0]] +
                  r1 * (1 - r2) * mesh.vertices[tri[1]] +
                  r1 * r2 * mesh.vertices[tri[2]]);
  }
  return out;
}

namespace {

double mean_distance(const std::vector<Vec3>& points, const TriangleBvh& bvh) {
  double sum = 0;
  for (const Vec3& p : points) sum += bvh.distance(p);
  return sum / static_cast<double>(points.size());
}

void check_chamfer_inputs(const TriangleMesh& m, int samples) {
  if (m.empty() || m.triangles.empty()) throw GeometryError("chamfer: empty mesh");
  if (samples < 1) throw GeometryError("chamfer: samples must be >= 1");
}

}  // namespace

double chamfer(const TriangleMesh& a, const TriangleMesh& b, int samples,
               std::uint64_t seed) {
  check_chamfer_inputs(a, samples);
  check_chamfer_inputs(b, samples);
  const TriangleBvh bvh_a(a), bvh_b(b);
  const double ab = mean_distance(sample_surface(a, samples, seed), bvh_b);
  const double ba = mean_distance(sample_surface(b, samples, seed), bvh_a);
  return 0.5 * (ab + ba) * 100.0;
}

ChamferReference::ChamferReference(const TriangleMesh& reference, int samples,
                                   std::uint64_t seed)
    : bvh_((check_chamfer_inputs(reference, samples), reference)),
      samples_(sample_surface(reference, samples, seed)),
      sample_count_(samples),
      seed_(seed) {}

double ChamferReference::chamfer_cm(const TriangleMesh& candidate) const {
  check_chamfer_inputs(candidate, sample_count_);
  const TriangleBvh bvh_c(candidate);
  const double cr = mean_distance(sample_surface(candidate, sample_count_, seed_), bvh_);
  const double rc = mean_distance(samples_, bvh_c);
  return 0.5 * (cr + rc) * 100.0;
}

}  // namespace silhull
