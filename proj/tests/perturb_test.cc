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

#include "silhull/perturb.h"

#include <cmath>
#include <numbers>
#include <string>

#include <gtest/gtest.h>

#include "silhull/error.h"
#include "silhull/fixtures.h"
#include "silhull/metrics.h"
#include "silhull/raster.h"

namespace silhull {
namespace {

SilhouetteImage disk(int size, double cx, double cy, double r) {
  SilhouetteImage s(size, size);
  for (int y = 0; y < size; ++y)
    for (int x = 0; x < size; ++x)
      if (std::hypot(x + 0.5 - cx, y + 0.5 - cy) < r) s.at(x, y) = 1.0f;
  return s;
}

double area_radius(const SilhouetteImage& s) {
  return std::sqrt(static_cast<double>(s.mask_count()) / std::numbers::pi);
}

PerturbConfig erosion_only(int radius) {
  PerturbConfig c;
  c.erode_dilate_min_px = -radius;
  c.erode_dilate_max_px = -radius;
  c.boundary_noise_amp = 0;
  c.dropout_blob_count = 0;
  return c;
}

TEST(SignedDistanceTest, SinglePixelAndLine) {
  SilhouetteImage s(9, 9);
  s.at(4, 4) = 1.0f;
  const auto sd = signed_distance(s);
  EXPECT_EQ(sd[4 * 9 + 4], 1.0);
  EXPECT_EQ(sd[4 * 9 + 5], -1.0);
  EXPECT_DOUBLE_EQ(sd[6 * 9 + 6], -std::sqrt(8.0));
  EXPECT_DOUBLE_EQ(sd[0], -std::sqrt(32.0));
}

TEST(SignedDistanceTest, MatchesBruteForce) {
  const SilhouetteImage s = disk(40, 17.3, 21.9, 11.2);
  const auto sd = signed_distance(s);
  for (int y = 0; y < 40; ++y) {
    for (int x = 0; x < 40; ++x) {
      double best = 1e300;
      for (int v = 0; v < 40; ++v)
        for (int u = 0; u < 40; ++u)
          if (s.mask(u, v) != s.mask(x, y)) best = std::min(best, std::hypot(u - x, v - y));
      const double expected = s.mask(x, y) ? best : -best;
      ASSERT_NEAR(sd[y * 40 + x], expected, 1e-12) << x << "," << y;
    }
  }
}

TEST(MorphologyTest, DiskRadiusShrinksAndGrows) {
  const SilhouetteImage d = disk(200, 100, 100, 50);
  EXPECT_NEAR(area_radius(erode(d, 5)), 45.0, 1.0);
  EXPECT_NEAR(area_radius(dilate(d, 5)), 55.0, 1.0);
  EXPECT_EQ(erode(d, 0), d);
  EXPECT_EQ(dilate(d, 0), d);
}

TEST(PerturbTest, SeverityZeroIsIdentity) {
  const SilhouetteImage d = disk(128, 60, 70, 30);
  EXPECT_EQ(perturb_silhouette(d, 0.0, 123), d);
}

TEST(PerturbTest, ErosionOnlyAtFullSeverity) {
  const SilhouetteImage d = disk(200, 100, 100, 50);
  const SilhouetteImage out = perturb_silhouette(d, 1.0, 7, erosion_only(5));
  EXPECT_NEAR(area_radius(out), 45.0, 1.0);
  // Still a disk: every kept pixel lies within 46 px of the center.
  for (int y = 0; y < 200; ++y)
    for (int x = 0; x < 200; ++x)
      if (out.mask(x, y)) ASSERT_LT(std::hypot(x + 0.5 - 100, y + 0.5 - 100), 46.0);
}

TEST(PerturbTest, DeterministicAndBinary) {
  const SilhouetteImage d = disk(128, 64, 64, 40);
  PerturbConfig c;
  const SilhouetteImage a = perturb_silhouette(d, 0.8, 99, c);
  EXPECT_EQ(a, perturb_silhouette(d, 0.8, 99, c));
  EXPECT_NE(a, perturb_silhouette(d, 0.8, 100, c));
  EXPECT_TRUE(a.is_binary());
}

TEST(PerturbTest, DegradationIsMonotoneInSeverity) {
  const SilhouetteImage d = disk(128, 64, 60, 35);
  PerturbConfig c;
  double previous = 1.0;
  for (double severity : {0.0, 0.1, 0.25, 0.4, 0.6, 0.8, 1.0}) {
    double mean = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const SilhouetteImage p = perturb_silhouette(d, severity, seed, c);
      ASSERT_TRUE(p.is_binary());
      mean += iou(d, p) / 20.0;
    }
    EXPECT_LE(mean, previous + 1e-12) << "severity " << severity;
    previous = mean;
  }
  EXPECT_LT(previous, 0.95);
}

TEST(PerturbTest, SeverityOutOfRangeThrows) {
  const SilhouetteImage d = disk(32, 16, 16, 8);
  EXPECT_THROW(perturb_silhouette(d, 1.5, 0), ConfigError);
  EXPECT_THROW(perturb_silhouette(d, -0.1, 0), ConfigError);
}

TEST(PerturbConfigTest, ValidateListsEveryProblem) {
  PerturbConfig c;
  c.erode_dilate_min_px = 4;
  c.erode_dilate_max_px = 1;
  c.boundary_noise_amp = -1;
  c.low_severity = 2;
  c.severity_per_view = {0.5, 0.5};
  try {
    c.validate();
    FAIL();
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    for (const char* key : {"erode_dilate_px", "boundary_noise_amp", "low_severity",
                            "severity_per_view"}) {
      EXPECT_NE(msg.find(key), std::string::npos) << key << " missing in " << msg;
    }
  }
}

TEST(PerturbConfigTest, JsonRoundTripAndErrors) {
  PerturbConfig c;
  c.seed = 42;
  c.erode_dilate_min_px = -4;
  c.boundary_noise_amp = 2.5;
  const PerturbConfig back = perturb_config_from_json(to_json(c));
  EXPECT_EQ(to_json(back), to_json(c));
  const nlohmann::json bad = {{"seed", -1}, {"boundary_noise_amp", "loud"}, {"colour", 1}};
  try {
    perturb_config_from_json(bad);
    FAIL();
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("seed"), std::string::npos);
    EXPECT_NE(msg.find("boundary_noise_amp"), std::string::npos);
    EXPECT_NE(msg.find("colour"), std::string::npos);
  }
}

TEST(SeverityTest, OneDesignatedLowCandidatePerBin) {
  PerturbConfig c;
  c.seed = 5;
  const SeverityAssignment a = assign_severities(c);
  ASSERT_EQ(a.severities.size(), 11u);
  for (std::size_t b = 0; b < a.severities.size(); ++b) {
    ASSERT_EQ(a.severities[b].size(), 5u);
    for (int p = 0; p < 5; ++p) {
      if (p == a.designated[b]) {
        EXPECT_EQ(a.severities[b][p], c.low_severity);
      } else {
        EXPECT_GE(a.severities[b][p], c.severity_min);
        EXPECT_LE(a.severities[b][p], c.severity_max);
      }
    }
  }
  EXPECT_EQ(assign_severities(c).severities, a.severities);
}

TEST(SeverityTest, ExplicitSeveritiesOverride) {
  PerturbConfig c;
  for (int i = 0; i < kCandidateCount; ++i) c.severity_per_view.push_back(((i * 7) % 11) / 10.0);
  const SeverityAssignment a = assign_severities(c);
  for (int b = 0; b < 11; ++b) {
    for (int p = 0; p < 5; ++p) EXPECT_EQ(a.severities[b][p], c.severity_per_view[b * 5 + p]);
    EXPECT_EQ(a.severities[b][a.designated[b]],
              *std::min_element(a.severities[b].begin(), a.severities[b].end()));
  }
}

TEST(PerturbPoolTest, InputUntouchedOthersPerturbed) {
  const TriangleMesh sphere = make_sphere(Vec3::Zero(), 0.5, 3);
  const Camera input = frame_subject(sphere_joints(Vec3::Zero(), 0.5), 10, 5, 50, 96, 96);
  CandidatePool pool(kBinCount);
  for (const CandidateView& v : candidate_views(input)) {
    pool[v.bin_index - 1].push_back({v, render_silhouette(sphere, v.camera)});
  }
  const CandidatePool original = pool;
  PerturbConfig c;
  c.seed = 3;
  perturb_pool(pool, c);
  EXPECT_EQ(pool[0][0].silhouette, original[0][0].silhouette);
  const SeverityAssignment sev = assign_severities(c);
  for (int b = 1; b < kBinCount; ++b) {
    const int low = sev.designated[b - 1];
    double low_iou = iou(pool[b][low].silhouette, original[b][low].silhouette);
    double mean_other = 0;
    for (int p = 0; p < 5; ++p) {
      if (p != low) mean_other += iou(pool[b][p].silhouette, original[b][p].silhouette) / 4;
    }
    EXPECT_GT(low_iou, mean_other) << "bin " << b + 1;
  }
}

}  // namespace
}  // namespace silhull
