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

#ifndef SILHULL_PERTURB_H_
#define SILHULL_PERTURB_H_

#include <cstdint>
#include <vector>

#include <nlohmann/json.hpp>

#include "silhull/image.h"
#include "silhull/vhull.h"

namespace silhull {

// Knobs for the silhouette degradation model. Magnitudes are experiment
// settings, not measurements of any real segmentation network.
struct PerturbConfig {
  // Signed morphology radius drawn per silhouette from [min, max] and scaled
  // by severity. Negative erodes, positive dilates.
  int erode_dilate_min_px = -6;
  int erode_dilate_max_px = 3;
  // Peak boundary displacement at severity 1.
  double boundary_noise_amp = 3.0;
  int dropout_blob_count = 1;
  double dropout_blob_radius_px = 10.0;
  // Per-candidate severities are drawn from this range, except one
  // designated candidate per bin which gets low_severity.
  double severity_min = 0.4;
  double severity_max = 1.0;
  double low_severity = 0.05;
  // Optional explicit severities, one per non-input candidate in bin order
  // (bins 2..12, pitch 0..4). Overrides the drawn values when non-empty.
  std::vector<double> severity_per_view;
  std::uint64_t seed = 0;

  // Throws ConfigError listing every violated constraint.
  void validate() const;
};

// Morphology + low-frequency boundary displacement + dropout blobs, all
// scaled by severity. Severity 0 returns the input unchanged. Output is
// binary and a pure function of (sil, severity, seed, config).
SilhouetteImage perturb_silhouette(const SilhouetteImage& sil, double severity,
                                   std::uint64_t seed,
                                   const PerturbConfig& config = {});

// Signed Euclidean distance in pixels between pixel centers: positive
// inside mask (distance to the nearest background pixel), negative outside.
std::vector<double> signed_distance(const SilhouetteImage& sil);

SilhouetteImage erode(const SilhouetteImage& sil, double radius_px);
SilhouetteImage dilate(const SilhouetteImage& sil, double radius_px);

struct SeverityAssignment {
  // severities[b][p] for bin b+2 and pitch index p.
  std::vector<std::vector<double>> severities;
  // Index of the designated low-severity candidate in each bin.
  std::vector<int> designated;
};

SeverityAssignment assign_severities(const PerturbConfig& config);

// Perturbs every non-input candidate of the pool in place. Bin 1 is left
// untouched.
void perturb_pool(CandidatePool& pool, const PerturbConfig& config);

nlohmann::json to_json(const PerturbConfig& config);
PerturbConfig perturb_config_from_json(const nlohmann::json& j);

}  // namespace silhull

#endif  // SILHULL_PERTURB_H_
