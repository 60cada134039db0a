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

#ifndef SILHULL_EXPERIMENT_H_
#define SILHULL_EXPERIMENT_H_

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "silhull/metrics.h"
#include "silhull/pipeline.h"

namespace silhull {

struct GreedyVsRandomOptions {
  int trials = 100;
  int resolution = kDefaultResolution;
  double padding = kDefaultPadding;
  int chamfer_samples = kDefaultChamferSamples;
  PerturbConfig perturb;
  std::uint64_t seed = 0;
};

struct RandomStats {
  double mean = 0, median = 0, min = 0, max = 0;
  std::vector<double> values;
};

struct GreedyVsRandomReport {
  double greedy_chamfer_cm = 0;
  RandomStats random;
  // Fraction of random trials with a strictly larger Chamfer than greedy.
  double beat_fraction = 0;
  std::vector<int> greedy_choice;  // per bin, pitch index
  nlohmann::json config_echo;
};

RandomStats summarize(std::vector<double> values);

// Greedy plan against `trials` uniformly random per-bin choices over the
// same (perturbed) candidate pool. Random choices and Chamfer sampling are
// seeded from options.seed.
GreedyVsRandomReport greedy_vs_random(const Scene& scene,
                                      const GreedyVsRandomOptions& options);

nlohmann::json to_json(const GreedyVsRandomReport& report);
// One row per random trial: trial,chamfer_cm.
std::string to_csv(const GreedyVsRandomReport& report);

}  // namespace silhull

#endif  // SILHULL_EXPERIMENT_H_
