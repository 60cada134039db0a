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

#include "silhull/experiment.h"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "silhull/error.h"
#include "silhull/metrics.h"
#include "silhull/random.h"

namespace silhull {

RandomStats summarize(std::vector<double> values) {
  RandomStats s;
  if (values.empty()) return s;
  s.values = values;
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  s.min = values.front();
  s.max = values.back();
  s.median = n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
  // Summed in trial order so the mean does not depend on the sort.
  s.mean = std::accumulate(s.values.begin(), s.values.end(), 0.0) / n;
  return s;
}

GreedyVsRandomReport greedy_vs_random(const Scene& scene,
                                      const GreedyVsRandomOptions& options) {
  if (options.trials < 1) throw ConfigError("trials must be >= 1");
  if (options.chamfer_samples < 1) throw ConfigError("chamfer_samples must be >= 1");
  options.perturb.validate();

  const CandidatePool pool = build_candidate_pool(scene, options.perturb);
  const std::uint64_t chamfer_seed = mix_seed(options.seed, 0xc4a3);
  const ChamferReference reference(scene.subject, options.chamfer_samples,
                                   chamfer_seed);

  GreedyVsRandomReport report;
  const GreedyResult greedy = greedy_select(pool, scene.joints,
                                            options.resolution, options.padding);
  report.greedy_chamfer_cm = reference.chamfer_cm(extract_mesh(greedy.grid));
  for (const PlanEntry& e : greedy.plan.entries) {
    report.greedy_choice.push_back(e.view.pitch_index);
  }

  Rng rng(mix_seed(options.seed, 0x7a4d));
  std::vector<double> values;
  values.reserve(options.trials);
  std::vector<int> choice(pool.size(), 0);
  int beaten = 0;
  for (int t = 0; t < options.trials; ++t) {
    for (std::size_t b = 1; b < pool.size(); ++b) {
      choice[b] = static_cast<int>(rng.below(pool[b].size()));
    }
    const GreedyResult r = carve_with_choices(pool, choice, scene.joints,
                                              options.resolution, options.padding);
    const double cd = reference.chamfer_cm(extract_mesh(r.grid));
    values.push_back(cd);
    if (cd > report.greedy_chamfer_cm) ++beaten;
  }
  report.random = summarize(std::move(values));
  report.beat_fraction = static_cast<double>(beaten) / options.trials;
  report.config_echo = {{"trials", options.trials},
                        {"resolution", options.resolution},
                        {"padding", options.padding},
                        {"chamfer_samples", options.chamfer_samples},
                        {"seed", options.seed},
                        {"perturb", to_json(options.perturb)},
                        {"input_camera", to_json(scene.input_camera)}};
  return report;
}

nlohmann::json to_json(const GreedyVsRandomReport& r) {
  return {{"greedy_chamfer_cm", r.greedy_chamfer_cm},
          {"random",
           {{"mean", r.random.mean},
            {"median", r.random.median},
            {"min", r.random.min},
            {"max", r.random.max},
            {"values", r.random.values}}},
          {"beat_fraction", r.beat_fraction},
          {"greedy_choice", r.greedy_choice},
          {"config_echo", r.config_echo}};
}

std::string to_csv(const GreedyVsRandomReport& r) {
  std::ostringstream os;
  os.precision(17);
  os << "trial,chamfer_cm\n";
  for (std::size_t i = 0; i < r.random.values.size(); ++i) {
    os << i << ',' << r.random.values[i] << '\n';
  }
  return os.str();
}

}  // namespace silhull
