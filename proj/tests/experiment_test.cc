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

#include <sstream>

#include <gtest/gtest.h>

#include "silhull/error.h"
#include "silhull/fixtures.h"

namespace silhull {
namespace {

Scene small_scene() {
  Scene s;
  s.subject = make_sphere(Vec3(0, 1, 0), 0.5, 3);
  s.joints = sphere_joints(Vec3(0, 1, 0), 0.5);
  s.input_camera = frame_subject(s.joints, 15.0, 0.0, 50.0, 96, 96);
  return s;
}

GreedyVsRandomOptions small_options() {
  GreedyVsRandomOptions o;
  o.trials = 6;
  o.resolution = 24;
  o.chamfer_samples = 2000;
  o.seed = 4;
  o.perturb.seed = 9;
  return o;
}

TEST(SummarizeTest, OddAndEven) {
  const RandomStats odd = summarize({3, 1, 2});
  EXPECT_EQ(odd.median, 2);
  EXPECT_EQ(odd.min, 1);
  EXPECT_EQ(odd.max, 3);
  EXPECT_EQ(odd.mean, 2);
  EXPECT_EQ(odd.values, (std::vector<double>{3, 1, 2}));
  EXPECT_EQ(summarize({4, 1, 2, 3}).median, 2.5);
}

TEST(GreedyVsRandomTest, ReportIsConsistent) {
  const GreedyVsRandomReport r = greedy_vs_random(small_scene(), small_options());
  ASSERT_EQ(r.random.values.size(), 6u);
  EXPECT_EQ(r.greedy_choice.size(), static_cast<std::size_t>(kBinCount));
  EXPECT_EQ(r.greedy_choice[0], 0);
  int beaten = 0;
  for (double v : r.random.values) {
    EXPECT_GE(v, r.random.min);
    EXPECT_LE(v, r.random.max);
    if (v > r.greedy_chamfer_cm) ++beaten;
  }
  EXPECT_DOUBLE_EQ(r.beat_fraction, beaten / 6.0);
  EXPECT_GT(r.greedy_chamfer_cm, 0.0);
  EXPECT_EQ(r.config_echo["trials"], 6);
  EXPECT_EQ(r.config_echo["perturb"]["seed"], 9);
}

TEST(GreedyVsRandomTest, DeterministicPerSeed) {
  const auto a = greedy_vs_random(small_scene(), small_options());
  const auto b = greedy_vs_random(small_scene(), small_options());
  EXPECT_EQ(to_json(a).dump(), to_json(b).dump());
  EXPECT_EQ(to_csv(a), to_csv(b));
}

TEST(GreedyVsRandomTest, CsvHasOneRowPerTrial) {
  const auto r = greedy_vs_random(small_scene(), small_options());
  std::istringstream in(to_csv(r));
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "trial,chamfer_cm");
  int rows = 0;
  while (std::getline(in, line)) {
    const auto comma = line.find(',');
    ASSERT_NE(comma, std::string::npos);
    EXPECT_EQ(std::stoi(line.substr(0, comma)), rows);
    EXPECT_EQ(std::stod(line.substr(comma + 1)), r.random.values[rows]);
    ++rows;
  }
  EXPECT_EQ(rows, 6);
}

TEST(GreedyVsRandomTest, JsonFieldsRoundTrip) {
  const auto r = greedy_vs_random(small_scene(), small_options());
  const nlohmann::json j = nlohmann::json::parse(to_json(r).dump());
  EXPECT_EQ(j["greedy_chamfer_cm"].get<double>(), r.greedy_chamfer_cm);
  EXPECT_EQ(j["random"]["values"].size(), 6u);
  EXPECT_EQ(j["random"]["median"].get<double>(), r.random.median);
}

TEST(GreedyVsRandomTest, RejectsBadOptions) {
  GreedyVsRandomOptions o = small_options();
  o.trials = 0;
  EXPECT_THROW(greedy_vs_random(small_scene(), o), ConfigError);
  o = small_options();
  o.perturb.severity_min = 2.0;
  EXPECT_THROW(greedy_vs_random(small_scene(), o), ConfigError);
}

}  // namespace
}  // namespace silhull
