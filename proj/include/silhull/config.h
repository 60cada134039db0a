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

#ifndef SILHULL_CONFIG_H_
#define SILHULL_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "silhull/metrics.h"
#include "silhull/perturb.h"
#include "silhull/pipeline.h"

namespace silhull {

// Run configuration shared by the command-line tools.
//
//   {
//     "seed": 7,                          required
//     "subject": "fixture:sphere",        or "fixture:mannequin" or a mesh path
//     "joints": "joints.json",            required for mesh paths
//     "input_view": {"yaw_deg": 20, "pitch_deg": 5, "focal_35mm": 50},
//     "image_size": 256, "fill_ratio": 0.9,
//     "resolution": 128, "padding": 0.3,
//     "perturb": {...},                   optional
//     "voxel_dump": false,
//     "trials": 100, "chamfer_samples": 100000
//   }
//
// Relative paths resolve against the config file's directory. Without
// "input_view" the input camera is drawn from the seed.
struct RunConfig {
  std::uint64_t seed = 0;
  std::string subject;
  std::string joints;
  std::optional<nlohmann::json> input_view;
  int image_size = kDefaultImageSize;
  double fill_ratio = kDefaultFillRatio;
  int resolution = kDefaultResolution;
  double padding = kDefaultPadding;
  std::optional<PerturbConfig> perturb;
  bool voxel_dump = false;
  int trials = 100;
  int chamfer_samples = kDefaultChamferSamples;
  std::filesystem::path base_dir;
  // The document as parsed, after overrides, for echoing into outputs.
  nlohmann::json source;
};

// Throws ConfigError listing every problem found.
RunConfig parse_run_config(const nlohmann::json& j,
                           const std::filesystem::path& base_dir = {});
// `overrides` is merge-patched onto the file's document before parsing.
RunConfig load_run_config(const std::filesystem::path& path,
                          const nlohmann::json& overrides = nlohmann::json::object());

// Sphere of radius 0.5 m centered 1 m above the origin.
inline constexpr double kSphereFixtureRadius = 0.5;
inline constexpr int kSphereFixtureSubdivisions = 5;

// Loads or builds the subject and its joints and places the input camera.
Scene load_scene(const RunConfig& config);

}  // namespace silhull

#endif  // SILHULL_CONFIG_H_
