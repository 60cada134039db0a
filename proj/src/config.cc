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

#include "silhull/config.h"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <vector>

#include "silhull/error.h"
#include "silhull/fixtures.h"
#include "silhull/mesh_io.h"
#include "silhull/random.h"

namespace silhull {

namespace {

constexpr const char* kKnownKeys[] = {
    "seed",       "subject",    "joints",  "input_view",
    "image_size", "fill_ratio", "resolution", "padding",
    "perturb",    "voxel_dump", "trials",  "chamfer_samples"};

}  // namespace

RunConfig parse_run_config(const nlohmann::json& j,
                           const std::filesystem::path& base_dir) {
  if (!j.is_object()) throw ConfigError("config: expected a JSON object");
  RunConfig c;
  c.base_dir = base_dir;
  c.source = j;
  std::vector<std::string> errors;
  for (const auto& [key, value] : j.items()) {
    if (std::find_if(std::begin(kKnownKeys), std::end(kKnownKeys),
                     [&](const char* k) { return key == k; }) == std::end(kKnownKeys)) {
      errors.push_back(key + ": unknown key");
    }
  }

  if (!j.contains("seed")) {
    errors.push_back("seed: required");
  } else if (!(j["seed"].is_number_unsigned() ||
               (j["seed"].is_number_integer() && j["seed"].get<std::int64_t>() >= 0))) {
    errors.push_back("seed: expected a non-negative integer");
  } else {
    c.seed = j["seed"].get<std::uint64_t>();
  }

  if (!j.contains("subject") || !j["subject"].is_string()) {
    errors.push_back("subject: required string");
  } else {
    c.subject = j["subject"].get<std::string>();
  }
  const bool fixture = c.subject.rfind("fixture:", 0) == 0;
  if (fixture && c.subject != "fixture:sphere" && c.subject != "fixture:mannequin") {
    errors.push_back("subject: unknown fixture '" + c.subject + "'");
  }
  if (j.contains("joints")) {
    if (!j["joints"].is_string()) {
      errors.push_back("joints: expected a path");
    } else {
      c.joints = j["joints"].get<std::string>();
    }
  } else if (!fixture && !c.subject.empty()) {
    errors.push_back("joints: required for mesh subjects");
  }

  if (j.contains("input_view")) {
    const auto& v = j["input_view"];
    if (!v.is_object()) {
      errors.push_back("input_view: expected an object");
    } else {
      for (const char* k : {"yaw_deg", "pitch_deg", "focal_35mm"}) {
        if (!v.contains(k) || !v[k].is_number()) {
          errors.push_back(std::string("input_view.") + k + ": required number");
        }
      }
      for (const auto& [key, value] : v.items()) {
        if (key != "yaw_deg" && key != "pitch_deg" && key != "focal_35mm") {
          errors.push_back("input_view." + key + ": unknown key");
        }
      }
      c.input_view = v;
    }
  }

  auto integer = [&](const char* key, int& out, int min) {
    if (!j.contains(key)) return;
    if (!j[key].is_number_integer()) {
      errors.push_back(std::string(key) + ": expected an integer");
      return;
    }
    const auto v = j[key].get<std::int64_t>();
    if (v < min || v > 1 << 20) {
      errors.push_back(std::string(key) + ": must be >= " + std::to_string(min));
      return;
    }
    out = static_cast<int>(v);
  };
  auto number = [&](const char* key, double& out) {
    if (!j.contains(key)) return;
    if (!j[key].is_number()) {
      errors.push_back(std::string(key) + ": expected a number");
      return;
    }
    out = j[key].get<double>();
  };
  integer("image_size", c.image_size, 8);
  integer("resolution", c.resolution, 8);
  integer("trials", c.trials, 1);
  integer("chamfer_samples", c.chamfer_samples, 1);
  number("fill_ratio", c.fill_ratio);
  number("padding", c.padding);
  if (!(c.fill_ratio > 0 && c.fill_ratio <= 1)) {
    errors.push_back("fill_ratio: must lie in (0, 1]");
  }
  if (!(c.padding >= 0)) errors.push_back("padding: must be >= 0");
  if (j.contains("voxel_dump")) {
    if (!j["voxel_dump"].is_boolean()) {
      errors.push_back("voxel_dump: expected a boolean");
    } else {
      c.voxel_dump = j["voxel_dump"].get<bool>();
    }
  }
  if (j.contains("perturb")) {
    try {
      c.perturb = perturb_config_from_json(j["perturb"]);
    } catch (const ConfigError& e) {
      std::string msg = e.what();
      std::size_t pos = 0;
      bool any = false;
      while ((pos = msg.find("\n  - ", pos)) != std::string::npos) {
        pos += 5;
        const std::size_t end = msg.find('\n', pos);
        errors.push_back(msg.substr(pos, end - pos));
        any = true;
      }
      if (!any) errors.push_back(msg);
    }
  }

  if (!errors.empty()) {
    std::string msg = "invalid config:";
    for (const auto& e : errors) msg += "\n  - " + e;
    throw ConfigError(msg);
  }
  return c;
}

RunConfig load_run_config(const std::filesystem::path& path,
                          const nlohmann::json& overrides) {
  std::ifstream in(path);
  if (!in) throw IoError(path.string() + ": cannot open config");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  if (j.is_object() && overrides.is_object()) j.merge_patch(overrides);
  return parse_run_config(j, path.parent_path());
}

Scene load_scene(const RunConfig& config) {
  Scene scene;
  auto resolve = [&](const std::string& p) {
    const std::filesystem::path fp(p);
    return fp.is_absolute() ? fp : config.base_dir / fp;
  };
  if (config.subject == "fixture:sphere") {
    const Vec3 c(0.0, 1.0, 0.0);
    scene.subject = make_sphere(c, kSphereFixtureRadius, kSphereFixtureSubdivisions);
    scene.joints = sphere_joints(c, kSphereFixtureRadius);
  } else if (config.subject == "fixture:mannequin") {
    scene.subject = make_mannequin();
    scene.joints = tpose_joints();
  } else {
    scene.subject = load_mesh(resolve(config.subject));
  }
  if (!config.joints.empty()) scene.joints = load_joints(resolve(config.joints));

  if (config.input_view) {
    const auto& v = *config.input_view;
    scene.input_camera = frame_subject(
        scene.joints, v["yaw_deg"].get<double>(), v["pitch_deg"].get<double>(),
        v["focal_35mm"].get<double>(), config.image_size, config.image_size,
        config.fill_ratio);
  } else {
    scene.input_camera = sample_source_views(scene.joints, 1,
                                             mix_seed(config.seed, 0xca3e),
                                             config.image_size,
                                             config.fill_ratio)
                             .front();
  }
  return scene;
}

}  // namespace silhull
