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

#include <cstdlib>
#include <string>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "silhull/camera.h"
#include "silhull/config.h"
#include "silhull/fixtures.h"
#include "silhull/image.h"
#include "silhull/mesh.h"
#include "silhull/mesh_io.h"
#include "test_util.h"

namespace silhull {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using testing::read_file;
using testing::TempDir;
using testing::write_file;

int run(const std::string& args, const fs::path& log) {
  const std::string cmd = std::string(SILHULL_CLI_PATH) + " " + args + " > " +
                          (log.string() + ".out") + " 2> " + (log.string() + ".err");
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

json sphere_config(int resolution) {
  return {{"seed", 5},
          {"subject", "fixture:sphere"},
          {"input_view", {{"yaw_deg", 0}, {"pitch_deg", 0}, {"focal_35mm", 50}}},
          {"image_size", 96},
          {"resolution", resolution},
          {"voxel_dump", true},
          {"trials", 4},
          {"chamfer_samples", 2000}};
}

std::size_t count_files(const fs::path& dir, const std::string& prefix) {
  std::size_t n = 0;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.path().filename().string().rfind(prefix, 0) == 0) ++n;
  }
  return n;
}

TEST(CliTest, RenderTargetsWritesFullGrid) {
  TempDir dir;
  ASSERT_EQ(run("render --mesh fixture:sphere --targets --image-size 32 --out " +
                    dir.path().string(),
                dir / "log"),
            0)
      << read_file(dir / "log.err");
  EXPECT_EQ(count_files(dir / "targets", "sil_"), 240u);
  EXPECT_EQ(count_files(dir / "targets", "camera_"), 240u);
  EXPECT_EQ(count_files(dir / "targets", "joints2d_"), 240u);
}

TEST(CliTest, RenderFrontBackPitches) {
  TempDir dir;
  ASSERT_EQ(run("render --mesh fixture:sphere --f2b --pitch 0,7.5,15 --image-size 48 --out " +
                    dir.path().string(),
                dir / "log"),
            0)
      << read_file(dir / "log.err");
  EXPECT_EQ(count_files(dir / "f2b", "front_"), 3u);
  EXPECT_EQ(count_files(dir / "f2b", "back_"), 3u);
  const json cam = json::parse(read_file(dir / "f2b" / "camera_01.json"));
  EXPECT_DOUBLE_EQ(camera_from_json(cam).pitch_deg, 7.5);
}

TEST(CliTest, MissingMeshFails) {
  TempDir dir;
  EXPECT_NE(run("render --mesh " + (dir / "nope.ply").string() +
                    " --joints " + (dir / "j.json").string() + " --targets --out " +
                    dir.path().string(),
                dir / "log"),
            0);
  EXPECT_NE(read_file(dir / "log.err").find("nope.ply"), std::string::npos);
}

TEST(CliTest, InvalidConfigListsErrors) {
  TempDir dir;
  write_file(dir / "run.json", json{{"subject", "fixture:sphere"}, {"resolution", 1}}.dump());
  EXPECT_NE(run("reconstruct --config " + (dir / "run.json").string() + " --out " +
                    dir.path().string(),
                dir / "log"),
            0);
  const std::string err = read_file(dir / "log.err");
  EXPECT_NE(err.find("seed"), std::string::npos);
  EXPECT_NE(err.find("resolution"), std::string::npos);
}

TEST(CliTest, ReconstructIsDeterministicAndEchoesConfig) {
  TempDir dir;
  write_file(dir / "run.json", sphere_config(32).dump());
  for (const char* sub : {"a", "b"}) {
    ASSERT_EQ(run("reconstruct --config " + (dir / "run.json").string() + " --out " +
                      (dir / sub).string(),
                  dir / "log"),
              0)
        << read_file(dir / "log.err");
  }
  for (const char* f : {"reconstruction.ply", "plan.json", "voxels.bin"}) {
    const std::string a = read_file(dir / "a" / f);
    EXPECT_FALSE(a.empty()) << f;
    EXPECT_EQ(a, read_file(dir / "b" / f)) << f;
  }
  const json plan = json::parse(read_file(dir / "a" / "plan.json"));
  EXPECT_EQ(plan["config"], sphere_config(32));
  EXPECT_TRUE(is_closed_manifold(load_mesh(dir / "a" / "reconstruction.ply")));
}

TEST(CliTest, ResolutionFlagOverridesConfig) {
  TempDir dir;
  json cfg = sphere_config(32);
  cfg.erase("resolution");
  write_file(dir / "run.json", cfg.dump());
  ASSERT_EQ(run("reconstruct --config " + (dir / "run.json").string() +
                    " --resolution 24 --out " + dir.path().string(),
                dir / "log"),
            0);
  const json plan = json::parse(read_file(dir / "plan.json"));
  EXPECT_EQ(plan["config"]["resolution"], 24);
}

TEST(CliTest, EvaluateWritesReport) {
  TempDir dir;
  write_file(dir / "run.json", sphere_config(24).dump());
  ASSERT_EQ(run("evaluate --config " + (dir / "run.json").string() +
                    " --trials 5 --out " + dir.path().string(),
                dir / "log"),
            0)
      << read_file(dir / "log.err");
  const json report = json::parse(read_file(dir / "report.json"));
  EXPECT_EQ(report["random"]["values"].size(), 5u);
  EXPECT_EQ(report["config"]["trials"], 5);
  const std::string csv = read_file(dir / "report.csv");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 6);
}

TEST(CliTest, EvaluateIouOfIdenticalFiles) {
  TempDir dir;
  SilhouetteImage s(16, 16);
  s.at(3, 4) = 1.0f;
  s.at(9, 9) = 1.0f;
  write_silhouette_png(s, dir / "a.png");
  write_silhouette_png(s, dir / "b.png");
  ASSERT_EQ(run("evaluate --iou " + (dir / "a.png").string() + " " +
                    (dir / "b.png").string(),
                dir / "log"),
            0);
  EXPECT_EQ(read_file(dir / "log.out"), "1.0\n");
}

TEST(CliTest, BakeSphereMatchesFrontImage) {
  TempDir dir;
  json cfg = sphere_config(32);
  cfg["image_size"] = 256;
  write_file(dir / "run.json", cfg.dump());
  RenderedImage red(256, 256), blue(256, 256);
  for (std::size_t i = 0; i < red.rgb.size(); ++i) {
    red.rgb[i] = Vec3(1, 0, 0);
    blue.rgb[i] = Vec3(0, 0, 1);
    red.coverage[i] = blue.coverage[i] = 1;
  }
  write_rgb_png(red, dir / "front.png");
  write_rgb_png(blue, dir / "back.png");
  ASSERT_EQ(run("bake --config " + (dir / "run.json").string() + " --front " +
                    (dir / "front.png").string() + " --back " +
                    (dir / "back.png").string() + " --out " + dir.path().string(),
                dir / "log"),
            0)
      << read_file(dir / "log.err");
  const TriangleMesh baked = load_mesh(dir / "baked.ply");
  const Scene scene = load_scene(parse_run_config(cfg));
  const Vec3 eye = scene.input_camera.center();
  const Vec3 c0(0, 1, 0);
  int front = 0;
  ASSERT_EQ(baked.colors.size(), baked.vertices.size());
  for (std::size_t i = 0; i < baked.vertices.size(); ++i) {
    const Vec3 n = (baked.vertices[i] - c0).normalized();
    const double nc = n.dot((baked.vertices[i] - eye).normalized());
    if (nc < -1e-4) {
      ++front;
      ASSERT_LE((baked.colors[i] - Vec3(1, 0, 0)).cwiseAbs().maxCoeff(), 1.0 / 255.0);
    } else if (nc > 1e-4) {
      ASSERT_LE((baked.colors[i] - Vec3(0, 0, 1)).cwiseAbs().maxCoeff(), 1.0 / 255.0);
    }
  }
  EXPECT_GT(front, 1000);
}

TEST(CliTest, PerturbWritesOutputs) {
  TempDir dir;
  SilhouetteImage s(64, 64);
  for (int y = 16; y < 48; ++y)
    for (int x = 16; x < 48; ++x) s.at(x, y) = 1.0f;
  write_silhouette_png(s, dir / "mask.png");
  ASSERT_EQ(run("perturb --seed 3 --severity 1 " + (dir / "mask.png").string() +
                    " --out " + (dir / "p").string(),
                dir / "log"),
            0)
      << read_file(dir / "log.err");
  const SilhouetteImage p = read_silhouette_png(dir / "p" / "mask_perturbed.png");
  EXPECT_EQ(p.width(), 64);
  EXPECT_NE(p, s);
  EXPECT_NE(run("perturb " + (dir / "mask.png").string(), dir / "log"), 0);
}

}  // namespace
}  // namespace silhull
