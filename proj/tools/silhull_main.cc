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

// silhull command-line tool.
//
//   silhull render      --mesh M --joints J (--targets | --f2b | --sources N)
//   silhull reconstruct --config run.json
//   silhull evaluate    --config run.json [--trials N] | --iou a.png b.png
//   silhull bake        --config run.json --front F.png --back B.png
//   silhull perturb     --seed S [--severity s] a.png [b.png ...]
//
// Global flags --config, --seed, --out and --resolution may appear before or
// after the subcommand.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "silhull/camera.h"
#include "silhull/config.h"
#include "silhull/error.h"
#include "silhull/experiment.h"
#include "silhull/image.h"
#include "silhull/mesh_io.h"
#include "silhull/metrics.h"
#include "silhull/perturb.h"
#include "silhull/pipeline.h"
#include "silhull/random.h"
#include "silhull/raster.h"
#include "silhull/texture.h"
#include "silhull/vhull.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace silhull {
namespace {

struct Globals {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out = ".";
  std::optional<int> resolution;
};

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  out.close();
  if (!out) throw IoError(path.string() + ": write failed");
}

void write_json(const fs::path& path, const json& j) {
  write_text(path, j.dump(2) + "\n");
}

std::string numbered(const std::string& stem, int i, int width,
                     const std::string& ext) {
  std::ostringstream os;
  os << stem << '_' << std::setw(width) << std::setfill('0') << i << ext;
  return os.str();
}

json joints_2d_json(const JointSet& joints, const Camera& camera) {
  const auto px = project_joints(joints, camera);
  json arr = json::array();
  for (int i = 0; i < kJointCount; ++i) {
    arr.push_back({{"name", std::string(kJointNames[i])},
                   {"pixel", {px[i].x(), px[i].y()}}});
  }
  return {{"joints", arr}};
}

RunConfig run_config(const Globals& g, json overrides = json::object()) {
  if (g.config.empty()) throw ConfigError("--config is required");
  if (g.seed) overrides["seed"] = *g.seed;
  if (g.resolution) overrides["resolution"] = *g.resolution;
  return load_run_config(g.config, overrides);
}

fs::path out_dir(const Globals& g) {
  fs::path dir(g.out);
  fs::create_directories(dir);
  return dir;
}

// --- render ---------------------------------------------------------------

struct RenderArgs {
  std::string mesh;
  std::string joints;
  bool targets = false;
  bool f2b = false;
  std::vector<double> pitches = {0.0, 7.5, 15.0};
  int sources = 0;
  int image_size = kDefaultImageSize;
};

void render_views(const Scene& scene, const std::vector<Camera>& cams,
                  const fs::path& dir) {
  fs::create_directories(dir);
  for (std::size_t i = 0; i < cams.size(); ++i) {
    const int n = static_cast<int>(i);
    write_silhouette_png(render_silhouette(scene.subject, cams[i]),
                         dir / numbered("sil", n, 4, ".png"));
    write_json(dir / numbered("camera", n, 4, ".json"), to_json(cams[i]));
    write_json(dir / numbered("joints2d", n, 4, ".json"),
               joints_2d_json(scene.joints, cams[i]));
  }
}

int cmd_render(const Globals& g, const RenderArgs& a) {
  if (!a.targets && !a.f2b && a.sources <= 0) {
    throw ConfigError("render needs --targets, --f2b or --sources N");
  }
  Scene scene;
  RunConfig cfg;
  if (!a.mesh.empty()) {
    json j{{"seed", g.seed.value_or(0)}, {"subject", a.mesh}};
    if (!a.joints.empty()) j["joints"] = a.joints;
    cfg = parse_run_config(j, fs::current_path());
  } else {
    cfg = run_config(g);
  }
  scene = load_scene(cfg);
  const fs::path dir = out_dir(g);
  if (a.targets) {
    render_views(scene, target_view_grid(scene.joints, a.image_size),
                 dir / "targets");
  }
  if (a.sources > 0) {
    render_views(scene,
                 sample_source_views(scene.joints, a.sources, cfg.seed,
                                     a.image_size),
                 dir / "sources");
  }
  if (a.f2b) {
    TriangleMesh mesh = scene.subject;
    if (mesh.colors.empty()) mesh.colors.assign(mesh.vertices.size(), Vec3::Constant(0.7));
    const fs::path fdir = dir / "f2b";
    fs::create_directories(fdir);
    const auto cams = front_back_views(scene.joints, a.pitches, a.image_size);
    for (std::size_t i = 0; i < cams.size(); ++i) {
      const int n = static_cast<int>(i);
      const FrontBackPair pair = render_front_back(mesh, cams[i]);
      write_rgb_png(pair.front, fdir / numbered("front", n, 2, ".png"));
      write_rgb_png(pair.back, fdir / numbered("back", n, 2, ".png"));
      write_json(fdir / numbered("camera", n, 2, ".json"), to_json(cams[i]));
      write_json(fdir / numbered("joints2d", n, 2, ".json"),
                 joints_2d_json(scene.joints, cams[i]));
    }
  }
  return 0;
}

// --- reconstruct ----------------------------------------------------------

int cmd_reconstruct(const Globals& g) {
  const RunConfig cfg = run_config(g);
  Scene scene = load_scene(cfg);
  ReconstructOptions opts;
  opts.resolution = cfg.resolution;
  opts.padding = cfg.padding;
  opts.perturb = cfg.perturb;
  const Reconstruction r = reconstruct(scene, opts);
  const fs::path dir = out_dir(g);
  save_mesh(r.mesh, dir / "reconstruction.ply");
  write_json(dir / "plan.json", {{"config", cfg.source},
                                 {"input_camera", to_json(scene.input_camera)},
                                 {"plan", to_json(r.plan)}});
  if (cfg.voxel_dump) write_voxel_dump(r.grid, dir / "voxels.bin");
  std::cout << "reconstruction: " << r.mesh.vertices.size() << " vertices, "
            << r.grid.occupied_count() << " voxels\n";
  return 0;
}

// --- evaluate -------------------------------------------------------------

struct EvaluateArgs {
  std::optional<int> trials;
  std::vector<std::string> iou;
};

int cmd_evaluate(const Globals& g, const EvaluateArgs& a) {
  if (!a.iou.empty()) {
    const double v = iou(read_silhouette_png(a.iou[0]), read_silhouette_png(a.iou[1]));
    std::cout << json(v).dump() << "\n";
    return 0;
  }
  json overrides = json::object();
  if (a.trials) overrides["trials"] = *a.trials;
  const RunConfig cfg = run_config(g, overrides);
  const Scene scene = load_scene(cfg);
  GreedyVsRandomOptions opts;
  opts.trials = cfg.trials;
  opts.resolution = cfg.resolution;
  opts.padding = cfg.padding;
  opts.chamfer_samples = cfg.chamfer_samples;
  opts.seed = cfg.seed;
  if (cfg.perturb) {
    opts.perturb = *cfg.perturb;
  } else {
    opts.perturb.seed = cfg.seed;
  }
  const GreedyVsRandomReport report = greedy_vs_random(scene, opts);
  const fs::path dir = out_dir(g);
  json j = to_json(report);
  j["config"] = cfg.source;
  write_json(dir / "report.json", j);
  write_text(dir / "report.csv", to_csv(report));
  std::cout << "greedy " << report.greedy_chamfer_cm << " cm, random median "
            << report.random.median << " cm, beats "
            << report.beat_fraction * 100.0 << "% of trials\n";
  return 0;
}

// --- bake -----------------------------------------------------------------

struct BakeArgs {
  std::string front;
  std::string back;
  std::string camera;
};

int cmd_bake(const Globals& g, const BakeArgs& a) {
  const RunConfig cfg = run_config(g);
  const Scene scene = load_scene(cfg);
  const RenderedImage front = read_rgb_png(a.front);
  const RenderedImage back = read_rgb_png(a.back);
  Camera camera;
  if (!a.camera.empty()) {
    std::ifstream in(a.camera);
    if (!in) throw IoError(a.camera + ": cannot open camera");
    camera = camera_from_json(json::parse(in));
  } else {
    camera = scene.input_camera;
    camera.width = front.width;
    camera.height = front.height;
  }
  const BakeResult r = bake_vertex_colors(scene.subject, front, back, camera);
  const fs::path dir = out_dir(g);
  save_mesh(r.mesh, dir / "baked.ply");
  write_json(dir / "bake_report.json", {{"config", cfg.source},
                                        {"camera", to_json(camera)},
                                        {"report", to_json(r.report)}});
  return 0;
}

// --- perturb --------------------------------------------------------------

struct PerturbArgs {
  double severity = 1.0;
  std::vector<std::string> inputs;
};

int cmd_perturb(const Globals& g, const PerturbArgs& a) {
  PerturbConfig pc;
  std::uint64_t seed = 0;
  if (!g.config.empty()) {
    const RunConfig cfg = run_config(g);
    if (cfg.perturb) pc = *cfg.perturb;
    seed = cfg.seed;
  } else if (g.seed) {
    seed = *g.seed;
  } else {
    throw ConfigError("perturb needs --seed or --config");
  }
  pc.validate();
  const fs::path dir = out_dir(g);
  for (std::size_t i = 0; i < a.inputs.size(); ++i) {
    const fs::path in(a.inputs[i]);
    const SilhouetteImage out = perturb_silhouette(
        read_silhouette_png(in), a.severity, mix_seed(seed, i), pc);
    write_silhouette_png(out, dir / (in.stem().string() + "_perturbed.png"));
  }
  return 0;
}

}  // namespace
}  // namespace silhull

int main(int argc, char** argv) {
  using namespace silhull;
  CLI::App app{"Silhouette-driven visual hull reconstruction"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--config", g.config, "Run configuration (JSON)");
  app.add_option("--seed", g.seed, "Seed override");
  app.add_option("--out", g.out, "Output directory");
  app.add_option("--resolution", g.resolution, "Voxel grid resolution override");

  RenderArgs ra;
  CLI::App* render = app.add_subcommand("render", "Render silhouettes, front/back pairs and cameras");
  render->add_option("--mesh", ra.mesh, "Mesh path or fixture:sphere / fixture:mannequin");
  render->add_option("--joints", ra.joints, "Joint JSON for mesh paths");
  render->add_flag("--targets", ra.targets, "240 target views");
  render->add_flag("--f2b", ra.f2b, "Front/back pairs");
  render->add_option("--pitch", ra.pitches, "Front/back pitches in degrees")->delimiter(',');
  render->add_option("--sources", ra.sources, "Number of sampled source views");
  render->add_option("--image-size", ra.image_size, "Image width and height")->check(CLI::Range(8, 8192));

  app.add_subcommand("reconstruct", "Greedy view selection and visual hull reconstruction");

  EvaluateArgs ea;
  CLI::App* evaluate = app.add_subcommand("evaluate", "Greedy against random view selection");
  evaluate->add_option("--trials", ea.trials, "Random trials");
  evaluate->add_option("--iou", ea.iou, "IoU of two silhouette PNGs")->expected(2);

  BakeArgs ba;
  CLI::App* bake = app.add_subcommand("bake", "Per-vertex colors from a front/back image pair");
  bake->add_option("--front", ba.front, "Front image")->required();
  bake->add_option("--back", ba.back, "Back image")->required();
  bake->add_option("--camera", ba.camera, "Camera JSON (defaults to the input view)");

  PerturbArgs pa;
  CLI::App* perturb = app.add_subcommand("perturb", "Degrade silhouette PNGs");
  perturb->add_option("--severity", pa.severity, "Severity in [0, 1]");
  perturb->add_option("inputs", pa.inputs, "Silhouette PNGs")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    const std::string name = app.get_subcommands().front()->get_name();
    if (name == "render") return cmd_render(g, ra);
    if (name == "reconstruct") return cmd_reconstruct(g);
    if (name == "evaluate") return cmd_evaluate(g, ea);
    if (name == "bake") return cmd_bake(g, ba);
    return cmd_perturb(g, pa);
  } catch (const std::exception& e) {
    std::cerr << "silhull: error: " << e.what() << "\n";
    return 1;
  }
}
