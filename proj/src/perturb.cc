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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "silhull/random.h"

namespace silhull {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Felzenszwalb & Huttenlocher 1-D squared distance transform of f[0..n),
// in place. Infinite samples contribute no parabola.
void dt_1d(std::vector<double>& f, std::size_t n, std::vector<double>& d,
           std::vector<int>& v, std::vector<double>& z) {
  int k = -1;
  for (std::size_t q = 0; q < n; ++q) {
    if (f[q] == kInf) continue;
    const double fq = f[q] + static_cast<double>(q) * q;
    double s = -kInf;
    while (k >= 0) {
      const int p = v[k];
      s = (fq - (f[p] + static_cast<double>(p) * p)) / (2.0 * (static_cast<int>(q) - p));
      if (s > z[k]) break;
      --k;
    }
    if (k < 0) s = -kInf;
    ++k;
    v[k] = static_cast<int>(q);
    z[k] = s;
    z[k + 1] = kInf;
  }
  if (k < 0) return;  // no finite samples
  k = 0;
  for (std::size_t q = 0; q < n; ++q) {
    while (z[k + 1] < static_cast<double>(q)) ++k;
    const double dq = static_cast<double>(q) - v[k];
    d[q] = dq * dq + f[v[k]];
  }
  std::copy(d.begin(), d.begin() + n, f.begin());
}

// Squared Euclidean distance from every pixel to the nearest pixel where
// `seed` is true (infinity if there is none).
std::vector<double> squared_edt(const std::vector<bool>& seed, int w, int h) {
  std::vector<double> g(seed.size());
  for (std::size_t i = 0; i < seed.size(); ++i) g[i] = seed[i] ? 0.0 : kInf;
  const std::size_t n = std::max(w, h);
  std::vector<double> f(n), d(n), z(n + 1);
  std::vector<int> v(n);
  for (int x = 0; x < w; ++x) {
    for (int y = 0; y < h; ++y) f[y] = g[static_cast<std::size_t>(y) * w + x];
    dt_1d(f, h, d, v, z);
    for (int y = 0; y < h; ++y) g[static_cast<std::size_t>(y) * w + x] = f[y];
  }
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) f[x] = g[static_cast<std::size_t>(y) * w + x];
    dt_1d(f, w, d, v, z);
    for (int x = 0; x < w; ++x) g[static_cast<std::size_t>(y) * w + x] = f[x];
  }
  return g;
}

// Dilation keeps sd >= -offset; erosion (offset < 0) keeps sd > -offset so
// that a disk of radius r removes pixels within distance r of background.
bool keep_pixel(double sd, double offset) {
  return offset >= 0 ? sd >= -offset : sd > -offset;
}

}  // namespace

void PerturbConfig::validate() const {
  std::vector<std::string> errors;
  if (erode_dilate_min_px > erode_dilate_max_px) {
    errors.push_back("erode_dilate_px: min > max");
  }
  if (!(boundary_noise_amp >= 0)) errors.push_back("boundary_noise_amp must be >= 0");
  if (dropout_blob_count < 0) errors.push_back("dropout_blob_count must be >= 0");
  if (!(dropout_blob_radius_px >= 0)) errors.push_back("dropout_blob_radius_px must be >= 0");
  auto unit = [](double s) { return s >= 0.0 && s <= 1.0; };
  if (!unit(severity_min) || !unit(severity_max) || severity_min > severity_max) {
    errors.push_back("severity_range must satisfy 0 <= min <= max <= 1");
  }
  if (!unit(low_severity)) errors.push_back("low_severity must lie in [0,1]");
  if (!severity_per_view.empty()) {
    if (severity_per_view.size() != static_cast<std::size_t>(kCandidateCount)) {
      errors.push_back("severity_per_view must have " +
                       std::to_string(kCandidateCount) + " entries");
    }
    if (!std::all_of(severity_per_view.begin(), severity_per_view.end(), unit)) {
      errors.push_back("severity_per_view entries must lie in [0,1]");
    }
  }
  if (!errors.empty()) {
    std::string msg = "invalid perturb config:";
    for (const auto& e : errors) msg += "\n  - " + e;
    throw ConfigError(msg);
  }
}

std::vector<double> signed_distance(const SilhouetteImage& sil) {
  const int w = sil.width(), h = sil.height();
  std::vector<bool> fg(sil.size()), bg(sil.size());
  for (std::size_t i = 0; i < sil.size(); ++i) {
    fg[i] = sil.mask(i);
    bg[i] = !fg[i];
  }
  const auto to_fg = squared_edt(fg, w, h);
  const auto to_bg = squared_edt(bg, w, h);
  std::vector<double> sd(sil.size());
  for (std::size_t i = 0; i < sd.size(); ++i) {
    sd[i] = fg[i] ? std::sqrt(to_bg[i]) : -std::sqrt(to_fg[i]);
  }
  return sd;
}

namespace {

SilhouetteImage threshold_offset(const SilhouetteImage& sil, double offset) {
  const auto sd = signed_distance(sil);
  SilhouetteImage out(sil.width(), sil.height());
  for (std::size_t i = 0; i < sd.size(); ++i) {
    out.values()[i] = keep_pixel(sd[i], offset) ? 1.0f : 0.0f;
  }
  return out;
}

}  // namespace

SilhouetteImage erode(const SilhouetteImage& sil, double radius_px) {
  return threshold_offset(sil, -std::abs(radius_px));
}

SilhouetteImage dilate(const SilhouetteImage& sil, double radius_px) {
  return threshold_offset(sil, std::abs(radius_px));
}

SilhouetteImage perturb_silhouette(const SilhouetteImage& sil, double severity,
                                   std::uint64_t seed,
                                   const PerturbConfig& config) {
  if (!(severity >= 0.0 && severity <= 1.0)) {
    throw ConfigError("severity must lie in [0,1]");
  }
  if (severity == 0.0) return sil;

  // Every random draw happens regardless of severity so that, for a fixed
  // seed, increasing severity only scales the same perturbation.
  Rng rng(seed);
  const int span = config.erode_dilate_max_px - config.erode_dilate_min_px;
  const int radius = config.erode_dilate_min_px +
                     static_cast<int>(rng.below(static_cast<std::uint64_t>(span) + 1));
  const int harmonics = 3 + static_cast<int>(rng.below(4));
  struct Harmonic {
    double weight, phase, frequency;
  };
  std::vector<Harmonic> waves(harmonics);
  double weight_sum = 0;
  for (int k = 0; k < harmonics; ++k) {
    waves[k].weight = rng.uniform(0.5, 1.0);
    waves[k].phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
    waves[k].frequency = 2.0 + k;
    weight_sum += waves[k].weight;
  }
  std::vector<std::uint64_t> blob_draws(config.dropout_blob_count);
  for (auto& b : blob_draws) b = rng.next();

  const int w = sil.width(), h = sil.height();
  const auto sd = signed_distance(sil);

  double cx = 0, cy = 0;
  std::size_t n = 0;
  std::vector<std::size_t> fg_pixels;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (sil.mask(x, y)) {
        cx += x + 0.5;
        cy += y + 0.5;
        ++n;
        fg_pixels.push_back(static_cast<std::size_t>(y) * w + x);
      }
    }
  }
  if (n > 0) {
    cx /= n;
    cy /= n;
  }

  const double base = severity * radius;
  const double amp = severity * config.boundary_noise_amp / weight_sum;
  SilhouetteImage out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double theta = std::atan2(y + 0.5 - cy, x + 0.5 - cx);
      double wave = 0;
      for (const Harmonic& hw : waves) {
        wave += hw.weight * std::sin(hw.frequency * theta + hw.phase);
      }
      const std::size_t i = static_cast<std::size_t>(y) * w + x;
      out.values()[i] = keep_pixel(sd[i], base + amp * wave) ? 1.0f : 0.0f;
    }
  }

  const double blob_r = severity * config.dropout_blob_radius_px;
  if (!fg_pixels.empty() && blob_r > 0) {
    for (std::uint64_t draw : blob_draws) {
      const std::size_t p = fg_pixels[draw % fg_pixels.size()];
      const int bx = static_cast<int>(p % w), by = static_cast<int>(p / w);
      const int r = static_cast<int>(std::ceil(blob_r));
      for (int y = std::max(0, by - r); y <= std::min(h - 1, by + r); ++y) {
        for (int x = std::max(0, bx - r); x <= std::min(w - 1, bx + r); ++x) {
          const double dx = x - bx, dy = y - by;
          if (dx * dx + dy * dy < blob_r * blob_r) out.at(x, y) = 0.0f;
        }
      }
    }
  }
  return out;
}

SeverityAssignment assign_severities(const PerturbConfig& config) {
  config.validate();
  SeverityAssignment out;
  const std::size_t bins = kBinCount - 1;
  const std::size_t per_bin = kCandidatePitches.size();
  out.severities.assign(bins, std::vector<double>(per_bin, 0.0));
  out.designated.assign(bins, 0);
  Rng rng(mix_seed(config.seed, 0x5e7e));
  for (std::size_t b = 0; b < bins; ++b) {
    out.designated[b] = static_cast<int>(rng.below(per_bin));
    for (std::size_t p = 0; p < per_bin; ++p) {
      const double drawn = rng.uniform_closed(config.severity_min, config.severity_max);
      out.severities[b][p] =
          static_cast<int>(p) == out.designated[b] ? config.low_severity : drawn;
    }
  }
  if (!config.severity_per_view.empty()) {
    for (std::size_t b = 0; b < bins; ++b) {
      for (std::size_t p = 0; p < per_bin; ++p) {
        out.severities[b][p] = config.severity_per_view[b * per_bin + p];
      }
      out.designated[b] = static_cast<int>(
          std::min_element(out.severities[b].begin(), out.severities[b].end()) -
          out.severities[b].begin());
    }
  }
  return out;
}

void perturb_pool(CandidatePool& pool, const PerturbConfig& config) {
  validate_pool(pool);
  const SeverityAssignment sev = assign_severities(config);
  for (std::size_t b = 1; b < pool.size(); ++b) {
    for (std::size_t p = 0; p < pool[b].size(); ++p) {
      const std::uint64_t seed = mix_seed(config.seed, b * 16 + p);
      pool[b][p].silhouette =
          perturb_silhouette(pool[b][p].silhouette, sev.severities[b - 1][p], seed, config);
    }
  }
}

nlohmann::json to_json(const PerturbConfig& c) {
  return {{"erode_dilate_px", {c.erode_dilate_min_px, c.erode_dilate_max_px}},
          {"boundary_noise_amp", c.boundary_noise_amp},
          {"dropout_blob_count", c.dropout_blob_count},
          {"dropout_blob_radius_px", c.dropout_blob_radius_px},
          {"severity_range", {c.severity_min, c.severity_max}},
          {"low_severity", c.low_severity},
          {"severity_per_view", c.severity_per_view},
          {"seed", c.seed}};
}

PerturbConfig perturb_config_from_json(const nlohmann::json& j) {
  PerturbConfig c;
  std::vector<std::string> errors;
  if (!j.is_object()) throw ConfigError("perturb: expected an object");
  static const char* kKnown[] = {"erode_dilate_px", "boundary_noise_amp",
                                 "dropout_blob_count", "dropout_blob_radius_px",
                                 "severity_range", "low_severity",
                                 "severity_per_view", "seed"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(std::begin(kKnown), std::end(kKnown), key) == std::end(kKnown)) {
      errors.push_back("perturb." + key + ": unknown key");
    }
  }
  auto pair = [&](const char* key, auto& lo, auto& hi) {
    if (!j.contains(key)) return;
    const auto& v = j[key];
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
      errors.push_back(std::string("perturb.") + key + ": expected [min, max]");
      return;
    }
    lo = v[0].get<std::remove_reference_t<decltype(lo)>>();
    hi = v[1].get<std::remove_reference_t<decltype(hi)>>();
  };
  auto number = [&](const char* key, auto& out) {
    if (!j.contains(key)) return;
    if (!j[key].is_number()) {
      errors.push_back(std::string("perturb.") + key + ": expected a number");
      return;
    }
    out = j[key].get<std::remove_reference_t<decltype(out)>>();
  };
  pair("erode_dilate_px", c.erode_dilate_min_px, c.erode_dilate_max_px);
  pair("severity_range", c.severity_min, c.severity_max);
  number("boundary_noise_amp", c.boundary_noise_amp);
  number("dropout_blob_count", c.dropout_blob_count);
  number("dropout_blob_radius_px", c.dropout_blob_radius_px);
  number("low_severity", c.low_severity);
  if (j.contains("seed")) {
    if (!(j["seed"].is_number_unsigned() ||
          (j["seed"].is_number_integer() && j["seed"].get<std::int64_t>() >= 0))) {
      errors.push_back("perturb.seed: expected a non-negative integer");
    } else {
      c.seed = j["seed"].get<std::uint64_t>();
    }
  }
  if (j.contains("severity_per_view")) {
    const auto& v = j["severity_per_view"];
    if (!v.is_array()) {
      errors.push_back("perturb.severity_per_view: expected an array");
    } else {
      for (const auto& e : v) {
        if (!e.is_number()) {
          errors.push_back("perturb.severity_per_view: non-numeric entry");
          break;
        }
        c.severity_per_view.push_back(e.get<double>());
      }
    }
  }
  try {
    c.validate();
  } catch (const ConfigError& e) {
    std::string msg = e.what();
    // Fold validation failures into the same list.
    std::size_t pos = 0;
    while ((pos = msg.find("\n  - ", pos)) != std::string::npos) {
      pos += 5;
      const std::size_t end = msg.find('\n', pos);
      errors.push_back("perturb: " + msg.substr(pos, end - pos));
    }
  }
  if (!errors.empty()) {
    std::string msg = "invalid perturb config:";
    for (const auto& e : errors) msg += "\n  - " + e;
    throw ConfigError(msg);
  }
  return c;
}

}  // namespace silhull
