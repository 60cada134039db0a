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

#ifndef SILHULL_IMAGE_H_
#define SILHULL_IMAGE_H_

#include <cstdint>
#include <filesystem>
#include <vector>

#include "silhull/mesh.h"

namespace silhull {

// Soft occupancy map, row-major. mask() thresholds at 0.5.
class SilhouetteImage {
 public:
  SilhouetteImage() = default;
  SilhouetteImage(int width, int height, float fill = 0.0f);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return values_.size(); }

  float& at(int x, int y) { return values_[index(x, y)]; }
  float at(int x, int y) const { return values_[index(x, y)]; }
  bool mask(int x, int y) const { return at(x, y) >= 0.5f; }
  bool mask(std::size_t i) const { return values_[i] >= 0.5f; }

  std::vector<float>& values() { return values_; }
  const std::vector<float>& values() const { return values_; }

  std::size_t mask_count() const;
  bool is_binary() const;

  bool operator==(const SilhouetteImage&) const = default;

 private:
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * width_ + x;
  }
  int width_ = 0;
  int height_ = 0;
  std::vector<float> values_;
};

inline const Vec3 kRenderBackground{128.0 / 255.0, 128.0 / 255.0,
                                    128.0 / 255.0};

// Color render with per-pixel coverage and hit distance along the pixel ray
// (infinity where uncovered).
struct RenderedImage {
  int width = 0;
  int height = 0;
  std::vector<Vec3> rgb;
  std::vector<std::uint8_t> coverage;
  std::vector<double> depth;

  RenderedImage() = default;
  RenderedImage(int w, int h);

  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * width + x;
  }
  const Vec3& pixel(int x, int y) const { return rgb[index(x, y)]; }
};

// 8-bit grayscale, 0 or 255.
void write_silhouette_png(const SilhouetteImage& image,
                          const std::filesystem::path& path);
// Grayscale or RGB PNG (RGB is averaged); values mapped to [0,1].
SilhouetteImage read_silhouette_png(const std::filesystem::path& path);

void write_rgb_png(const RenderedImage& image,
                   const std::filesystem::path& path);
// Coverage is set where the pixel differs from the render background.
RenderedImage read_rgb_png(const std::filesystem::path& path);

}  // namespace silhull

#endif  // SILHULL_IMAGE_H_
