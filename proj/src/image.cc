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

#include "silhull/image.h"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <memory>

namespace silhull {

SilhouetteImage::SilhouetteImage(int width, int height, float fill)
    : width_(width),
      height_(height),
      values_(static_cast<std::size_t>(width) * height, fill) {}

std::size_t SilhouetteImage::mask_count() const {
  return static_cast<std::size_t>(std::count_if(
      values_.begin(), values_.end(), [](float v) { return v >= 0.5f; }));
}

bool SilhouetteImage::is_binary() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](float v) { return v == 0.0f || v == 1.0f; });
}

RenderedImage::RenderedImage(int w, int h)
    : width(w),
      height(h),
      rgb(static_cast<std::size_t>(w) * h, kRenderBackground),
      coverage(static_cast<std::size_t>(w) * h, 0),
      depth(static_cast<std::size_t>(w) * h,
            std::numeric_limits<double>::infinity()) {}

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

std::uint8_t to_byte(double v) {
  return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
}

void write_png(const std::filesystem::path& path, int width, int height,
               int channels, const std::vector<std::uint8_t>& pixels) {
  FilePtr fp(std::fopen(path.string().c_str(), "wb"));
  if (!fp) throw IoError("cannot write " + path.string());
  png_structp png =
      png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_write_struct(&png, &info);
    throw IoError("libpng init failed for " + path.string());
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw IoError("libpng failed writing " + path.string());
  }
  png_init_io(png, fp.get());
  png_set_IHDR(png, info, width, height, 8,
               channels == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  const std::size_t stride = static_cast<std::size_t>(width) * channels;
  for (int y = 0; y < height; ++y) {
    png_write_row(png, const_cast<png_bytep>(pixels.data() + y * stride));
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

// Decodes to 8-bit gray or RGB; returns channel count.
int read_png(const std::filesystem::path& path, int* width, int* height,
             std::vector<std::uint8_t>* pixels) {
  FilePtr fp(std::fopen(path.string().c_str(), "rb"));
  if (!fp) throw IoError("cannot open " + path.string());
  png_byte sig[8];
  if (std::fread(sig, 1, 8, fp.get()) != 8 || png_sig_cmp(sig, 0, 8) != 0) {
    throw IoError(path.string() + ": not a PNG file");
  }
  png_structp png =
      png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw IoError("libpng init failed for " + path.string());
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw IoError("libpng failed reading " + path.string());
  }
  png_init_io(png, fp.get());
  png_set_sig_bytes(png, 8);
  png_read_info(png, info);
  const png_byte color = png_get_color_type(png, info);
  const png_byte depth = png_get_bit_depth(png, info);
  if (depth == 16) png_set_strip_16(png);
  if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color == PNG_COLOR_TYPE_GRAY && depth < 8) png_set_expand_gray_1_2_4_to_8(png);
  if (color & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(png);
  png_read_update_info(png, info);
  *width = static_cast<int>(png_get_image_width(png, info));
  *height = static_cast<int>(png_get_image_height(png, info));
  const int channels = png_get_channels(png, info);
  const std::size_t stride = png_get_rowbytes(png, info);
  pixels->assign(stride * *height, 0);
  std::vector<png_bytep> rows(*height);
  for (int y = 0; y < *height; ++y) rows[y] = pixels->data() + y * stride;
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return channels;
}

}  // namespace

void write_silhouette_png(const SilhouetteImage& image,
                          const std::filesystem::path& path) {
  std::vector<std::uint8_t> px(image.size());
  for (std::size_t i = 0; i < px.size(); ++i) px[i] = image.mask(i) ? 255 : 0;
  write_png(path, image.width(), image.height(), 1, px);
}

SilhouetteImage read_silhouette_png(const std::filesystem::path& path) {
  int w = 0, h = 0;
  std::vector<std::uint8_t> px;
  const int channels = read_png(path, &w, &h, &px);
  SilhouetteImage out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::uint8_t* p = px.data() + (static_cast<std::size_t>(y) * w + x) * channels;
      int sum = 0;
      for (int c = 0; c < channels; ++c) sum += p[c];
      out.at(x, y) = static_cast<float>(sum) / (255.0f * channels);
    }
  }
  return out;
}

void write_rgb_png(const RenderedImage& image,
                   const std::filesystem::path& path) {
  std::vector<std::uint8_t> px(image.rgb.size() * 3);
  for (std::size_t i = 0; i < image.rgb.size(); ++i) {
    for (int c = 0; c < 3; ++c) px[i * 3 + c] = to_byte(image.rgb[i][c]);
  }
  write_png(path, image.width, image.height, 3, px);
}

RenderedImage read_rgb_png(const std::filesystem::path& path) {
  int w = 0, h = 0;
  std::vector<std::uint8_t> px;
  const int channels = read_png(path, &w, &h, &px);
  RenderedImage out(w, h);
  for (std::size_t i = 0; i < out.rgb.size(); ++i) {
    std::uint8_t bytes[3];
    for (int c = 0; c < 3; ++c) bytes[c] = px[i * channels + (channels == 1 ? 0 : c)];
    out.rgb[i] = Vec3(bytes[0], bytes[1], bytes[2]) / 255.0;
    out.coverage[i] = !(bytes[0] == 128 && bytes[1] == 128 && bytes[2] == 128);
  }
  return out;
}

}  // namespace silhull
