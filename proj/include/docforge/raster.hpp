// Copyright 2026 The Docforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DOCFORGE_RASTER_HPP_
#define DOCFORGE_RASTER_HPP_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace docforge {

struct Rgb {
  uint8_t r = 0;
  uint8_t g = 0;
  uint8_t b = 0;

  friend bool operator==(const Rgb&, const Rgb&) = default;
};

struct Rect {
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;

  int right() const { return x + w; }
  int bottom() const { return y + h; }
  int64_t area() const { return static_cast<int64_t>(w) * h; }
  bool Contains(const Rect& other) const {
    return other.x >= x && other.y >= y && other.right() <= right() &&
           other.bottom() <= bottom();
  }
  // Area of the intersection; zero for rectangles that merely touch.
  int64_t OverlapArea(const Rect& other) const;

  friend bool operator==(const Rect&, const Rect&) = default;
};

// 8-bit coverage bitmap, row-major.
struct AlphaMask {
  int width = 0;
  int height = 0;
  std::vector<uint8_t> data;

  AlphaMask() = default;
  AlphaMask(int w, int h) : width(w), height(h), data(size_t(w) * h, 0) {}

  uint8_t at(int x, int y) const { return data[size_t(y) * width + x]; }
  uint8_t& at(int x, int y) { return data[size_t(y) * width + x]; }
  bool empty() const { return width == 0 || height == 0; }

  friend bool operator==(const AlphaMask&, const AlphaMask&) = default;
};

// 8-bit RGB raster.
class Image {
 public:
  Image() = default;
  Image(int width, int height, Rgb fill = {255, 255, 255});

  int width() const { return width_; }
  int height() const { return height_; }
  bool empty() const { return width_ == 0 || height_ == 0; }

  Rgb at(int x, int y) const {
    const uint8_t* p = &pixels_[(size_t(y) * width_ + x) * 3];
    return {p[0], p[1], p[2]};
  }
  void set(int x, int y, Rgb c) {
    uint8_t* p = &pixels_[(size_t(y) * width_ + x) * 3];
    p[0] = c.r;
    p[1] = c.g;
    p[2] = c.b;
  }

  void Fill(Rgb color);
  // Clipped to the image bounds.
  void FillRect(const Rect& rect, Rgb color);
  void Blend(int x, int y, Rgb color, uint8_t alpha);
  // Composites color through mask with its top-left at (x, y), clipped.
  void BlendMask(const AlphaMask& mask, int x, int y, Rgb color);
  void Blit(const Image& src, int x, int y);

  std::span<const uint8_t> pixels() const { return pixels_; }
  std::span<uint8_t> pixels() { return pixels_; }

  friend bool operator==(const Image&, const Image&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<uint8_t> pixels_;
};

Image ReadPng(const std::filesystem::path& path);
// Lossless; compression level only trades size for speed.
void WritePng(const Image& image, const std::filesystem::path& path,
              int compression_level = 3);
bool HasPngSignature(const std::filesystem::path& path);

Image Resize(const Image& src, int width, int height);

std::string Sha256Hex(std::span<const uint8_t> bytes);
std::string Sha256Hex(std::string_view text);
inline std::string PixelSha256(const Image& image) {
  return Sha256Hex(image.pixels());
}

// Anti-aliased scan conversion by exact signed-area accumulation.
//
// Coverage is |winding area| clamped to 1, which matches the nonzero rule for
// the non-self-overlapping outlines produced by fonts and chart shapes.
// Coordinates are in pixels with y pointing down.
class CoverageRasterizer {
 public:
  CoverageRasterizer(int width, int height);

  void MoveTo(double x, double y);
  void LineTo(double x, double y);
  void QuadTo(double cx, double cy, double x, double y);
  void Close();

  AlphaMask Finish();

 private:
  void AddLine(double x0, double y0, double x1, double y1);
  void AddClippedLine(double x0, double y0, double x1, double y1);

  int width_;
  int height_;
  int stride_;
  std::vector<float> accum_;
  double start_x_ = 0.0, start_y_ = 0.0;
  double cur_x_ = 0.0, cur_y_ = 0.0;
  bool open_ = false;
};

// Rotates counter-clockwise (screen coordinates) about the mask centre and
// returns a mask large enough to hold the result.
AlphaMask RotateMask(const AlphaMask& mask, double degrees);

// Grows coverage by one pixel to the right; used for synthetic bold.
AlphaMask Embolden(const AlphaMask& mask);

}  // namespace docforge

#endif  // DOCFORGE_RASTER_HPP_
