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

#include "docforge/raster.hpp"

#include <openssl/evp.h>
#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <numbers>

#include "docforge/error.hpp"

namespace docforge {

int64_t Rect::OverlapArea(const Rect& other) const {
  const int ix0 = std::max(x, other.x);
  const int iy0 = std::max(y, other.y);
  const int ix1 = std::min(right(), other.right());
  const int iy1 = std::min(bottom(), other.bottom());
  if (ix1 <= ix0 || iy1 <= iy0) return 0;
  return static_cast<int64_t>(ix1 - ix0) * (iy1 - iy0);
}

Image::Image(int width, int height, Rgb fill)
    : width_(width), height_(height), pixels_(size_t(width) * height * 3) {
  if (width < 0 || height < 0) {
    throw Error(ErrorCode::kInvalidArgument, "negative image size");
  }
  Fill(fill);
}

void Image::Fill(Rgb color) {
  for (size_t i = 0; i < pixels_.size(); i += 3) {
    pixels_[i] = color.r;
    pixels_[i + 1] = color.g;
    pixels_[i + 2] = color.b;
  }
}

void Image::FillRect(const Rect& rect, Rgb color) {
  const int x0 = std::max(rect.x, 0), y0 = std::max(rect.y, 0);
  const int x1 = std::min(rect.right(), width_);
  const int y1 = std::min(rect.bottom(), height_);
  for (int y = y0; y < y1; ++y) {
    for (int x = x0; x < x1; ++x) set(x, y, color);
  }
}

namespace {

inline uint8_t Mix(uint8_t bg, uint8_t fg, unsigned alpha) {
  // Exact rounding of bg + (fg - bg) * alpha / 255.
  const int v = bg * 255 + (int(fg) - int(bg)) * int(alpha);
  return static_cast<uint8_t>((v + 127) / 255);
}

}  // namespace

void Image::Blend(int x, int y, Rgb color, uint8_t alpha) {
  if (x < 0 || y < 0 || x >= width_ || y >= height_ || alpha == 0) return;
  uint8_t* p = &pixels_[(size_t(y) * width_ + x) * 3];
  p[0] = Mix(p[0], color.r, alpha);
  p[1] = Mix(p[1], color.g, alpha);
  p[2] = Mix(p[2], color.b, alpha);
}

void Image::BlendMask(const AlphaMask& mask, int x, int y, Rgb color) {
  const int sx0 = std::max(0, -x), sy0 = std::max(0, -y);
  const int sx1 = std::min(mask.width, width_ - x);
  const int sy1 = std::min(mask.height, height_ - y);
  for (int sy = sy0; sy < sy1; ++sy) {
    const uint8_t* row = &mask.data[size_t(sy) * mask.width];
    uint8_t* dst = &pixels_[(size_t(sy + y) * width_ + x) * 3];
    for (int sx = sx0; sx < sx1; ++sx) {
      const unsigned a = row[sx];
      if (a == 0) continue;
      uint8_t* p = dst + size_t(sx) * 3;
      p[0] = Mix(p[0], color.r, a);
      p[1] = Mix(p[1], color.g, a);
      p[2] = Mix(p[2], color.b, a);
    }
  }
}

void Image::Blit(const Image& src, int x, int y) {
  const int sx0 = std::max(0, -x), sy0 = std::max(0, -y);
  const int sx1 = std::min(src.width_, width_ - x);
  const int sy1 = std::min(src.height_, height_ - y);
  if (sx1 <= sx0) return;
  for (int sy = sy0; sy < sy1; ++sy) {
    std::copy_n(&src.pixels_[(size_t(sy) * src.width_ + sx0) * 3],
                size_t(sx1 - sx0) * 3,
                &pixels_[(size_t(sy + y) * width_ + x + sx0) * 3]);
  }
}

Image ReadPng(const std::filesystem::path& path) {
  png_image png{};
  png.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&png, path.c_str())) {
    throw Error(ErrorCode::kIo, "cannot decode PNG " + path.string() + ": " +
                                    png.message);
  }
  png.format = PNG_FORMAT_RGB;
  Image image(static_cast<int>(png.width), static_cast<int>(png.height));
  if (!png_image_finish_read(&png, nullptr, image.pixels().data(), 0,
                             nullptr)) {
    const std::string message = png.message;
    png_image_free(&png);
    throw Error(ErrorCode::kIo,
                "cannot decode PNG " + path.string() + ": " + message);
  }
  return image;
}

void WritePng(const Image& image, const std::filesystem::path& path,
              int compression_level) {
  std::unique_ptr<FILE, int (*)(FILE*)> file(std::fopen(path.c_str(), "wb"),
                                              &std::fclose);
  if (!file) {
    throw Error(ErrorCode::kIo, "cannot open " + path.string() +
                                    " for writing");
  }
  png_structp png =
      png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_write_struct(&png, &info);
    throw Error(ErrorCode::kIo, "libpng initialisation failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw Error(ErrorCode::kIo, "failed writing PNG " + path.string());
  }
  png_init_io(png, file.get());
  png_set_compression_level(png, compression_level);
  // Fixed filter: adaptive selection costs more than it saves on flat pages.
  png_set_filter(png, PNG_FILTER_TYPE_BASE, PNG_FILTER_UP);
  png_set_IHDR(png, info, image.width(), image.height(), 8, PNG_COLOR_TYPE_RGB,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  const auto pixels = image.pixels();
  for (int y = 0; y < image.height(); ++y) {
    png_write_row(png, pixels.data() + size_t(y) * image.width() * 3);
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  if (std::fflush(file.get()) != 0) {
    throw Error(ErrorCode::kIo, "failed writing PNG " + path.string());
  }
}

bool HasPngSignature(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  unsigned char sig[8] = {};
  if (!in.read(reinterpret_cast<char*>(sig), 8)) return false;
  return png_sig_cmp(sig, 0, 8) == 0;
}

namespace {

// Area-weighted 1-D resampling weights: for every destination index, a list
// of (source index, weight) pairs whose weights sum to 1.
struct Tap {
  int index;
  double weight;
};

std::vector<std::vector<Tap>> AreaTaps(int src, int dst) {
  std::vector<std::vector<Tap>> taps(dst);
  const double scale = double(src) / dst;
  for (int d = 0; d < dst; ++d) {
    double lo = d * scale, hi = (d + 1) * scale;
    if (scale < 1.0) {
      // Upsampling: centre a unit-wide window on the sample position.
      const double c = (d + 0.5) * scale;
      lo = std::max(0.0, c - 0.5);
      hi = std::min(double(src), c + 0.5);
    }
    const double span = hi - lo;
    for (int s = int(std::floor(lo)); s < int(std::ceil(hi)); ++s) {
      const double w = std::min(hi, s + 1.0) - std::max(lo, double(s));
      if (w > 0) taps[d].push_back({std::clamp(s, 0, src - 1), w / span});
    }
  }
  return taps;
}

}  // namespace

Image Resize(const Image& src, int width, int height) {
  if (width <= 0 || height <= 0 || src.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "invalid resize target");
  }
  const auto xt = AreaTaps(src.width(), width);
  const auto yt = AreaTaps(src.height(), height);
  std::vector<double> tmp(size_t(width) * src.height() * 3);
  const auto sp = src.pixels();
  for (int y = 0; y < src.height(); ++y) {
    for (int x = 0; x < width; ++x) {
      double acc[3] = {0, 0, 0};
      for (const Tap& t : xt[x]) {
        const uint8_t* p = &sp[(size_t(y) * src.width() + t.index) * 3];
        for (int c = 0; c < 3; ++c) acc[c] += p[c] * t.weight;
      }
      for (int c = 0; c < 3; ++c) tmp[(size_t(y) * width + x) * 3 + c] = acc[c];
    }
  }
  Image out(width, height);
  auto op = out.pixels();
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      double acc[3] = {0, 0, 0};
      for (const Tap& t : yt[y]) {
        const double* p = &tmp[(size_t(t.index) * width + x) * 3];
        for (int c = 0; c < 3; ++c) acc[c] += p[c] * t.weight;
      }
      for (int c = 0; c < 3; ++c) {
        op[(size_t(y) * width + x) * 3 + c] =
            static_cast<uint8_t>(std::clamp(std::lround(acc[c]), 0L, 255L));
      }
    }
  }
  return out;
}

std::string Sha256Hex(std::span<const uint8_t> bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (!EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(),
                  nullptr)) {
    throw Error(ErrorCode::kIo, "SHA-256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(length * 2);
  for (unsigned i = 0; i < length; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 15]);
  }
  return out;
}

std::string Sha256Hex(std::string_view text) {
  return Sha256Hex(std::span<const uint8_t>(
      reinterpret_cast<const uint8_t*>(text.data()), text.size()));
}

CoverageRasterizer::CoverageRasterizer(int width, int height)
    : width_(std::max(width, 0)),
      height_(std::max(height, 0)),
      stride_(width_ + 2),
      accum_(size_t(stride_) * height_, 0.0f) {}

void CoverageRasterizer::MoveTo(double x, double y) {
  if (open_) Close();
  start_x_ = cur_x_ = x;
  start_y_ = cur_y_ = y;
  open_ = true;
}

void CoverageRasterizer::LineTo(double x, double y) {
  AddLine(cur_x_, cur_y_, x, y);
  cur_x_ = x;
  cur_y_ = y;
}

void CoverageRasterizer::QuadTo(double cx, double cy, double x, double y) {
  const double ddx = cur_x_ - 2 * cx + x;
  const double ddy = cur_y_ - 2 * cy + y;
  const double devsq = ddx * ddx + ddy * ddy;
  if (devsq < 0.333) {
    LineTo(x, y);
    return;
  }
  const int n = 1 + static_cast<int>(std::floor(std::sqrt(std::sqrt(3.0 * devsq))));
  const double x0 = cur_x_, y0 = cur_y_;
  for (int i = 1; i <= n; ++i) {
    const double t = double(i) / n;
    const double mt = 1.0 - t;
    LineTo(mt * mt * x0 + 2 * mt * t * cx + t * t * x,
           mt * mt * y0 + 2 * mt * t * cy + t * t * y);
  }
}

void CoverageRasterizer::Close() {
  if (!open_) return;
  if (cur_x_ != start_x_ || cur_y_ != start_y_) LineTo(start_x_, start_y_);
  open_ = false;
}

void CoverageRasterizer::AddLine(double x0, double y0, double x1, double y1) {
  if (y0 == y1 || height_ == 0) return;
  // Split where the segment crosses the canvas's left or right edge so that
  // every piece lies wholly inside or wholly outside [0, width]; clamping a
  // piece that straddles an edge would misplace area within the row.
  double cuts[2];
  int n = 0;
  for (const double edge : {0.0, double(width_)}) {
    if ((x0 < edge && x1 > edge) || (x0 > edge && x1 < edge)) {
      cuts[n++] = (edge - x0) / (x1 - x0);
    }
  }
  if (n == 2 && cuts[0] > cuts[1]) std::swap(cuts[0], cuts[1]);
  double px = x0, py = y0;
  for (int i = 0; i < n; ++i) {
    const double nx = x0 + cuts[i] * (x1 - x0);
    const double ny = y0 + cuts[i] * (y1 - y0);
    AddClippedLine(px, py, nx, ny);
    px = nx;
    py = ny;
  }
  AddClippedLine(px, py, x1, y1);
}

void CoverageRasterizer::AddClippedLine(double x0, double y0, double x1, double y1) {
  if (y0 == y1) return;
  float dir = 1.0f;
  if (y0 > y1) {
    std::swap(x0, x1);
    std::swap(y0, y1);
    dir = -1.0f;
  }
  if (y1 <= 0 || y0 >= height_) return;
  const double dxdy = (x1 - x0) / (y1 - y0);
  double x = x0;
  if (y0 < 0) {
    x -= y0 * dxdy;
    y0 = 0;
  }
  y1 = std::min<double>(y1, height_);
  const double xmax = width_;
  for (int y = static_cast<int>(y0); y < static_cast<int>(std::ceil(y1)); ++y) {
    float* row = &accum_[size_t(y) * stride_];
    const double dy = std::min(y + 1.0, y1) - std::max(double(y), y0);
    const double xnext = x + dxdy * dy;
    const float d = static_cast<float>(dy) * dir;
    // Pieces left of the canvas collapse onto column 0, right of it onto the
    // spill column; both keep the row's accumulated area exact.
    double xa = std::clamp(std::min(x, xnext), 0.0, xmax);
    double xb = std::clamp(std::max(x, xnext), 0.0, xmax);
    const double xa_floor = std::floor(xa);
    const int xai = static_cast<int>(xa_floor);
    const double xb_ceil = std::ceil(xb);
    const int xbi = static_cast<int>(xb_ceil);
    if (xbi <= xai + 1) {
      const double xmf = 0.5 * (xa + xb) - xa_floor;
      row[xai] += d - d * static_cast<float>(xmf);
      row[xai + 1] += d * static_cast<float>(xmf);
    } else {
      const double s = 1.0 / (xb - xa);
      const double xaf = xa - xa_floor;
      const double a0 = 0.5 * s * (1.0 - xaf) * (1.0 - xaf);
      const double xbf = xb - xb_ceil + 1.0;
      const double am = 0.5 * s * xbf * xbf;
      row[xai] += d * static_cast<float>(a0);
      if (xbi == xai + 2) {
        row[xai + 1] += d * static_cast<float>(1.0 - a0 - am);
      } else {
        const double a1 = s * (1.5 - xaf);
        row[xai + 1] += d * static_cast<float>(a1 - a0);
        for (int xi = xai + 2; xi < xbi - 1; ++xi) {
          row[xi] += d * static_cast<float>(s);
        }
        const double a2 = a1 + (xbi - xai - 3) * s;
        row[xbi - 1] += d * static_cast<float>(1.0 - a2 - am);
      }
      row[xbi] += d * static_cast<float>(am);
    }
    x = xnext;
  }
}

AlphaMask CoverageRasterizer::Finish() {
  if (open_) Close();
  AlphaMask mask(width_, height_);
  for (int y = 0; y < height_; ++y) {
    const float* row = &accum_[size_t(y) * stride_];
    float acc = 0.0f;
    for (int x = 0; x < width_; ++x) {
      acc += row[x];
      const float cov = std::min(std::fabs(acc), 1.0f);
      mask.data[size_t(y) * width_ + x] =
          static_cast<uint8_t>(cov * 255.0f + 0.5f);
    }
  }
  return mask;
}

AlphaMask RotateMask(const AlphaMask& mask, double degrees) {
  if (mask.empty()) return mask;
  const double rad = degrees * std::numbers::pi / 180.0;
  const double c = std::cos(rad), s = std::sin(rad);
  const double hw = mask.width / 2.0, hh = mask.height / 2.0;
  const double ow = std::fabs(mask.width * c) + std::fabs(mask.height * s);
  const double oh = std::fabs(mask.width * s) + std::fabs(mask.height * c);
  // Snap away floating-point noise such as cos(90°) ≈ 6e-17.
  AlphaMask out(static_cast<int>(std::ceil(ow - 1e-9)),
                static_cast<int>(std::ceil(oh - 1e-9)));
  const double ohw = out.width / 2.0, ohh = out.height / 2.0;
  for (int y = 0; y < out.height; ++y) {
    for (int x = 0; x < out.width; ++x) {
      const double dx = x + 0.5 - ohw, dy = y + 0.5 - ohh;
      // Inverse of a counter-clockwise turn on screen (y down).
      const double sx = dx * c - dy * s + hw - 0.5;
      const double sy = dx * s + dy * c + hh - 0.5;
      const int ix = static_cast<int>(std::floor(sx));
      const int iy = static_cast<int>(std::floor(sy));
      const double fx = sx - ix, fy = sy - iy;
      auto sample = [&](int px, int py) -> double {
        if (px < 0 || py < 0 || px >= mask.width || py >= mask.height) return 0;
        return mask.at(px, py);
      };
      const double v = sample(ix, iy) * (1 - fx) * (1 - fy) +
                       sample(ix + 1, iy) * fx * (1 - fy) +
                       sample(ix, iy + 1) * (1 - fx) * fy +
                       sample(ix + 1, iy + 1) * fx * fy;
      out.at(x, y) = static_cast<uint8_t>(std::clamp(v + 0.5, 0.0, 255.0));
    }
  }
  return out;
}

AlphaMask Embolden(const AlphaMask& mask) {
  if (mask.empty()) return mask;
  AlphaMask out(mask.width + 1, mask.height);
  for (int y = 0; y < mask.height; ++y) {
    for (int x = 0; x < out.width; ++x) {
      const uint8_t a = x < mask.width ? mask.at(x, y) : 0;
      const uint8_t b = x > 0 ? mask.at(x - 1, y) : 0;
      out.at(x, y) = std::max(a, b);
    }
  }
  return out;
}

}  // namespace docforge
