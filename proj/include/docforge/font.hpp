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

#ifndef DOCFORGE_FONT_HPP_
#define DOCFORGE_FONT_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "docforge/raster.hpp"

namespace docforge {

// One glyph rasterized at a given pixel size, positioned relative to the
// pen origin on the baseline.
struct GlyphBitmap {
  AlphaMask mask;
  int left = 0;      // x offset of mask column 0 from the pen position
  int top = 0;       // rows from mask row 0 down to the baseline
  double advance = 0.0;
};

// TrueType font with quadratic (glyf) outlines.
//
// Rendering is unhinted with exact-area anti-aliasing, so output depends only
// on the font bytes and the requested size.
class Font {
 public:
  static std::shared_ptr<const Font> Load(const std::filesystem::path& path);

  // 0 when the font has no mapping for cp.
  uint16_t GlyphIndex(char32_t cp) const;
  bool Covers(char32_t cp) const { return GlyphIndex(cp) != 0; }

  int units_per_em() const { return units_per_em_; }
  // Scaled metrics at size_px, in pixels.
  double Ascent(double size_px) const { return ascender_ * size_px / units_per_em_; }
  double Descent(double size_px) const { return -descender_ * size_px / units_per_em_; }
  double Advance(uint16_t glyph, double size_px) const;

  // Cached and thread-safe.
  std::shared_ptr<const GlyphBitmap> Rasterize(uint16_t glyph, int size_px) const;

  const std::string& path() const { return path_; }

 private:
  struct Point {
    double x, y;
    bool on_curve;
  };
  using Contour = std::vector<Point>;

  Font() = default;
  void Parse();
  void ParseCmap(uint32_t offset);
  std::vector<Contour> Outline(uint16_t glyph, int depth = 0) const;

  uint16_t U16(size_t at) const;
  int16_t S16(size_t at) const { return static_cast<int16_t>(U16(at)); }
  uint32_t U32(size_t at) const;

  std::string path_;
  std::vector<uint8_t> data_;
  std::map<std::string, std::pair<uint32_t, uint32_t>> tables_;
  int units_per_em_ = 1000;
  int index_to_loc_format_ = 0;
  int num_glyphs_ = 0;
  int ascender_ = 0;
  int descender_ = 0;
  int num_hmetrics_ = 0;
  std::unordered_map<char32_t, uint16_t> cmap_;

  mutable std::mutex cache_mutex_;
  mutable std::unordered_map<uint64_t, std::shared_ptr<const GlyphBitmap>> cache_;
};

enum class FontCoverage { kLatin, kCjk };

struct FontEntry {
  std::string id;
  std::filesystem::path file;
  FontCoverage coverage = FontCoverage::kLatin;
  std::shared_ptr<const Font> font;
};

// Read-only id -> font table described by a manifest.json in the font
// directory:
//   {"fonts": [{"id": "...", "file": "...", "coverage": "latin" | "cjk"}]}
class FontRegistry {
 public:
  static FontRegistry LoadDirectory(const std::filesystem::path& dir);

  bool Contains(const std::string& id) const;
  // Throws kInvalidArgument for unknown ids.
  const FontEntry& Get(const std::string& id) const;
  const std::vector<FontEntry>& entries() const { return entries_; }

 private:
  std::vector<FontEntry> entries_;
};

}  // namespace docforge

#endif  // DOCFORGE_FONT_HPP_
