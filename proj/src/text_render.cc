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

#include "docforge/text_render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "docforge/error.hpp"
#include "docforge/layout.hpp"
#include "docforge/unicode.hpp"

namespace docforge {

namespace {

constexpr char32_t kReplacement = 0xFFFD;

bool CoversAll(const Font& font, const TokenUnit& unit) {
  for (char32_t cp : DecodeUtf8(unit.text)) {
    if (!font.Covers(cp)) return false;
  }
  return true;
}

}  // namespace

TextRenderer::TextRenderer(const FontRegistry& fonts, std::string fallback_font)
    : fonts_(fonts), fallback_(std::move(fallback_font)) {
  if (!fonts_.Contains(fallback_)) {
    throw Error(ErrorCode::kConfig,
                "config field 'page.fallback_font': unknown font '" +
                    fallback_ + "'");
  }
}

TextRenderer::Resolution TextRenderer::Resolve(const TokenUnit& unit,
                                               const std::string& font_id) const {
  const Font& primary = *fonts_.Get(font_id).font;
  if (CoversAll(primary, unit)) return {unit, &primary, false};
  const Font& fallback = *fonts_.Get(fallback_).font;
  if (CoversAll(fallback, unit)) return {unit, &fallback, false};
  TokenUnit replaced{EncodeUtf8(kReplacement), Script::kPunct};
  if (primary.Covers(kReplacement)) return {replaced, &primary, true};
  return {replaced, &fallback, true};
}

GlyphPatch TextRenderer::Rasterize(const TokenUnit& unit, const Font& font,
                                   int size_px, Rgb color) const {
  const std::u32string cps = DecodeUtf8(unit.text);
  struct Placed {
    std::shared_ptr<const GlyphBitmap> bitmap;
    int pen_x;
  };
  std::vector<Placed> placed;
  double pen = 0.0;
  for (char32_t cp : cps) {
    const uint16_t gid = font.GlyphIndex(cp);
    auto bitmap = font.Rasterize(gid, size_px);
    placed.push_back({bitmap, static_cast<int>(std::lround(pen))});
    pen += bitmap->advance;
  }
  GlyphPatch patch;
  patch.advance_px = std::max(1, static_cast<int>(std::lround(pen)));
  patch.ascent_px = static_cast<int>(std::ceil(font.Ascent(size_px)));
  patch.descent_px = static_cast<int>(std::ceil(font.Descent(size_px)));
  patch.source_unit = unit;
  patch.color = color;
  patch.raster = AlphaMask(patch.advance_px, patch.ascent_px + patch.descent_px);
  AlphaMask& out = patch.raster;
  for (const Placed& p : placed) {
    const AlphaMask& m = p.bitmap->mask;
    const int ox = p.pen_x + p.bitmap->left;
    const int oy = patch.ascent_px - p.bitmap->top;
    for (int y = 0; y < m.height; ++y) {
      const int ty = oy + y;
      if (ty < 0 || ty >= out.height) continue;
      for (int x = 0; x < m.width; ++x) {
        const int tx = ox + x;
        if (tx < 0 || tx >= out.width) continue;
        // Overlapping glyph coverage adds up, saturating.
        const int v = out.at(tx, ty) + m.at(x, y);
        out.at(tx, ty) = static_cast<uint8_t>(std::min(v, 255));
      }
    }
  }
  return patch;
}

GlyphPatch TextRenderer::RenderWord(const TokenUnit& unit,
                                    const std::string& font_id, int size_px,
                                    Rgb color) const {
  const Font& font = *fonts_.Get(font_id).font;
  for (char32_t cp : DecodeUtf8(unit.text)) {
    if (!font.Covers(cp)) {
      throw Error(ErrorCode::kMissingGlyph,
                  "font '" + font_id + "' has no glyph for U+" +
                      [&] {
                        char buf[16];
                        std::snprintf(buf, sizeof buf, "%04X", unsigned(cp));
                        return std::string(buf);
                      }());
    }
  }
  return Rasterize(unit, font, size_px, color);
}

GlyphPatch TextRenderer::RenderWordWithFallback(
    const TokenUnit& unit, const std::string& font_id, int size_px, Rgb color,
    std::vector<std::string>* warnings) const {
  Resolution r = Resolve(unit, font_id);
  if (r.substituted && warnings != nullptr) {
    warnings->push_back("no glyph for '" + unit.text + "' in '" + font_id +
                        "' or '" + fallback_ + "'; drew U+FFFD");
  }
  return Rasterize(r.unit, *r.font, size_px, color);
}

int TextRenderer::MeasureWord(const TokenUnit& unit, const std::string& font_id,
                              int size_px) const {
  Resolution r = Resolve(unit, font_id);
  double pen = 0.0;
  for (char32_t cp : DecodeUtf8(r.unit.text)) {
    pen += r.font->Advance(r.font->GlyphIndex(cp), size_px);
  }
  return std::max(1, static_cast<int>(std::lround(pen)));
}

TokenUnit TextRenderer::ResolveUnit(const TokenUnit& unit,
                                    const std::string& font_id) const {
  return Resolve(unit, font_id).unit;
}

int TextRenderer::SpaceAdvance(const std::string& font_id, int size_px) const {
  const Font& font = *fonts_.Get(font_id).font;
  const double advance = font.Advance(font.GlyphIndex(U' '), size_px);
  return std::max(1, static_cast<int>(std::lround(advance)));
}

int TextRenderer::Ascent(const FontPair& fonts, int size_px) const {
  return static_cast<int>(std::ceil(
      std::max(fonts_.Get(fonts.latin).font->Ascent(size_px),
               fonts_.Get(fonts.cjk).font->Ascent(size_px))));
}

int TextRenderer::Descent(const FontPair& fonts, int size_px) const {
  return static_cast<int>(std::ceil(
      std::max(fonts_.Get(fonts.latin).font->Descent(size_px),
               fonts_.Get(fonts.cjk).font->Descent(size_px))));
}

int TextRenderer::MeasureText(std::string_view text, const FontPair& fonts,
                              int size_px) const {
  const std::vector<TokenUnit> units = Tokenize(text);
  int width = 0;
  for (size_t i = 0; i < units.size(); ++i) {
    if (i > 0 && NeedsSeparator(units[i - 1], units[i])) {
      width += SpaceAdvance(fonts.latin, size_px);
    }
    width += MeasureWord(units[i], fonts.For(units[i]), size_px);
  }
  return width;
}

TextRun TextRenderer::RenderText(std::string_view text, const FontPair& fonts,
                                 int size_px, bool bold) const {
  const std::vector<TokenUnit> units = Tokenize(text);
  TextRun run;
  run.ascent = Ascent(fonts, size_px);
  run.descent = Descent(fonts, size_px);
  std::vector<std::pair<GlyphPatch, int>> patches;
  int x = 0;
  for (size_t i = 0; i < units.size(); ++i) {
    if (i > 0 && NeedsSeparator(units[i - 1], units[i])) {
      x += SpaceAdvance(fonts.latin, size_px);
    }
    GlyphPatch patch = RenderWordWithFallback(units[i], fonts.For(units[i]),
                                              size_px, {}, nullptr);
    run.units.push_back(patch.source_unit);
    const int advance = patch.advance_px;
    patches.emplace_back(std::move(patch), x);
    x += advance;
  }
  run.width = x + (bold ? 1 : 0);
  run.mask = AlphaMask(std::max(run.width, 1), run.ascent + run.descent);
  for (const auto& [patch, px] : patches) {
    const int oy = run.ascent - patch.ascent_px;
    for (int y = 0; y < patch.raster.height; ++y) {
      const int ty = oy + y;
      if (ty < 0 || ty >= run.mask.height) continue;
      for (int xx = 0; xx < patch.raster.width; ++xx) {
        const int tx = px + xx;
        if (tx >= run.mask.width) break;
        const int v = run.mask.at(tx, ty) + patch.raster.at(xx, y);
        run.mask.at(tx, ty) = static_cast<uint8_t>(std::min(v, 255));
      }
    }
  }
  if (bold) {
    // The extra column reserved above absorbs the dilation; Embolden's own
    // added column is always empty and is dropped.
    const AlphaMask bolder = Embolden(run.mask);
    for (int y = 0; y < run.mask.height; ++y) {
      for (int xx = 0; xx < run.mask.width; ++xx) {
        run.mask.at(xx, y) = bolder.at(xx, y);
      }
    }
  }
  return run;
}

int ComposeLine(const LineLayout& line, std::span<const GlyphPatch> patches,
                Image& canvas, const Rect& block) {
  if (patches.size() != line.slots.size()) {
    throw Error(ErrorCode::kInvalidArgument, "one patch per slot required");
  }
  int placed = 0;
  const int clip_right = std::min(block.right(), canvas.width());
  const int clip_bottom = std::min(block.bottom(), canvas.height());
  for (size_t i = 0; i < patches.size(); ++i) {
    const GlyphPatch& patch = patches[i];
    const int ox = block.x + line.slots[i].x;
    const int oy = block.y + line.baseline_y - patch.ascent_px;
    for (int y = 0; y < patch.raster.height; ++y) {
      const int ty = oy + y;
      if (ty < std::max(block.y, 0) || ty >= clip_bottom) continue;
      for (int x = 0; x < patch.raster.width; ++x) {
        const int tx = ox + x;
        if (tx < std::max(block.x, 0) || tx >= clip_right) continue;
        const uint8_t a = patch.raster.at(x, y);
        if (a != 0) canvas.Blend(tx, ty, patch.color, a);
      }
    }
    ++placed;
  }
  return placed;
}

}  // namespace docforge
