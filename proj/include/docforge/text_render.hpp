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

#ifndef DOCFORGE_TEXT_RENDER_HPP_
#define DOCFORGE_TEXT_RENDER_HPP_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "docforge/corpus.hpp"
#include "docforge/font.hpp"
#include "docforge/raster.hpp"

namespace docforge {

struct LineLayout;

// A rasterized word. raster.height == ascent_px + descent_px and
// raster.width == advance_px, so ink never extends past the advance.
struct GlyphPatch {
  AlphaMask raster;
  int advance_px = 1;
  int ascent_px = 0;
  int descent_px = 0;
  TokenUnit source_unit;
  Rgb color;
};

// Fonts used for one piece of text: CJK units take cjk, all others latin.
struct FontPair {
  std::string latin;
  std::string cjk;

  const std::string& For(const TokenUnit& unit) const {
    return unit.script == Script::kCjk ? cjk : latin;
  }
};

// Laid-out multi-unit text (table cells, chart labels).
struct TextRun {
  AlphaMask mask;
  int width = 0;
  int ascent = 0;
  int descent = 0;
  std::vector<TokenUnit> units;  // after any glyph substitution
};

class TextRenderer {
 public:
  TextRenderer(const FontRegistry& fonts, std::string fallback_font);

  // Rasterizes with exactly font_id; throws Error(kMissingGlyph) when the
  // font lacks a code point of unit.
  GlyphPatch RenderWord(const TokenUnit& unit, const std::string& font_id,
                        int size_px, Rgb color) const;

  // Retries with the fallback font, then replaces the unit by U+FFFD and
  // appends a warning. The returned patch's source_unit is what was drawn.
  GlyphPatch RenderWordWithFallback(const TokenUnit& unit,
                                    const std::string& font_id, int size_px,
                                    Rgb color,
                                    std::vector<std::string>* warnings) const;

  // Advance RenderWordWithFallback would produce, without rasterizing.
  int MeasureWord(const TokenUnit& unit, const std::string& font_id,
                  int size_px) const;
  // Unit actually drawn after fallback resolution.
  TokenUnit ResolveUnit(const TokenUnit& unit, const std::string& font_id) const;

  int SpaceAdvance(const std::string& font_id, int size_px) const;
  int Ascent(const FontPair& fonts, int size_px) const;
  int Descent(const FontPair& fonts, int size_px) const;

  int MeasureText(std::string_view text, const FontPair& fonts,
                  int size_px) const;
  TextRun RenderText(std::string_view text, const FontPair& fonts, int size_px,
                     bool bold = false) const;

  const FontRegistry& registry() const { return fonts_; }
  const std::string& fallback_font() const { return fallback_; }

 private:
  struct Resolution {
    TokenUnit unit;
    const Font* font;
    bool substituted;
  };
  Resolution Resolve(const TokenUnit& unit, const std::string& font_id) const;
  GlyphPatch Rasterize(const TokenUnit& unit, const Font& font, int size_px,
                       Rgb color) const;

  const FontRegistry& fonts_;
  std::string fallback_;
};

// Alpha-blends each patch at (block.x + slot.x, block.y + baseline - ascent),
// clipped to block. Returns the number of patches placed.
int ComposeLine(const LineLayout& line, std::span<const GlyphPatch> patches,
                Image& canvas, const Rect& block);

}  // namespace docforge

#endif  // DOCFORGE_TEXT_RENDER_HPP_
