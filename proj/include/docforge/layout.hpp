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

#ifndef DOCFORGE_LAYOUT_HPP_
#define DOCFORGE_LAYOUT_HPP_

#include <span>
#include <string>
#include <vector>

#include "docforge/config.hpp"
#include "docforge/corpus.hpp"
#include "docforge/raster.hpp"
#include "docforge/rng.hpp"
#include "docforge/text_render.hpp"

namespace docforge {

enum class Alignment { kLeft, kJustified };

struct Margins {
  int top = 0;
  int bottom = 0;
  int left = 0;
  int right = 0;

  friend bool operator==(const Margins&, const Margins&) = default;
};

// Global layout and typography for one page.
struct PageSpec {
  int width_px = 0;
  int height_px = 0;
  Margins margins;
  int column_count = 1;
  int column_gap_px = 0;
  int base_font_size_px = 0;
  std::string font_id;      // Latin-script units
  std::string cjk_font_id;  // CJK units
  Rgb text_color;
  Rgb background_color{255, 255, 255};
  double line_spacing_factor = 1.0;
  int segment_spacing_px = 0;
  Alignment alignment = Alignment::kLeft;

  Rect DataArea() const;
  Rect ColumnArea(int column) const;
  int LinePitch() const;
  FontPair fonts() const { return {font_id, cjk_font_id}; }

  friend bool operator==(const PageSpec&, const PageSpec&) = default;
};

enum class RegionKind { kTextBlock, kNaturalImage, kTable, kChart };

const char* RegionKindName(RegionKind kind);

struct Region {
  Rect bbox;
  RegionKind kind = RegionKind::kTextBlock;
  int reading_order = 0;
  int column = 0;

  friend bool operator==(const Region&, const Region&) = default;
};

struct UnitSlot {
  TokenUnit unit;
  int x = 0;  // relative to the block's left edge
  int advance = 0;
};

struct LineLayout {
  int baseline_y = 0;  // relative to the block's top edge
  std::vector<UnitSlot> slots;
  Alignment alignment = Alignment::kLeft;
};

struct LineBreakResult {
  std::vector<LineLayout> lines;
  size_t consumed = 0;
};

// Throws Error(kConfig) for inconsistent ranges. Two columns are only drawn
// when allow_two_columns is set.
PageSpec PlanPage(const GenerationConfig& config, Rng& rng,
                  bool allow_two_columns);

// Element count from layout.element_count_weights, kinds from
// layout.element_kind_weights.
std::vector<RegionKind> SampleElementPlan(const LayoutConfig& config, Rng& rng);

// Slices the data area into full-width horizontal bands: each requested
// non-text element claims one band, leftover space becomes TextBlocks.
// Throws Error(kPlacementInfeasible) when the elements cannot fit.
std::vector<Region> PartitionRegions(const PageSpec& page,
                                     std::span<const RegionKind> plan,
                                     const LayoutConfig& config, Rng& rng);

// Sorts by (column, y, x) and renumbers reading_order from 0.
void AssignReadingOrder(std::vector<Region>& regions);

// Greedy line breaking. Lines are page.LinePitch() apart; only lines that
// fit entirely inside the block are emitted. ascent_px places the baseline
// inside each line box.
LineBreakResult LayoutLines(const Region& block,
                            std::span<const TokenUnit> units,
                            std::span<const int> advances, int space_advance,
                            int ascent_px, const PageSpec& page);

}  // namespace docforge

#endif  // DOCFORGE_LAYOUT_HPP_
