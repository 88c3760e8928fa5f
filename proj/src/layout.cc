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

#include "docforge/layout.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <tuple>

#include "docforge/error.hpp"

namespace docforge {

namespace {

int SampleInt(const IntRange& range, Rng& rng, const char* field) {
  if (!range.valid()) {
    throw Error(ErrorCode::kConfig,
                std::string("config field '") + field + "': min > max");
  }
  return static_cast<int>(rng.UniformInt(range.min, range.max));
}

double SampleReal(const RealRange& range, Rng& rng, const char* field) {
  if (!range.valid()) {
    throw Error(ErrorCode::kConfig,
                std::string("config field '") + field + "': min > max");
  }
  return rng.Uniform(range.min, range.max);
}

struct ElementBand {
  RegionKind kind;
  int height;
};

}  // namespace

const char* RegionKindName(RegionKind kind) {
  switch (kind) {
    case RegionKind::kTextBlock: return "text";
    case RegionKind::kNaturalImage: return "image";
    case RegionKind::kTable: return "table";
    case RegionKind::kChart: return "chart";
  }
  return "unknown";
}

Rect PageSpec::DataArea() const {
  return {margins.left, margins.top, width_px - margins.left - margins.right,
          height_px - margins.top - margins.bottom};
}

Rect PageSpec::ColumnArea(int column) const {
  const Rect data = DataArea();
  if (column_count <= 1) return data;
  const int width = (data.w - column_gap_px) / 2;
  return {data.x + column * (width + column_gap_px), data.y, width, data.h};
}

int PageSpec::LinePitch() const {
  return std::max(1, static_cast<int>(
                         std::lround(base_font_size_px * line_spacing_factor)));
}

PageSpec PlanPage(const GenerationConfig& config, Rng& rng,
                  bool allow_two_columns) {
  const PageConfig& c = config.page;
  PageSpec page;
  page.width_px = SampleInt(c.width, rng, "page.width");
  page.height_px = SampleInt(c.height, rng, "page.height");
  page.margins.top = SampleInt(c.margins, rng, "page.margins");
  page.margins.bottom = SampleInt(c.margins, rng, "page.margins");
  page.margins.left = SampleInt(c.margins, rng, "page.margins");
  page.margins.right = SampleInt(c.margins, rng, "page.margins");
  const bool two = rng.Chance(c.two_column_probability);
  page.column_count = allow_two_columns && two ? 2 : 1;
  page.column_gap_px = SampleInt(c.column_gap, rng, "page.column_gap");
  page.base_font_size_px = SampleInt(c.font_size, rng, "page.font_size");
  if (c.latin_fonts.empty() || c.cjk_fonts.empty()) {
    throw Error(ErrorCode::kConfig, "config field 'page.latin_fonts': empty");
  }
  page.font_id = rng.Pick(c.latin_fonts);
  page.cjk_font_id = rng.Pick(c.cjk_fonts);
  const auto gray = static_cast<uint8_t>(SampleInt(c.text_gray, rng, "page.text_gray"));
  page.text_color = {gray, gray, gray};
  const auto bg = static_cast<uint8_t>(
      SampleInt(c.background_gray, rng, "page.background_gray"));
  page.background_color = {bg, bg, bg};
  page.line_spacing_factor = SampleReal(c.line_spacing, rng, "page.line_spacing");
  page.segment_spacing_px = SampleInt(c.segment_spacing, rng, "page.segment_spacing");
  page.alignment = rng.Chance(c.justify_probability) ? Alignment::kJustified
                                                     : Alignment::kLeft;
  const Rect data = page.DataArea();
  if (data.w <= 0 || data.h <= 0 || page.base_font_size_px > data.h) {
    throw Error(ErrorCode::kConfig,
                "config field 'page.margins': data area is empty");
  }
  if (page.column_count == 2 && page.ColumnArea(0).w < 4 * page.base_font_size_px) {
    page.column_count = 1;
  }
  return page;
}

std::vector<RegionKind> SampleElementPlan(const LayoutConfig& config, Rng& rng) {
  const size_t count = rng.Weighted(config.element_count_weights);
  static constexpr RegionKind kKinds[] = {RegionKind::kNaturalImage,
                                          RegionKind::kTable, RegionKind::kChart};
  std::vector<RegionKind> plan;
  for (size_t i = 0; i < count; ++i) {
    plan.push_back(kKinds[rng.Weighted(config.element_kind_weights)]);
  }
  return plan;
}

void AssignReadingOrder(std::vector<Region>& regions) {
  std::sort(regions.begin(), regions.end(), [](const Region& a, const Region& b) {
    return std::tie(a.column, a.bbox.y, a.bbox.x) <
           std::tie(b.column, b.bbox.y, b.bbox.x);
  });
  for (size_t i = 0; i < regions.size(); ++i) {
    regions[i].reading_order = static_cast<int>(i);
  }
}

std::vector<Region> PartitionRegions(const PageSpec& page,
                                     std::span<const RegionKind> plan,
                                     const LayoutConfig& config, Rng& rng) {
  const Rect data = page.DataArea();
  if (data.w <= 0 || data.h <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "page has an empty data area");
  }
  std::vector<Region> regions;
  if (plan.empty()) {
    for (int c = 0; c < page.column_count; ++c) {
      regions.push_back({page.ColumnArea(c), RegionKind::kTextBlock, 0, c});
    }
    AssignReadingOrder(regions);
    return regions;
  }
  if (page.column_count != 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "pages with non-text elements are single-column");
  }

  const int gap = page.segment_spacing_px;
  std::vector<ElementBand> bands;
  int min_total = 0;
  for (RegionKind kind : plan) {
    std::array<int, 2> min_size{};
    RealRange fraction{};
    switch (kind) {
      case RegionKind::kTable:
        min_size = config.min_table_size;
        fraction = config.table_height_fraction;
        break;
      case RegionKind::kChart:
        min_size = config.min_chart_size;
        fraction = config.chart_height_fraction;
        break;
      case RegionKind::kNaturalImage:
        min_size = config.min_image_size;
        fraction = config.image_height_fraction;
        break;
      case RegionKind::kTextBlock:
        throw Error(ErrorCode::kInvalidArgument,
                    "element plans list non-text kinds only");
    }
    if (min_size[0] > data.w || min_size[1] > data.h) {
      throw Error(ErrorCode::kPlacementInfeasible,
                  std::string(RegionKindName(kind)) + " minimum size " +
                      std::to_string(min_size[0]) + "x" +
                      std::to_string(min_size[1]) + " exceeds the " +
                      std::to_string(data.w) + "x" + std::to_string(data.h) +
                      " data area");
    }
    const double f = SampleReal(fraction, rng, "layout.*_height_fraction");
    const int h = std::max(min_size[1], static_cast<int>(std::lround(f * data.h)));
    bands.push_back({kind, std::min(h, data.h)});
    min_total += min_size[1];
  }
  const int n = static_cast<int>(bands.size());
  const int gaps = (n - 1) * gap;
  if (min_total + gaps > data.h) {
    throw Error(ErrorCode::kPlacementInfeasible,
                "elements need " + std::to_string(min_total + gaps) +
                    "px of height, data area has " + std::to_string(data.h));
  }
  // Shrink sampled heights proportionally towards their minimum if needed.
  int total = gaps;
  for (const auto& b : bands) total += b.height;
  if (total > data.h) {
    const int excess = total - data.h;
    const int slack = total - gaps - min_total;
    int removed = 0;
    for (size_t i = 0; i < bands.size(); ++i) {
      const int min_h = plan[i] == RegionKind::kTable   ? config.min_table_size[1]
                        : plan[i] == RegionKind::kChart ? config.min_chart_size[1]
                                                        : config.min_image_size[1];
      const int room = bands[i].height - min_h;
      int cut = static_cast<int>(int64_t(excess) * room / std::max(slack, 1));
      if (i + 1 == bands.size()) cut = std::min(room, excess - removed);
      bands[i].height -= cut;
      removed += cut;
    }
    total = gaps;
    for (const auto& b : bands) total += b.height;
  }
  rng.Shuffle(bands);

  // Random split of the free height into n + 1 text slots.
  const int free = data.h - total;
  std::vector<int> cuts(n);
  for (int& c : cuts) c = static_cast<int>(rng.UniformInt(0, free));
  std::sort(cuts.begin(), cuts.end());
  std::vector<int> slots(n + 1);
  int prev = 0;
  for (int i = 0; i < n; ++i) {
    slots[i] = cuts[i] - prev;
    prev = cuts[i];
  }
  slots[n] = free - prev;

  // A text slot becomes a band when it holds one line plus its own gap;
  // otherwise it is left as whitespace.
  const int min_text = page.LinePitch();
  int y = data.y;
  bool placed_any = false;
  auto place = [&](RegionKind kind, int h) {
    if (placed_any) y += gap;
    regions.push_back({{data.x, y, data.w, h}, kind, 0, 0});
    y += h;
    placed_any = true;
  };
  for (int i = 0; i <= n; ++i) {
    const int s = slots[i];
    if (s - gap >= min_text) {
      place(RegionKind::kTextBlock, s - gap);
    } else {
      y += s;
    }
    if (i < n) place(bands[i].kind, bands[i].height);
  }
  AssignReadingOrder(regions);
  return regions;
}

LineBreakResult LayoutLines(const Region& block,
                            std::span<const TokenUnit> units,
                            std::span<const int> advances, int space_advance,
                            int ascent_px, const PageSpec& page) {
  if (block.kind != RegionKind::kTextBlock) {
    throw Error(ErrorCode::kInvalidArgument, "LayoutLines needs a TextBlock");
  }
  if (units.size() != advances.size()) {
    throw Error(ErrorCode::kInvalidArgument, "one advance per unit required");
  }
  LineBreakResult result;
  const int pitch = page.LinePitch();
  const int width = block.bbox.w;
  const int max_lines = pitch > 0 ? block.bbox.h / pitch : 0;
  const int baseline_offset =
      std::max(0, (pitch - page.base_font_size_px) / 2) + ascent_px;
  size_t next = 0;
  for (int line_index = 0; line_index < max_lines && next < units.size();
       ++line_index) {
    LineLayout line;
    line.alignment = page.alignment;
    line.baseline_y = line_index * pitch + baseline_offset;
    int x = 0;
    while (next < units.size()) {
      const int advance = std::max(1, advances[next]);
      if (line.slots.empty()) {
        // Oversized units sit alone and are clipped when drawn.
        line.slots.push_back({units[next], 0, advance});
        x = advance;
        ++next;
        continue;
      }
      const int sep = NeedsSeparator(line.slots.back().unit, units[next])
                          ? space_advance
                          : 0;
      if (x + sep + advance > width) break;
      line.slots.push_back({units[next], x + sep, advance});
      x += sep + advance;
      ++next;
    }
    // Justify every line except the one that ends the text.
    if (line.alignment == Alignment::kJustified && next < units.size() &&
        line.slots.size() > 1 && x < width) {
      const int gaps = static_cast<int>(line.slots.size()) - 1;
      const int extra = width - x;
      int shift = 0;
      for (int g = 0; g < gaps; ++g) {
        shift += extra / gaps + (g < extra % gaps ? 1 : 0);
        line.slots[g + 1].x += shift;
      }
    }
    result.lines.push_back(std::move(line));
  }
  result.consumed = next;
  return result;
}

}  // namespace docforge
