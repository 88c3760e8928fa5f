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

#ifndef DOCFORGE_CHART_GEN_HPP_
#define DOCFORGE_CHART_GEN_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "docforge/config.hpp"
#include "docforge/corpus.hpp"
#include "docforge/draw.hpp"
#include "docforge/layout.hpp"
#include "docforge/rng.hpp"

namespace docforge {

enum class ChartKind { kBarVertical, kBarHorizontal, kPie, kLine, kScatter };

inline constexpr ChartKind kAllChartKinds[] = {
    ChartKind::kBarVertical, ChartKind::kBarHorizontal, ChartKind::kPie,
    ChartKind::kLine, ChartKind::kScatter};

// "bar_vertical", "bar_horizontal", "pie", "line", "scatter".
const char* ChartKindName(ChartKind kind);
std::optional<ChartKind> ParseChartKind(std::string_view name);
// Value of the annotation's type attribute: both bar orientations are "bar".
const char* ChartAnnotationType(ChartKind kind);

enum class PieMode { kPercent, kDecimal };

struct ChartPoint {
  std::string label;  // category, x-label or point name
  double x = 0.0;     // scatter only
  double y = 0.0;

  friend bool operator==(const ChartPoint&, const ChartPoint&) = default;
};

struct ChartSeries {
  std::string name;
  std::vector<ChartPoint> points;

  friend bool operator==(const ChartSeries&, const ChartSeries&) = default;
};

struct ChartStyle {
  int label_rotation_deg = 0;    // vertical-bar x labels
  std::vector<int> colors;       // palette index per series / bar / slice
  bool hide_x_tick_labels = false;  // scatter only

  friend bool operator==(const ChartStyle&, const ChartStyle&) = default;
};

// Values are stored already rounded to hundredths, so the printed numbers
// are exactly the data.
struct ChartSpec {
  ChartKind kind = ChartKind::kBarVertical;
  std::vector<ChartSeries> series;
  std::string title;
  PieMode pie_mode = PieMode::kPercent;
  ChartStyle style;

  friend bool operator==(const ChartSpec&, const ChartSpec&) = default;
};

// Throws Error(kInvalidArgument) when a kind-specific invariant fails.
void ValidateChartSpec(const ChartSpec& spec);

ChartSpec GenerateChartSpec(ChartKind kind, const TextCorpus& corpus,
                            const ChartConfig& config, Rng& rng);

// Splits `quanta` units over weights by the largest-remainder method, giving
// every entry at least one unit. Ties go to the lower index.
std::vector<int> LargestRemainder(const std::vector<double>& weights, int quanta);

// At most two decimals, trailing zeros stripped, no separators.
std::string FormatNumber(double value);
// Parses FormatNumber output exactly into hundredths; throws kParse.
int64_t ParseHundredths(std::string_view text);

// <chart type="KIND"><table>...</table></chart>
std::string ChartToAnnotation(const ChartSpec& spec);

// Rows of the chart's data table as printed strings.
struct ChartTable {
  std::string type;
  std::vector<std::vector<std::string>> rows;

  friend bool operator==(const ChartTable&, const ChartTable&) = default;
};

ChartTable ChartDataTable(const ChartSpec& spec);
// Parses one <chart> element starting at text[0]; checks the per-type row
// shape and, for pies, that printed values sum to exactly 100 or 1.
// Throws Error(kParse).
ChartTable ParseChartAnnotationPrefix(std::string_view text, size_t* consumed);
ChartTable ParseChartAnnotation(std::string_view text);

DrawList LayoutChart(const ChartSpec& spec, int width, int height,
                     const PageSpec& page, const ChartConfig& config,
                     const TextRenderer& renderer);

Image RenderChart(const ChartSpec& spec, const Rect& bbox, const PageSpec& page,
                  const ChartConfig& config, const TextRenderer& renderer);

}  // namespace docforge

#endif  // DOCFORGE_CHART_GEN_HPP_
