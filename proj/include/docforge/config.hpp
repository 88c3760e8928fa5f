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

#ifndef DOCFORGE_CONFIG_HPP_
#define DOCFORGE_CONFIG_HPP_

#include <array>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "docforge/corpus.hpp"

namespace docforge {

template <typename T>
struct Range {
  T min{};
  T max{};

  bool valid() const { return min <= max; }
  friend bool operator==(const Range&, const Range&) = default;
};

using IntRange = Range<int>;
using RealRange = Range<double>;

// Page Controller attributes.
struct PageConfig {
  IntRange width{960, 960};
  IntRange height{1280, 1280};
  IntRange margins{40, 80};  // each side sampled independently
  double two_column_probability = 0.3;  // pure-text pages only
  IntRange column_gap{24, 48};
  IntRange font_size{18, 26};
  RealRange line_spacing{1.2, 1.6};
  IntRange segment_spacing{10, 28};
  IntRange text_gray{0, 70};          // r = g = b for text
  IntRange background_gray{236, 255};
  double justify_probability = 0.5;
  std::vector<std::string> latin_fonts{"dejavu-sans", "dejavu-serif"};
  std::vector<std::string> cjk_fonts{"noto-sans-sc"};
  std::string fallback_font = "noto-sans-sc";

  friend bool operator==(const PageConfig&, const PageConfig&) = default;
};

// Region Controller attributes.
struct LayoutConfig {
  // Weights for 0, 1 or 2 non-text elements on a free-form page.
  std::array<double, 3> element_count_weights{0.2, 0.6, 0.2};
  // Weights for natural image, table, chart.
  std::array<double, 3> element_kind_weights{1.0, 1.0, 1.0};
  RealRange table_height_fraction{0.25, 0.5};
  RealRange chart_height_fraction{0.25, 0.5};
  RealRange image_height_fraction{0.2, 0.4};
  std::array<int, 2> min_table_size{240, 120};  // width, height
  std::array<int, 2> min_chart_size{320, 240};
  std::array<int, 2> min_image_size{120, 100};

  friend bool operator==(const LayoutConfig&, const LayoutConfig&) = default;
};

struct TableConfig {
  IntRange rows{3, 8};
  IntRange cols{2, 6};
  double merge_probability = 0.5;
  double gridlined_weight = 1.0;
  double gridless_weight = 1.0;
  IntRange cell_units{1, 4};
  // Chance that a gridlined cell draws a long text that wraps in its cell.
  double multiline_probability = 0.25;
  int min_font_size = 10;

  friend bool operator==(const TableConfig&, const TableConfig&) = default;
};

struct ChartConfig {
  // bar_vertical, bar_horizontal, pie, line, scatter
  std::array<double, 5> kind_weights{1.0, 1.0, 1.0, 1.0, 1.0};
  IntRange bar_categories{3, 8};
  RealRange bar_values{1.0, 1000.0};
  IntRange pie_slices{2, 6};
  double pie_percent_probability = 0.5;
  IntRange line_series{1, 4};
  IntRange line_points{4, 10};
  RealRange line_values{0.0, 1500.0};
  double line_integer_x_probability = 0.5;
  IntRange scatter_points{5, 20};
  RealRange scatter_values{0.0, 1500.0};
  double scatter_hide_x_ticks_probability = 0.5;
  bool allow_scatter_override = false;
  std::vector<int> rotations{0, 30, 45, 60, 90};
  int min_font_size = 10;

  friend bool operator==(const ChartConfig&, const ChartConfig&) = default;
};

struct CorporaConfig {
  std::string english = "corpus/english.txt";
  std::string chinese = "corpus/chinese.txt";
  CorpusFormat format = CorpusFormat::kPlainLines;
  std::string images = "images";
  std::string fonts = "fonts";

  friend bool operator==(const CorporaConfig&, const CorporaConfig&) = default;
};

struct ComposeConfig {
  // Language draw for pages with images, tables or charts.
  double chinese_page_probability = 0.5;
  int retry_budget = 8;
  int png_compression = 3;

  friend bool operator==(const ComposeConfig&, const ComposeConfig&) = default;
};

// Every sampled range and probability in the pipeline.
struct GenerationConfig {
  PageConfig page;
  LayoutConfig layout;
  TableConfig table;
  ChartConfig chart;
  CorporaConfig corpora;
  ComposeConfig compose;
  // Directory that relative corpus paths resolve against. Not part of the
  // fingerprint.
  std::filesystem::path base_dir;

  friend bool operator==(const GenerationConfig& a, const GenerationConfig& b) {
    return a.page == b.page && a.layout == b.layout && a.table == b.table &&
           a.chart == b.chart && a.corpora == b.corpora &&
           a.compose == b.compose;
  }
};

// Throws Error(kConfig) naming the offending field.
void ValidateConfig(const GenerationConfig& config);

// Strict YAML loader: unknown keys are rejected, missing keys keep defaults.
GenerationConfig LoadConfig(const std::filesystem::path& path);
GenerationConfig ParseConfigYaml(const std::string& text,
                                 const std::filesystem::path& base_dir = {});

nlohmann::json ConfigToJson(const GenerationConfig& config);
GenerationConfig ConfigFromJson(const nlohmann::json& json,
                                const std::filesystem::path& base_dir = {});
std::string ConfigToYaml(const GenerationConfig& config);

// SHA-256 of the canonical (sorted-key, compact) JSON form.
std::string Fingerprint(const GenerationConfig& config);

std::filesystem::path ResolvePath(const GenerationConfig& config,
                                  const std::string& relative);

}  // namespace docforge

#endif  // DOCFORGE_CONFIG_HPP_
