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

#include "docforge/config.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "docforge/error.hpp"
#include "docforge/raster.hpp"

namespace docforge {

using nlohmann::json;

namespace {

[[noreturn]] void Fail(const std::string& field, const std::string& what) {
  throw Error(ErrorCode::kConfig, "config field '" + field + "': " + what);
}

// Json pointer-ish path ("page.margins") -> "line L, column C".
using LocationMap = std::map<std::string, std::string>;

// Walks a JSON object against the schema. Every key that is read is marked;
// anything left unmarked afterwards is an unknown key.
class Reader {
 public:
  Reader(const json& node, std::string path, const LocationMap* locations)
      : node_(node), path_(std::move(path)), locations_(locations) {
    if (!node_.is_object()) FailHere(path_, "expected a mapping");
  }

  Reader Child(const std::string& key) {
    seen_.insert(key);
    return Reader(node_.at(key), Join(key), locations_);
  }
  bool Has(const std::string& key) const { return node_.contains(key); }

  void Int(const std::string& key, int& out) {
    if (!Take(key)) return;
    const json& v = node_.at(key);
    if (!v.is_number_integer()) FailHere(Join(key), "expected an integer");
    out = v.get<int>();
  }
  void Real(const std::string& key, double& out) {
    if (!Take(key)) return;
    const json& v = node_.at(key);
    if (!v.is_number()) FailHere(Join(key), "expected a number");
    out = v.get<double>();
  }
  void Bool(const std::string& key, bool& out) {
    if (!Take(key)) return;
    const json& v = node_.at(key);
    if (!v.is_boolean()) FailHere(Join(key), "expected true or false");
    out = v.get<bool>();
  }
  void String(const std::string& key, std::string& out) {
    if (!Take(key)) return;
    const json& v = node_.at(key);
    if (!v.is_string()) FailHere(Join(key), "expected a string");
    out = v.get<std::string>();
  }
  void Strings(const std::string& key, std::vector<std::string>& out) {
    if (!Take(key)) return;
    const json& v = node_.at(key);
    if (!v.is_array()) FailHere(Join(key), "expected a list of strings");
    out.clear();
    for (const json& item : v) {
      if (!item.is_string()) FailHere(Join(key), "expected a list of strings");
      out.push_back(item.get<std::string>());
    }
  }
  void Ints(const std::string& key, std::vector<int>& out) {
    if (!Take(key)) return;
    const json& v = node_.at(key);
    if (!v.is_array()) FailHere(Join(key), "expected a list of integers");
    out.clear();
    for (const json& item : v) {
      if (!item.is_number_integer()) {
        FailHere(Join(key), "expected a list of integers");
      }
      out.push_back(item.get<int>());
    }
  }
  template <size_t N, typename T>
  void Fixed(const std::string& key, std::array<T, N>& out) {
    if (!Take(key)) return;
    const json& v = node_.at(key);
    if (!v.is_array() || v.size() != N) {
      FailHere(Join(key), "expected a list of " + std::to_string(N) + " numbers");
    }
    for (size_t i = 0; i < N; ++i) {
      if constexpr (std::is_integral_v<T>) {
        if (!v[i].is_number_integer()) FailHere(Join(key), "expected integers");
      } else {
        if (!v[i].is_number()) FailHere(Join(key), "expected numbers");
      }
      out[i] = v[i].get<T>();
    }
  }
  void IntRangeField(const std::string& key, IntRange& out) {
    std::array<int, 2> pair{out.min, out.max};
    Fixed(key, pair);
    out = {pair[0], pair[1]};
  }
  void RealRangeField(const std::string& key, RealRange& out) {
    std::array<double, 2> pair{out.min, out.max};
    Fixed(key, pair);
    out = {pair[0], pair[1]};
  }

  void RejectUnknown() const {
    for (const auto& [key, value] : node_.items()) {
      if (!seen_.count(key)) FailHere(Join(key), "unknown key");
    }
  }

 private:
  bool Take(const std::string& key) {
    seen_.insert(key);
    return node_.contains(key) && !node_.at(key).is_null();
  }
  std::string Join(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }
  [[noreturn]] void FailHere(const std::string& field,
                             const std::string& what) const {
    if (locations_) {
      if (auto it = locations_->find(field); it != locations_->end()) {
        Fail(field, what + " (" + it->second + ")");
      }
    }
    Fail(field, what);
  }

  const json& node_;
  std::string path_;
  const LocationMap* locations_;
  std::set<std::string> seen_;
};

GenerationConfig FromJson(const json& root, const LocationMap* locations) {
  GenerationConfig c;
  Reader top(root, "", locations);
  if (top.Has("page")) {
    Reader r = top.Child("page");
    PageConfig& p = c.page;
    r.IntRangeField("width", p.width);
    r.IntRangeField("height", p.height);
    r.IntRangeField("margins", p.margins);
    r.Real("two_column_probability", p.two_column_probability);
    r.IntRangeField("column_gap", p.column_gap);
    r.IntRangeField("font_size", p.font_size);
    r.RealRangeField("line_spacing", p.line_spacing);
    r.IntRangeField("segment_spacing", p.segment_spacing);
    r.IntRangeField("text_gray", p.text_gray);
    r.IntRangeField("background_gray", p.background_gray);
    r.Real("justify_probability", p.justify_probability);
    r.Strings("latin_fonts", p.latin_fonts);
    r.Strings("cjk_fonts", p.cjk_fonts);
    r.String("fallback_font", p.fallback_font);
    r.RejectUnknown();
  }
  if (top.Has("layout")) {
    Reader r = top.Child("layout");
    LayoutConfig& l = c.layout;
    r.Fixed("element_count_weights", l.element_count_weights);
    r.Fixed("element_kind_weights", l.element_kind_weights);
    r.RealRangeField("table_height_fraction", l.table_height_fraction);
    r.RealRangeField("chart_height_fraction", l.chart_height_fraction);
    r.RealRangeField("image_height_fraction", l.image_height_fraction);
    r.Fixed("min_table_size", l.min_table_size);
    r.Fixed("min_chart_size", l.min_chart_size);
    r.Fixed("min_image_size", l.min_image_size);
    r.RejectUnknown();
  }
  if (top.Has("table")) {
    Reader r = top.Child("table");
    TableConfig& t = c.table;
    r.IntRangeField("rows", t.rows);
    r.IntRangeField("cols", t.cols);
    r.Real("merge_probability", t.merge_probability);
    r.Real("gridlined_weight", t.gridlined_weight);
    r.Real("gridless_weight", t.gridless_weight);
    r.IntRangeField("cell_units", t.cell_units);
    r.Real("multiline_probability", t.multiline_probability);
    r.Int("min_font_size", t.min_font_size);
    r.RejectUnknown();
  }
  if (top.Has("chart")) {
    Reader r = top.Child("chart");
    ChartConfig& h = c.chart;
    r.Fixed("kind_weights", h.kind_weights);
    r.IntRangeField("bar_categories", h.bar_categories);
    r.RealRangeField("bar_values", h.bar_values);
    r.IntRangeField("pie_slices", h.pie_slices);
    r.Real("pie_percent_probability", h.pie_percent_probability);
    r.IntRangeField("line_series", h.line_series);
    r.IntRangeField("line_points", h.line_points);
    r.RealRangeField("line_values", h.line_values);
    r.Real("line_integer_x_probability", h.line_integer_x_probability);
    r.IntRangeField("scatter_points", h.scatter_points);
    r.RealRangeField("scatter_values", h.scatter_values);
    r.Real("scatter_hide_x_ticks_probability",
           h.scatter_hide_x_ticks_probability);
    r.Bool("allow_scatter_override", h.allow_scatter_override);
    r.Ints("rotations", h.rotations);
    r.Int("min_font_size", h.min_font_size);
    r.RejectUnknown();
  }
  if (top.Has("corpora")) {
    Reader r = top.Child("corpora");
    CorporaConfig& k = c.corpora;
    r.String("english", k.english);
    r.String("chinese", k.chinese);
    std::string format =
        k.format == CorpusFormat::kPlainLines ? "plain-lines" : "json-lines";
    r.String("format", format);
    if (format == "plain-lines") {
      k.format = CorpusFormat::kPlainLines;
    } else if (format == "json-lines") {
      k.format = CorpusFormat::kJsonLines;
    } else {
      Fail("corpora.format", "expected plain-lines or json-lines");
    }
    r.String("images", k.images);
    r.String("fonts", k.fonts);
    r.RejectUnknown();
  }
  if (top.Has("compose")) {
    Reader r = top.Child("compose");
    r.Real("chinese_page_probability", c.compose.chinese_page_probability);
    r.Int("retry_budget", c.compose.retry_budget);
    r.Int("png_compression", c.compose.png_compression);
    r.RejectUnknown();
  }
  top.RejectUnknown();
  ValidateConfig(c);
  return c;
}

// YAML -> JSON with scalar type inference; quoted scalars stay strings.
json YamlToJson(const YAML::Node& node, const std::string& path,
                LocationMap& locations) {
  const YAML::Mark mark = node.Mark();
  if (!path.empty() && mark.line >= 0) {
    locations[path] = "line " + std::to_string(mark.line + 1) + ", column " +
                      std::to_string(mark.column + 1);
  }
  switch (node.Type()) {
    case YAML::NodeType::Null:
    case YAML::NodeType::Undefined:
      return nullptr;
    case YAML::NodeType::Sequence: {
      json out = json::array();
      for (const auto& item : node) out.push_back(YamlToJson(item, path, locations));
      return out;
    }
    case YAML::NodeType::Map: {
      json out = json::object();
      for (const auto& kv : node) {
        const std::string key = kv.first.as<std::string>();
        if (out.contains(key)) {
          Fail(path.empty() ? key : path + "." + key, "duplicate key");
        }
        out[key] = YamlToJson(kv.second, path.empty() ? key : path + "." + key,
                              locations);
      }
      return out;
    }
    case YAML::NodeType::Scalar:
      break;
  }
  const std::string& s = node.Scalar();
  if (node.Tag() == "!") return s;
  if (s == "true" || s == "True") return true;
  if (s == "false" || s == "False") return false;
  if (s == "~" || s == "null") return nullptr;
  if (!s.empty()) {
    size_t used = 0;
    try {
      const long long v = std::stoll(s, &used);
      if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    try {
      const double v = std::stod(s, &used);
      if (used == s.size() && std::isfinite(v)) return v;
    } catch (const std::exception&) {
    }
  }
  return s;
}

void CheckRange(const std::string& field, const IntRange& r, int lo, int hi) {
  if (!r.valid()) Fail(field, "min > max");
  if (r.min < lo || r.max > hi) {
    Fail(field, "values must lie in [" + std::to_string(lo) + ", " +
                    std::to_string(hi) + "]");
  }
}

void CheckRange(const std::string& field, const RealRange& r, double lo,
                double hi) {
  if (!r.valid()) Fail(field, "min > max");
  if (!(r.min >= lo && r.max <= hi)) {
    std::ostringstream os;
    os << "values must lie in [" << lo << ", " << hi << "]";
    Fail(field, os.str());
  }
}

void CheckProbability(const std::string& field, double p) {
  if (!(p >= 0.0 && p <= 1.0)) Fail(field, "probability must lie in [0, 1]");
}

template <size_t N>
void CheckWeights(const std::string& field, const std::array<double, N>& w) {
  double sum = 0;
  for (double v : w) {
    if (!(v >= 0.0) || !std::isfinite(v)) Fail(field, "weights must be >= 0");
    sum += v;
  }
  if (!(sum > 0)) Fail(field, "weights must sum to > 0");
}

void EmitYaml(YAML::Emitter& out, const json& value) {
  if (value.is_object()) {
    out << YAML::BeginMap;
    for (const auto& [key, item] : value.items()) {
      out << YAML::Key << key << YAML::Value;
      EmitYaml(out, item);
    }
    out << YAML::EndMap;
  } else if (value.is_array()) {
    out << YAML::Flow << YAML::BeginSeq;
    for (const auto& item : value) EmitYaml(out, item);
    out << YAML::EndSeq;
  } else if (value.is_string()) {
    out << YAML::DoubleQuoted << value.get<std::string>();
  } else {
    // nlohmann prints the shortest round-tripping form of numbers.
    out << value.dump();
  }
}

}  // namespace

void ValidateConfig(const GenerationConfig& c) {
  const PageConfig& p = c.page;
  CheckRange("page.width", p.width, 1, 20000);
  CheckRange("page.height", p.height, 1, 20000);
  CheckRange("page.margins", p.margins, 0, 10000);
  CheckRange("page.font_size", p.font_size, 1, 1000);
  if (p.width.min - 2 * p.margins.max <= 0 ||
      p.height.min - 2 * p.margins.max < p.font_size.max) {
    Fail("page.margins", "data area would be empty for the smallest page");
  }
  CheckProbability("page.two_column_probability", p.two_column_probability);
  CheckRange("page.column_gap", p.column_gap, 0, 10000);
  CheckRange("page.line_spacing", p.line_spacing, 1.0, 10.0);
  CheckRange("page.segment_spacing", p.segment_spacing, 0, 10000);
  CheckRange("page.text_gray", p.text_gray, 0, 255);
  CheckRange("page.background_gray", p.background_gray, 0, 255);
  CheckProbability("page.justify_probability", p.justify_probability);
  if (p.latin_fonts.empty()) Fail("page.latin_fonts", "must not be empty");
  if (p.cjk_fonts.empty()) Fail("page.cjk_fonts", "must not be empty");
  if (p.fallback_font.empty()) Fail("page.fallback_font", "must not be empty");

  const LayoutConfig& l = c.layout;
  CheckWeights("layout.element_count_weights", l.element_count_weights);
  CheckWeights("layout.element_kind_weights", l.element_kind_weights);
  CheckRange("layout.table_height_fraction", l.table_height_fraction, 0.01, 1.0);
  CheckRange("layout.chart_height_fraction", l.chart_height_fraction, 0.01, 1.0);
  CheckRange("layout.image_height_fraction", l.image_height_fraction, 0.01, 1.0);
  for (auto [name, size] : {std::pair{"layout.min_table_size", l.min_table_size},
                            std::pair{"layout.min_chart_size", l.min_chart_size},
                            std::pair{"layout.min_image_size", l.min_image_size}}) {
    if (size[0] <= 0 || size[1] <= 0) Fail(name, "sizes must be positive");
  }

  const TableConfig& t = c.table;
  CheckRange("table.rows", t.rows, 1, 100);
  CheckRange("table.cols", t.cols, 1, 100);
  CheckProbability("table.merge_probability", t.merge_probability);
  CheckWeights("table.style_weights",
               std::array<double, 2>{t.gridlined_weight, t.gridless_weight});
  CheckRange("table.cell_units", t.cell_units, 1, 100);
  CheckProbability("table.multiline_probability", t.multiline_probability);
  if (t.min_font_size <= 0) Fail("table.min_font_size", "must be positive");

  const ChartConfig& h = c.chart;
  CheckWeights("chart.kind_weights", h.kind_weights);
  CheckRange("chart.bar_categories", h.bar_categories, 1, 100);
  CheckRange("chart.bar_values", h.bar_values, 0.0, 1e9);
  CheckRange("chart.pie_slices", h.pie_slices, 1, 50);
  CheckProbability("chart.pie_percent_probability", h.pie_percent_probability);
  CheckRange("chart.line_series", h.line_series, 1, 4);
  CheckRange("chart.line_points", h.line_points, 2, 100);
  CheckRange("chart.line_values", h.line_values, -1e9, 1e9);
  CheckProbability("chart.line_integer_x_probability",
                   h.line_integer_x_probability);
  if (!h.allow_scatter_override && !(h.scatter_points == IntRange{5, 20})) {
    Fail("chart.scatter_points",
         "fixed at [5, 20]; set allow_scatter_override to change it");
  }
  CheckRange("chart.scatter_points", h.scatter_points, 1, 1000);
  CheckRange("chart.scatter_values", h.scatter_values, -1e9, 1e9);
  CheckProbability("chart.scatter_hide_x_ticks_probability",
                   h.scatter_hide_x_ticks_probability);
  if (h.rotations.empty()) Fail("chart.rotations", "must not be empty");
  for (int r : h.rotations) {
    if (r < 0 || r > 90) Fail("chart.rotations", "angles must lie in [0, 90]");
  }
  if (h.min_font_size <= 0) Fail("chart.min_font_size", "must be positive");

  const CorporaConfig& k = c.corpora;
  for (auto [name, value] : {std::pair{"corpora.english", &k.english},
                             std::pair{"corpora.chinese", &k.chinese},
                             std::pair{"corpora.images", &k.images},
                             std::pair{"corpora.fonts", &k.fonts}}) {
    if (value->empty()) Fail(name, "must not be empty");
  }

  CheckProbability("compose.chinese_page_probability",
                   c.compose.chinese_page_probability);
  if (c.compose.retry_budget < 1) Fail("compose.retry_budget", "must be >= 1");
  if (c.compose.png_compression < 0 || c.compose.png_compression > 9) {
    Fail("compose.png_compression", "must lie in [0, 9]");
  }
}

GenerationConfig ParseConfigYaml(const std::string& text,
                                 const std::filesystem::path& base_dir) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw Error(ErrorCode::kParse,
                "config parse error at line " + std::to_string(e.mark.line + 1) +
                    ", column " + std::to_string(e.mark.column + 1) + ": " +
                    e.msg);
  }
  LocationMap locations;
  json as_json = root.IsNull() ? json::object() : YamlToJson(root, "", locations);
  GenerationConfig config = FromJson(as_json, &locations);
  config.base_dir = base_dir;
  return config;
}

GenerationConfig LoadConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read config " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return ParseConfigYaml(buffer.str(), path.parent_path());
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

json ConfigToJson(const GenerationConfig& c) {
  auto range = [](const auto& r) { return json::array({r.min, r.max}); };
  json j;
  const PageConfig& p = c.page;
  j["page"] = {
      {"width", range(p.width)},
      {"height", range(p.height)},
      {"margins", range(p.margins)},
      {"two_column_probability", p.two_column_probability},
      {"column_gap", range(p.column_gap)},
      {"font_size", range(p.font_size)},
      {"line_spacing", range(p.line_spacing)},
      {"segment_spacing", range(p.segment_spacing)},
      {"text_gray", range(p.text_gray)},
      {"background_gray", range(p.background_gray)},
      {"justify_probability", p.justify_probability},
      {"latin_fonts", p.latin_fonts},
      {"cjk_fonts", p.cjk_fonts},
      {"fallback_font", p.fallback_font},
  };
  const LayoutConfig& l = c.layout;
  j["layout"] = {
      {"element_count_weights", l.element_count_weights},
      {"element_kind_weights", l.element_kind_weights},
      {"table_height_fraction", range(l.table_height_fraction)},
      {"chart_height_fraction", range(l.chart_height_fraction)},
      {"image_height_fraction", range(l.image_height_fraction)},
      {"min_table_size", l.min_table_size},
      {"min_chart_size", l.min_chart_size},
      {"min_image_size", l.min_image_size},
  };
  const TableConfig& t = c.table;
  j["table"] = {
      {"rows", range(t.rows)},
      {"cols", range(t.cols)},
      {"merge_probability", t.merge_probability},
      {"gridlined_weight", t.gridlined_weight},
      {"gridless_weight", t.gridless_weight},
      {"cell_units", range(t.cell_units)},
      {"multiline_probability", t.multiline_probability},
      {"min_font_size", t.min_font_size},
  };
  const ChartConfig& h = c.chart;
  j["chart"] = {
      {"kind_weights", h.kind_weights},
      {"bar_categories", range(h.bar_categories)},
      {"bar_values", range(h.bar_values)},
      {"pie_slices", range(h.pie_slices)},
      {"pie_percent_probability", h.pie_percent_probability},
      {"line_series", range(h.line_series)},
      {"line_points", range(h.line_points)},
      {"line_values", range(h.line_values)},
      {"line_integer_x_probability", h.line_integer_x_probability},
      {"scatter_points", range(h.scatter_points)},
      {"scatter_values", range(h.scatter_values)},
      {"scatter_hide_x_ticks_probability", h.scatter_hide_x_ticks_probability},
      {"allow_scatter_override", h.allow_scatter_override},
      {"rotations", h.rotations},
      {"min_font_size", h.min_font_size},
  };
  const CorporaConfig& k = c.corpora;
  j["corpora"] = {
      {"english", k.english},
      {"chinese", k.chinese},
      {"format", k.format == CorpusFormat::kPlainLines ? "plain-lines"
                                                        : "json-lines"},
      {"images", k.images},
      {"fonts", k.fonts},
  };
  j["compose"] = {
      {"chinese_page_probability", c.compose.chinese_page_probability},
      {"retry_budget", c.compose.retry_budget},
      {"png_compression", c.compose.png_compression},
  };
  return j;
}

GenerationConfig ConfigFromJson(const json& j,
                                const std::filesystem::path& base_dir) {
  GenerationConfig config = FromJson(j, nullptr);
  config.base_dir = base_dir;
  return config;
}

std::string ConfigToYaml(const GenerationConfig& config) {
  YAML::Emitter out;
  EmitYaml(out, ConfigToJson(config));
  return std::string(out.c_str()) + "\n";
}

std::string Fingerprint(const GenerationConfig& config) {
  return Sha256Hex(ConfigToJson(config).dump());
}

std::filesystem::path ResolvePath(const GenerationConfig& config,
                                  const std::string& relative) {
  std::filesystem::path p(relative);
  if (p.is_absolute() || config.base_dir.empty()) return p;
  return config.base_dir / p;
}

}  // namespace docforge
