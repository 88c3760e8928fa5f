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

#include "docforge/chart_gen.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <set>

#include "docforge/error.hpp"
#include "docforge/table_gen.hpp"
#include "docforge/unicode.hpp"

namespace docforge {

namespace {

constexpr Rgb kPalette[] = {
    {31, 119, 180}, {255, 127, 14}, {44, 160, 44},  {214, 39, 40},
    {148, 103, 189}, {140, 86, 75}, {227, 119, 194}, {127, 127, 127},
    {188, 189, 34}, {23, 190, 207}};
constexpr int kPaletteSize = 10;

double Round2(double v) { return static_cast<double>(std::llround(v * 100)) / 100; }

bool IsCjkPunct(char32_t cp) {
  return (cp >= 0x3000 && cp <= 0x303F) || (cp >= 0xFF00 && cp <= 0xFF0F) ||
         (cp >= 0xFF1A && cp <= 0xFF20) || (cp >= 0xFF3B && cp <= 0xFF40) ||
         (cp >= 0xFF5B && cp <= 0xFF65);
}

bool IsAsciiPunct(char ch) {
  return (ch >= '!' && ch <= '/') || (ch >= ':' && ch <= '@') ||
         (ch >= '[' && ch <= '`') || (ch >= '{' && ch <= '~');
}

// Word-like units of a corpus span with punctuation dropped.
std::string CleanLabel(const std::vector<TokenUnit>& span) {
  std::vector<TokenUnit> kept;
  for (TokenUnit unit : span) {
    if (unit.script == Script::kPunct) continue;
    if (unit.script == Script::kCjk) {
      if (IsCjkPunct(DecodeUtf8(unit.text)[0])) continue;
    } else {
      std::string& t = unit.text;
      while (!t.empty() && IsAsciiPunct(t.back())) t.pop_back();
      size_t lead = 0;
      while (lead < t.size() && IsAsciiPunct(t[lead])) ++lead;
      t.erase(0, lead);
      if (t.empty()) continue;
    }
    kept.push_back(std::move(unit));
  }
  return JoinUnits(kept);
}

std::vector<std::string> UniqueLabels(const TextCorpus& corpus, int count,
                                      int min_units, int max_units, Rng& rng) {
  std::vector<std::string> labels;
  std::set<std::string> seen;
  for (int attempt = 0; attempt < 40 * count && int(labels.size()) < count;
       ++attempt) {
    const auto n = static_cast<size_t>(rng.UniformInt(min_units, max_units));
    std::string label = CleanLabel(SampleTextSpan(corpus, n, rng));
    // Skip fragments such as "a" or "of" that make poor labels.
    const size_t min_length = !label.empty() && IsCjk(DecodeUtf8(label)[0]) ? 2 : 3;
    if (CodePointCount(label) < min_length || !seen.insert(label).second) continue;
    labels.push_back(std::move(label));
  }
  while (int(labels.size()) < count) {
    std::string label = "item " + std::to_string(labels.size() + 1);
    if (seen.insert(label).second) labels.push_back(std::move(label));
  }
  return labels;
}

std::vector<std::string> CorpusLabels(const TextCorpus& corpus, int count, Rng& rng) {
  const bool cjk = corpus.language() == Language::kChinese;
  return UniqueLabels(corpus, count, cjk ? 2 : 1, cjk ? 4 : 2, rng);
}

int SampleCount(const IntRange& range, Rng& rng) {
  return static_cast<int>(rng.UniformInt(range.min, range.max));
}

double SampleValue(const RealRange& range, Rng& rng, bool integer) {
  const double v = rng.Uniform(range.min, range.max);
  return integer ? std::round(v) : Round2(v);
}

std::vector<int> PaletteOrder(Rng& rng) {
  std::vector<int> order(kPaletteSize);
  for (int i = 0; i < kPaletteSize; ++i) order[i] = i;
  rng.Shuffle(order);
  return order;
}

}  // namespace

const char* ChartKindName(ChartKind kind) {
  switch (kind) {
    case ChartKind::kBarVertical: return "bar_vertical";
    case ChartKind::kBarHorizontal: return "bar_horizontal";
    case ChartKind::kPie: return "pie";
    case ChartKind::kLine: return "line";
    case ChartKind::kScatter: return "scatter";
  }
  return "unknown";
}

std::optional<ChartKind> ParseChartKind(std::string_view name) {
  for (ChartKind kind : kAllChartKinds) {
    if (name == ChartKindName(kind)) return kind;
  }
  return std::nullopt;
}

const char* ChartAnnotationType(ChartKind kind) {
  switch (kind) {
    case ChartKind::kBarVertical:
    case ChartKind::kBarHorizontal: return "bar";
    case ChartKind::kPie: return "pie";
    case ChartKind::kLine: return "line";
    case ChartKind::kScatter: return "scatter";
  }
  return "unknown";
}

std::vector<int> LargestRemainder(const std::vector<double>& weights, int quanta) {
  const int n = static_cast<int>(weights.size());
  if (n == 0 || quanta < n) {
    throw Error(ErrorCode::kInvalidArgument, "need at least one quantum per entry");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w > 0.0)) throw Error(ErrorCode::kInvalidArgument, "weights must be > 0");
    total += w;
  }
  const int spare = quanta - n;
  std::vector<int> out(n);
  std::vector<std::pair<double, int>> remainders;
  int assigned = 0;
  for (int i = 0; i < n; ++i) {
    const double exact = weights[i] / total * spare;
    const double whole = std::floor(exact);
    out[i] = 1 + static_cast<int>(whole);
    assigned += out[i];
    remainders.emplace_back(exact - whole, i);
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (int k = 0; assigned < quanta; ++k, ++assigned) {
    ++out[remainders[k % n].second];
  }
  return out;
}

std::string FormatNumber(double value) {
  const long long hundredths = std::llround(value * 100);
  const bool negative = hundredths < 0;
  const unsigned long long mag = negative ? -hundredths : hundredths;
  std::string out = (negative ? "-" : "") + std::to_string(mag / 100);
  const unsigned frac = static_cast<unsigned>(mag % 100);
  if (frac != 0) {
    out += '.';
    out += char('0' + frac / 10);
    if (frac % 10 != 0) out += char('0' + frac % 10);
  }
  return out;
}

int64_t ParseHundredths(std::string_view text) {
  auto fail = [&] {
    throw Error(ErrorCode::kParse, "not a chart number: '" + std::string(text) + "'");
  };
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && s[0] == '-') {
    negative = true;
    s.remove_prefix(1);
  }
  const size_t dot = s.find('.');
  const std::string_view whole = s.substr(0, dot);
  const std::string_view frac =
      dot == std::string_view::npos ? std::string_view() : s.substr(dot + 1);
  if (whole.empty() || (whole.size() > 1 && whole[0] == '0')) fail();
  if (dot != std::string_view::npos &&
      (frac.empty() || frac.size() > 2 || frac.back() == '0')) {
    fail();
  }
  int64_t w = 0;
  auto [p, ec] = std::from_chars(whole.data(), whole.data() + whole.size(), w);
  if (ec != std::errc() || p != whole.data() + whole.size()) fail();
  int64_t f = 0;
  for (size_t i = 0; i < 2; ++i) {
    f *= 10;
    if (i < frac.size()) {
      if (!IsAsciiDigit(frac[i])) fail();
      f += frac[i] - '0';
    }
  }
  const int64_t v = w * 100 + f;
  return negative ? -v : v;
}

void ValidateChartSpec(const ChartSpec& spec) {
  auto fail = [&](const std::string& what) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string("invalid ") + ChartKindName(spec.kind) + " chart: " + what);
  };
  if (spec.series.empty()) fail("no series");
  for (const ChartSeries& s : spec.series) {
    if (s.points.empty()) fail("empty series");
    for (const ChartPoint& p : s.points) {
      if (p.label.empty()) fail("empty label");
      if (Round2(p.y) != p.y || Round2(p.x) != p.x) fail("unrounded value");
    }
  }
  switch (spec.kind) {
    case ChartKind::kBarVertical:
    case ChartKind::kBarHorizontal: {
      if (spec.series.size() != 1) fail("bars take one series");
      std::set<std::string> labels;
      for (const ChartPoint& p : spec.series[0].points) {
        if (!labels.insert(p.label).second) fail("duplicate category '" + p.label + "'");
      }
      break;
    }
    case ChartKind::kPie: {
      if (spec.series.size() != 1) fail("pies take one series");
      int64_t total = 0;
      for (const ChartPoint& p : spec.series[0].points) {
        if (!(p.y > 0)) fail("non-positive slice");
        total += std::llround(p.y * 100);
      }
      const int64_t want = spec.pie_mode == PieMode::kPercent ? 10000 : 100;
      if (total != want) fail("slices do not sum to the mode total");
      break;
    }
    case ChartKind::kLine: {
      if (spec.series.size() < 1 || spec.series.size() > 4) fail("1-4 series");
      for (const ChartSeries& s : spec.series) {
        if (s.name.empty()) fail("unnamed series");
        if (s.points.size() != spec.series[0].points.size()) fail("ragged series");
        for (size_t i = 0; i < s.points.size(); ++i) {
          if (s.points[i].label != spec.series[0].points[i].label) fail("x-labels differ");
        }
      }
      break;
    }
    case ChartKind::kScatter: {
      if (spec.series.size() != 1) fail("scatter takes one series");
      break;
    }
  }
}

ChartSpec GenerateChartSpec(ChartKind kind, const TextCorpus& corpus,
                            const ChartConfig& config, Rng& rng) {
  ChartSpec spec;
  spec.kind = kind;
  const bool cjk = corpus.language() == Language::kChinese;
  spec.title = UniqueLabels(corpus, 1, cjk ? 3 : 2, cjk ? 8 : 5, rng)[0];
  const std::vector<int> colors = PaletteOrder(rng);
  switch (kind) {
    case ChartKind::kBarVertical:
    case ChartKind::kBarHorizontal: {
      const int n = SampleCount(config.bar_categories, rng);
      const bool integer = rng.Chance(0.5);
      ChartSeries series{spec.title, {}};
      for (std::string& label : CorpusLabels(corpus, n, rng)) {
        series.points.push_back({std::move(label), 0.0,
                                 SampleValue(config.bar_values, rng, integer)});
      }
      spec.series.push_back(std::move(series));
      spec.style.colors = {colors[0]};
      if (kind == ChartKind::kBarVertical && !config.rotations.empty()) {
        spec.style.label_rotation_deg = rng.Pick(config.rotations);
      }
      break;
    }
    case ChartKind::kPie: {
      const int n = SampleCount(config.pie_slices, rng);
      spec.pie_mode = rng.Chance(config.pie_percent_probability) ? PieMode::kPercent
                                                                 : PieMode::kDecimal;
      std::vector<double> weights(n);
      for (double& w : weights) w = rng.Uniform(1.0, 100.0);
      const std::vector<int> quanta = LargestRemainder(weights, 100);
      ChartSeries series{spec.title, {}};
      const std::vector<std::string> labels = CorpusLabels(corpus, n, rng);
      for (int i = 0; i < n; ++i) {
        const double v = spec.pie_mode == PieMode::kPercent ? quanta[i] : quanta[i] / 100.0;
        series.points.push_back({labels[i], 0.0, v});
        spec.style.colors.push_back(colors[i % kPaletteSize]);
      }
      spec.series.push_back(std::move(series));
      break;
    }
    case ChartKind::kLine: {
      const int s = SampleCount(config.line_series, rng);
      const int n = SampleCount(config.line_points, rng);
      std::vector<std::string> xs;
      if (rng.Chance(config.line_integer_x_probability)) {
        const int start = rng.Chance(0.5) ? 1 : static_cast<int>(rng.UniformInt(1990, 2015));
        for (int i = 0; i < n; ++i) xs.push_back(std::to_string(start + i));
      } else {
        xs = CorpusLabels(corpus, n, rng);
      }
      const bool integer = rng.Chance(0.3);
      const std::vector<std::string> names = CorpusLabels(corpus, s, rng);
      for (int k = 0; k < s; ++k) {
        ChartSeries series{names[k], {}};
        for (int i = 0; i < n; ++i) {
          series.points.push_back({xs[i], 0.0, SampleValue(config.line_values, rng, integer)});
        }
        spec.series.push_back(std::move(series));
        spec.style.colors.push_back(colors[k]);
      }
      break;
    }
    case ChartKind::kScatter: {
      if (!config.allow_scatter_override &&
          (config.scatter_points.min < 5 || config.scatter_points.max > 20)) {
        throw Error(ErrorCode::kConfig,
                    "config field 'chart.scatter_points': must stay within [5, 20] "
                    "unless allow_scatter_override is set");
      }
      const int n = SampleCount(config.scatter_points, rng);
      const bool integer_x = rng.Chance(0.5);
      ChartSeries series{spec.title, {}};
      for (int i = 0; i < n; ++i) {
        ChartPoint p;
        p.label = "p" + std::to_string(i + 1);
        p.x = SampleValue(config.scatter_values, rng, integer_x);
        p.y = SampleValue(config.scatter_values, rng, false);
        series.points.push_back(std::move(p));
      }
      spec.series.push_back(std::move(series));
      spec.style.colors = {colors[0]};
      spec.style.hide_x_tick_labels = rng.Chance(config.scatter_hide_x_ticks_probability);
      break;
    }
  }
  ValidateChartSpec(spec);
  return spec;
}

ChartTable ChartDataTable(const ChartSpec& spec) {
  ChartTable table;
  table.type = ChartAnnotationType(spec.kind);
  const ChartSeries& first = spec.series.at(0);
  switch (spec.kind) {
    case ChartKind::kBarVertical:
    case ChartKind::kBarHorizontal:
    case ChartKind::kPie:
      for (const ChartPoint& p : first.points) {
        table.rows.push_back({p.label, FormatNumber(p.y)});
      }
      break;
    case ChartKind::kLine: {
      auto& header = table.rows.emplace_back();
      for (const ChartPoint& p : first.points) header.push_back(p.label);
      for (const ChartSeries& s : spec.series) {
        auto& row = table.rows.emplace_back();
        row.push_back(s.name);
        for (const ChartPoint& p : s.points) row.push_back(FormatNumber(p.y));
      }
      break;
    }
    case ChartKind::kScatter:
      for (const ChartPoint& p : first.points) {
        table.rows.push_back({p.label, FormatNumber(p.x), FormatNumber(p.y)});
      }
      break;
  }
  return table;
}

std::string ChartToAnnotation(const ChartSpec& spec) {
  const ChartTable table = ChartDataTable(spec);
  std::string out = "<chart type=\"" + table.type + "\"><table>";
  for (const auto& row : table.rows) {
    out += "<tr>";
    for (const std::string& cell : row) out += "<td>" + HtmlEscape(cell) + "</td>";
    out += "</tr>";
  }
  out += "</table></chart>";
  return out;
}

ChartTable ParseChartAnnotationPrefix(std::string_view text, size_t* consumed) {
  size_t pos = 0;
  auto fail = [&](const std::string& what) -> void {
    throw Error(ErrorCode::kParse,
                "chart annotation at byte " + std::to_string(pos) + ": " + what);
  };
  auto accept = [&](std::string_view token) {
    if (text.substr(pos, token.size()) != token) return false;
    pos += token.size();
    return true;
  };
  auto expect = [&](std::string_view token) {
    if (!accept(token)) fail("expected '" + std::string(token) + "'");
  };
  ChartTable table;
  expect("<chart type=\"");
  const size_t quote = text.find('"', pos);
  if (quote == std::string_view::npos) fail("unterminated type");
  table.type = std::string(text.substr(pos, quote - pos));
  pos = quote + 1;
  if (table.type != "bar" && table.type != "pie" && table.type != "line" &&
      table.type != "scatter") {
    fail("unknown chart type '" + table.type + "'");
  }
  expect("><table>");
  while (accept("<tr>")) {
    auto& row = table.rows.emplace_back();
    while (accept("<td>")) {
      const size_t end = text.find('<', pos);
      if (end == std::string_view::npos) fail("unterminated cell");
      row.push_back(HtmlUnescape(text.substr(pos, end - pos)));
      pos = end;
      if (row.back().empty()) fail("empty cell");
      expect("</td>");
    }
    expect("</tr>");
    if (row.empty()) fail("empty row");
  }
  expect("</table></chart>");
  if (table.rows.empty()) fail("no rows");

  auto numeric = [&](const std::string& cell) { return ParseHundredths(cell); };
  if (table.type == "bar" || table.type == "pie") {
    int64_t total = 0;
    for (const auto& row : table.rows) {
      if (row.size() != 2) fail("bar/pie rows hold label and value");
      const int64_t v = numeric(row[1]);
      if (table.type == "pie" && v <= 0) fail("non-positive pie slice");
      total += v;
    }
    if (table.type == "pie" && total != 10000 && total != 100) {
      fail("pie values sum to " + FormatNumber(total / 100.0) + ", not 100 or 1");
    }
  } else if (table.type == "line") {
    if (table.rows.size() < 2) fail("line chart without series");
    const size_t n = table.rows[0].size();
    for (size_t r = 1; r < table.rows.size(); ++r) {
      if (table.rows[r].size() != n + 1) fail("series row length mismatch");
      for (size_t i = 1; i <= n; ++i) numeric(table.rows[r][i]);
    }
  } else {
    for (const auto& row : table.rows) {
      if (row.size() != 3) fail("scatter rows hold label, x and y");
      numeric(row[1]);
      numeric(row[2]);
    }
  }
  if (consumed != nullptr) *consumed = pos;
  return table;
}

ChartTable ParseChartAnnotation(std::string_view text) {
  size_t consumed = 0;
  ChartTable table = ParseChartAnnotationPrefix(text, &consumed);
  if (consumed != text.size()) {
    throw Error(ErrorCode::kParse, "trailing bytes after </chart>");
  }
  return table;
}

namespace {

struct Scale {
  double max = 1.0;
  double step = 1.0;
};

Scale NiceScale(double max_value, int ticks = 5) {
  if (!(max_value > 0)) return {5.0, 1.0};
  const double raw = max_value / ticks;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double norm = raw / mag;
  const double unit = norm <= 1 ? 1 : norm <= 2 ? 2 : norm <= 2.5 ? 2.5 : norm <= 5 ? 5 : 10;
  Scale s;
  s.step = unit * mag;
  s.max = std::ceil(max_value / s.step - 1e-9) * s.step;
  return s;
}

Rgb Lighten(Rgb c, Rgb bg, double t) {
  auto mix = [&](uint8_t a, uint8_t b) {
    return static_cast<uint8_t>(std::lround(a + (b - a) * t));
  };
  return {mix(c.r, bg.r), mix(c.g, bg.g), mix(c.b, bg.b)};
}

std::vector<Point2> Circle(Point2 c, double r, int segments = 48) {
  std::vector<Point2> pts;
  for (int i = 0; i < segments; ++i) {
    const double a = 2 * std::numbers::pi * i / segments;
    pts.push_back({c.x + r * std::cos(a), c.y + r * std::sin(a)});
  }
  return pts;
}

class ChartPainter {
 public:
  ChartPainter(const ChartSpec& spec, DrawList& list, const PageSpec& page,
               const TextRenderer& renderer, int size)
      : spec_(spec), list_(list), renderer_(renderer), size_(size),
        ink_(page.text_color), bg_(page.background_color),
        pad_(std::max(4, size / 2)) {}

  // False when the plot would be too cramped at this font size.
  bool Paint() {
    const int title_size = size_ + 2;
    top_ = pad_ + LineHeight(title_size) + pad_;
    DrawOp& title = list_.Text(DrawRole::kTitle, spec_.title,
                               {list_.width / 2.0, double(pad_)}, title_size,
                               ink_, HAlign::kCenter, VAlign::kTop);
    title.bold = true;
    switch (spec_.kind) {
      case ChartKind::kBarVertical: return BarVertical();
      case ChartKind::kBarHorizontal: return BarHorizontal();
      case ChartKind::kPie: return Pie();
      case ChartKind::kLine: return Line();
      case ChartKind::kScatter: return Scatter();
    }
    return false;
  }

 private:
  int LineHeight(int size) const {
    return renderer_.Ascent(list_.fonts, size) + renderer_.Descent(list_.fonts, size);
  }
  int Width(const std::string& text, int size) const {
    return renderer_.MeasureText(text, list_.fonts, size);
  }
  Rgb Color(size_t i) const {
    const auto& c = spec_.style.colors;
    return kPalette[c.empty() ? 0 : c[i % c.size()] % kPaletteSize];
  }

  void Axes(const Rect& plot) {
    const double l = plot.x + 0.5, b = plot.bottom() + 0.5;
    list_.Line(DrawRole::kAxis, {l, double(plot.y)}, {l, b}, ink_, 1.5);
    list_.Line(DrawRole::kAxis, {l, b}, {double(plot.right()), b}, ink_, 1.5);
  }

  // Value axis along y with gridlines and labels right-aligned at x.
  void YTicks(const Rect& plot, const Scale& s) {
    const int n = static_cast<int>(std::lround(s.max / s.step));
    for (int k = 0; k <= n; ++k) {
      const double y = plot.bottom() + 0.5 - plot.h * (k * s.step / s.max);
      list_.Line(DrawRole::kTick, {plot.x - 4.0, y}, {plot.x + 0.5, y}, ink_);
      if (k > 0) {
        list_.Line(DrawRole::kGridline, {plot.x + 1.0, y}, {double(plot.right()), y},
                   Lighten(ink_, bg_, 0.85));
      }
      list_.Text(DrawRole::kLabel, FormatNumber(k * s.step), {plot.x - 6.0, y},
                 size_, ink_, HAlign::kRight, VAlign::kMiddle);
    }
  }

  void XTicks(const Rect& plot, const Scale& s, bool labels) {
    const int n = static_cast<int>(std::lround(s.max / s.step));
    for (int k = 0; k <= n; ++k) {
      const double x = plot.x + 0.5 + plot.w * (k * s.step / s.max);
      list_.Line(DrawRole::kTick, {x, plot.bottom() + 0.5}, {x, plot.bottom() + 5.0}, ink_);
      if (labels) {
        list_.Text(DrawRole::kLabel, FormatNumber(k * s.step),
                   {x, plot.bottom() + 7.0}, size_, ink_, HAlign::kCenter, VAlign::kTop);
      }
    }
  }

  int MaxWidth(const std::vector<std::string>& texts) const {
    int w = 0;
    for (const auto& t : texts) w = std::max(w, Width(t, size_));
    return w;
  }

  bool BarVertical() {
    const auto& pts = spec_.series[0].points;
    double max_v = 0;
    std::vector<std::string> labels;
    for (const auto& p : pts) {
      max_v = std::max(max_v, p.y);
      labels.push_back(p.label);
    }
    const Scale s = NiceScale(max_v);
    std::vector<std::string> ticks;
    for (int k = 0; k * s.step <= s.max + 1e-9; ++k) ticks.push_back(FormatNumber(k * s.step));
    const double theta = spec_.style.label_rotation_deg * std::numbers::pi / 180;
    const int lh = LineHeight(size_);
    double label_h = 0;
    for (const auto& l : labels) {
      label_h = std::max(label_h, Width(l, size_) * std::sin(theta) + lh * std::cos(theta));
    }
    const int left = pad_ + MaxWidth(ticks) + 8;
    const int bottom = pad_ + static_cast<int>(std::ceil(label_h)) + 8;
    const Rect plot{left, top_, list_.width - pad_ - left, list_.height - bottom - top_};
    const int n = static_cast<int>(pts.size());
    if (plot.w < 8 * n || plot.h < 40) return false;
    YTicks(plot, s);
    const double slot = double(plot.w) / n;
    for (int i = 0; i < n; ++i) {
      const double cx = plot.x + slot * (i + 0.5);
      const double h = plot.h * pts[i].y / s.max;
      list_.FillRect(DrawRole::kBar, {cx - slot * 0.3, plot.bottom() - h},
                     {cx + slot * 0.3, double(plot.bottom())}, Color(0));
      if (spec_.style.label_rotation_deg == 0) {
        list_.Text(DrawRole::kLabel, pts[i].label, {cx, plot.bottom() + 7.0}, size_,
                   ink_, HAlign::kCenter, VAlign::kTop);
      } else {
        DrawOp& op = list_.Text(DrawRole::kLabel, pts[i].label,
                                {cx + lh * 0.5, plot.bottom() + 7.0}, size_, ink_,
                                HAlign::kRight, VAlign::kTop);
        op.rotation_deg = spec_.style.label_rotation_deg;
      }
    }
    Axes(plot);
    return true;
  }

  bool BarHorizontal() {
    const auto& pts = spec_.series[0].points;
    double max_v = 0;
    std::vector<std::string> labels;
    for (const auto& p : pts) {
      max_v = std::max(max_v, p.y);
      labels.push_back(p.label);
    }
    const Scale s = NiceScale(max_v);
    const int lh = LineHeight(size_);
    const int left = pad_ + MaxWidth(labels) + 8;
    const int bottom = pad_ + lh + 8;
    const int right_pad = pad_ + Width(FormatNumber(s.max), size_) / 2;
    const Rect plot{left, top_, list_.width - right_pad - left,
                    list_.height - bottom - top_};
    const int n = static_cast<int>(pts.size());
    if (plot.w < 60 || plot.h < std::max(40, n * 6)) return false;
    XTicks(plot, s, true);
    const double slot = double(plot.h) / n;
    for (int i = 0; i < n; ++i) {
      const double cy = plot.y + slot * (i + 0.5);
      const double w = plot.w * pts[i].y / s.max;
      list_.FillRect(DrawRole::kBar, {plot.x + 1.0, cy - slot * 0.3},
                     {plot.x + 1.0 + w, cy + slot * 0.3}, Color(0));
      list_.Text(DrawRole::kLabel, pts[i].label, {plot.x - 6.0, cy}, size_, ink_,
                 HAlign::kRight, VAlign::kMiddle);
    }
    Axes(plot);
    return true;
  }

  bool Pie() {
    const auto& pts = spec_.series[0].points;
    const bool percent = spec_.pie_mode == PieMode::kPercent;
    std::vector<std::string> labels;
    for (const auto& p : pts) {
      labels.push_back(p.label + " " + FormatNumber(p.y) + (percent ? "%" : ""));
    }
    const int label_w = MaxWidth(labels);
    const int lh = LineHeight(size_);
    const double avail_w = list_.width - 2.0 * (label_w + 2 * pad_);
    const double avail_h = list_.height - top_ - 2.0 * (lh + pad_);
    const double r = std::min(avail_w, avail_h) / 2;
    if (r < 30) return false;
    const Point2 c{list_.width / 2.0, top_ + lh + pad_ + avail_h / 2};
    double total = 0;
    for (const auto& p : pts) total += p.y;
    if (pts.size() == 1) {
      list_.Polygon(DrawRole::kSlice, Circle(c, r, 96), Color(0));
    }
    double angle = -std::numbers::pi / 2;
    for (size_t i = 0; i < pts.size(); ++i) {
      const double sweep = 2 * std::numbers::pi * pts[i].y / total;
      if (pts.size() > 1) {
        std::vector<Point2> poly{c};
        const int steps = std::max(2, static_cast<int>(std::ceil(sweep / 0.05)));
        for (int k = 0; k <= steps; ++k) {
          const double a = angle + sweep * k / steps;
          poly.push_back({c.x + r * std::cos(a), c.y + r * std::sin(a)});
        }
        list_.Polygon(DrawRole::kSlice, std::move(poly), Color(i));
      }
      const double mid = angle + sweep / 2;
      const Point2 at{c.x + (r + 8) * std::cos(mid), c.y + (r + 8) * std::sin(mid)};
      list_.Text(DrawRole::kLabel, labels[i], at, size_, ink_,
                 std::cos(mid) >= 0 ? HAlign::kLeft : HAlign::kRight, VAlign::kMiddle);
      angle += sweep;
    }
    return true;
  }

  // Legend rows of swatch + name; returns its height.
  int Legend(int y) {
    if (spec_.series.size() < 2) return 0;
    const int lh = LineHeight(size_);
    const int swatch = std::max(8, size_ * 2 / 3);
    std::vector<std::vector<size_t>> rows(1);
    int x = 0;
    const int max_w = list_.width - 2 * pad_;
    for (size_t i = 0; i < spec_.series.size(); ++i) {
      const int w = swatch + 4 + Width(spec_.series[i].name, size_) + 2 * pad_;
      if (x > 0 && x + w > max_w) {
        rows.emplace_back();
        x = 0;
      }
      rows.back().push_back(i);
      x += w;
    }
    for (size_t r = 0; r < rows.size(); ++r) {
      int row_w = 0;
      for (size_t i : rows[r]) {
        row_w += swatch + 4 + Width(spec_.series[i].name, size_) + 2 * pad_;
      }
      double cx = (list_.width - row_w) / 2.0 + pad_;
      const double cy = y + lh * (r + 0.5);
      for (size_t i : rows[r]) {
        list_.FillRect(DrawRole::kLegendEntry, {cx, cy - swatch / 2.0},
                       {cx + swatch, cy + swatch / 2.0}, Color(i));
        list_.Text(DrawRole::kLabel, spec_.series[i].name, {cx + swatch + 4, cy},
                   size_, ink_, HAlign::kLeft, VAlign::kMiddle);
        cx += swatch + 4 + Width(spec_.series[i].name, size_) + 2 * pad_;
      }
    }
    return static_cast<int>(rows.size()) * lh + pad_;
  }

  bool Line() {
    top_ += Legend(top_);
    double max_v = 0;
    for (const auto& s : spec_.series) {
      for (const auto& p : s.points) max_v = std::max(max_v, p.y);
    }
    const Scale s = NiceScale(max_v);
    std::vector<std::string> ticks;
    for (int k = 0; k * s.step <= s.max + 1e-9; ++k) ticks.push_back(FormatNumber(k * s.step));
    const int lh = LineHeight(size_);
    const int left = pad_ + MaxWidth(ticks) + 8;
    const int bottom = pad_ + lh + 8;
    const auto& xs = spec_.series[0].points;
    const int n = static_cast<int>(xs.size());
    const int right_pad = pad_ + Width(xs.back().label, size_) / 4;
    const Rect plot{left, top_, list_.width - right_pad - left,
                    list_.height - bottom - top_};
    if (plot.w < 10 * n || plot.h < 40) return false;
    YTicks(plot, s);
    auto px = [&](int i) { return plot.x + plot.w * (i + 0.5) / n; };
    for (int i = 0; i < n; ++i) {
      list_.Line(DrawRole::kTick, {px(i), plot.bottom() + 0.5}, {px(i), plot.bottom() + 5.0},
                 ink_);
      list_.Text(DrawRole::kLabel, xs[i].label, {px(i), plot.bottom() + 7.0}, size_, ink_,
                 HAlign::kCenter, VAlign::kTop);
    }
    for (size_t k = 0; k < spec_.series.size(); ++k) {
      const auto& pts = spec_.series[k].points;
      auto py = [&](int i) { return plot.bottom() - plot.h * pts[i].y / s.max; };
      for (int i = 0; i + 1 < n; ++i) {
        list_.Line(DrawRole::kSeriesLine, {px(i), py(i)}, {px(i + 1), py(i + 1)}, Color(k),
                   2.0);
      }
      for (int i = 0; i < n; ++i) {
        list_.Polygon(DrawRole::kMarker, Circle({px(i), py(i)}, 3.0, 16), Color(k));
      }
    }
    Axes(plot);
    return true;
  }

  bool Scatter() {
    const auto& pts = spec_.series[0].points;
    double max_x = 0, max_y = 0;
    for (const auto& p : pts) {
      max_x = std::max(max_x, p.x);
      max_y = std::max(max_y, p.y);
    }
    const Scale sx = NiceScale(max_x), sy = NiceScale(max_y);
    std::vector<std::string> ticks;
    for (int k = 0; k * sy.step <= sy.max + 1e-9; ++k) ticks.push_back(FormatNumber(k * sy.step));
    const int lh = LineHeight(size_);
    const int small = std::max(size_ - 2, 6);
    const int left = pad_ + MaxWidth(ticks) + 8;
    const int bottom = pad_ + lh + 8;
    const int right_pad = pad_ + std::max(Width(FormatNumber(sx.max), size_) / 2,
                                          Width("p20", small) + 8);
    const Rect plot{left, top_, list_.width - right_pad - left,
                    list_.height - bottom - top_};
    if (plot.w < 60 || plot.h < 40) return false;
    YTicks(plot, sy);
    XTicks(plot, sx, !spec_.style.hide_x_tick_labels);
    for (const auto& p : pts) {
      const Point2 c{plot.x + 0.5 + plot.w * p.x / sx.max,
                     plot.bottom() + 0.5 - plot.h * p.y / sy.max};
      list_.Polygon(DrawRole::kMarker, Circle(c, 4.0, 16), Color(0));
      list_.Text(DrawRole::kLabel, p.label, {c.x + 6, c.y - 4}, small, ink_,
                 HAlign::kLeft, VAlign::kBottom);
    }
    Axes(plot);
    return true;
  }

  const ChartSpec& spec_;
  DrawList& list_;
  const TextRenderer& renderer_;
  int size_;
  Rgb ink_;
  Rgb bg_;
  int pad_;
  int top_ = 0;
};

}  // namespace

DrawList LayoutChart(const ChartSpec& spec, int width, int height,
                     const PageSpec& page, const ChartConfig& config,
                     const TextRenderer& renderer) {
  ValidateChartSpec(spec);
  const int start = std::max(config.min_font_size,
                             static_cast<int>(std::lround(page.base_font_size_px * 0.75)));
  for (int size = start; size >= config.min_font_size; --size) {
    DrawList list;
    list.width = width;
    list.height = height;
    list.background = page.background_color;
    list.fonts = page.fonts();
    if (ChartPainter(spec, list, page, renderer, size).Paint()) return list;
  }
  throw Error(ErrorCode::kInfeasibleCellSize,
              std::string(ChartKindName(spec.kind)) + " chart does not fit " +
                  std::to_string(width) + "x" + std::to_string(height));
}

Image RenderChart(const ChartSpec& spec, const Rect& bbox, const PageSpec& page,
                  const ChartConfig& config, const TextRenderer& renderer) {
  return RasterizeDrawList(LayoutChart(spec, bbox.w, bbox.h, page, config, renderer),
                           renderer);
}

}  // namespace docforge
