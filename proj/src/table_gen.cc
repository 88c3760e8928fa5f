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

#include "docforge/table_gen.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>

#include "docforge/error.hpp"

namespace docforge {

TableSpec TableSpec::Blank(int rows, int cols, TableStyle style) {
  if (rows < 1 || cols < 1) {
    throw Error(ErrorCode::kInvalidArgument, "table needs at least one cell");
  }
  TableSpec spec;
  spec.rows = rows;
  spec.cols = cols;
  spec.style = style;
  spec.cells.resize(size_t(rows) * cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      spec.at(r, c).anchor_row = r;
      spec.at(r, c).anchor_col = c;
    }
  }
  return spec;
}

void TableSpec::Merge(int r, int c, int row_span, int col_span) {
  if (r < 0 || c < 0 || row_span < 1 || col_span < 1 || r + row_span > rows ||
      c + col_span > cols) {
    throw Error(ErrorCode::kInvalidArgument, "span leaves the table grid");
  }
  for (int i = r; i < r + row_span; ++i) {
    for (int j = c; j < c + col_span; ++j) {
      const TableCell& cell = at(i, j);
      if (cell.covered || cell.row_span != 1 || cell.col_span != 1) {
        throw Error(ErrorCode::kInvalidArgument, "span overlaps another span");
      }
    }
  }
  for (int i = r; i < r + row_span; ++i) {
    for (int j = c; j < c + col_span; ++j) {
      TableCell& cell = at(i, j);
      cell.anchor_row = r;
      cell.anchor_col = c;
      if (i != r || j != c) {
        cell.covered = true;
        cell.text.clear();
      }
    }
  }
  at(r, c).row_span = row_span;
  at(r, c).col_span = col_span;
}

void ValidateTableSpec(const TableSpec& spec) {
  auto fail = [](const std::string& what) {
    throw Error(ErrorCode::kInvalidArgument, "invalid table: " + what);
  };
  if (spec.rows < 1 || spec.cols < 1 ||
      spec.cells.size() != size_t(spec.rows) * spec.cols) {
    fail("grid size");
  }
  std::vector<int> owners(spec.cells.size(), 0);
  for (int r = 0; r < spec.rows; ++r) {
    for (int c = 0; c < spec.cols; ++c) {
      const TableCell& cell = spec.at(r, c);
      if (cell.covered) {
        if (!cell.text.empty()) fail("covered cell with text");
        continue;
      }
      if (cell.text.empty()) fail("anchor without text");
      if (cell.anchor_row != r || cell.anchor_col != c) fail("anchor link");
      if (r + cell.row_span > spec.rows || c + cell.col_span > spec.cols ||
          cell.row_span < 1 || cell.col_span < 1) {
        fail("span out of range");
      }
      for (int i = r; i < r + cell.row_span; ++i) {
        for (int j = c; j < c + cell.col_span; ++j) {
          ++owners[size_t(i) * spec.cols + j];
          const TableCell& inner = spec.at(i, j);
          if ((i != r || j != c) &&
              (!inner.covered || inner.anchor_row != r || inner.anchor_col != c)) {
            fail("covered cell not linked to its anchor");
          }
        }
      }
    }
  }
  for (int count : owners) {
    if (count != 1) fail("spans do not tile the grid");
  }
}

TableSpec GenerateTableSpec(const TextCorpus& corpus, const TableConfig& config,
                            Rng& rng) {
  const int rows = static_cast<int>(rng.UniformInt(config.rows.min, config.rows.max));
  const int cols = static_cast<int>(rng.UniformInt(config.cols.min, config.cols.max));
  const double style_weights[] = {config.gridlined_weight, config.gridless_weight};
  const TableStyle style = rng.Weighted(style_weights) == 0 ? TableStyle::kGridlined
                                                           : TableStyle::kGridless;
  TableSpec spec = TableSpec::Blank(rows, cols, style);

  if (rng.Chance(config.merge_probability)) {
    const int candidates =
        static_cast<int>(rng.UniformInt(1, std::max(1, rows * cols / 4)));
    for (int k = 0; k < candidates; ++k) {
      const bool vertical = rng.Chance(0.5);
      const int max_r = vertical ? rows - 2 : rows - 1;
      const int max_c = vertical ? cols - 1 : cols - 2;
      if (max_r < 0 || max_c < 0) continue;
      const int r = static_cast<int>(rng.UniformInt(0, max_r));
      const int c = static_cast<int>(rng.UniformInt(0, max_c));
      // A gridless header rule would cut through a span leaving row 0.
      if (vertical && r == 0 && style == TableStyle::kGridless) continue;
      try {
        spec.Merge(r, c, vertical ? 2 : 1, vertical ? 1 : 2);
      } catch (const Error&) {
        // Overlapping candidate: rejected.
      }
    }
  }

  for (TableCell& cell : spec.cells) {
    if (cell.covered) continue;
    int count = static_cast<int>(
        rng.UniformInt(config.cell_units.min, config.cell_units.max));
    if (style == TableStyle::kGridlined && rng.Chance(config.multiline_probability)) {
      count = static_cast<int>(
          rng.UniformInt(2 * config.cell_units.max, 4 * config.cell_units.max));
    }
    cell.text = JoinUnits(SampleTextSpan(corpus, static_cast<size_t>(count), rng));
  }
  return spec;
}

std::string HtmlEscape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char ch : text) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&#39;"; break;
      default: out += ch;
    }
  }
  return out;
}

std::string HtmlUnescape(std::string_view text) {
  static constexpr std::pair<std::string_view, char> kEntities[] = {
      {"&amp;", '&'}, {"&lt;", '<'}, {"&gt;", '>'}, {"&quot;", '"'}, {"&#39;", '\''}};
  std::string out;
  for (size_t i = 0; i < text.size();) {
    if (text[i] != '&') {
      out += text[i++];
      continue;
    }
    bool matched = false;
    for (const auto& [entity, ch] : kEntities) {
      if (text.substr(i, entity.size()) == entity) {
        out += ch;
        i += entity.size();
        matched = true;
        break;
      }
    }
    if (!matched) throw Error(ErrorCode::kParse, "unknown character entity");
  }
  return out;
}

std::string TableToHtml(const TableSpec& spec) {
  std::string html = "<table>";
  for (int r = 0; r < spec.rows; ++r) {
    html += "<tr>";
    for (int c = 0; c < spec.cols; ++c) {
      const TableCell& cell = spec.at(r, c);
      if (cell.covered) continue;
      html += "<td";
      if (cell.row_span > 1) html += " rowspan=\"" + std::to_string(cell.row_span) + "\"";
      if (cell.col_span > 1) html += " colspan=\"" + std::to_string(cell.col_span) + "\"";
      html += ">";
      html += HtmlEscape(cell.text);
      html += "</td>";
    }
    html += "</tr>";
  }
  html += "</table>";
  return html;
}

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  bool Accept(std::string_view token) {
    if (text_.substr(pos_, token.size()) != token) return false;
    pos_ += token.size();
    return true;
  }
  void Expect(std::string_view token) {
    if (!Accept(token)) Fail("expected '" + std::string(token) + "'");
  }
  int SpanAttribute(std::string_view name) {
    const std::string prefix = " " + std::string(name) + "=\"";
    if (!Accept(prefix)) return 1;
    const size_t end = text_.find('"', pos_);
    if (end == std::string_view::npos) Fail("unterminated attribute");
    int value = 0;
    const auto digits = text_.substr(pos_, end - pos_);
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc() || ptr != digits.data() + digits.size() || value < 2 ||
        digits[0] == '0') {
      Fail("bad " + std::string(name) + " value");
    }
    pos_ = end + 1;
    return value;
  }
  std::string Text() {
    const size_t end = text_.find('<', pos_);
    if (end == std::string_view::npos) Fail("unterminated cell");
    std::string raw(text_.substr(pos_, end - pos_));
    pos_ = end;
    return HtmlUnescape(raw);
  }
  [[noreturn]] void Fail(const std::string& what) const {
    throw Error(ErrorCode::kParse,
                "table html at byte " + std::to_string(pos_) + ": " + what);
  }
  size_t pos() const { return pos_; }

 private:
  std::string_view text_;
  size_t pos_ = 0;
};

struct ParsedCell {
  std::string text;
  int row_span;
  int col_span;
};

}  // namespace

TableSpec ParseTableHtmlPrefix(std::string_view html, size_t* consumed) {
  Cursor in(html);
  in.Expect("<table>");
  std::vector<std::vector<ParsedCell>> rows;
  while (in.Accept("<tr>")) {
    std::vector<ParsedCell>& row = rows.emplace_back();
    while (in.Accept("<td")) {
      ParsedCell cell;
      cell.row_span = in.SpanAttribute("rowspan");
      cell.col_span = in.SpanAttribute("colspan");
      in.Expect(">");
      cell.text = in.Text();
      if (cell.text.empty()) in.Fail("empty cell");
      in.Expect("</td>");
      row.push_back(std::move(cell));
    }
    in.Expect("</tr>");
  }
  in.Expect("</table>");
  if (rows.empty()) in.Fail("table without rows");

  // HTML table model: each cell takes the next column not already claimed
  // by a rowspan from above.
  const int nrows = static_cast<int>(rows.size());
  std::vector<std::vector<int>> owner(nrows);
  struct Placed {
    int r, c;
    const ParsedCell* cell;
  };
  std::vector<Placed> placed;
  for (int r = 0; r < nrows; ++r) {
    int c = 0;
    for (const ParsedCell& cell : rows[r]) {
      while (c < int(owner[r].size()) && owner[r][c] >= 0) ++c;
      if (r + cell.row_span > nrows) in.Fail("rowspan past the last row");
      for (int i = r; i < r + cell.row_span; ++i) {
        for (int j = c; j < c + cell.col_span; ++j) {
          if (int(owner[i].size()) <= j) owner[i].resize(j + 1, -1);
          if (owner[i][j] >= 0) in.Fail("overlapping spans");
          owner[i][j] = static_cast<int>(placed.size());
        }
      }
      placed.push_back({r, c, &cell});
      c += cell.col_span;
    }
  }
  const int ncols = static_cast<int>(owner[0].size());
  for (const auto& row : owner) {
    if (int(row.size()) != ncols ||
        std::any_of(row.begin(), row.end(), [](int o) { return o < 0; })) {
      in.Fail("rows do not cover a rectangular grid");
    }
  }
  if (ncols == 0) in.Fail("table without columns");
  TableSpec spec = TableSpec::Blank(nrows, ncols, TableStyle::kGridlined);
  for (const Placed& p : placed) {
    spec.Merge(p.r, p.c, p.cell->row_span, p.cell->col_span);
    spec.at(p.r, p.c).text = p.cell->text;
  }
  if (consumed != nullptr) *consumed = in.pos();
  return spec;
}

TableSpec ParseTableHtml(std::string_view html) {
  size_t consumed = 0;
  TableSpec spec = ParseTableHtmlPrefix(html, &consumed);
  if (consumed != html.size()) {
    throw Error(ErrorCode::kParse, "trailing bytes after </table>");
  }
  return spec;
}

namespace {

struct WrappedCell {
  std::vector<std::string> lines;
};

// Greedy wrap; returns false when one unit is wider than max_width.
bool WrapText(const std::string& text, int max_width, const FontPair& fonts,
              int size, const TextRenderer& renderer, std::vector<std::string>& lines) {
  const std::vector<TokenUnit> units = Tokenize(text);
  const int space = renderer.SpaceAdvance(fonts.latin, size);
  lines.clear();
  std::vector<TokenUnit> current;
  int width = 0;
  for (const TokenUnit& unit : units) {
    const int w = renderer.MeasureWord(unit, fonts.For(unit), size);
    if (w > max_width) return false;
    const int sep = !current.empty() && NeedsSeparator(current.back(), unit) ? space : 0;
    if (!current.empty() && width + sep + w > max_width) {
      lines.push_back(JoinUnits(current));
      current.clear();
      width = 0;
    }
    width += (current.empty() ? 0 : sep) + w;
    current.push_back(unit);
  }
  if (!current.empty()) lines.push_back(JoinUnits(current));
  return true;
}

struct TableGeometry {
  std::vector<int> col_x;  // cols + 1 boundaries
  std::vector<int> row_y;  // rows + 1 boundaries
  std::vector<WrappedCell> wrapped;
  int size = 0;
  int line_height = 0;
  int ascent = 0;
};

bool TryGeometry(const TableSpec& spec, int width, int height, int size,
                 const FontPair& fonts, const TextRenderer& renderer,
                 TableGeometry& geo) {
  const bool wrap = spec.style == TableStyle::kGridlined;
  const int pad = std::max(2, size * 2 / 5);
  const int ascent = renderer.Ascent(fonts, size);
  const int line_height = ascent + renderer.Descent(fonts, size);
  const int avail_w = width - 2;
  const int avail_h = height - 2;

  std::vector<int> natural(spec.cells.size(), 0);
  std::vector<int> desired(spec.cols, 2 * pad + size);
  for (int r = 0; r < spec.rows; ++r) {
    for (int c = 0; c < spec.cols; ++c) {
      const TableCell& cell = spec.at(r, c);
      if (cell.covered) continue;
      natural[size_t(r) * spec.cols + c] = renderer.MeasureText(cell.text, fonts, size);
      if (cell.col_span == 1) {
        desired[c] = std::max(desired[c], natural[size_t(r) * spec.cols + c] + 2 * pad);
      }
    }
  }
  for (int r = 0; r < spec.rows; ++r) {
    for (int c = 0; c < spec.cols; ++c) {
      const TableCell& cell = spec.at(r, c);
      if (cell.covered || cell.col_span == 1) continue;
      const int need = natural[size_t(r) * spec.cols + c] + 2 * pad;
      int have = 0;
      for (int j = c; j < c + cell.col_span; ++j) have += desired[j];
      for (int j = c, deficit = need - have; deficit > 0 && j < c + cell.col_span; ++j) {
        const int share = (deficit + (c + cell.col_span - j) - 1) / (c + cell.col_span - j);
        desired[j] += share;
        deficit -= share;
      }
    }
  }
  // Long multi-line cells would make every column huge; cap their pull.
  if (wrap) {
    for (int& d : desired) d = std::min(d, std::max(avail_w / 2, 2 * pad + size));
  }
  std::vector<int> widths = desired;
  const int total = std::accumulate(desired.begin(), desired.end(), 0);
  if (total <= avail_w) {
    const int extra = avail_w - total;
    for (int c = 0; c < spec.cols; ++c) {
      widths[c] += extra / spec.cols + (c < extra % spec.cols ? 1 : 0);
    }
  } else {
    if (!wrap) return false;
    const int min_w = 2 * pad + size;
    int used = 0;
    for (int c = 0; c < spec.cols; ++c) {
      widths[c] = std::max(min_w, static_cast<int>(int64_t(desired[c]) * avail_w / total));
      used += widths[c];
    }
    if (used > avail_w) return false;
    widths.back() += avail_w - used;
  }

  geo.col_x.assign(spec.cols + 1, 0);
  for (int c = 0; c < spec.cols; ++c) geo.col_x[c + 1] = geo.col_x[c] + widths[c];

  geo.wrapped.assign(spec.cells.size(), {});
  std::vector<int> heights(spec.rows, line_height + 2 * pad);
  for (int r = 0; r < spec.rows; ++r) {
    for (int c = 0; c < spec.cols; ++c) {
      const TableCell& cell = spec.at(r, c);
      if (cell.covered) continue;
      const int inner = geo.col_x[c + cell.col_span] - geo.col_x[c] - 2 * pad;
      auto& lines = geo.wrapped[size_t(r) * spec.cols + c].lines;
      if (!WrapText(cell.text, inner, fonts, size, renderer, lines)) return false;
      if (!wrap && lines.size() > 1) return false;
      if (cell.row_span == 1) {
        heights[r] = std::max(heights[r], int(lines.size()) * line_height + 2 * pad);
      }
    }
  }
  for (int r = 0; r < spec.rows; ++r) {
    for (int c = 0; c < spec.cols; ++c) {
      const TableCell& cell = spec.at(r, c);
      if (cell.covered || cell.row_span == 1) continue;
      const int need =
          int(geo.wrapped[size_t(r) * spec.cols + c].lines.size()) * line_height + 2 * pad;
      int have = 0;
      for (int i = r; i < r + cell.row_span; ++i) have += heights[i];
      if (need > have) heights[r + cell.row_span - 1] += need - have;
    }
  }
  const int table_h = std::accumulate(heights.begin(), heights.end(), 0);
  if (table_h > avail_h) return false;
  geo.row_y.assign(spec.rows + 1, (avail_h - table_h) / 2);
  for (int r = 0; r < spec.rows; ++r) geo.row_y[r + 1] = geo.row_y[r] + heights[r];
  geo.size = size;
  geo.line_height = line_height;
  geo.ascent = ascent;
  return true;
}

}  // namespace

DrawList LayoutTable(const TableSpec& spec, int width, int height,
                     const PageSpec& page, const TableConfig& config,
                     const TextRenderer& renderer) {
  ValidateTableSpec(spec);
  DrawList list;
  list.width = width;
  list.height = height;
  list.background = page.background_color;
  list.fonts = page.fonts();
  TableGeometry geo;
  bool fits = false;
  for (int size = page.base_font_size_px; size >= config.min_font_size; --size) {
    if (TryGeometry(spec, width, height, size, list.fonts, renderer, geo)) {
      fits = true;
      break;
    }
  }
  if (!fits) {
    throw Error(ErrorCode::kInfeasibleCellSize,
                "a " + std::to_string(spec.rows) + "x" + std::to_string(spec.cols) +
                    " table does not fit " + std::to_string(width) + "x" +
                    std::to_string(height) + " at font size " +
                    std::to_string(config.min_font_size));
  }
  const Rgb ink = page.text_color;
  // Boundaries sit on pixel centres so 1px strokes stay crisp.
  auto X = [&](int c) { return geo.col_x[c] + 0.5; };
  auto Y = [&](int r) { return geo.row_y[r] + 0.5; };

  if (spec.style == TableStyle::kGridlined) {
    auto anchor = [&](int r, int c) {
      const TableCell& cell = spec.at(r, c);
      return cell.anchor_row * spec.cols + cell.anchor_col;
    };
    for (int r = 0; r <= spec.rows; ++r) {
      int start = -1;
      for (int c = 0; c <= spec.cols; ++c) {
        const bool edge = c < spec.cols &&
                          (r == 0 || r == spec.rows || anchor(r - 1, c) != anchor(r, c));
        if (edge && start < 0) start = c;
        if (!edge && start >= 0) {
          list.Line(DrawRole::kBorder, {X(start), Y(r)}, {X(c), Y(r)}, ink);
          start = -1;
        }
      }
    }
    for (int c = 0; c <= spec.cols; ++c) {
      int start = -1;
      for (int r = 0; r <= spec.rows; ++r) {
        const bool edge = r < spec.rows &&
                          (c == 0 || c == spec.cols || anchor(r, c - 1) != anchor(r, c));
        if (edge && start < 0) start = r;
        if (!edge && start >= 0) {
          list.Line(DrawRole::kBorder, {X(c), Y(start)}, {X(c), Y(r)}, ink);
          start = -1;
        }
      }
    }
  } else {
    list.Line(DrawRole::kRule, {X(0), Y(0)}, {X(spec.cols), Y(0)}, ink, 2.0);
    list.Line(DrawRole::kHeaderRule, {X(0), Y(1)}, {X(spec.cols), Y(1)}, ink);
    list.Line(DrawRole::kRule, {X(0), Y(spec.rows)}, {X(spec.cols), Y(spec.rows)},
              ink, 2.0);
  }

  for (int r = 0; r < spec.rows; ++r) {
    for (int c = 0; c < spec.cols; ++c) {
      const TableCell& cell = spec.at(r, c);
      if (cell.covered) continue;
      const Rect box{geo.col_x[c] + 1, geo.row_y[r] + 1,
                     geo.col_x[c + cell.col_span] - geo.col_x[c] - 1,
                     geo.row_y[r + cell.row_span] - geo.row_y[r] - 1};
      const auto& lines = geo.wrapped[size_t(r) * spec.cols + c].lines;
      const int block_h = int(lines.size()) * geo.line_height;
      int y = box.y + (box.h - block_h) / 2;
      for (const std::string& line : lines) {
        DrawOp& op = list.Text(DrawRole::kCellText, line,
                               {box.x + box.w / 2.0, double(y)}, geo.size, ink,
                               HAlign::kCenter, VAlign::kTop);
        op.bold = spec.style == TableStyle::kGridless && r == 0;
        op.clip = box;
        y += geo.line_height;
      }
    }
  }
  return list;
}

Image RenderTable(const TableSpec& spec, const Rect& bbox, const PageSpec& page,
                  const TableConfig& config, const TextRenderer& renderer) {
  return RasterizeDrawList(LayoutTable(spec, bbox.w, bbox.h, page, config, renderer),
                           renderer);
}

}  // namespace docforge
