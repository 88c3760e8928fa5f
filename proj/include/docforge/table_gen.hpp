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

#ifndef DOCFORGE_TABLE_GEN_HPP_
#define DOCFORGE_TABLE_GEN_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "docforge/config.hpp"
#include "docforge/corpus.hpp"
#include "docforge/draw.hpp"
#include "docforge/layout.hpp"
#include "docforge/rng.hpp"

namespace docforge {

enum class TableStyle { kGridlined, kGridless };

struct TableCell {
  std::string text;  // empty for covered cells
  int row_span = 1;
  int col_span = 1;
  bool covered = false;
  int anchor_row = 0;  // owning anchor; self for anchors
  int anchor_col = 0;

  friend bool operator==(const TableCell&, const TableCell&) = default;
};

struct TableSpec {
  int rows = 0;
  int cols = 0;
  std::vector<TableCell> cells;  // row-major, rows * cols
  TableStyle style = TableStyle::kGridlined;

  TableCell& at(int r, int c) { return cells[size_t(r) * cols + c]; }
  const TableCell& at(int r, int c) const { return cells[size_t(r) * cols + c]; }

  // rows x cols grid of 1x1 anchors with empty text.
  static TableSpec Blank(int rows, int cols, TableStyle style);
  // Marks the span rectangle anchored at (r, c). Throws kInvalidArgument if
  // it leaves the grid or hits another span.
  void Merge(int r, int c, int row_span, int col_span);

  friend bool operator==(const TableSpec&, const TableSpec&) = default;
};

// Throws Error(kInvalidArgument) unless spans tile the grid and only anchors
// carry text.
void ValidateTableSpec(const TableSpec& spec);

TableSpec GenerateTableSpec(const TextCorpus& corpus, const TableConfig& config,
                            Rng& rng);

// Canonical form: <table><tr><td rowspan="2">a</td>...</tr></table>, no
// whitespace between tags, rowspan/colspan only when > 1.
std::string TableToHtml(const TableSpec& spec);

// Minimal parser for the canonical grammar; re-expands spans onto the grid.
// Throws Error(kParse). The parsed style is always kGridlined.
TableSpec ParseTableHtml(std::string_view html);
// Parses one table starting at html[0] and reports how many bytes it used.
TableSpec ParseTableHtmlPrefix(std::string_view html, size_t* consumed);

std::string HtmlEscape(std::string_view text);
// Inverse of HtmlEscape (the five named entities only); throws kParse.
std::string HtmlUnescape(std::string_view text);

// Builds the vector drawing for a table filling a width x height patch.
// Shrinks the font from the page size down to config.min_font_size; throws
// Error(kInfeasibleCellSize) when nothing fits.
DrawList LayoutTable(const TableSpec& spec, int width, int height,
                     const PageSpec& page, const TableConfig& config,
                     const TextRenderer& renderer);

Image RenderTable(const TableSpec& spec, const Rect& bbox, const PageSpec& page,
                  const TableConfig& config, const TextRenderer& renderer);

}  // namespace docforge

#endif  // DOCFORGE_TABLE_GEN_HPP_
