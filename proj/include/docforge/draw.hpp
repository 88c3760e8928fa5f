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

#ifndef DOCFORGE_DRAW_HPP_
#define DOCFORGE_DRAW_HPP_

#include <string>
#include <utility>
#include <vector>

#include "docforge/raster.hpp"
#include "docforge/text_render.hpp"

namespace docforge {

// What a primitive depicts; tests count primitives by role.
enum class DrawRole {
  kBorder,      // gridlined cell edge
  kRule,        // gridless top/bottom rule
  kHeaderRule,  // gridless rule under the first row
  kCellText,
  kAxis,
  kTick,
  kGridline,
  kBar,
  kSlice,
  kSeriesLine,
  kMarker,
  kLegendEntry,  // one swatch per legend entry
  kLabel,
  kTitle,
};

enum class DrawShape { kLine, kRect, kPolygon, kText };
enum class HAlign { kLeft, kCenter, kRight };
enum class VAlign { kTop, kMiddle, kBottom };

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

struct DrawOp {
  DrawShape shape = DrawShape::kLine;
  DrawRole role = DrawRole::kBorder;
  Rgb color;
  // kLine: points[0] -> points[1], stroked with line_width.
  // kRect: points[0] top-left, points[1] bottom-right, filled.
  // kPolygon: filled outline.
  // kText: points[0] anchor.
  std::vector<Point2> points;
  double line_width = 1.0;
  std::string text;
  int font_size = 0;
  bool bold = false;
  double rotation_deg = 0.0;  // counter-clockwise
  HAlign halign = HAlign::kLeft;
  VAlign valign = VAlign::kTop;
  // Text only: keep ink inside this rectangle when non-empty.
  Rect clip;

  bool IsHorizontalLine() const;
  bool IsVerticalLine() const;
};

// Vector description of a table or chart, rasterized into a patch the size
// of the element's region.
struct DrawList {
  int width = 0;
  int height = 0;
  Rgb background{255, 255, 255};
  FontPair fonts;
  std::vector<DrawOp> ops;

  size_t Count(DrawRole role) const;

  void Line(DrawRole role, Point2 a, Point2 b, Rgb color, double width = 1.0);
  void FillRect(DrawRole role, Point2 top_left, Point2 bottom_right, Rgb color);
  void Polygon(DrawRole role, std::vector<Point2> points, Rgb color);
  DrawOp& Text(DrawRole role, std::string text, Point2 anchor, int size,
               Rgb color, HAlign halign, VAlign valign);
};

Image RasterizeDrawList(const DrawList& list, const TextRenderer& renderer);

}  // namespace docforge

#endif  // DOCFORGE_DRAW_HPP_
