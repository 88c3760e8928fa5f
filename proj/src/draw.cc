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

#include "docforge/draw.hpp"

#include <algorithm>
#include <cmath>

namespace docforge {

namespace {

double SignedArea(const std::vector<Point2>& pts) {
  double area = 0.0;
  for (size_t i = 0; i < pts.size(); ++i) {
    const Point2& a = pts[i];
    const Point2& b = pts[(i + 1) % pts.size()];
    area += a.x * b.y - b.x * a.y;
  }
  return area / 2;
}

// Fills a set of polygons through one coverage pass over their bounding box.
// Every polygon is oriented the same way so overlaps never cancel.
void FillPolygons(Image& image, std::vector<std::vector<Point2>> polygons,
                  Rgb color) {
  double min_x = 1e18, min_y = 1e18, max_x = -1e18, max_y = -1e18;
  for (const auto& poly : polygons) {
    for (const Point2& p : poly) {
      min_x = std::min(min_x, p.x);
      min_y = std::min(min_y, p.y);
      max_x = std::max(max_x, p.x);
      max_y = std::max(max_y, p.y);
    }
  }
  const int x0 = std::max(0, static_cast<int>(std::floor(min_x)));
  const int y0 = std::max(0, static_cast<int>(std::floor(min_y)));
  const int x1 = std::min(image.width(), static_cast<int>(std::ceil(max_x)));
  const int y1 = std::min(image.height(), static_cast<int>(std::ceil(max_y)));
  if (x1 <= x0 || y1 <= y0) return;
  CoverageRasterizer raster(x1 - x0, y1 - y0);
  for (auto& poly : polygons) {
    if (poly.size() < 3) continue;
    if (SignedArea(poly) < 0) std::reverse(poly.begin(), poly.end());
    // Clamp into the box; the rasterizer only accepts in-range rows.
    auto clamp = [&](const Point2& p) {
      return Point2{std::clamp(p.x - x0, 0.0, double(x1 - x0)),
                    std::clamp(p.y - y0, 0.0, double(y1 - y0))};
    };
    const Point2 start = clamp(poly[0]);
    raster.MoveTo(start.x, start.y);
    for (size_t i = 1; i < poly.size(); ++i) {
      const Point2 p = clamp(poly[i]);
      raster.LineTo(p.x, p.y);
    }
    raster.Close();
  }
  image.BlendMask(raster.Finish(), x0, y0, color);
}

std::vector<Point2> StrokeQuad(Point2 a, Point2 b, double width) {
  const double dx = b.x - a.x, dy = b.y - a.y;
  const double len = std::hypot(dx, dy);
  if (len == 0.0) return {};
  const double nx = -dy / len * width / 2, ny = dx / len * width / 2;
  // Axis-aligned strokes are extended by half a width so corners join.
  const double ex = dx / len * width / 2, ey = dy / len * width / 2;
  return {{a.x - ex + nx, a.y - ey + ny},
          {b.x + ex + nx, b.y + ey + ny},
          {b.x + ex - nx, b.y + ey - ny},
          {a.x - ex - nx, a.y - ey - ny}};
}

void DrawText(Image& image, const DrawOp& op, const FontPair& fonts,
              const TextRenderer& renderer) {
  if (op.text.empty()) return;
  const TextRun run = renderer.RenderText(op.text, fonts, op.font_size, op.bold);
  AlphaMask mask = run.mask;
  if (op.rotation_deg != 0.0) mask = RotateMask(mask, op.rotation_deg);
  int x = static_cast<int>(std::lround(op.points[0].x));
  int y = static_cast<int>(std::lround(op.points[0].y));
  if (op.halign == HAlign::kCenter) x -= mask.width / 2;
  if (op.halign == HAlign::kRight) x -= mask.width;
  if (op.valign == VAlign::kMiddle) y -= mask.height / 2;
  if (op.valign == VAlign::kBottom) y -= mask.height;
  if (op.clip.w <= 0 || op.clip.h <= 0) {
    image.BlendMask(mask, x, y, op.color);
    return;
  }
  for (int my = 0; my < mask.height; ++my) {
    const int ty = y + my;
    if (ty < std::max(0, op.clip.y) ||
        ty >= std::min(image.height(), op.clip.bottom())) {
      continue;
    }
    for (int mx = 0; mx < mask.width; ++mx) {
      const int tx = x + mx;
      if (tx < std::max(0, op.clip.x) ||
          tx >= std::min(image.width(), op.clip.right())) {
        continue;
      }
      if (const uint8_t a = mask.at(mx, my)) image.Blend(tx, ty, op.color, a);
    }
  }
}

}  // namespace

bool DrawOp::IsHorizontalLine() const {
  return shape == DrawShape::kLine && points.size() == 2 &&
         points[0].y == points[1].y && points[0].x != points[1].x;
}

bool DrawOp::IsVerticalLine() const {
  return shape == DrawShape::kLine && points.size() == 2 &&
         points[0].x == points[1].x && points[0].y != points[1].y;
}

size_t DrawList::Count(DrawRole role) const {
  return static_cast<size_t>(std::count_if(
      ops.begin(), ops.end(), [role](const DrawOp& op) { return op.role == role; }));
}

void DrawList::Line(DrawRole role, Point2 a, Point2 b, Rgb color, double width) {
  DrawOp op;
  op.shape = DrawShape::kLine;
  op.role = role;
  op.color = color;
  op.points = {a, b};
  op.line_width = width;
  ops.push_back(std::move(op));
}

void DrawList::FillRect(DrawRole role, Point2 top_left, Point2 bottom_right,
                        Rgb color) {
  DrawOp op;
  op.shape = DrawShape::kRect;
  op.role = role;
  op.color = color;
  op.points = {top_left, bottom_right};
  ops.push_back(std::move(op));
}

void DrawList::Polygon(DrawRole role, std::vector<Point2> points, Rgb color) {
  DrawOp op;
  op.shape = DrawShape::kPolygon;
  op.role = role;
  op.color = color;
  op.points = std::move(points);
  ops.push_back(std::move(op));
}

DrawOp& DrawList::Text(DrawRole role, std::string text, Point2 anchor, int size,
                       Rgb color, HAlign halign, VAlign valign) {
  DrawOp op;
  op.shape = DrawShape::kText;
  op.role = role;
  op.color = color;
  op.points = {anchor};
  op.text = std::move(text);
  op.font_size = size;
  op.halign = halign;
  op.valign = valign;
  ops.push_back(std::move(op));
  return ops.back();
}

Image RasterizeDrawList(const DrawList& list, const TextRenderer& renderer) {
  Image image(list.width, list.height, list.background);
  for (const DrawOp& op : list.ops) {
    switch (op.shape) {
      case DrawShape::kLine: {
        auto quad = StrokeQuad(op.points[0], op.points[1], op.line_width);
        if (!quad.empty()) FillPolygons(image, {std::move(quad)}, op.color);
        break;
      }
      case DrawShape::kRect: {
        const Point2 a = op.points[0], b = op.points[1];
        FillPolygons(image, {{a, {b.x, a.y}, b, {a.x, b.y}}}, op.color);
        break;
      }
      case DrawShape::kPolygon:
        FillPolygons(image, {op.points}, op.color);
        break;
      case DrawShape::kText:
        DrawText(image, op, list.fonts, renderer);
        break;
    }
  }
  return image;
}

}  // namespace docforge
