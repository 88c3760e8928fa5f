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

#include "docforge/font.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>

#include <json.hpp>

#include "docforge/error.hpp"

namespace docforge {

namespace {

constexpr int kMaxCompositeDepth = 8;

// Composite glyph flags.
constexpr uint16_t kArg1And2AreWords = 0x0001;
constexpr uint16_t kArgsAreXyValues = 0x0002;
constexpr uint16_t kWeHaveAScale = 0x0008;
constexpr uint16_t kMoreComponents = 0x0020;
constexpr uint16_t kWeHaveAnXAndYScale = 0x0040;
constexpr uint16_t kWeHaveATwoByTwo = 0x0080;

}  // namespace

std::shared_ptr<const Font> Font::Load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open font " + path.string());
  std::shared_ptr<Font> font(new Font());
  font->path_ = path.string();
  font->data_.assign(std::istreambuf_iterator<char>(in), {});
  font->Parse();
  return font;
}

uint16_t Font::U16(size_t at) const {
  if (at + 2 > data_.size()) {
    throw Error(ErrorCode::kParse, "truncated font " + path_);
  }
  return static_cast<uint16_t>(data_[at] << 8 | data_[at + 1]);
}

uint32_t Font::U32(size_t at) const {
  return uint32_t(U16(at)) << 16 | U16(at + 2);
}

void Font::Parse() {
  const uint32_t version = U32(0);
  if (version != 0x00010000 && version != 0x74727565) {
    throw Error(ErrorCode::kParse,
                path_ + " is not a TrueType font with glyf outlines");
  }
  const uint16_t num_tables = U16(4);
  for (uint16_t i = 0; i < num_tables; ++i) {
    const size_t rec = 12 + size_t(i) * 16;
    std::string tag(reinterpret_cast<const char*>(&data_[rec]), 4);
    tables_[tag] = {U32(rec + 8), U32(rec + 12)};
  }
  for (const char* required : {"head", "hhea", "hmtx", "maxp", "loca", "glyf", "cmap"}) {
    if (!tables_.count(required)) {
      throw Error(ErrorCode::kParse,
                  path_ + " lacks required table '" + required + "'");
    }
  }
  const uint32_t head = tables_["head"].first;
  units_per_em_ = U16(head + 18);
  index_to_loc_format_ = S16(head + 50);
  num_glyphs_ = U16(tables_["maxp"].first + 4);
  const uint32_t hhea = tables_["hhea"].first;
  ascender_ = S16(hhea + 4);
  descender_ = S16(hhea + 6);
  num_hmetrics_ = U16(hhea + 34);
  if (units_per_em_ == 0 || num_hmetrics_ == 0) {
    throw Error(ErrorCode::kParse, "invalid metrics in " + path_);
  }
  ParseCmap(tables_["cmap"].first);
}

void Font::ParseCmap(uint32_t cmap) {
  const uint16_t count = U16(cmap + 2);
  uint32_t best = 0;
  int best_rank = 0;
  for (uint16_t i = 0; i < count; ++i) {
    const size_t rec = cmap + 4 + size_t(i) * 8;
    const uint16_t platform = U16(rec), encoding = U16(rec + 2);
    const uint32_t sub = cmap + U32(rec + 4);
    const uint16_t format = U16(sub);
    int rank = 0;
    if (format == 12 && (platform == 3 || platform == 0)) rank = 3;
    else if (format == 4 && platform == 3 && encoding == 1) rank = 2;
    else if (format == 4 && platform == 0) rank = 1;
    if (rank > best_rank) {
      best_rank = rank;
      best = sub;
    }
  }
  if (best_rank == 0) {
    throw Error(ErrorCode::kParse, path_ + " has no Unicode cmap");
  }
  if (U16(best) == 12) {
    const uint32_t groups = U32(best + 12);
    for (uint32_t g = 0; g < groups; ++g) {
      const size_t at = best + 16 + size_t(g) * 12;
      const uint32_t start = U32(at), end = U32(at + 4), glyph = U32(at + 8);
      for (uint32_t cp = start; cp <= end && cp <= 0x10FFFF; ++cp) {
        const uint32_t gid = glyph + (cp - start);
        if (gid != 0 && gid < uint32_t(num_glyphs_)) cmap_[cp] = uint16_t(gid);
      }
    }
    return;
  }
  const uint16_t seg_x2 = U16(best + 6);
  const size_t ends = best + 14;
  const size_t starts = ends + seg_x2 + 2;
  const size_t deltas = starts + seg_x2;
  const size_t ranges = deltas + seg_x2;
  for (uint16_t s = 0; s < seg_x2 / 2; ++s) {
    const uint16_t end = U16(ends + s * 2), start = U16(starts + s * 2);
    const uint16_t delta = U16(deltas + s * 2);
    const uint16_t range = U16(ranges + s * 2);
    for (uint32_t cp = start; cp <= end && cp != 0xFFFF; ++cp) {
      uint16_t gid;
      if (range == 0) {
        gid = static_cast<uint16_t>(cp + delta);
      } else {
        const size_t at = ranges + s * 2 + range + (cp - start) * 2;
        gid = U16(at);
        if (gid != 0) gid = static_cast<uint16_t>(gid + delta);
      }
      if (gid != 0 && gid < num_glyphs_) cmap_[cp] = gid;
    }
  }
}

uint16_t Font::GlyphIndex(char32_t cp) const {
  const auto it = cmap_.find(cp);
  return it == cmap_.end() ? 0 : it->second;
}

double Font::Advance(uint16_t glyph, double size_px) const {
  const uint32_t hmtx = tables_.at("hmtx").first;
  const int index = std::min<int>(glyph, num_hmetrics_ - 1);
  return U16(hmtx + size_t(index) * 4) * size_px / units_per_em_;
}

std::vector<Font::Contour> Font::Outline(uint16_t glyph, int depth) const {
  std::vector<Contour> contours;
  if (glyph >= num_glyphs_ || depth > kMaxCompositeDepth) return contours;
  const uint32_t loca = tables_.at("loca").first;
  const uint32_t glyf = tables_.at("glyf").first;
  uint32_t begin, end;
  if (index_to_loc_format_ == 0) {
    begin = uint32_t(U16(loca + glyph * 2u)) * 2;
    end = uint32_t(U16(loca + glyph * 2u + 2)) * 2;
  } else {
    begin = U32(loca + glyph * 4u);
    end = U32(loca + glyph * 4u + 4);
  }
  if (end <= begin) return contours;  // empty glyph, e.g. space
  const size_t g = glyf + begin;
  const int16_t num_contours = S16(g);

  if (num_contours >= 0) {
    std::vector<uint16_t> end_points(num_contours);
    for (int i = 0; i < num_contours; ++i) end_points[i] = U16(g + 10 + i * 2);
    const size_t num_points = num_contours ? end_points.back() + 1u : 0u;
    size_t at = g + 10 + num_contours * 2;
    at += 2 + U16(at);  // skip instructions
    std::vector<uint8_t> flags;
    flags.reserve(num_points);
    while (flags.size() < num_points) {
      const uint8_t f = data_.at(at++);
      flags.push_back(f);
      if (f & 0x08) {
        for (uint8_t r = data_.at(at++); r > 0 && flags.size() < num_points; --r) {
          flags.push_back(f);
        }
      }
    }
    std::vector<Point> points(num_points);
    int value = 0;
    for (size_t i = 0; i < num_points; ++i) {
      const uint8_t f = flags[i];
      if (f & 0x02) {
        const int dx = data_.at(at++);
        value += (f & 0x10) ? dx : -dx;
      } else if (!(f & 0x10)) {
        value += S16(at);
        at += 2;
      }
      points[i].x = value;
      points[i].on_curve = f & 0x01;
    }
    value = 0;
    for (size_t i = 0; i < num_points; ++i) {
      const uint8_t f = flags[i];
      if (f & 0x04) {
        const int dy = data_.at(at++);
        value += (f & 0x20) ? dy : -dy;
      } else if (!(f & 0x20)) {
        value += S16(at);
        at += 2;
      }
      points[i].y = value;
    }
    size_t first = 0;
    for (int c = 0; c < num_contours; ++c) {
      contours.emplace_back(points.begin() + first,
                            points.begin() + end_points[c] + 1);
      first = end_points[c] + 1u;
    }
    return contours;
  }

  size_t at = g + 10;
  uint16_t flags;
  do {
    flags = U16(at);
    const uint16_t component = U16(at + 2);
    at += 4;
    double dx = 0, dy = 0;
    if (flags & kArg1And2AreWords) {
      dx = S16(at);
      dy = S16(at + 2);
      at += 4;
    } else {
      dx = static_cast<int8_t>(data_.at(at));
      dy = static_cast<int8_t>(data_.at(at + 1));
      at += 2;
    }
    if (!(flags & kArgsAreXyValues)) dx = dy = 0;  // point matching unsupported
    double a = 1, b = 0, c = 0, d = 1;
    if (flags & kWeHaveAScale) {
      a = d = S16(at) / 16384.0;
      at += 2;
    } else if (flags & kWeHaveAnXAndYScale) {
      a = S16(at) / 16384.0;
      d = S16(at + 2) / 16384.0;
      at += 4;
    } else if (flags & kWeHaveATwoByTwo) {
      a = S16(at) / 16384.0;
      b = S16(at + 2) / 16384.0;
      c = S16(at + 4) / 16384.0;
      d = S16(at + 6) / 16384.0;
      at += 8;
    }
    for (Contour& contour : Outline(component, depth + 1)) {
      for (Point& p : contour) {
        const double x = p.x, y = p.y;
        p.x = a * x + c * y + dx;
        p.y = b * x + d * y + dy;
      }
      contours.push_back(std::move(contour));
    }
  } while (flags & kMoreComponents);
  return contours;
}

std::shared_ptr<const GlyphBitmap> Font::Rasterize(uint16_t glyph,
                                                   int size_px) const {
  const uint64_t key = uint64_t(glyph) << 32 | uint32_t(size_px);
  {
    std::lock_guard lock(cache_mutex_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  auto bitmap = std::make_shared<GlyphBitmap>();
  bitmap->advance = Advance(glyph, size_px);
  const double scale = double(size_px) / units_per_em_;
  auto contours = Outline(glyph);
  double min_x = 1e18, min_y = 1e18, max_x = -1e18, max_y = -1e18;
  for (const Contour& contour : contours) {
    for (const Point& p : contour) {
      min_x = std::min(min_x, p.x * scale);
      max_x = std::max(max_x, p.x * scale);
      min_y = std::min(min_y, p.y * scale);
      max_y = std::max(max_y, p.y * scale);
    }
  }
  if (!contours.empty() && max_x > min_x && max_y > min_y) {
    const int left = static_cast<int>(std::floor(min_x));
    const int top = static_cast<int>(std::ceil(max_y));
    const int width = static_cast<int>(std::ceil(max_x)) - left;
    const int height = top - static_cast<int>(std::floor(min_y));
    CoverageRasterizer raster(width, height);
    auto tx = [&](double x) { return x * scale - left; };
    auto ty = [&](double y) { return top - y * scale; };
    for (const Contour& contour : contours) {
      const size_t n = contour.size();
      if (n < 2) continue;
      // Start on an on-curve point, synthesising one if the contour has none.
      size_t start = 0;
      while (start < n && !contour[start].on_curve) ++start;
      Point origin;
      if (start == n) {
        origin = {(contour[n - 1].x + contour[0].x) / 2,
                  (contour[n - 1].y + contour[0].y) / 2, true};
        start = 0;
      } else {
        origin = contour[start];
        start = start + 1;
      }
      raster.MoveTo(tx(origin.x), ty(origin.y));
      const Point* pending = nullptr;
      for (size_t k = 0; k < n; ++k) {
        const Point& p = contour[(start + k) % n];
        if (p.on_curve) {
          if (pending) {
            raster.QuadTo(tx(pending->x), ty(pending->y), tx(p.x), ty(p.y));
            pending = nullptr;
          } else {
            raster.LineTo(tx(p.x), ty(p.y));
          }
        } else {
          if (pending) {
            const double mx = (pending->x + p.x) / 2, my = (pending->y + p.y) / 2;
            raster.QuadTo(tx(pending->x), ty(pending->y), tx(mx), ty(my));
          }
          pending = &p;
        }
      }
      if (pending) {
        raster.QuadTo(tx(pending->x), ty(pending->y), tx(origin.x), ty(origin.y));
      }
      raster.Close();
    }
    bitmap->mask = raster.Finish();
    bitmap->left = left;
    bitmap->top = top;
  }
  std::lock_guard lock(cache_mutex_);
  return cache_.emplace(key, std::move(bitmap)).first->second;
}

FontRegistry FontRegistry::LoadDirectory(const std::filesystem::path& dir) {
  const auto manifest_path = dir / "manifest.json";
  std::ifstream in(manifest_path);
  if (!in) {
    throw Error(ErrorCode::kIo, "cannot open font manifest " +
                                    manifest_path.string());
  }
  nlohmann::json manifest;
  try {
    manifest = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse,
                manifest_path.string() + ": " + e.what());
  }
  FontRegistry registry;
  if (!manifest.contains("fonts") || !manifest["fonts"].is_array()) {
    throw Error(ErrorCode::kParse, manifest_path.string() + ": missing \"fonts\" array");
  }
  for (const auto& item : manifest["fonts"]) {
    FontEntry entry;
    try {
      entry.id = item.at("id").get<std::string>();
      entry.file = dir / item.at("file").get<std::string>();
      const auto coverage = item.at("coverage").get<std::string>();
      if (coverage == "latin") {
        entry.coverage = FontCoverage::kLatin;
      } else if (coverage == "cjk") {
        entry.coverage = FontCoverage::kCjk;
      } else {
        throw Error(ErrorCode::kParse, "unknown coverage tag '" + coverage + "'");
      }
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kParse, manifest_path.string() + ": " + e.what());
    }
    if (registry.Contains(entry.id)) {
      throw Error(ErrorCode::kParse, "duplicate font id '" + entry.id + "'");
    }
    entry.font = Font::Load(entry.file);
    registry.entries_.push_back(std::move(entry));
  }
  if (registry.entries_.empty()) {
    throw Error(ErrorCode::kParse, manifest_path.string() + " lists no fonts");
  }
  return registry;
}

bool FontRegistry::Contains(const std::string& id) const {
  return std::any_of(entries_.begin(), entries_.end(),
                     [&](const FontEntry& e) { return e.id == id; });
}

const FontEntry& FontRegistry::Get(const std::string& id) const {
  for (const FontEntry& e : entries_) {
    if (e.id == id) return e;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown font id '" + id + "'");
}

}  // namespace docforge
