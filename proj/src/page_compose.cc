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

#include "docforge/page_compose.hpp"

#include <algorithm>
#include <cmath>

#include "docforge/error.hpp"
#include "docforge/table_gen.hpp"
#include "docforge/unicode.hpp"

namespace docforge {

namespace {

constexpr int kSpecAttempts = 3;

const GenerationConfig& Validated(const GenerationConfig& config) {
  ValidateConfig(config);
  return config;
}

bool HasCjk(std::string_view text) {
  for (char32_t cp : DecodeUtf8(text)) {
    if (IsCjk(cp)) return true;
  }
  return false;
}

class PageBuilder {
 public:
  PageBuilder(const GenerationContext& ctx, Category category, uint64_t seed,
              std::optional<ChartKind> chart_kind)
      : ctx_(ctx), cfg_(ctx.config()), category_(category), rng_(seed),
        chart_kind_(chart_kind) {}

  DocumentRecord Build() {
    const TextCorpus& corpus = PickCorpus();
    std::vector<RegionKind> plan;
    switch (category_) {
      case Category::kWithImage: plan = {RegionKind::kNaturalImage}; break;
      case Category::kWithTable: plan = {RegionKind::kTable}; break;
      case Category::kWithChart: plan = {RegionKind::kChart}; break;
      default: break;
    }
    DocumentRecord record;
    record.category = category_;
    record.page = PlanPage(cfg_, rng_, plan.empty());
    page_ = &record.page;
    const std::vector<Region> regions =
        PartitionRegions(record.page, plan, cfg_.layout, rng_);
    record.image = Image(record.page.width_px, record.page.height_px,
                         record.page.background_color);
    for (const Region& region : regions) {
      switch (region.kind) {
        case RegionKind::kTextBlock:
          FillText(region, corpus, record);
          break;
        case RegionKind::kNaturalImage:
          PlaceImage(region, record);
          break;
        case RegionKind::kTable:
          PlaceTable(region, corpus, record);
          break;
        case RegionKind::kChart:
          PlaceChart(region, corpus, record);
          break;
      }
    }
    CheckPurity(record);
    record.annotation = EmitAnnotation(record);
    return record;
  }

 private:
  const TextCorpus& PickCorpus() {
    switch (category_) {
      case Category::kPureEnglish: return ctx_.english();
      case Category::kPureChinese: return ctx_.chinese();
      default:
        return rng_.Chance(cfg_.compose.chinese_page_probability) ? ctx_.chinese()
                                                                  : ctx_.english();
    }
  }

  // Fills a text band with successive paragraphs, one text block each.
  void FillText(const Region& band, const TextCorpus& corpus, DocumentRecord& record) {
    const PageSpec& page = *page_;
    const TextRenderer& renderer = ctx_.renderer();
    const FontPair fonts = page.fonts();
    const int size = page.base_font_size_px;
    const int pitch = page.LinePitch();
    const int space = renderer.SpaceAdvance(fonts.latin, size);
    const int ascent = static_cast<int>(std::lround(size * 0.8));
    const bool cjk = corpus.language() == Language::kChinese;
    int y = band.bbox.y;
    while (band.bbox.bottom() - y >= pitch) {
      const auto count = static_cast<size_t>(
          cjk ? rng_.UniformInt(60, 260) : rng_.UniformInt(25, 110));
      const std::vector<TokenUnit> units = SampleTextSpan(corpus, count, rng_);
      std::vector<int> advances;
      advances.reserve(units.size());
      for (const TokenUnit& unit : units) {
        advances.push_back(renderer.MeasureWord(unit, fonts.For(unit), size));
      }
      Region block{{band.bbox.x, y, band.bbox.w, band.bbox.bottom() - y},
                   RegionKind::kTextBlock, 0, band.column};
      const LineBreakResult lines =
          LayoutLines(block, units, advances, space, ascent, page);
      if (lines.consumed == 0) break;
      block.bbox.h = static_cast<int>(lines.lines.size()) * pitch;

      ManifestEntry entry;
      entry.kind = RegionKind::kTextBlock;
      entry.bbox = block.bbox;
      for (const LineLayout& line : lines.lines) {
        std::vector<GlyphPatch> patches;
        patches.reserve(line.slots.size());
        for (const UnitSlot& slot : line.slots) {
          patches.push_back(renderer.RenderWordWithFallback(
              slot.unit, fonts.For(slot.unit), size, page.text_color, &record.warnings));
          entry.units.push_back(patches.back().source_unit);
        }
        ComposeLine(line, patches, record.image, block.bbox);
      }
      entry.annotation = JoinUnits(entry.units);
      record.element_manifest.push_back(std::move(entry));
      y += block.bbox.h + page.segment_spacing_px;
    }
  }

  void PlaceImage(const Region& region, DocumentRecord& record) {
    const ImageSample sample = SampleImage(ctx_.images(), rng_);
    const Image& src = *sample.entry->image;
    const double scale = std::min(double(region.bbox.w) / src.width(),
                                  double(region.bbox.h) / src.height());
    const int w = std::clamp(static_cast<int>(src.width() * scale), 1, region.bbox.w);
    const int h = std::clamp(static_cast<int>(src.height() * scale), 1, region.bbox.h);
    const Rect placed{region.bbox.x + (region.bbox.w - w) / 2,
                      region.bbox.y + (region.bbox.h - h) / 2, w, h};
    record.image.Blit(Resize(src, w, h), placed.x, placed.y);
    record.element_manifest.push_back(
        {RegionKind::kNaturalImage, placed, sample.annotation, {}});
  }

  void PlaceTable(const Region& region, const TextCorpus& corpus,
                  DocumentRecord& record) {
    for (int attempt = 0;; ++attempt) {
      const TableSpec spec = GenerateTableSpec(corpus, cfg_.table, rng_);
      try {
        record.image.Blit(RenderTable(spec, region.bbox, *page_, cfg_.table,
                                      ctx_.renderer()),
                          region.bbox.x, region.bbox.y);
        record.element_manifest.push_back(
            {RegionKind::kTable, region.bbox, TableToHtml(spec), {}});
        return;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kInfeasibleCellSize || attempt + 1 >= kSpecAttempts) {
          throw;
        }
      }
    }
  }

  void PlaceChart(const Region& region, const TextCorpus& corpus,
                  DocumentRecord& record) {
    ChartKind kind;
    if (chart_kind_) {
      kind = *chart_kind_;
    } else {
      kind = kAllChartKinds[rng_.Weighted(cfg_.chart.kind_weights)];
    }
    for (int attempt = 0;; ++attempt) {
      const ChartSpec spec = GenerateChartSpec(kind, corpus, cfg_.chart, rng_);
      try {
        record.image.Blit(RenderChart(spec, region.bbox, *page_, cfg_.chart,
                                      ctx_.renderer()),
                          region.bbox.x, region.bbox.y);
        record.element_manifest.push_back(
            {RegionKind::kChart, region.bbox, ChartToAnnotation(spec), {}});
        return;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kInfeasibleCellSize || attempt + 1 >= kSpecAttempts) {
          throw;
        }
      }
    }
  }

  void CheckPurity(const DocumentRecord& record) const {
    bool any_text = false;
    for (const ManifestEntry& entry : record.element_manifest) {
      if (entry.kind != RegionKind::kTextBlock) continue;
      any_text = any_text || !entry.units.empty();
      if (category_ == Category::kPureEnglish && HasCjk(entry.annotation)) {
        throw Error(ErrorCode::kGenerationFailed,
                    "pure_en text block holds CJK text");
      }
      if (category_ == Category::kPureChinese && !HasCjk(entry.annotation)) {
        throw Error(ErrorCode::kGenerationFailed,
                    "pure_zh text block holds no CJK text");
      }
    }
    if ((category_ == Category::kPureEnglish || category_ == Category::kPureChinese) &&
        !any_text) {
      throw Error(ErrorCode::kGenerationFailed, "text page without text");
    }
  }

  const GenerationContext& ctx_;
  const GenerationConfig& cfg_;
  Category category_;
  Rng rng_;
  std::optional<ChartKind> chart_kind_;
  const PageSpec* page_ = nullptr;
};

bool Retryable(ErrorCode code) {
  return code == ErrorCode::kPlacementInfeasible ||
         code == ErrorCode::kInfeasibleCellSize ||
         code == ErrorCode::kGenerationFailed;
}

}  // namespace

const char* CategoryName(Category category) {
  switch (category) {
    case Category::kPureEnglish: return "pure_en";
    case Category::kPureChinese: return "pure_zh";
    case Category::kWithImage: return "with_image";
    case Category::kWithTable: return "with_table";
    case Category::kWithChart: return "with_chart";
  }
  return "unknown";
}

std::optional<Category> ParseCategory(std::string_view name) {
  for (Category c : kAllCategories) {
    if (name == CategoryName(c)) return c;
  }
  return std::nullopt;
}

const char* CategoryTitle(Category category) {
  switch (category) {
    case Category::kPureEnglish: return "English";
    case Category::kPureChinese: return "Chinese";
    case Category::kWithImage: return "Doc w/image";
    case Category::kWithTable: return "Doc w/table";
    case Category::kWithChart: return "Doc w/chart";
  }
  return "unknown";
}

GenerationContext::GenerationContext(GenerationConfig config)
    : config_(Validated(config)),
      english_(LoadTextCorpus(ResolvePath(config_, config_.corpora.english),
                              config_.corpora.format)),
      chinese_(LoadTextCorpus(ResolvePath(config_, config_.corpora.chinese),
                              config_.corpora.format)),
      images_(LoadImageCorpus(ResolvePath(config_, config_.corpora.images))),
      fonts_(FontRegistry::LoadDirectory(ResolvePath(config_, config_.corpora.fonts))) {
  auto require = [&](const std::string& id, const char* field) {
    if (!fonts_.Contains(id)) {
      throw Error(ErrorCode::kConfig, std::string("config field '") + field +
                                          "': font '" + id + "' is not registered");
    }
  };
  for (const auto& id : config_.page.latin_fonts) require(id, "page.latin_fonts");
  for (const auto& id : config_.page.cjk_fonts) require(id, "page.cjk_fonts");
  require(config_.page.fallback_font, "page.fallback_font");
  if (images_.empty()) {
    throw Error(ErrorCode::kConfig, "config field 'corpora.images': no PNG images in " +
                                        ResolvePath(config_, config_.corpora.images).string());
  }
  renderer_ = std::make_unique<TextRenderer>(fonts_, config_.page.fallback_font);
}

DocumentRecord ComposeDocument(const GenerationContext& context,
                               Category category, uint64_t seed,
                               std::optional<ChartKind> chart_kind) {
  const int budget = std::max(1, context.config().compose.retry_budget);
  std::string last_error;
  for (int attempt = 0; attempt < budget; ++attempt) {
    try {
      DocumentRecord record =
          PageBuilder(context, category, DeriveSeed(seed, attempt), chart_kind).Build();
      record.seed = seed;
      record.attempt = attempt;
      return record;
    } catch (const Error& e) {
      if (!Retryable(e.code())) throw;
      last_error = e.what();
    }
  }
  throw Error(ErrorCode::kGenerationFailed,
              std::string(CategoryName(category)) + " document with seed " +
                  std::to_string(seed) + " failed after " + std::to_string(budget) +
                  " attempts: " + last_error);
}

std::string EmitAnnotation(const DocumentRecord& record) {
  std::string out;
  for (const ManifestEntry& entry : record.element_manifest) {
    if (entry.annotation.empty()) continue;
    if (!out.empty()) out += '\n';
    out += entry.annotation;
  }
  return out;
}

}  // namespace docforge
