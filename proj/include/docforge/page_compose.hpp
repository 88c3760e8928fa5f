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

#ifndef DOCFORGE_PAGE_COMPOSE_HPP_
#define DOCFORGE_PAGE_COMPOSE_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "docforge/chart_gen.hpp"
#include "docforge/config.hpp"
#include "docforge/corpus.hpp"
#include "docforge/font.hpp"
#include "docforge/layout.hpp"
#include "docforge/raster.hpp"
#include "docforge/text_render.hpp"

namespace docforge {

enum class Category { kPureEnglish, kPureChinese, kWithImage, kWithTable, kWithChart };

inline constexpr Category kAllCategories[] = {
    Category::kPureEnglish, Category::kPureChinese, Category::kWithImage,
    Category::kWithTable, Category::kWithChart};

// pure_en, pure_zh, with_image, with_table, with_chart
const char* CategoryName(Category category);
std::optional<Category> ParseCategory(std::string_view name);
// Column headings of the evaluation grid.
const char* CategoryTitle(Category category);

// Everything a document needs besides its seed. Immutable once built and
// shared by all workers.
class GenerationContext {
 public:
  // Validates config and loads corpora, images and fonts it references.
  explicit GenerationContext(GenerationConfig config);

  const GenerationConfig& config() const { return config_; }
  const TextCorpus& english() const { return english_; }
  const TextCorpus& chinese() const { return chinese_; }
  const ImageCorpus& images() const { return images_; }
  const FontRegistry& fonts() const { return fonts_; }
  const TextRenderer& renderer() const { return *renderer_; }

 private:
  GenerationConfig config_;
  TextCorpus english_;
  TextCorpus chinese_;
  ImageCorpus images_;
  FontRegistry fonts_;
  std::unique_ptr<TextRenderer> renderer_;
};

struct ManifestEntry {
  RegionKind kind = RegionKind::kTextBlock;
  Rect bbox;
  std::string annotation;
  // Text blocks: units placed on the canvas, in order.
  std::vector<TokenUnit> units;
};

struct DocumentRecord {
  Image image;
  std::string annotation;
  Category category = Category::kPureEnglish;
  uint64_t seed = 0;
  std::vector<ManifestEntry> element_manifest;  // reading order
  std::vector<std::string> warnings;
  PageSpec page;
  int attempt = 0;  // retry that succeeded
};

// Retries infeasible layouts with seeds DeriveSeed(seed, attempt); throws
// Error(kGenerationFailed) once compose.retry_budget attempts fail.
DocumentRecord ComposeDocument(const GenerationContext& context,
                               Category category, uint64_t seed,
                               std::optional<ChartKind> chart_kind = std::nullopt);

// Element annotations joined by single newlines; empty ones are skipped.
std::string EmitAnnotation(const DocumentRecord& record);

}  // namespace docforge

#endif  // DOCFORGE_PAGE_COMPOSE_HPP_
