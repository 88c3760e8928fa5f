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

#ifndef DOCFORGE_CORPUS_HPP_
#define DOCFORGE_CORPUS_HPP_

#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "docforge/raster.hpp"
#include "docforge/rng.hpp"

namespace docforge {

enum class Language { kEnglish, kChinese, kMixed };
enum class Script { kLatin, kCjk, kDigit, kPunct };

const char* LanguageName(Language language);

// Smallest renderable piece of text: a whitespace-free run of non-CJK
// characters, or exactly one CJK code point.
struct TokenUnit {
  std::string text;
  Script script = Script::kLatin;

  friend bool operator==(const TokenUnit&, const TokenUnit&) = default;
};

// Whitespace collapses; each CJK code point becomes its own unit.
std::vector<TokenUnit> Tokenize(std::string_view passage);

// True when a space separates a and b in running text: only between two
// non-CJK units.
bool NeedsSeparator(const TokenUnit& a, const TokenUnit& b);

// Canonical single-line text for a unit sequence.
std::string JoinUnits(std::span<const TokenUnit> units);

// >= 50% CJK code points (of non-space ones) -> Chinese, <= 10% -> English,
// otherwise Mixed.
Language ClassifyLanguage(std::string_view text);

class TextCorpus {
 public:
  // Throws kInvalidArgument when passages is empty or holds a blank passage.
  explicit TextCorpus(std::vector<std::string> passages);

  const std::vector<std::string>& documents() const { return documents_; }
  Language language() const { return language_; }
  size_t size() const { return documents_.size(); }
  const std::vector<TokenUnit>& units(size_t passage) const {
    return units_[passage];
  }

 private:
  std::vector<std::string> documents_;
  std::vector<std::vector<TokenUnit>> units_;
  Language language_ = Language::kEnglish;
};

enum class CorpusFormat { kPlainLines, kJsonLines };

// Blank lines are skipped. json-lines records must carry a string "text".
TextCorpus LoadTextCorpus(const std::filesystem::path& path,
                          CorpusFormat format);

// Contiguous span from one uniformly chosen passage. A passage shorter than
// unit_count yields a shorter span; spans never cross passages.
std::vector<TokenUnit> SampleTextSpan(const TextCorpus& corpus,
                                      size_t unit_count, Rng& rng);

inline constexpr std::string_view kNatureImagePlaceholder = "<nature_image>";

struct ImageEntry {
  std::string name;
  std::shared_ptr<const Image> image;
  std::optional<std::string> label;
};

class ImageCorpus {
 public:
  ImageCorpus() = default;
  // Throws kInvalidArgument for null images or empty labels.
  explicit ImageCorpus(std::vector<ImageEntry> entries);

  const std::vector<ImageEntry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

 private:
  std::vector<ImageEntry> entries_;
};

// Every *.png in dir, sorted by file name. An optional labels.jsonl maps
// {"file": name, "label": category}.
ImageCorpus LoadImageCorpus(const std::filesystem::path& dir);

struct ImageSample {
  const ImageEntry* entry = nullptr;
  std::string annotation;  // category label, or the placeholder
};

ImageSample SampleImage(const ImageCorpus& corpus, Rng& rng);

}  // namespace docforge

#endif  // DOCFORGE_CORPUS_HPP_
