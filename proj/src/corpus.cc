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

#include "docforge/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <map>

#include <json.hpp>

#include "docforge/error.hpp"
#include "docforge/unicode.hpp"

namespace docforge {

namespace {

bool IsDigitLike(char32_t cp) {
  return IsAsciiDigit(cp) || cp == U'.' || cp == U',' || cp == U'%' ||
         cp == U'-' || cp == U'+' || cp == U'/' || cp == U':';
}

bool IsPunctuation(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= 0x21 && cp <= 0x2F) || (cp >= 0x3A && cp <= 0x40) ||
           (cp >= 0x5B && cp <= 0x60) || (cp >= 0x7B && cp <= 0x7E);
  }
  return (cp >= 0x2000 && cp <= 0x206F) || (cp >= 0xA1 && cp <= 0xBF) ||
         cp == 0xD7 || cp == 0xF7;
}

Script ClassifyRun(std::u32string_view run) {
  bool any_digit = false;
  bool all_digit_like = true;
  bool all_punct = true;
  for (char32_t cp : run) {
    any_digit |= IsAsciiDigit(cp);
    all_digit_like &= IsDigitLike(cp);
    all_punct &= IsPunctuation(cp);
  }
  if (any_digit && all_digit_like) return Script::kDigit;
  if (all_punct) return Script::kPunct;
  return Script::kLatin;
}

std::string_view Trim(std::string_view s) {
  const auto is_space = [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' ||
           c == '\f';
  };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

}  // namespace

const char* LanguageName(Language language) {
  switch (language) {
    case Language::kEnglish: return "English";
    case Language::kChinese: return "Chinese";
    case Language::kMixed: return "Mixed";
  }
  return "Unknown";
}

std::vector<TokenUnit> Tokenize(std::string_view passage) {
  std::vector<TokenUnit> units;
  std::u32string run;
  auto flush = [&] {
    if (run.empty()) return;
    units.push_back({EncodeUtf8(run), ClassifyRun(run)});
    run.clear();
  };
  for (char32_t cp : DecodeUtf8(passage)) {
    if (IsUnicodeSpace(cp)) {
      flush();
    } else if (IsCjk(cp)) {
      flush();
      units.push_back({EncodeUtf8(cp), Script::kCjk});
    } else {
      run.push_back(cp);
    }
  }
  flush();
  return units;
}

bool NeedsSeparator(const TokenUnit& a, const TokenUnit& b) {
  return a.script != Script::kCjk && b.script != Script::kCjk;
}

std::string JoinUnits(std::span<const TokenUnit> units) {
  std::string out;
  for (size_t i = 0; i < units.size(); ++i) {
    if (i > 0 && NeedsSeparator(units[i - 1], units[i])) out.push_back(' ');
    out += units[i].text;
  }
  return out;
}

Language ClassifyLanguage(std::string_view text) {
  size_t total = 0, cjk = 0;
  for (char32_t cp : DecodeUtf8(text)) {
    if (IsUnicodeSpace(cp)) continue;
    ++total;
    if (IsCjk(cp)) ++cjk;
  }
  if (total == 0) return Language::kEnglish;
  if (cjk * 2 >= total) return Language::kChinese;
  if (cjk * 10 <= total) return Language::kEnglish;
  return Language::kMixed;
}

TextCorpus::TextCorpus(std::vector<std::string> passages)
    : documents_(std::move(passages)) {
  if (documents_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "zero usable passages");
  }
  std::string all;
  units_.reserve(documents_.size());
  for (size_t i = 0; i < documents_.size(); ++i) {
    units_.push_back(Tokenize(documents_[i]));
    if (units_.back().empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "passage " + std::to_string(i) + " is blank");
    }
    all += documents_[i];
    all.push_back('\n');
  }
  language_ = ClassifyLanguage(all);
}

TextCorpus LoadTextCorpus(const std::filesystem::path& path,
                          CorpusFormat format) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read corpus " + path.string());
  std::vector<std::string> passages;
  std::string line;
  size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (Trim(line).empty()) continue;
    if (format == CorpusFormat::kPlainLines) {
      passages.emplace_back(Trim(line));
      continue;
    }
    nlohmann::json record;
    try {
      record = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorCode::kParse, path.string() + ":" +
                                         std::to_string(line_number) +
                                         ": malformed record: " + e.what());
    }
    if (!record.is_object() || !record.contains("text") ||
        !record["text"].is_string()) {
      throw Error(ErrorCode::kParse,
                  path.string() + ":" + std::to_string(line_number) +
                      ": malformed record: missing string field \"text\"");
    }
    const std::string text = record["text"].get<std::string>();
    if (!Trim(text).empty()) passages.emplace_back(Trim(text));
  }
  if (passages.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                path.string() + ": zero usable passages");
  }
  return TextCorpus(std::move(passages));
}

std::vector<TokenUnit> SampleTextSpan(const TextCorpus& corpus,
                                      size_t unit_count, Rng& rng) {
  if (unit_count == 0) return {};
  const auto& units = corpus.units(rng.Below(corpus.size()));
  if (units.size() <= unit_count) return units;
  const size_t start = rng.Below(units.size() - unit_count + 1);
  return {units.begin() + start, units.begin() + start + unit_count};
}

ImageCorpus::ImageCorpus(std::vector<ImageEntry> entries)
    : entries_(std::move(entries)) {
  for (const ImageEntry& e : entries_) {
    if (!e.image || e.image->empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "image entry '" + e.name + "' has no raster");
    }
    if (e.label && Trim(*e.label).empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "image entry '" + e.name + "' has an empty label");
    }
  }
}

ImageCorpus LoadImageCorpus(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw Error(ErrorCode::kIo, "image corpus " + dir.string() +
                                    " is not a directory");
  }
  std::map<std::string, std::string> labels;
  const auto label_path = dir / "labels.jsonl";
  if (std::filesystem::exists(label_path)) {
    std::ifstream in(label_path);
    std::string line;
    size_t line_number = 0;
    while (std::getline(in, line)) {
      ++line_number;
      if (Trim(line).empty()) continue;
      try {
        const auto record = nlohmann::json::parse(line);
        labels[record.at("file").get<std::string>()] =
            record.at("label").get<std::string>();
      } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::kParse, label_path.string() + ":" +
                                           std::to_string(line_number) +
                                           ": malformed record: " + e.what());
      }
    }
  }
  std::vector<std::filesystem::path> files;
  for (const auto& item : std::filesystem::directory_iterator(dir)) {
    if (item.is_regular_file() && item.path().extension() == ".png") {
      files.push_back(item.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<ImageEntry> entries;
  for (const auto& file : files) {
    ImageEntry entry;
    entry.name = file.filename().string();
    entry.image = std::make_shared<const Image>(ReadPng(file));
    if (auto it = labels.find(entry.name); it != labels.end()) {
      entry.label = it->second;
    }
    entries.push_back(std::move(entry));
  }
  return ImageCorpus(std::move(entries));
}

ImageSample SampleImage(const ImageCorpus& corpus, Rng& rng) {
  if (corpus.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "image corpus is empty");
  }
  const ImageEntry& entry = corpus.entries()[rng.Below(corpus.entries().size())];
  return {&entry, entry.label ? *entry.label
                              : std::string(kNatureImagePlaceholder)};
}

}  // namespace docforge
