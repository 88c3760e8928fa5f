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

#ifndef DOCFORGE_DATASET_HPP_
#define DOCFORGE_DATASET_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "docforge/chart_gen.hpp"
#include "docforge/page_compose.hpp"

namespace docforge {

// Version string recorded in every manifest snapshot.
const char* ToolVersion();

struct CategoryCounts {
  std::array<int, 5> counts{};

  int& operator[](Category c) { return counts[static_cast<size_t>(c)]; }
  int operator[](Category c) const { return counts[static_cast<size_t>(c)]; }
  int total() const;

  static CategoryCounts Uniform(int per_category);
};

struct ManifestRecord {
  std::string image;         // path relative to the dataset root
  std::string ground_truth;  // annotation
  Category category = Category::kPureEnglish;
  uint64_t seed = 0;

  friend bool operator==(const ManifestRecord&, const ManifestRecord&) = default;
};

struct Manifest {
  std::vector<ManifestRecord> records;
  std::string config_fingerprint;
  std::string tool_version;
  uint64_t base_seed = 0;
};

struct DatasetOptions {
  int workers = 1;
  // Called from the writer thread after each record, in index order.
  std::function<void(size_t done, size_t total)> progress;
};

// Seed of document `index` of `category`.
uint64_t DocumentSeed(uint64_t base_seed, Category category, uint64_t index);

// Chart kind pinned for WithChart document `index`: the first four cycle
// through bar, pie, line and scatter (bar orientation drawn from the seed);
// later ones are left to the configured kind weights.
std::optional<ChartKind> PinnedChartKind(uint64_t document_seed, uint64_t index);

// Writes out_dir/{images/, manifest.jsonl, config_snapshot.json,
// pixel_hashes.jsonl}. On failure the files written so far are removed and
// Error(kGenerationFailed) names the failing document.
Manifest GenerateDataset(const GenerationContext& context,
                         const CategoryCounts& counts, uint64_t base_seed,
                         const std::filesystem::path& out_dir,
                         const DatasetOptions& options = {});

nlohmann::json RecordToJson(const ManifestRecord& record);
// Throws Error(kParse) for missing or mistyped fields.
ManifestRecord RecordFromJson(const nlohmann::json& json);

// Reads manifest.jsonl and the snapshot beside it when present.
Manifest ReadManifest(const std::filesystem::path& manifest_path);

struct CheckResult {
  std::string name;
  bool passed = true;
  size_t checked = 0;
  size_t failures = 0;
  std::vector<std::string> details;  // first few failures
};

struct VerifyReport {
  std::filesystem::path manifest;
  size_t records = 0;
  std::vector<CheckResult> checks;

  bool passed() const;
  nlohmann::json ToJson() const;
};

struct VerifyOptions {
  bool check_pixels = false;  // decode every image and compare pixel hashes
};

// Re-validates what can be checked from persisted data. Throws Error(kIo)
// when the manifest cannot be read.
VerifyReport VerifyDataset(const std::filesystem::path& manifest_path,
                           const VerifyOptions& options = {});

}  // namespace docforge

#endif  // DOCFORGE_DATASET_HPP_
