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

#include "docforge/dataset.hpp"

#include <atomic>
#include <condition_variable>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <thread>

#include "docforge/error.hpp"
#include "docforge/table_gen.hpp"
#include "docforge/unicode.hpp"

#ifndef DOCFORGE_VERSION
#define DOCFORGE_VERSION "0.0.0"
#endif

namespace docforge {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr size_t kMaxDetails = 10;
constexpr const char* kSnapshotName = "config_snapshot.json";
constexpr const char* kPixelHashName = "pixel_hashes.jsonl";

std::string ImageName(Category category, int index) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "images/%s_%05d.png", CategoryName(category), index);
  return buf;
}

struct Job {
  Category category;
  int index;
};

struct Slot {
  ManifestRecord record;
  std::string pixel_hash;
};

bool HasCjkText(std::string_view text) {
  for (char32_t cp : DecodeUtf8(text)) {
    if (IsCjk(cp)) return true;
  }
  return false;
}

std::vector<std::string_view> SplitLines(std::string_view text) {
  std::vector<std::string_view> lines;
  size_t start = 0;
  while (start <= text.size()) {
    const size_t end = text.find('\n', start);
    if (end == std::string_view::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

class Check {
 public:
  explicit Check(std::string name) { result_.name = std::move(name); }
  void Pass() { ++result_.checked; }
  void Fail(const std::string& detail) {
    ++result_.checked;
    ++result_.failures;
    result_.passed = false;
    if (result_.details.size() < kMaxDetails) result_.details.push_back(detail);
  }
  CheckResult Take() { return std::move(result_); }

 private:
  CheckResult result_;
};

}  // namespace

const char* ToolVersion() { return "docforge " DOCFORGE_VERSION; }

int CategoryCounts::total() const {
  int sum = 0;
  for (int c : counts) sum += c;
  return sum;
}

CategoryCounts CategoryCounts::Uniform(int per_category) {
  CategoryCounts counts;
  counts.counts.fill(per_category);
  return counts;
}

uint64_t DocumentSeed(uint64_t base_seed, Category category, uint64_t index) {
  return DeriveSeed(base_seed, CategoryName(category), index);
}

std::optional<ChartKind> PinnedChartKind(uint64_t document_seed, uint64_t index) {
  switch (index) {
    case 0: {
      Rng rng(DeriveSeed(document_seed, "bar_orientation", 0));
      return rng.Chance(0.5) ? ChartKind::kBarVertical : ChartKind::kBarHorizontal;
    }
    case 1: return ChartKind::kPie;
    case 2: return ChartKind::kLine;
    case 3: return ChartKind::kScatter;
    default: return std::nullopt;
  }
}

json RecordToJson(const ManifestRecord& record) {
  return {{"image", record.image},
          {"ground_truth", record.ground_truth},
          {"category", CategoryName(record.category)},
          {"seed", record.seed}};
}

ManifestRecord RecordFromJson(const json& j) {
  auto fail = [](const std::string& what) {
    throw Error(ErrorCode::kParse, "manifest record: " + what);
  };
  if (!j.is_object()) fail("not an object");
  for (const char* key : {"image", "ground_truth", "category"}) {
    if (!j.contains(key) || !j[key].is_string()) {
      fail(std::string("field '") + key + "' missing or not a string");
    }
  }
  if (!j.contains("seed") || !j["seed"].is_number_unsigned()) {
    fail("field 'seed' missing or not an unsigned integer");
  }
  ManifestRecord record;
  record.image = j["image"].get<std::string>();
  record.ground_truth = j["ground_truth"].get<std::string>();
  const auto category = ParseCategory(j["category"].get<std::string>());
  if (!category) fail("unknown category '" + j["category"].get<std::string>() + "'");
  record.category = *category;
  record.seed = j["seed"].get<uint64_t>();
  return record;
}

Manifest GenerateDataset(const GenerationContext& context,
                         const CategoryCounts& counts, uint64_t base_seed,
                         const fs::path& out_dir, const DatasetOptions& options) {
  for (int c : counts.counts) {
    if (c < 0) throw Error(ErrorCode::kInvalidArgument, "category counts must be >= 0");
  }
  std::error_code ec;
  fs::create_directories(out_dir / "images", ec);
  if (ec) {
    throw Error(ErrorCode::kIo, "cannot create output directory " +
                                    (out_dir / "images").string() + ": " + ec.message());
  }
  Manifest manifest;
  manifest.config_fingerprint = Fingerprint(context.config());
  manifest.tool_version = ToolVersion();
  manifest.base_seed = base_seed;

  std::vector<Job> jobs;
  for (Category c : kAllCategories) {
    for (int i = 0; i < counts[c]; ++i) jobs.push_back({c, i});
  }

  const fs::path manifest_path = out_dir / "manifest.jsonl";
  const fs::path hash_path = out_dir / kPixelHashName;
  const fs::path snapshot_path = out_dir / kSnapshotName;
  auto cleanup = [&] {
    std::error_code ignored;
    for (const Job& job : jobs) fs::remove(out_dir / ImageName(job.category, job.index), ignored);
    fs::remove(manifest_path, ignored);
    fs::remove(hash_path, ignored);
    fs::remove(snapshot_path, ignored);
    if (fs::is_empty(out_dir / "images", ignored)) fs::remove(out_dir / "images", ignored);
  };

  std::ofstream manifest_out(manifest_path, std::ios::binary | std::ios::trunc);
  std::ofstream hash_out(hash_path, std::ios::binary | std::ios::trunc);
  if (!manifest_out || !hash_out) {
    cleanup();
    throw Error(ErrorCode::kIo, "cannot write " + manifest_path.string());
  }

  std::vector<std::optional<Slot>> slots(jobs.size());
  std::mutex mutex;
  std::condition_variable ready;
  std::atomic<size_t> next{0};
  bool failed = false;
  ErrorCode fail_code = ErrorCode::kGenerationFailed;
  std::string fail_message;
  const int png_level = context.config().compose.png_compression;

  auto worker = [&] {
    for (;;) {
      const size_t j = next.fetch_add(1);
      if (j >= jobs.size()) return;
      {
        std::lock_guard lock(mutex);
        if (failed) return;
      }
      const Job& job = jobs[j];
      const uint64_t seed = DocumentSeed(base_seed, job.category, job.index);
      try {
        std::optional<ChartKind> kind;
        if (job.category == Category::kWithChart) kind = PinnedChartKind(seed, job.index);
        DocumentRecord doc = ComposeDocument(context, job.category, seed, kind);
        Slot slot;
        slot.record.image = ImageName(job.category, job.index);
        slot.record.ground_truth = std::move(doc.annotation);
        slot.record.category = job.category;
        slot.record.seed = seed;
        slot.pixel_hash = PixelSha256(doc.image);
        WritePng(doc.image, out_dir / slot.record.image, png_level);
        std::lock_guard lock(mutex);
        slots[j] = std::move(slot);
        ready.notify_all();
      } catch (const std::exception& e) {
        std::lock_guard lock(mutex);
        if (!failed) {
          failed = true;
          const auto* err = dynamic_cast<const Error*>(&e);
          fail_code = err != nullptr && err->code() == ErrorCode::kIo ? ErrorCode::kIo
                                                                      : ErrorCode::kGenerationFailed;
          fail_message = std::string("document ") + CategoryName(job.category) + " #" +
                         std::to_string(job.index) + " (seed " + std::to_string(seed) +
                         "): " + e.what();
        }
        ready.notify_all();
        return;
      }
    }
  };

  const int workers = std::max(1, std::min<int>(options.workers, static_cast<int>(jobs.size())));
  std::vector<std::thread> threads;
  for (int w = 0; w < workers && !jobs.empty(); ++w) threads.emplace_back(worker);

  // Single writer: records are appended strictly in job order.
  for (size_t k = 0; k < jobs.size(); ++k) {
    Slot slot;
    {
      std::unique_lock lock(mutex);
      ready.wait(lock, [&] { return failed || slots[k].has_value(); });
      if (failed) break;
      slot = std::move(*slots[k]);
      slots[k].reset();
    }
    manifest_out << RecordToJson(slot.record).dump() << '\n';
    hash_out << json{{"image", slot.record.image}, {"sha256", slot.pixel_hash}}.dump() << '\n';
    manifest.records.push_back(std::move(slot.record));
    if (options.progress) options.progress(k + 1, jobs.size());
  }
  for (auto& t : threads) t.join();
  manifest_out.close();
  hash_out.close();
  if (failed) {
    cleanup();
    throw Error(fail_code, fail_message);
  }
  if (!manifest_out || !hash_out) {
    cleanup();
    throw Error(ErrorCode::kIo, "failed writing " + manifest_path.string());
  }

  json snapshot;
  snapshot["tool_version"] = manifest.tool_version;
  snapshot["config_fingerprint"] = manifest.config_fingerprint;
  snapshot["base_seed"] = base_seed;
  json count_json = json::object();
  for (Category c : kAllCategories) count_json[CategoryName(c)] = counts[c];
  snapshot["counts"] = count_json;
  snapshot["config"] = ConfigToJson(context.config());
  std::ofstream snap_out(snapshot_path, std::ios::binary | std::ios::trunc);
  snap_out << snapshot.dump(2) << '\n';
  if (!snap_out) {
    cleanup();
    throw Error(ErrorCode::kIo, "cannot write " + snapshot_path.string());
  }
  return manifest;
}

Manifest ReadManifest(const fs::path& manifest_path) {
  std::ifstream in(manifest_path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read manifest " + manifest_path.string());
  Manifest manifest;
  std::string line;
  size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    try {
      manifest.records.push_back(RecordFromJson(json::parse(line)));
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kParse, manifest_path.string() + ":" + std::to_string(number) +
                                         ": " + e.what());
    } catch (const Error& e) {
      throw Error(ErrorCode::kParse, manifest_path.string() + ":" + std::to_string(number) +
                                         ": " + e.what());
    }
  }
  const fs::path snapshot_path = manifest_path.parent_path() / kSnapshotName;
  if (fs::exists(snapshot_path)) {
    std::ifstream snap(snapshot_path);
    try {
      const json s = json::parse(snap);
      manifest.config_fingerprint = s.value("config_fingerprint", "");
      manifest.tool_version = s.value("tool_version", "");
      manifest.base_seed = s.value("base_seed", uint64_t{0});
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kParse, snapshot_path.string() + ": " + e.what());
    }
  }
  return manifest;
}

bool VerifyReport::passed() const {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

json VerifyReport::ToJson() const {
  json out;
  out["manifest"] = manifest.string();
  out["records"] = records;
  out["passed"] = passed();
  json list = json::array();
  for (const auto& c : checks) {
    list.push_back({{"name", c.name},
                    {"passed", c.passed},
                    {"checked", c.checked},
                    {"failures", c.failures},
                    {"details", c.details}});
  }
  out["checks"] = list;
  return out;
}

VerifyReport VerifyDataset(const fs::path& manifest_path, const VerifyOptions& options) {
  VerifyReport report;
  report.manifest = manifest_path;
  std::ifstream in(manifest_path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read manifest " + manifest_path.string());
  const fs::path root = manifest_path.parent_path();

  // 1. Every line is a well-formed record.
  Check parse("manifest_parse");
  std::vector<ManifestRecord> records;
  std::string line;
  size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    try {
      records.push_back(RecordFromJson(json::parse(line)));
      parse.Pass();
    } catch (const std::exception& e) {
      parse.Fail("line " + std::to_string(number) + ": " + e.what());
    }
  }
  report.records = records.size();
  report.checks.push_back(parse.Take());

  // 2. Unique image paths.
  Check unique("unique_image_paths");
  std::set<std::string> seen;
  for (const auto& r : records) {
    if (seen.insert(r.image).second) {
      unique.Pass();
    } else {
      unique.Fail("duplicate image path " + r.image);
    }
  }
  report.checks.push_back(unique.Take());

  // 3. Referenced files exist and are PNG.
  Check files("image_files");
  for (const auto& r : records) {
    const fs::path p = root / r.image;
    if (!fs::exists(p)) {
      files.Fail("missing image " + p.string());
    } else if (!HasPngSignature(p)) {
      files.Fail("not a PNG file " + p.string());
    } else {
      files.Pass();
    }
  }
  report.checks.push_back(files.Take());

  // Snapshot (config, counts) for the remaining checks.
  json snapshot;
  bool have_snapshot = false;
  Check fingerprint("config_fingerprint");
  {
    const fs::path snapshot_path = root / kSnapshotName;
    std::ifstream snap(snapshot_path);
    if (!snap) {
      fingerprint.Fail("missing " + snapshot_path.string());
    } else {
      try {
        snapshot = json::parse(snap);
        const GenerationConfig config = ConfigFromJson(snapshot.at("config"));
        const std::string expected = snapshot.at("config_fingerprint").get<std::string>();
        if (Fingerprint(config) == expected) {
          fingerprint.Pass();
          have_snapshot = true;
        } else {
          fingerprint.Fail("snapshot config hashes to " + Fingerprint(config) +
                           ", recorded " + expected);
        }
      } catch (const std::exception& e) {
        fingerprint.Fail(snapshot_path.string() + ": " + e.what());
      }
    }
  }

  IntRange scatter_bounds{5, 20};
  if (have_snapshot) {
    scatter_bounds = ConfigFromJson(snapshot["config"]).chart.scatter_points;
  }

  // 4. Structured fragments parse under the canonical grammars.
  Check grammar("annotation_grammar");
  // 5. Category purity.
  Check purity("category_purity");
  for (const auto& r : records) {
    int tables = 0, charts = 0;
    bool grammar_ok = true;
    std::string grammar_error;
    bool text_cjk_ok = true;
    for (std::string_view l : SplitLines(r.ground_truth)) {
      try {
        if (l.starts_with("<table")) {
          ++tables;
          ParseTableHtml(l);
        } else if (l.starts_with("<chart")) {
          ++charts;
          const ChartTable t = ParseChartAnnotation(l);
          if (t.type == "scatter" && (int(t.rows.size()) < scatter_bounds.min ||
                                      int(t.rows.size()) > scatter_bounds.max)) {
            throw Error(ErrorCode::kParse,
                        "scatter with " + std::to_string(t.rows.size()) + " points");
          }
        } else if (r.category == Category::kPureChinese && !HasCjkText(l)) {
          text_cjk_ok = false;
        } else if (r.category == Category::kPureEnglish && HasCjkText(l)) {
          text_cjk_ok = false;
        }
      } catch (const Error& e) {
        grammar_ok = false;
        grammar_error = e.what();
      }
    }
    if (grammar_ok) {
      grammar.Pass();
    } else {
      grammar.Fail(r.image + ": " + grammar_error);
    }
    std::string problem;
    switch (r.category) {
      case Category::kPureEnglish:
      case Category::kPureChinese:
        if (tables + charts > 0) problem = "structured element on a text-only page";
        if (r.ground_truth.empty()) problem = "empty annotation";
        if (!text_cjk_ok) {
          problem = r.category == Category::kPureEnglish ? "CJK text on a pure_en page"
                                                         : "text line without CJK on a pure_zh page";
        }
        break;
      case Category::kWithImage:
        if (tables + charts > 0) problem = "table or chart on a with_image page";
        break;
      case Category::kWithTable:
        if (tables != 1 || charts != 0) problem = "expected exactly one table";
        break;
      case Category::kWithChart:
        if (charts != 1 || tables != 0) problem = "expected exactly one chart";
        break;
    }
    if (problem.empty()) {
      purity.Pass();
    } else {
      purity.Fail(r.image + ": " + problem);
    }
  }
  report.checks.push_back(grammar.Take());
  report.checks.push_back(purity.Take());
  report.checks.push_back(fingerprint.Take());

  // 6. Per-category counts match the snapshot.
  Check count_check("category_counts");
  if (!have_snapshot) {
    count_check.Fail("no usable config snapshot");
  } else {
    CategoryCounts actual;
    for (const auto& r : records) ++actual[r.category];
    for (Category c : kAllCategories) {
      const int expected = snapshot["counts"].value(CategoryName(c), 0);
      if (expected == actual[c]) {
        count_check.Pass();
      } else {
        count_check.Fail(std::string(CategoryName(c)) + ": expected " +
                         std::to_string(expected) + ", found " + std::to_string(actual[c]));
      }
    }
  }
  report.checks.push_back(count_check.Take());

  if (options.check_pixels) {
    Check pixels("pixel_hashes");
    std::map<std::string, std::string> hashes;
    std::ifstream hin(root / kPixelHashName);
    while (std::getline(hin, line)) {
      if (line.empty()) continue;
      try {
        const json h = json::parse(line);
        hashes[h.at("image").get<std::string>()] = h.at("sha256").get<std::string>();
      } catch (const json::exception& e) {
        pixels.Fail(std::string("pixel hash record: ") + e.what());
      }
    }
    for (const auto& r : records) {
      const auto it = hashes.find(r.image);
      if (it == hashes.end()) {
        pixels.Fail("no pixel hash for " + r.image);
        continue;
      }
      try {
        const std::string actual = PixelSha256(ReadPng(root / r.image));
        if (actual == it->second) {
          pixels.Pass();
        } else {
          pixels.Fail(r.image + ": pixel hash mismatch");
        }
      } catch (const Error& e) {
        pixels.Fail(r.image + ": " + e.what());
      }
    }
    report.checks.push_back(pixels.Take());
  }
  return report;
}

}  // namespace docforge
