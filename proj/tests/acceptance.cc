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

// End-to-end acceptance run. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails. Expensive: generates several thousand pages.
#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <regex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "docforge/chart_gen.hpp"
#include "docforge/dataset.hpp"
#include "docforge/error.hpp"
#include "docforge/eval.hpp"
#include "docforge/layout.hpp"
#include "docforge/page_compose.hpp"
#include "docforge/rng.hpp"
#include "docforge/table_gen.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

namespace fs = std::filesystem;
using namespace docforge;
using namespace docforge::oracle;
using docforge::testing::ReadFile;
using docforge::testing::TempDir;
using docforge::testing::WriteFile;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Accumulates failures; keeps the first few messages for the report line.
class Tally {
 public:
  void Expect(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    ++failures_;
    if (failures_ <= 3) messages_ += (messages_.empty() ? "" : "; ") + what;
  }
  long failures() const { return failures_; }
  Outcome Finish(const std::string& summary) const {
    Outcome o;
    o.pass = failures_ == 0;
    o.detail = summary + " [" + std::to_string(checks_) + " checks";
    if (failures_) o.detail += ", " + std::to_string(failures_) + " failed: " + messages_;
    o.detail += "]";
    return o;
  }

 private:
  long checks_ = 0;
  long failures_ = 0;
  std::string messages_;
};

struct CliResult {
  int rc = -1;
  std::string out;
};

CliResult Cli(const std::string& args) {
  const std::string cmd = std::string("'") + DOCFORGE_CLI + "' " + args + " 2>&1";
  CliResult r;
  FILE* p = ::popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf;
  size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = ::pclose(p);
  r.rc = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

int Workers() { return std::max(1u, std::thread::hardware_concurrency()); }

double Seconds(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - since).count();
}

std::string Fixed(double v, int places = 1) {
  std::ostringstream s;
  s.precision(places);
  s << std::fixed << v;
  return s.str();
}

// Minimal UTF-8 decoder, independent of the library's.
std::u32string Decode(const std::string& s) {
  std::u32string out;
  for (size_t i = 0; i < s.size();) {
    const unsigned char c = s[i];
    const int len = c < 0x80 ? 1 : (c >> 5) == 6 ? 2 : (c >> 4) == 14 ? 3 : 4;
    char32_t cp = len == 1 ? c : len == 2 ? (c & 0x1F) : len == 3 ? (c & 0x0F) : (c & 0x07);
    for (int k = 1; k < len && i + k < s.size(); ++k) cp = (cp << 6) | (s[i + k] & 0x3F);
    out.push_back(cp);
    i += len;
  }
  return out;
}

std::string Encode(const std::u32string& s) {
  std::string out;
  for (char32_t cp : s) {
    if (cp < 0x80) {
      out += static_cast<char>(cp);
    } else if (cp < 0x800) {
      out += static_cast<char>(0xC0 | (cp >> 6));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
      out += static_cast<char>(0xE0 | (cp >> 12));
      out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
      out += static_cast<char>(0xF0 | (cp >> 18));
      out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
      out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    }
  }
  return out;
}

bool IsCjk(char32_t c) {
  return (c >= 0x4E00 && c <= 0x9FFF) || (c >= 0x3400 && c <= 0x4DBF) ||
         (c >= 0x3000 && c <= 0x303F) || (c >= 0xFF00 && c <= 0xFFEF) ||
         (c >= 0x20000 && c <= 0x2A6DF);
}

bool IsLatinLetter(char32_t c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= 0xC0 && c <= 0x24F && c != 0xD7 && c != 0xF7);
}

std::vector<std::string> Lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

std::vector<std::string> ChartAnnotations(const std::string& ground_truth) {
  static const std::regex chart_re("<chart type=\"[a-z]+\"><table>.*?</table></chart>");
  std::vector<std::string> out;
  for (auto it = std::sregex_iterator(ground_truth.begin(), ground_truth.end(), chart_re);
       it != std::sregex_iterator(); ++it) {
    out.push_back(it->str());
  }
  return out;
}

// The full 1,000-per-category benchmark, shared by several criteria.
struct Benchmark {
  TempDir dir;
  Manifest manifest;
  bool ok = false;
  fs::path manifest_path() const { return dir / "bench/manifest.jsonl"; }
};

Benchmark& Bench() {
  static Benchmark b;
  return b;
}

const GenerationContext& Context() { return docforge::testing::DefaultContext(); }

Outcome CriterionChartConstraints() {
  Tally t;
  TempDir dir;
  CategoryCounts counts;
  counts[Category::kWithChart] = 1000;
  DatasetOptions options;
  options.workers = Workers();
  const auto start = std::chrono::steady_clock::now();
  const Manifest m = GenerateDataset(Context(), counts, 20260101, dir / "charts", options);
  const double elapsed = Seconds(start);
  t.Expect(m.records.size() == 1000, "expected 1000 records");
  t.Expect(elapsed < 600.0, "runtime " + Fixed(elapsed) + " s exceeds 10 minutes");
  int pies = 0, scatters = 0, percent = 0, decimal = 0;
  std::map<std::string, int> kinds;
  for (const ManifestRecord& r : m.records) {
    const auto charts = ChartAnnotations(r.ground_truth);
    t.Expect(charts.size() == 1, r.image + ": expected one chart annotation");
    for (const std::string& chart : charts) {
      std::string type;
      const auto rows = OracleRows(chart, &type);
      ++kinds[type];
      if (type == "pie") {
        ++pies;
        long long total = 0;
        bool all_fractions = true;
        for (const auto& row : rows) {
          t.Expect(row.size() == 2, r.image + ": pie row needs label and value");
          if (row.size() < 2) continue;
          const long long v = Hundredths(row[1]);
          total += v;
          all_fractions = all_fractions && v <= 100;
        }
        if (total == 10000) {
          ++percent;
        } else if (total == 100 && all_fractions) {
          ++decimal;
        } else {
          t.Expect(false, r.image + ": pie values sum to " + std::to_string(total / 100.0));
        }
      } else if (type == "scatter") {
        ++scatters;
        t.Expect(rows.size() >= 5 && rows.size() <= 20,
                 r.image + ": scatter has " + std::to_string(rows.size()) + " points");
      }
    }
  }
  t.Expect(pies > 0 && scatters > 0, "no pie or scatter charts were generated");
  std::string mix;
  for (const auto& [k, n] : kinds) mix += (mix.empty() ? "" : ",") + k + "=" + std::to_string(n);
  return t.Finish("1000 with_chart docs in " + Fixed(elapsed) + " s; " + std::to_string(pies) +
                  " pies (" + std::to_string(percent) + " sum 100, " + std::to_string(decimal) +
                  " sum 1), " + std::to_string(scatters) + " scatters in [5,20]; types " + mix);
}

Outcome CriterionBenchmarkShape() {
  Tally t;
  Benchmark& b = Bench();
  const auto start = std::chrono::steady_clock::now();
  const CliResult gen = Cli("generate --counts 1000 --seed 2024 --workers " +
                            std::to_string(Workers()) + " --out '" + (b.dir / "bench").string() + "'");
  const double elapsed = Seconds(start);
  t.Expect(gen.rc == 0, "generate exited " + std::to_string(gen.rc) + ": " + gen.out.substr(0, 200));
  if (gen.rc != 0) return t.Finish("generate failed");
  b.manifest = ReadManifest(b.manifest_path());
  std::map<Category, int> per;
  for (const auto& r : b.manifest.records) ++per[r.category];
  t.Expect(b.manifest.records.size() == 5000,
           "records = " + std::to_string(b.manifest.records.size()));
  t.Expect(per.size() == 5, "expected five categories");
  for (Category c : kAllCategories) t.Expect(per[c] == 1000, std::string(CategoryName(c)) + " != 1000");
  VerifyOptions vo;
  vo.check_pixels = true;
  const VerifyReport report = VerifyDataset(b.manifest_path(), vo);
  t.Expect(report.passed(), "verify_dataset failed: " + report.ToJson().dump().substr(0, 300));
  const CliResult ver = Cli("verify --manifest '" + b.manifest_path().string() + "'");
  t.Expect(ver.rc == 0, "cli verify exited " + std::to_string(ver.rc));
  b.ok = t.failures() == 0;
  return t.Finish(std::to_string(b.manifest.records.size()) + " records, 1000 per category, " +
                  std::to_string(report.checks.size()) + " verify checks passed (pixels re-hashed); generate took " +
                  Fixed(elapsed) + " s");
}

Outcome CriterionDeterminism() {
  Tally t;
  TempDir dir;
  const char* runs[] = {"w1a", "w1b", "w8"};
  const int workers[] = {1, 1, 8};
  for (int i = 0; i < 3; ++i) {
    const CliResult r = Cli("generate --counts 10 --seed 99 --workers " + std::to_string(workers[i]) +
                            " --out '" + (dir / runs[i]).string() + "'");
    t.Expect(r.rc == 0, std::string(runs[i]) + " exited " + std::to_string(r.rc));
  }
  size_t images = 0;
  for (const char* file : {"manifest.jsonl", "pixel_hashes.jsonl", "config_snapshot.json"}) {
    const std::string ref = ReadFile(dir / "w1a" / file);
    t.Expect(!ref.empty(), std::string(file) + " missing");
    for (const char* other : {"w1b", "w8"})
      t.Expect(ReadFile(dir / other / file) == ref, std::string(file) + " differs in " + other);
  }
  for (const auto& entry : fs::directory_iterator(dir / "w1a/images")) {
    ++images;
    const std::string name = entry.path().filename().string();
    const std::string ref = ReadFile(entry.path());
    for (const char* other : {"w1b", "w8"})
      t.Expect(ReadFile(dir / other / "images" / name) == ref, name + " differs in " + other);
  }
  t.Expect(images == 50, "expected 50 images, found " + std::to_string(images));
  const Manifest m = ReadManifest(dir / "w1a/manifest.jsonl");
  t.Expect(m.records.size() == 50, "expected 50 records");
  return t.Finish("50 documents x 3 runs (workers 1, 1, 8): manifest, pixel hashes, snapshot and " +
                  std::to_string(images) + " PNGs byte-identical");
}

Outcome CriterionLayout() {
  Tally t;
  long regions = 0;
  for (uint64_t i = 0; i < 1000; ++i) {
    const Category c = kAllCategories[i % 5];
    const DocumentRecord doc = ComposeDocument(Context(), c, DocumentSeed(4242, c, i));
    const Rect data = doc.page.DataArea();
    const Rect canvas{0, 0, doc.image.width(), doc.image.height()};
    t.Expect(Inside(canvas, data), "data area outside the page");
    const auto& els = doc.element_manifest;
    for (size_t a = 0; a < els.size(); ++a) {
      ++regions;
      t.Expect(Inside(data, els[a].bbox), "doc " + std::to_string(i) + ": region out of bounds");
      for (size_t b = a + 1; b < els.size(); ++b)
        t.Expect(Intersection(els[a].bbox, els[b].bbox) == 0,
                 "doc " + std::to_string(i) + ": regions overlap");
    }
  }
  // The partitioner on its own, including plans compose would retry.
  int partitions = 0, infeasible = 0;
  const GenerationConfig& config = Context().config();
  for (uint64_t i = 0; i < 1000; ++i) {
    Rng rng(DeriveSeed(991, i));
    const auto plan = SampleElementPlan(config.layout, rng);
    const PageSpec page = PlanPage(config, rng, plan.empty());
    try {
      const auto rs = PartitionRegions(page, plan, config.layout, rng);
      ++partitions;
      for (size_t a = 0; a < rs.size(); ++a) {
        t.Expect(Inside(page.DataArea(), rs[a].bbox), "partition region out of bounds");
        for (size_t b = a + 1; b < rs.size(); ++b)
          t.Expect(Intersection(rs[a].bbox, rs[b].bbox) == 0, "partition regions overlap");
      }
    } catch (const Error& e) {
      t.Expect(e.code() == ErrorCode::kPlacementInfeasible, e.what());
      ++infeasible;
    }
  }
  return t.Finish("1000 composed pages, " + std::to_string(regions) +
                  " regions: no overlaps, all inside the data area; " + std::to_string(partitions) +
                  " raw partitions sound (" + std::to_string(infeasible) + " reported infeasible)");
}

Outcome CriterionRoundTrip() {
  Tally t;
  const GenerationConfig& config = Context().config();
  for (uint64_t i = 0; i < 1000; ++i) {
    Rng rng(DeriveSeed(31337, i));
    const TextCorpus& corpus = i % 2 ? Context().chinese() : Context().english();
    const TableSpec spec = GenerateTableSpec(corpus, config.table, rng);
    const std::string html = TableToHtml(spec);
    const TableSpec parsed = ParseTableHtml(html);
    t.Expect(parsed.rows == spec.rows && parsed.cols == spec.cols && parsed.cells == spec.cells,
             "table " + std::to_string(i) + ": library parse differs");
    const auto grid = OracleParse(html, spec.cols);
    t.Expect(grid && *grid == SpecGrid(spec), "table " + std::to_string(i) + ": oracle parse differs");
  }
  for (uint64_t i = 0; i < 1000; ++i) {
    Rng rng(DeriveSeed(27182, i));
    const ChartKind kind = kAllChartKinds[i % 5];
    const TextCorpus& corpus = (i / 5) % 2 ? Context().chinese() : Context().english();
    const ChartSpec spec = GenerateChartSpec(kind, corpus, config.chart, rng);
    const std::string annotation = ChartToAnnotation(spec);
    const ChartTable table = ChartDataTable(spec);
    const std::string id = "chart " + std::to_string(i);
    t.Expect(ParseChartAnnotation(annotation) == table, id + ": library parse differs");
    std::string type;
    const auto rows = OracleRows(annotation, &type);
    t.Expect(type == ChartAnnotationType(kind) && rows == table.rows, id + ": oracle parse differs");
    // The values themselves, read back against the spec.
    const auto& points = spec.series.at(0).points;
    bool values_ok = true;
    if (kind == ChartKind::kLine) {
      values_ok = rows.size() == spec.series.size() + 1;
      for (size_t s = 0; values_ok && s < spec.series.size(); ++s) {
        values_ok = rows[s + 1].size() == points.size() + 1 && rows[s + 1][0] == spec.series[s].name;
        for (size_t p = 0; values_ok && p < points.size(); ++p)
          values_ok = Hundredths(rows[s + 1][p + 1]) == std::llround(spec.series[s].points[p].y * 100);
      }
    } else {
      values_ok = rows.size() == points.size();
      for (size_t p = 0; values_ok && p < points.size(); ++p) {
        if (kind == ChartKind::kScatter) {
          values_ok = Hundredths(rows[p][1]) == std::llround(points[p].x * 100) &&
                      Hundredths(rows[p][2]) == std::llround(points[p].y * 100);
        } else {
          values_ok = rows[p][0] == points[p].label &&
                      Hundredths(rows[p][1]) == std::llround(points[p].y * 100);
        }
      }
    }
    t.Expect(values_ok, id + ": values differ from the spec");
  }
  return t.Finish("1000 tables and 1000 charts (200 per kind) reconstructed exactly by both parsers");
}

Outcome CriterionMetrics() {
  Tally t;
  const auto strings = AllStrings(6, "abc");
  size_t pairs = 0;
  for (const auto& a : strings) {
    const std::u32string ua(a.begin(), a.end());
    for (const auto& b : strings) {
      ++pairs;
      const std::u32string ub(b.begin(), b.end());
      const size_t d = EditDistance(a, b);
      if (d != DpDistance(ua, ub)) t.Expect(false, "'" + a + "' vs '" + b + "'");
      if (a.size() <= 4 && b.size() <= 4 && d != NaiveDistance(a, b))
        t.Expect(false, "naive oracle: '" + a + "' vs '" + b + "'");
    }
  }
  t.Expect(EditDistance("kitten", "sitting") == 3, "kitten/sitting != 3");

  Rng rng(8080);
  static const std::vector<std::string> pieces = {"a", "b", "c", " ", "<", "文", "档", "é", "z", "\n"};
  double lo = 1.0, hi = 0.0;
  for (int i = 0; i < 10000; ++i) {
    std::string x, y;
    const size_t lx = rng.Below(40), ly = rng.Below(40);
    for (size_t k = 0; k < lx; ++k) x += pieces[rng.Below(pieces.size())];
    for (size_t k = 0; k < ly; ++k) y += pieces[rng.Below(pieces.size())];
    const double n = NormalizedEditDistance(x, y);
    lo = std::min(lo, n);
    hi = std::max(hi, n);
    t.Expect(n >= 0.0 && n <= 1.0, "normalized distance out of [0,1]");
  }

  const Benchmark& b = Bench();
  t.Expect(b.ok, "benchmark dataset unavailable");
  std::string corruption;
  if (b.ok) {
    const std::vector<ManifestRecord>& records = b.manifest.records;
    std::map<std::string, std::string> identity;
    for (const auto& r : records) identity[r.image] = r.ground_truth;
    const EvalReport self = EvaluateRecords(records, identity, Workers());
    t.Expect(self.per_category.size() == 5, "self-eval missing categories");
    for (const auto& [c, s] : self.per_category) {
      t.Expect(s.aed == 0.0 && s.f1 == 1.0,
               std::string("self-eval ") + CategoryName(c) + " aed=" + std::to_string(s.aed) +
                   " f1=" + std::to_string(s.f1));
    }
    double previous = -1.0;
    for (int k : {0, 5, 10, 20}) {
      std::map<std::string, std::string> predictions;
      double expected = 0.0;
      Rng del(DeriveSeed(555, k));
      for (const auto& r : records) {
        std::u32string text = Decode(r.ground_truth);
        const size_t original = text.size();
        for (int d = 0; d < k && !text.empty(); ++d) text.erase(del.Below(text.size()), 1);
        // k deletions from a string of n code points cost exactly k/n.
        expected += original ? double(original - text.size()) / original : 0.0;
        predictions[r.image] = Encode(text);
      }
      expected /= records.size();
      const double aed = EvaluateRecords(records, predictions, Workers()).average.aed;
      t.Expect(aed >= previous, "mean AED decreased at k=" + std::to_string(k));
      t.Expect(std::abs(aed - expected) < 1e-9, "mean AED at k=" + std::to_string(k) +
                                                    " is " + std::to_string(aed) + ", oracle " +
                                                    std::to_string(expected));
      corruption += (corruption.empty() ? "" : ", ") + std::string("k=") + std::to_string(k) + ":" +
                    Fixed(aed, 5);
      previous = aed;
    }
  }
  return t.Finish(std::to_string(pairs) + " exhaustive pairs match the DP oracle; kitten/sitting=3; "
                  "10000 random normalized in [" + Fixed(lo, 3) + "," + Fixed(hi, 3) +
                  "]; self-eval AED 0 / F1 1 on 5 categories; corruption AED " + corruption);
}

Outcome CriterionBilingual() {
  Tally t;
  const Benchmark& b = Bench();
  t.Expect(b.ok, "benchmark dataset unavailable");
  size_t zh_lines = 0, en_docs = 0;
  for (const auto& r : b.manifest.records) {
    if (r.category == Category::kPureChinese) {
      for (const std::string& line : Lines(r.ground_truth)) {
        if (line.empty()) continue;
        ++zh_lines;
        size_t cjk = 0, latin = 0;
        for (char32_t c : Decode(line)) {
          cjk += IsCjk(c);
          latin += IsLatinLetter(c);
        }
        t.Expect(cjk > 0 && latin < cjk, r.image + ": line is not Chinese text");
      }
    } else if (r.category == Category::kPureEnglish) {
      ++en_docs;
      for (char32_t c : Decode(r.ground_truth)) {
        if (IsCjk(c)) {
          t.Expect(false, r.image + ": CJK code point in pure_en");
          break;
        }
      }
    }
  }
  // A third language through configuration alone.
  TempDir dir;
  // Lives outside the data directory, so every path is spelled out.
  const fs::path data = docforge::testing::DataDir();
  const fs::path french = data / "corpus/french.txt";
  WriteFile(dir / "french.yaml", "corpora:\n  english: " + french.string() +
                                     "\n  chinese: " + (data / "corpus/chinese.txt").string() +
                                     "\n  images: " + (data / "images").string() +
                                     "\n  fonts: " + (data / "fonts").string() + "\n");
  const CliResult gen = Cli("generate --config '" + (dir / "french.yaml").string() +
                            "' --counts pure_en=20,with_table=5 --seed 5 --out '" + (dir / "fr").string() + "'");
  t.Expect(gen.rc == 0, "french generate exited " + std::to_string(gen.rc) + ": " + gen.out.substr(0, 200));
  const CliResult ver = Cli("verify --check-pixels --manifest '" + (dir / "fr/manifest.jsonl").string() + "'");
  t.Expect(ver.rc == 0, "french verify exited " + std::to_string(ver.rc));
  size_t accented = 0, fr_docs = 0, fr_pure = 0;
  if (gen.rc == 0) {
    const std::string corpus = ReadFile(french);
    for (const auto& r : ReadManifest(dir / "fr/manifest.jsonl").records) {
      ++fr_docs;
      fr_pure += r.category == Category::kPureEnglish;
      const std::u32string text = Decode(r.ground_truth);
      bool has_accent = false;
      for (char32_t c : text) has_accent = has_accent || (c >= 0xC0 && c <= 0xFF);
      accented += has_accent;
      // Element pages may be Chinese by design; pure pages use the Latin slot
      // only, and every text line comes from the French corpus.
      if (r.category == Category::kPureEnglish) {
        for (char32_t c : text) {
          if (IsCjk(c)) {
            t.Expect(false, r.image + ": CJK code point in French document");
            break;
          }
        }
        for (const std::string& line : Lines(r.ground_truth)) {
          const std::string probe = line.substr(0, std::min<size_t>(line.size(), 24));
          size_t cut = probe.size();
          while (cut > 0 && (static_cast<unsigned char>(probe[cut - 1]) & 0xC0) == 0x80) --cut;
          if (cut > 0 && (static_cast<unsigned char>(probe[cut - 1]) & 0x80)) --cut;
          t.Expect(corpus.find(probe.substr(0, cut)) != std::string::npos,
                   r.image + ": line not from the French corpus");
        }
      }
    }
    t.Expect(fr_docs == 25, "expected 25 French documents");
    t.Expect(accented * 2 >= fr_docs, "too few documents with French accents");
    t.Expect(fr_pure == 20, "expected 20 French pure pages");
  }
  return t.Finish(std::to_string(zh_lines) + " pure_zh lines all CJK; " + std::to_string(en_docs) +
                  " pure_en docs with zero CJK; French corpus via config: " + std::to_string(fr_docs) +
                  " docs generated and verified, " + std::to_string(accented) + " with accented text");
}

Outcome CriterionGrid() {
  Tally t;
  const Benchmark& b = Bench();
  t.Expect(b.ok, "benchmark dataset unavailable");
  if (!b.ok) return t.Finish("skipped");
  const std::string m = "'" + b.manifest_path().string() + "'";
  const CliResult r = Cli("evaluate --gt " + m + " --pred " + m + " --workers " + std::to_string(Workers()));
  t.Expect(r.rc == 0, "evaluate exited " + std::to_string(r.rc));
  const auto lines = Lines(r.out);
  std::string header;
  for (const auto& line : lines) {
    if (line.find("Average") != std::string::npos) header = line;
  }
  for (Category c : kAllCategories)
    t.Expect(header.find(CategoryTitle(c)) != std::string::npos,
             std::string("header lacks ") + CategoryTitle(c));
  static const std::regex number("(\\d+\\.\\d{3})");
  int metric_rows = 0;
  for (const char* metric : {"AED", "F1-score", "Precision", "Recall"}) {
    for (const auto& line : lines) {
      if (line.rfind(metric, 0) != 0) continue;
      ++metric_rows;
      const auto count = std::distance(std::sregex_iterator(line.begin(), line.end(), number),
                                       std::sregex_iterator());
      t.Expect(count == 6, std::string(metric) + " row has " + std::to_string(count) + " values");
    }
  }
  t.Expect(metric_rows == 4, "expected 4 metric rows");
  return t.Finish("evaluate printed " + std::to_string(metric_rows) +
                  " metric rows x (5 categories + Average)");
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"pie sums and scatter sizes over 1000 chart documents", CriterionChartConstraints},
      {"5000-record benchmark across five categories verifies", CriterionBenchmarkShape},
      {"identical seeds give byte-identical datasets", CriterionDeterminism},
      {"no region overlaps or out-of-bounds regions", CriterionLayout},
      {"table and chart annotations round-trip", CriterionRoundTrip},
      {"edit distance and evaluation metrics", CriterionMetrics},
      {"bilingual and third-language generation", CriterionBilingual},
      {"evaluation grid shape", CriterionGrid},
  };
  int failed = 0;
  int n = 0;
  for (const auto& [title, run] : criteria) {
    ++n;
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << n << ": " << title << " -- "
              << o.detail << " (" << Fixed(Seconds(start)) << " s)" << std::endl;
  }
  std::cout << (failed ? "FAIL" : "PASS") << ": " << (n - failed) << "/" << n << " criteria" << std::endl;
  return failed ? 1 : 0;
}
