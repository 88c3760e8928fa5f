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

#include <doctest.h>

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "docforge/dataset.hpp"
#include "docforge/error.hpp"
#include "docforge/eval.hpp"
#include "docforge/rng.hpp"
#include "docforge/unicode.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace docforge;
using namespace docforge::oracle;

namespace {

std::string RandomText(Rng& rng, size_t len) {
  static const std::vector<std::string> pieces = {"a", "b", "c", " ", "<", "文", "档", "é", "z"};
  std::string s;
  for (size_t i = 0; i < len; ++i) s += pieces[rng.Below(pieces.size())];
  return s;
}

// Oracle for token P/R: multiset intersection by sorting.
Prf MultisetPrf(std::vector<std::string> g, std::vector<std::string> p) {
  std::sort(g.begin(), g.end());
  std::sort(p.begin(), p.end());
  std::vector<std::string> common;
  std::set_intersection(g.begin(), g.end(), p.begin(), p.end(), std::back_inserter(common));
  Prf r;
  if (g.empty() && p.empty()) return {1, 1, 1};
  r.precision = p.empty() ? 0.0 : double(common.size()) / p.size();
  r.recall = g.empty() ? 0.0 : double(common.size()) / g.size();
  r.f1 = r.precision + r.recall == 0 ? 0.0 : 2 * r.precision * r.recall / (r.precision + r.recall);
  return r;
}

std::vector<ManifestRecord> SampleRecords() {
  std::vector<ManifestRecord> records;
  Rng rng(17);
  for (Category c : kAllCategories) {
    for (int i = 0; i < 6; ++i) {
      ManifestRecord r;
      r.image = std::string("images/") + CategoryName(c) + "_" + std::to_string(i) + ".png";
      r.category = c;
      r.ground_truth = RandomText(rng, 20 + rng.Below(60)) + "\n<table><tr><td>x</td></tr></table>";
      records.push_back(r);
    }
  }
  return records;
}

std::map<std::string, std::string> Identity(const std::vector<ManifestRecord>& records) {
  std::map<std::string, std::string> out;
  for (const auto& r : records) out[r.image] = r.ground_truth;
  return out;
}

}  // namespace

TEST_CASE("edit distance examples") {
  CHECK(EditDistance("kitten", "sitting") == 3);
  CHECK(NaiveDistance("kitten", "sitting") == 3);
  CHECK(EditDistance("", "abc") == 3);
  CHECK(EditDistance("abc", "") == 3);
  CHECK(EditDistance("", "") == 0);
  CHECK(EditDistance("文档", "文本") == 1);  // code points, not bytes
  CHECK(EditDistance("é", "e") == 1);
}

TEST_CASE("edit distance matches both oracles on every short string pair") {
  const auto strings = AllStrings(4, "abc");
  for (const auto& a : strings) {
    for (const auto& b : strings) {
      const size_t d = EditDistance(a, b);
      CHECK(d == NaiveDistance(a, b));
      CHECK(d == DpDistance(DecodeUtf8(a), DecodeUtf8(b)));
    }
  }
}

TEST_CASE("edit distance matches the dp oracle on long and mixed-script strings") {
  Rng rng(4);
  for (int iter = 0; iter < 400; ++iter) {
    const std::string a = RandomText(rng, rng.Below(300));
    std::string b = a;
    // Mostly-similar pairs exercise the trimming; unrelated pairs the core.
    if (rng.Chance(0.5)) {
      b = RandomText(rng, rng.Below(300));
    } else {
      const auto cps = DecodeUtf8(a);
      std::u32string edited = cps;
      for (int k = 0; k < 5 && !edited.empty(); ++k) edited.erase(rng.Below(edited.size()), 1);
      edited.insert(edited.begin() + rng.Below(edited.size() + 1), U'Q');
      b = EncodeUtf8(edited);
    }
    CHECK(EditDistance(a, b) == DpDistance(DecodeUtf8(a), DecodeUtf8(b)));
  }
}

TEST_CASE("edit distance is a metric") {
  Rng rng(9);
  for (int iter = 0; iter < 2000; ++iter) {
    const std::string a = RandomText(rng, rng.Below(12));
    const std::string b = RandomText(rng, rng.Below(12));
    const std::string c = RandomText(rng, rng.Below(12));
    CHECK(EditDistance(a, a) == 0);
    CHECK(EditDistance(a, b) == EditDistance(b, a));
    CHECK(EditDistance(a, c) <= EditDistance(a, b) + EditDistance(b, c));
    CHECK((EditDistance(a, b) == 0) == (a == b));
  }
}

TEST_CASE("normalized edit distance") {
  CHECK(NormalizedEditDistance("kitten", "sitting") == doctest::Approx(3.0 / 7.0));
  CHECK(NormalizedEditDistance("same", "same") == 0.0);
  CHECK(NormalizedEditDistance("ab", "") == 1.0);
  CHECK(NormalizedEditDistance("", "") == 0.0);
  Rng rng(1);
  for (int iter = 0; iter < 10000; ++iter) {
    const double d = NormalizedEditDistance(RandomText(rng, rng.Below(20)), RandomText(rng, rng.Below(20)));
    CHECK(d >= 0.0);
    CHECK(d <= 1.0);
  }
}

TEST_CASE("metric tokens") {
  CHECK(MetricTokens("<table><tr><td>a b</td></tr></table>") ==
        std::vector<std::string>{"<table>", "<tr>", "<td>", "a", "b", "</td>", "</tr>", "</table>"});
  CHECK(MetricTokens("<chart type=\"pie\">文档 x") ==
        std::vector<std::string>{"<chart type=\"pie\">", "文", "档", "x"});
  CHECK(MetricTokens("a < b") == std::vector<std::string>{"a", "<", "b"});
}

TEST_CASE("token precision recall f1") {
  Prf r = TokenPrf("a b c", "a b d");
  CHECK(r.precision == doctest::Approx(2.0 / 3.0));
  CHECK(r.recall == doctest::Approx(2.0 / 3.0));
  CHECK(r.f1 == doctest::Approx(2.0 / 3.0));
  r = TokenPrf("a a b", "a b b");
  CHECK(r.precision == doctest::Approx(2.0 / 3.0));
  CHECK(r.recall == doctest::Approx(2.0 / 3.0));
  r = TokenPrf("same text", "same text");
  CHECK(r.precision == 1.0);
  CHECK(r.recall == 1.0);
  CHECK(r.f1 == 1.0);
  r = TokenPrf("a b", "");
  CHECK(r.precision == 0.0);
  CHECK(r.recall == 0.0);
  CHECK(r.f1 == 0.0);
  r = TokenPrf("", "");
  CHECK(r.f1 == 1.0);

  Rng rng(12);
  for (int iter = 0; iter < 2000; ++iter) {
    const std::string g = RandomText(rng, rng.Below(25));
    const std::string p = RandomText(rng, rng.Below(25));
    const Prf got = TokenPrf(g, p);
    const Prf want = MultisetPrf(MetricTokens(g), MetricTokens(p));
    CHECK(got.precision == doctest::Approx(want.precision));
    CHECK(got.recall == doctest::Approx(want.recall));
    CHECK(got.f1 == doctest::Approx(want.f1));
    for (double v : {got.precision, got.recall, got.f1}) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
  }
}

TEST_CASE("self evaluation is perfect in every category") {
  const auto records = SampleRecords();
  const EvalReport report = EvaluateRecords(records, Identity(records));
  CHECK(report.per_category.size() == 5);
  for (const auto& [category, score] : report.per_category) {
    CHECK(score.aed == 0.0);
    CHECK(score.f1 == 1.0);
    CHECK(score.precision == 1.0);
    CHECK(score.recall == 1.0);
    CHECK(score.documents == 6);
  }
  CHECK(report.average.aed == 0.0);
  CHECK(report.average.f1 == 1.0);
  CHECK(report.matched == 30);
  CHECK(report.missing == 0);
}

TEST_CASE("empty predictions score worst") {
  const auto records = SampleRecords();
  std::map<std::string, std::string> empty;
  for (const auto& r : records) empty[r.image] = "";
  const EvalReport report = EvaluateRecords(records, empty);
  for (const auto& [category, score] : report.per_category) {
    CHECK(score.aed == 1.0);
    CHECK(score.f1 == 0.0);
  }
}

TEST_CASE("missing predictions count as empty") {
  const auto records = SampleRecords();
  auto half = Identity(records);
  std::vector<std::string> keys;
  for (const auto& [k, v] : half) keys.push_back(k);
  for (size_t i = 0; i < keys.size(); i += 2) half.erase(keys[i]);
  half["images/unknown.png"] = "stray";
  const EvalReport report = EvaluateRecords(records, half);
  CHECK(report.missing == 15);
  CHECK(report.matched == 15);
  CHECK(report.unmatched_predictions == 1);
  CHECK(report.average.aed > 0.0);
  CHECK(report.average.aed < 1.0);
  const auto json = report.ToJson();
  CHECK(json["missing"] == 15);
}

TEST_CASE("disjoint keys are an error") {
  const auto records = SampleRecords();
  try {
    EvaluateRecords(records, {{"nope.png", "x"}});
    FAIL("expected NoOverlap");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNoOverlap);
  }
}

TEST_CASE("evaluation is invariant to record order and worker count") {
  auto records = SampleRecords();
  Rng rng(5);
  std::map<std::string, std::string> preds;
  for (const auto& r : records) {
    std::u32string cps = DecodeUtf8(r.ground_truth);
    for (int k = 0; k < 4 && !cps.empty(); ++k) cps.erase(rng.Below(cps.size()), 1);
    preds[r.image] = EncodeUtf8(cps);
  }
  const std::string base = EvaluateRecords(records, preds, 1).ToJson().dump();
  CHECK(EvaluateRecords(records, preds, 4).ToJson().dump() == base);
  std::reverse(records.begin(), records.end());
  CHECK(EvaluateRecords(records, preds, 1).ToJson().dump() == base);
  rng.Shuffle(records);
  CHECK(EvaluateRecords(records, preds, 3).ToJson().dump() == base);
}

TEST_CASE("more deletions never lower mean AED") {
  const auto records = SampleRecords();
  double previous = -1.0;
  for (int k : {0, 5, 10, 20}) {
    Rng rng(DeriveSeed(3, "corrupt", 0));  // same positions prefix per k
    std::map<std::string, std::string> preds;
    for (const auto& r : records) {
      std::u32string cps = DecodeUtf8(r.ground_truth);
      std::vector<size_t> order(cps.size());
      for (size_t i = 0; i < order.size(); ++i) order[i] = i;
      rng.Shuffle(order);
      order.resize(std::min<size_t>(k, order.size()));
      std::sort(order.rbegin(), order.rend());
      for (size_t pos : order) cps.erase(pos, 1);
      preds[r.image] = EncodeUtf8(cps);
    }
    const double aed = EvaluateRecords(records, preds).average.aed;
    CHECK(aed >= previous);
    previous = aed;
  }
  CHECK(previous > 0.0);
}

TEST_CASE("grid has four metric rows and six columns") {
  const auto records = SampleRecords();
  const std::string grid = EvaluateRecords(records, Identity(records)).FormatGrid();
  std::vector<std::string> lines;
  size_t start = 0;
  for (size_t nl; (nl = grid.find('\n', start)) != std::string::npos; start = nl + 1) {
    lines.push_back(grid.substr(start, nl - start));
  }
  REQUIRE(lines.size() == 5);
  for (const char* title : {"English", "Chinese", "Doc w/image", "Doc w/table", "Doc w/chart", "Average"}) {
    CHECK(lines[0].find(title) != std::string::npos);
  }
  const char* rows[] = {"AED", "F1-score", "Precision", "Recall"};
  for (int i = 0; i < 4; ++i) {
    CHECK(lines[i + 1].rfind(rows[i], 0) == 0);
    CHECK(std::count(lines[i + 1].begin(), lines[i + 1].end(), '.') == 6);
  }
  CHECK(lines[1].find("0.000") != std::string::npos);
  CHECK(lines[2].find("1.000") != std::string::npos);
}

TEST_CASE("predictions file accepts prediction or ground_truth fields") {
  docforge::testing::TempDir dir;
  docforge::testing::WriteFile(dir / "p.jsonl",
                               "{\"image\": \"a.png\", \"prediction\": \"x\"}\n\n"
                               "{\"image\": \"b.png\", \"ground_truth\": \"y\"}\n");
  const auto preds = ReadPredictions(dir / "p.jsonl");
  CHECK(preds.at("a.png") == "x");
  CHECK(preds.at("b.png") == "y");
  docforge::testing::WriteFile(dir / "bad.jsonl", "{\"image\": 3}\n");
  CHECK_THROWS_AS(ReadPredictions(dir / "bad.jsonl"), Error);
  CHECK_THROWS_AS(ReadPredictions(dir / "none.jsonl"), Error);
}
