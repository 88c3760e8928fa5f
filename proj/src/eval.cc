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

#include "docforge/eval.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <set>
#include <thread>
#include <unordered_map>

#include "docforge/error.hpp"
#include "docforge/unicode.hpp"

namespace docforge {

namespace {

// Bit-parallel Levenshtein (Myers 1999, multi-word blocks after Hyyro 2003).
// The shorter string is the pattern, bit-packed into 64-row blocks.
size_t BitParallelDistance(const std::u32string& pattern, const std::u32string& text) {
  const size_t m = pattern.size();
  const size_t blocks = (m + 63) / 64;
  std::unordered_map<char32_t, std::vector<uint64_t>> peq;
  for (size_t i = 0; i < m; ++i) {
    auto& eq = peq[pattern[i]];
    if (eq.empty()) eq.assign(blocks, 0);
    eq[i / 64] |= uint64_t{1} << (i % 64);
  }
  const std::vector<uint64_t> none(blocks, 0);
  std::vector<uint64_t> pv(blocks, ~uint64_t{0}), mv(blocks, 0);
  const uint64_t last_bit = uint64_t{1} << ((m - 1) % 64);
  size_t score = m;
  for (char32_t c : text) {
    const auto it = peq.find(c);
    const std::vector<uint64_t>& eqs = it == peq.end() ? none : it->second;
    int hin = 1;  // top row grows by one per text character
    for (size_t b = 0; b < blocks; ++b) {
      uint64_t eq = eqs[b];
      const uint64_t high = b + 1 == blocks ? last_bit : uint64_t{1} << 63;
      const uint64_t xv = eq | mv[b];
      if (hin < 0) eq |= 1;
      const uint64_t xh = (((eq & pv[b]) + pv[b]) ^ pv[b]) | eq;
      uint64_t ph = mv[b] | ~(xh | pv[b]);
      uint64_t mh = pv[b] & xh;
      int hout = 0;
      if (ph & high) hout = 1;
      if (mh & high) hout = -1;
      ph <<= 1;
      mh <<= 1;
      if (hin < 0) {
        mh |= 1;
      } else if (hin > 0) {
        ph |= 1;
      }
      pv[b] = mh | ~(xv | ph);
      mv[b] = ph & xv;
      hin = hout;
    }
    score += hin;
  }
  return score;
}

std::string Format3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

}  // namespace

size_t EditDistance(std::string_view a, std::string_view b) {
  if (a == b) return 0;
  std::u32string x = DecodeUtf8(a), y = DecodeUtf8(b);
  size_t prefix = 0;
  while (prefix < x.size() && prefix < y.size() && x[prefix] == y[prefix]) ++prefix;
  size_t suffix = 0;
  while (suffix < x.size() - prefix && suffix < y.size() - prefix &&
         x[x.size() - 1 - suffix] == y[y.size() - 1 - suffix]) {
    ++suffix;
  }
  x = x.substr(prefix, x.size() - prefix - suffix);
  y = y.substr(prefix, y.size() - prefix - suffix);
  if (x.size() > y.size()) std::swap(x, y);
  if (x.empty()) return y.size();
  return BitParallelDistance(x, y);
}

double NormalizedEditDistance(std::string_view gt, std::string_view pred) {
  const size_t longest = std::max(CodePointCount(gt), CodePointCount(pred));
  if (longest == 0) return 0.0;
  return static_cast<double>(EditDistance(gt, pred)) / static_cast<double>(longest);
}

std::vector<std::string> MetricTokens(std::string_view text) {
  std::vector<std::string> tokens;
  size_t pos = 0;
  auto add_text = [&](std::string_view chunk) {
    for (TokenUnit& unit : Tokenize(chunk)) tokens.push_back(std::move(unit.text));
  };
  while (pos < text.size()) {
    const size_t open = text.find('<', pos);
    if (open == std::string_view::npos) {
      add_text(text.substr(pos));
      break;
    }
    const size_t close = text.find('>', open);
    if (close == std::string_view::npos) {
      add_text(text.substr(pos));
      break;
    }
    add_text(text.substr(pos, open - pos));
    tokens.emplace_back(text.substr(open, close - open + 1));
    pos = close + 1;
  }
  return tokens;
}

Prf TokenPrf(std::string_view gt, std::string_view pred) {
  const std::vector<std::string> g = MetricTokens(gt), p = MetricTokens(pred);
  if (g.empty() && p.empty()) return {1.0, 1.0, 1.0};
  std::unordered_map<std::string, long> counts;
  for (const auto& t : g) ++counts[t];
  size_t matched = 0;
  for (const auto& t : p) {
    auto it = counts.find(t);
    if (it != counts.end() && it->second > 0) {
      --it->second;
      ++matched;
    }
  }
  Prf prf;
  prf.precision = p.empty() ? 0.0 : double(matched) / double(p.size());
  prf.recall = g.empty() ? 0.0 : double(matched) / double(g.size());
  const double sum = prf.precision + prf.recall;
  prf.f1 = sum == 0.0 ? 0.0 : 2 * prf.precision * prf.recall / sum;
  return prf;
}

std::map<std::string, std::string> ReadPredictions(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read predictions " + path.string());
  std::map<std::string, std::string> predictions;
  std::string line;
  size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      const std::string image = j.at("image").get<std::string>();
      const char* field = j.contains("prediction") ? "prediction" : "ground_truth";
      predictions[image] = j.at(field).get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kParse, path.string() + ":" + std::to_string(number) +
                                         ": prediction record needs \"image\" and "
                                         "\"prediction\": " + e.what());
    }
  }
  return predictions;
}

EvalReport EvaluateRecords(const std::vector<ManifestRecord>& ground_truth,
                           const std::map<std::string, std::string>& predictions,
                           int workers) {
  EvalReport report;
  report.ground_truth_records = ground_truth.size();
  struct Score {
    double aed;
    Prf prf;
    bool missing;
  };
  std::vector<Score> scores(ground_truth.size());
  size_t matched = 0;
  for (const auto& r : ground_truth) matched += predictions.count(r.image);
  if (matched == 0) {
    throw Error(ErrorCode::kNoOverlap,
                "no prediction matches a ground-truth image path");
  }
  std::atomic<size_t> next{0};
  auto work = [&] {
    static const std::string kEmpty;
    for (size_t i; (i = next.fetch_add(1)) < ground_truth.size();) {
      const auto it = predictions.find(ground_truth[i].image);
      const bool missing = it == predictions.end();
      const std::string& pred = missing ? kEmpty : it->second;
      scores[i] = {NormalizedEditDistance(ground_truth[i].ground_truth, pred),
                   TokenPrf(ground_truth[i].ground_truth, pred), missing};
    }
  };
  std::vector<std::thread> threads;
  for (int w = 1; w < workers; ++w) threads.emplace_back(work);
  work();
  for (auto& t : threads) t.join();

  // Sums run in image-path order so results depend neither on the worker
  // count nor on the order of the manifest.
  std::vector<size_t> order(ground_truth.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return ground_truth[a].image < ground_truth[b].image;
  });
  for (const size_t i : order) {
    CategoryScore& c = report.per_category[ground_truth[i].category];
    c.aed += scores[i].aed;
    c.precision += scores[i].prf.precision;
    c.recall += scores[i].prf.recall;
    c.f1 += scores[i].prf.f1;
    ++c.documents;
    if (scores[i].missing) {
      ++c.missing;
      ++report.missing;
    }
  }
  for (auto& [category, c] : report.per_category) {
    const double n = static_cast<double>(c.documents);
    c.aed /= n;
    c.precision /= n;
    c.recall /= n;
    c.f1 /= n;
    report.average.aed += c.aed;
    report.average.precision += c.precision;
    report.average.recall += c.recall;
    report.average.f1 += c.f1;
    report.average.documents += c.documents;
    report.average.missing += c.missing;
  }
  const double k = static_cast<double>(report.per_category.size());
  report.average.aed /= k;
  report.average.precision /= k;
  report.average.recall /= k;
  report.average.f1 /= k;
  report.matched = matched;
  std::set<std::string> gt_images;
  for (const auto& r : ground_truth) gt_images.insert(r.image);
  for (const auto& [image, _] : predictions) {
    if (!gt_images.count(image)) ++report.unmatched_predictions;
  }
  return report;
}

EvalReport EvaluateDataset(const std::filesystem::path& gt_manifest,
                           const std::filesystem::path& pred_manifest, int workers) {
  const Manifest gt = ReadManifest(gt_manifest);
  return EvaluateRecords(gt.records, ReadPredictions(pred_manifest), workers);
}

nlohmann::json EvalReport::ToJson() const {
  auto score_json = [](const CategoryScore& s) {
    return nlohmann::json{{"aed", s.aed},
                          {"precision", s.precision},
                          {"recall", s.recall},
                          {"f1", s.f1},
                          {"documents", s.documents},
                          {"missing", s.missing}};
  };
  nlohmann::json out;
  nlohmann::json cats = nlohmann::json::object();
  for (const auto& [category, s] : per_category) cats[CategoryName(category)] = score_json(s);
  out["per_category"] = cats;
  out["average"] = score_json(average);
  out["ground_truth_records"] = ground_truth_records;
  out["matched"] = matched;
  out["missing"] = missing;
  out["unmatched_predictions"] = unmatched_predictions;
  return out;
}

std::string EvalReport::FormatGrid() const {
  struct Row {
    const char* name;
    double CategoryScore::*field;
  };
  static constexpr Row kRows[] = {{"AED", &CategoryScore::aed},
                                  {"F1-score", &CategoryScore::f1},
                                  {"Precision", &CategoryScore::precision},
                                  {"Recall", &CategoryScore::recall}};
  constexpr int kLabelWidth = 10;
  constexpr int kCellWidth = 13;
  auto pad = [](std::string s, int width) {
    const int len = static_cast<int>(CodePointCount(s));
    if (len < width) s.insert(0, width - len, ' ');
    return s;
  };
  std::string out = std::string(kLabelWidth, ' ');
  for (Category c : kAllCategories) out += pad(CategoryTitle(c), kCellWidth);
  out += pad("Average", kCellWidth) + "\n";
  for (const Row& row : kRows) {
    std::string line = row.name;
    line.resize(kLabelWidth, ' ');
    for (Category c : kAllCategories) {
      const auto it = per_category.find(c);
      line += pad(it == per_category.end() ? "-" : Format3(it->second.*row.field), kCellWidth);
    }
    line += pad(Format3(average.*row.field), kCellWidth);
    out += line + "\n";
  }
  return out;
}

}  // namespace docforge
