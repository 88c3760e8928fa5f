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

#ifndef DOCFORGE_EVAL_HPP_
#define DOCFORGE_EVAL_HPP_

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "docforge/dataset.hpp"
#include "docforge/page_compose.hpp"

namespace docforge {

// Levenshtein distance over Unicode code points, unit costs.
size_t EditDistance(std::string_view a, std::string_view b);

// EditDistance / max(length); 0 when both are empty.
double NormalizedEditDistance(std::string_view gt, std::string_view pred);

struct Prf {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Metric tokens: each HTML tag (from '<' to '>') is one token; the text in
// between is split as corpus text.
std::vector<std::string> MetricTokens(std::string_view text);

// Multiset overlap of MetricTokens. Both empty scores (1, 1, 1).
Prf TokenPrf(std::string_view gt, std::string_view pred);

struct CategoryScore {
  double aed = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  size_t documents = 0;
  size_t missing = 0;  // ground-truth records without a prediction
};

struct EvalReport {
  std::map<Category, CategoryScore> per_category;  // categories present only
  CategoryScore average;  // unweighted mean over categories present
  size_t ground_truth_records = 0;
  size_t matched = 0;
  size_t missing = 0;
  size_t unmatched_predictions = 0;

  nlohmann::json ToJson() const;
  // Metrics x categories grid with an Average column.
  std::string FormatGrid() const;
};

// image -> prediction. Reads "prediction", falling back to "ground_truth" so
// a ground-truth manifest can stand in for predictions. Throws kIo / kParse.
std::map<std::string, std::string> ReadPredictions(const std::filesystem::path& path);

// Missing predictions score as empty strings. Throws Error(kNoOverlap) when
// no prediction key matches a ground-truth image.
EvalReport EvaluateRecords(const std::vector<ManifestRecord>& ground_truth,
                           const std::map<std::string, std::string>& predictions,
                           int workers = 1);

EvalReport EvaluateDataset(const std::filesystem::path& gt_manifest,
                           const std::filesystem::path& pred_manifest,
                           int workers = 1);

}  // namespace docforge

#endif  // DOCFORGE_EVAL_HPP_
