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

#include "docforge/docforge.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include <json.hpp>

#include "docforge/config.hpp"
#include "docforge/dataset.hpp"
#include "docforge/error.hpp"
#include "docforge/eval.hpp"
#include "docforge/page_compose.hpp"

#ifndef DOCFORGE_DATA_DIR
#define DOCFORGE_DATA_DIR "data"
#endif

struct dfg_config {
  docforge::GenerationConfig config;
};

struct dfg_context {
  std::shared_ptr<const docforge::GenerationContext> context;
};

struct dfg_document {
  docforge::DocumentRecord record;
};

namespace {

using docforge::Error;
using docforge::ErrorCode;

thread_local std::string g_last_error;

dfg_status ToStatus(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return DFG_INVALID_ARGUMENT;
    case ErrorCode::kIo: return DFG_IO;
    case ErrorCode::kParse: return DFG_PARSE;
    case ErrorCode::kConfig: return DFG_CONFIG;
    case ErrorCode::kPlacementInfeasible: return DFG_PLACEMENT_INFEASIBLE;
    case ErrorCode::kInfeasibleCellSize: return DFG_INFEASIBLE_CELL_SIZE;
    case ErrorCode::kMissingGlyph: return DFG_MISSING_GLYPH;
    case ErrorCode::kGenerationFailed: return DFG_GENERATION_FAILED;
    case ErrorCode::kNoOverlap: return DFG_NO_OVERLAP;
  }
  return DFG_INTERNAL;
}

// Runs fn, mapping exceptions to status codes and the thread's last error.
template <typename Fn>
dfg_status Guard(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return DFG_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return ToStatus(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return DFG_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return DFG_INTERNAL;
  }
}

void Require(bool condition, const char* what) {
  if (!condition) throw Error(ErrorCode::kInvalidArgument, what);
}

char* CopyString(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

docforge::Category CategoryArg(int category) {
  Require(category >= 0 && category < DFG_CATEGORY_COUNT, "unknown category");
  return static_cast<docforge::Category>(category);
}

nlohmann::json RectJson(const docforge::Rect& r) {
  return {{"x", r.x}, {"y", r.y}, {"w", r.w}, {"h", r.h}};
}

}  // namespace

extern "C" {

const char* dfg_version(void) { return docforge::ToolVersion(); }

const char* dfg_last_error(void) { return g_last_error.c_str(); }

const char* dfg_status_name(dfg_status status) {
  switch (status) {
    case DFG_OK: return "ok";
    case DFG_INVALID_ARGUMENT: return "invalid_argument";
    case DFG_IO: return "io";
    case DFG_PARSE: return "parse";
    case DFG_CONFIG: return "config";
    case DFG_PLACEMENT_INFEASIBLE: return "placement_infeasible";
    case DFG_INFEASIBLE_CELL_SIZE: return "infeasible_cell_size";
    case DFG_MISSING_GLYPH: return "missing_glyph";
    case DFG_GENERATION_FAILED: return "generation_failed";
    case DFG_NO_OVERLAP: return "no_overlap";
    case DFG_INTERNAL: return "internal";
  }
  return "unknown";
}

void dfg_string_free(char* s) { std::free(s); }

dfg_status dfg_config_default(dfg_config** out) {
  return Guard([&] {
    Require(out != nullptr, "out is null");
    auto config = std::make_unique<dfg_config>();
    config->config.base_dir = DOCFORGE_DATA_DIR;
    *out = config.release();
  });
}

dfg_status dfg_config_load(const char* path, dfg_config** out) {
  return Guard([&] {
    Require(path != nullptr && out != nullptr, "null argument");
    auto config = std::make_unique<dfg_config>();
    config->config = docforge::LoadConfig(path);
    *out = config.release();
  });
}

dfg_status dfg_config_fingerprint(const dfg_config* config, char** out) {
  return Guard([&] {
    Require(config != nullptr && out != nullptr, "null argument");
    *out = CopyString(docforge::Fingerprint(config->config));
  });
}

dfg_status dfg_config_to_json(const dfg_config* config, char** out) {
  return Guard([&] {
    Require(config != nullptr && out != nullptr, "null argument");
    *out = CopyString(docforge::ConfigToJson(config->config).dump());
  });
}

void dfg_config_free(dfg_config* config) { delete config; }

dfg_status dfg_context_create(const dfg_config* config, dfg_context** out) {
  return Guard([&] {
    Require(config != nullptr && out != nullptr, "null argument");
    auto context = std::make_unique<dfg_context>();
    context->context = std::make_shared<const docforge::GenerationContext>(config->config);
    *out = context.release();
  });
}

void dfg_context_free(dfg_context* context) { delete context; }

int dfg_category_from_name(const char* name) {
  if (name == nullptr) return -1;
  const auto category = docforge::ParseCategory(name);
  return category ? static_cast<int>(*category) : -1;
}

const char* dfg_category_name(int category) {
  if (category < 0 || category >= DFG_CATEGORY_COUNT) return nullptr;
  return docforge::CategoryName(static_cast<docforge::Category>(category));
}

int dfg_chart_kind_from_name(const char* name) {
  if (name == nullptr) return -1;
  const auto kind = docforge::ParseChartKind(name);
  return kind ? static_cast<int>(*kind) : -1;
}

dfg_status dfg_compose(const dfg_context* context, int category, uint64_t seed,
                       int chart_kind, dfg_document** out) {
  return Guard([&] {
    Require(context != nullptr && out != nullptr, "null argument");
    std::optional<docforge::ChartKind> kind;
    if (chart_kind != DFG_CHART_ANY) {
      Require(chart_kind >= 0 && chart_kind <= DFG_CHART_SCATTER, "unknown chart kind");
      kind = static_cast<docforge::ChartKind>(chart_kind);
    }
    auto doc = std::make_unique<dfg_document>();
    doc->record = docforge::ComposeDocument(*context->context, CategoryArg(category), seed, kind);
    *out = doc.release();
  });
}

const char* dfg_document_annotation(const dfg_document* doc) {
  return doc == nullptr ? nullptr : doc->record.annotation.c_str();
}

uint64_t dfg_document_seed(const dfg_document* doc) {
  return doc == nullptr ? 0 : doc->record.seed;
}

int dfg_document_category(const dfg_document* doc) {
  return doc == nullptr ? -1 : static_cast<int>(doc->record.category);
}

dfg_status dfg_document_size(const dfg_document* doc, int* width, int* height) {
  return Guard([&] {
    Require(doc != nullptr && width != nullptr && height != nullptr, "null argument");
    *width = doc->record.image.width();
    *height = doc->record.image.height();
  });
}

dfg_status dfg_document_pixel_hash(const dfg_document* doc, char** out) {
  return Guard([&] {
    Require(doc != nullptr && out != nullptr, "null argument");
    *out = CopyString(docforge::PixelSha256(doc->record.image));
  });
}

dfg_status dfg_document_to_json(const dfg_document* doc, char** out) {
  return Guard([&] {
    Require(doc != nullptr && out != nullptr, "null argument");
    const docforge::DocumentRecord& r = doc->record;
    nlohmann::json elements = nlohmann::json::array();
    for (const auto& e : r.element_manifest) {
      elements.push_back({{"kind", docforge::RegionKindName(e.kind)},
                          {"bbox", RectJson(e.bbox)},
                          {"annotation", e.annotation}});
    }
    const docforge::PageSpec& p = r.page;
    nlohmann::json page = {
        {"width_px", p.width_px},
        {"height_px", p.height_px},
        {"margins", {p.margins.top, p.margins.bottom, p.margins.left, p.margins.right}},
        {"column_count", p.column_count},
        {"base_font_size_px", p.base_font_size_px},
        {"font_id", p.font_id},
        {"cjk_font_id", p.cjk_font_id},
        {"line_spacing_factor", p.line_spacing_factor},
        {"segment_spacing_px", p.segment_spacing_px},
        {"alignment", p.alignment == docforge::Alignment::kJustified ? "justified" : "left"}};
    nlohmann::json j = {{"annotation", r.annotation},
                        {"category", docforge::CategoryName(r.category)},
                        {"seed", r.seed},
                        {"attempt", r.attempt},
                        {"page", page},
                        {"elements", elements},
                        {"warnings", r.warnings}};
    *out = CopyString(j.dump());
  });
}

dfg_status dfg_document_write_png(const dfg_document* doc, const char* path) {
  return Guard([&] {
    Require(doc != nullptr && path != nullptr, "null argument");
    docforge::WritePng(doc->record.image, path);
  });
}

void dfg_document_free(dfg_document* doc) { delete doc; }

dfg_status dfg_generate_dataset(const dfg_context* context, const int* counts,
                                uint64_t base_seed, const char* out_dir, int workers,
                                dfg_progress_fn progress, void* user,
                                char** summary_json) {
  return Guard([&] {
    Require(context != nullptr && counts != nullptr && out_dir != nullptr, "null argument");
    Require(workers >= 1, "workers must be >= 1");
    docforge::CategoryCounts category_counts;
    for (int i = 0; i < DFG_CATEGORY_COUNT; ++i) category_counts.counts[i] = counts[i];
    docforge::DatasetOptions options;
    options.workers = workers;
    if (progress != nullptr) {
      options.progress = [progress, user](size_t done, size_t total) {
        progress(done, total, user);
      };
    }
    const docforge::Manifest manifest = docforge::GenerateDataset(
        *context->context, category_counts, base_seed, out_dir, options);
    if (summary_json != nullptr) {
      nlohmann::json count_json = nlohmann::json::object();
      for (docforge::Category c : docforge::kAllCategories) {
        count_json[docforge::CategoryName(c)] = category_counts[c];
      }
      nlohmann::json j = {{"records", manifest.records.size()},
                          {"counts", count_json},
                          {"config_fingerprint", manifest.config_fingerprint},
                          {"tool_version", manifest.tool_version},
                          {"base_seed", base_seed},
                          {"out_dir", out_dir}};
      *summary_json = CopyString(j.dump());
    }
  });
}

dfg_status dfg_verify_dataset(const char* manifest_path, int check_pixels,
                              char** report_json, int* passed) {
  return Guard([&] {
    Require(manifest_path != nullptr, "null argument");
    docforge::VerifyOptions options;
    options.check_pixels = check_pixels != 0;
    const docforge::VerifyReport report = docforge::VerifyDataset(manifest_path, options);
    if (passed != nullptr) *passed = report.passed() ? 1 : 0;
    if (report_json != nullptr) *report_json = CopyString(report.ToJson().dump());
  });
}

dfg_status dfg_evaluate(const char* gt_manifest, const char* pred_manifest, int workers,
                        char** report_json, char** grid_text) {
  return Guard([&] {
    Require(gt_manifest != nullptr && pred_manifest != nullptr, "null argument");
    const docforge::EvalReport report =
        docforge::EvaluateDataset(gt_manifest, pred_manifest, std::max(1, workers));
    if (report_json != nullptr) *report_json = CopyString(report.ToJson().dump());
    if (grid_text != nullptr) *grid_text = CopyString(report.FormatGrid());
  });
}

size_t dfg_edit_distance(const char* a, const char* b) {
  return docforge::EditDistance(a == nullptr ? "" : a, b == nullptr ? "" : b);
}

double dfg_normalized_edit_distance(const char* gt, const char* pred) {
  return docforge::NormalizedEditDistance(gt == nullptr ? "" : gt, pred == nullptr ? "" : pred);
}

}  // extern "C"
