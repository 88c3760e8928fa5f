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

/* C interface to the docforge document synthesis library.
 *
 * All functions are thread-safe. Failures return a status other than
 * DFG_OK and leave a message retrievable with dfg_last_error() on the
 * calling thread. Strings returned through char** are owned by the caller
 * and must be released with dfg_string_free(). */
#ifndef DOCFORGE_DOCFORGE_H_
#define DOCFORGE_DOCFORGE_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define DFG_API __declspec(dllexport)
#else
#define DFG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dfg_status {
  DFG_OK = 0,
  DFG_INVALID_ARGUMENT = 1,
  DFG_IO = 2,
  DFG_PARSE = 3,
  DFG_CONFIG = 4,
  DFG_PLACEMENT_INFEASIBLE = 5,
  DFG_INFEASIBLE_CELL_SIZE = 6,
  DFG_MISSING_GLYPH = 7,
  DFG_GENERATION_FAILED = 8,
  DFG_NO_OVERLAP = 9,
  DFG_INTERNAL = 10
} dfg_status;

/* Document categories, in benchmark order. */
enum {
  DFG_PURE_EN = 0,
  DFG_PURE_ZH = 1,
  DFG_WITH_IMAGE = 2,
  DFG_WITH_TABLE = 3,
  DFG_WITH_CHART = 4,
  DFG_CATEGORY_COUNT = 5
};

/* Chart kinds for dfg_compose; DFG_CHART_ANY lets the config decide. */
enum {
  DFG_CHART_ANY = -1,
  DFG_CHART_BAR_VERTICAL = 0,
  DFG_CHART_BAR_HORIZONTAL = 1,
  DFG_CHART_PIE = 2,
  DFG_CHART_LINE = 3,
  DFG_CHART_SCATTER = 4
};

typedef struct dfg_config dfg_config;
typedef struct dfg_context dfg_context;
typedef struct dfg_document dfg_document;

DFG_API const char* dfg_version(void);
DFG_API const char* dfg_last_error(void);
DFG_API const char* dfg_status_name(dfg_status status);
DFG_API void dfg_string_free(char* s);

/* Built-in defaults, with corpus paths relative to the bundled data/. */
DFG_API dfg_status dfg_config_default(dfg_config** out);
DFG_API dfg_status dfg_config_load(const char* path, dfg_config** out);
DFG_API dfg_status dfg_config_fingerprint(const dfg_config* config, char** out);
DFG_API dfg_status dfg_config_to_json(const dfg_config* config, char** out);
DFG_API void dfg_config_free(dfg_config* config);

/* Loads corpora, images and fonts named by the config. */
DFG_API dfg_status dfg_context_create(const dfg_config* config, dfg_context** out);
DFG_API void dfg_context_free(dfg_context* context);

/* -1 for unknown names. */
DFG_API int dfg_category_from_name(const char* name);
DFG_API const char* dfg_category_name(int category);
DFG_API int dfg_chart_kind_from_name(const char* name);

DFG_API dfg_status dfg_compose(const dfg_context* context, int category,
                               uint64_t seed, int chart_kind,
                               dfg_document** out);
/* Borrowed; valid until dfg_document_free. */
DFG_API const char* dfg_document_annotation(const dfg_document* doc);
DFG_API uint64_t dfg_document_seed(const dfg_document* doc);
DFG_API int dfg_document_category(const dfg_document* doc);
DFG_API dfg_status dfg_document_size(const dfg_document* doc, int* width,
                                     int* height);
DFG_API dfg_status dfg_document_pixel_hash(const dfg_document* doc, char** out);
/* {"annotation", "category", "seed", "attempt", "page", "elements",
 *  "warnings"} */
DFG_API dfg_status dfg_document_to_json(const dfg_document* doc, char** out);
DFG_API dfg_status dfg_document_write_png(const dfg_document* doc,
                                          const char* path);
DFG_API void dfg_document_free(dfg_document* doc);

typedef void (*dfg_progress_fn)(size_t done, size_t total, void* user);

/* counts: DFG_CATEGORY_COUNT entries. summary_json (optional) receives
 * {"records", "counts", "config_fingerprint", "tool_version", "out_dir"}. */
DFG_API dfg_status dfg_generate_dataset(const dfg_context* context,
                                        const int* counts, uint64_t base_seed,
                                        const char* out_dir, int workers,
                                        dfg_progress_fn progress, void* user,
                                        char** summary_json);

/* passed receives 1 when every check passed. */
DFG_API dfg_status dfg_verify_dataset(const char* manifest_path,
                                      int check_pixels, char** report_json,
                                      int* passed);

/* grid_text (optional) receives the printable metrics grid. */
DFG_API dfg_status dfg_evaluate(const char* gt_manifest,
                                const char* pred_manifest, int workers,
                                char** report_json, char** grid_text);

DFG_API size_t dfg_edit_distance(const char* a, const char* b);
DFG_API double dfg_normalized_edit_distance(const char* gt, const char* pred);

#ifdef __cplusplus
}
#endif

#endif /* DOCFORGE_DOCFORGE_H_ */
