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

// Exercises the shared library exactly as an outside consumer would: only the
// C header, no C++ internals.
#include <doctest.h>

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

#include "docforge/docforge.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Scratch {
  fs::path dir;
  Scratch() {
    dir = fs::temp_directory_path() /
          ("dfg_capi_" + std::to_string(::getpid()) + "_" + std::to_string(std::rand()));
    fs::create_directories(dir);
  }
  ~Scratch() {
    std::error_code ec;
    fs::remove_all(dir, ec);
  }
};

std::string Take(char* s) {
  std::string out = s ? s : "";
  dfg_string_free(s);
  return out;
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Fixture {
  dfg_config* config = nullptr;
  dfg_context* context = nullptr;
  Fixture() {
    REQUIRE(dfg_config_default(&config) == DFG_OK);
    REQUIRE(dfg_context_create(config, &context) == DFG_OK);
  }
  ~Fixture() {
    dfg_context_free(context);
    dfg_config_free(config);
  }
};

}  // namespace

TEST_CASE("names and status strings") {
  CHECK(std::string(dfg_version()) == "docforge 0.3.0");
  CHECK(dfg_category_from_name("pure_en") == DFG_PURE_EN);
  CHECK(dfg_category_from_name("with_chart") == DFG_WITH_CHART);
  CHECK(dfg_category_from_name("nope") == -1);
  CHECK(dfg_category_from_name(nullptr) == -1);
  for (int c = 0; c < DFG_CATEGORY_COUNT; ++c)
    CHECK(dfg_category_from_name(dfg_category_name(c)) == c);
  CHECK(dfg_category_name(7) == nullptr);
  CHECK(dfg_chart_kind_from_name("pie") == DFG_CHART_PIE);
  CHECK(dfg_chart_kind_from_name("scatter") == DFG_CHART_SCATTER);
  CHECK(dfg_chart_kind_from_name("donut") == -1);
  CHECK(std::string(dfg_status_name(DFG_OK)).size() > 0);
  CHECK(std::string(dfg_status_name(DFG_NO_OVERLAP)) != dfg_status_name(DFG_OK));
}

TEST_CASE("null arguments are rejected with a message") {
  CHECK(dfg_config_default(nullptr) == DFG_INVALID_ARGUMENT);
  CHECK(std::string(dfg_last_error()).size() > 0);
  dfg_context* ctx = nullptr;
  CHECK(dfg_context_create(nullptr, &ctx) == DFG_INVALID_ARGUMENT);
  CHECK(ctx == nullptr);
  dfg_document* doc = nullptr;
  CHECK(dfg_compose(nullptr, 0, 1, DFG_CHART_ANY, &doc) == DFG_INVALID_ARGUMENT);
  CHECK(dfg_document_annotation(nullptr) == nullptr);
  int passed = 7;
  CHECK(dfg_verify_dataset(nullptr, 0, nullptr, &passed) == DFG_INVALID_ARGUMENT);
  // Freeing null is a no-op.
  dfg_config_free(nullptr);
  dfg_context_free(nullptr);
  dfg_document_free(nullptr);
  dfg_string_free(nullptr);
}

TEST_CASE("config load errors map to status codes") {
  dfg_config* cfg = nullptr;
  CHECK(dfg_config_load("/nonexistent/cfg.yaml", &cfg) == DFG_IO);
  CHECK(std::string(dfg_last_error()).find("/nonexistent/cfg.yaml") != std::string::npos);
  Scratch s;
  std::ofstream(s.dir / "bad.yaml") << "page:\n  margins: [90, 10]\n";
  CHECK(dfg_config_load((s.dir / "bad.yaml").c_str(), &cfg) == DFG_CONFIG);
  CHECK(std::string(dfg_last_error()).find("margins") != std::string::npos);
  CHECK(cfg == nullptr);

  const fs::path shipped = fs::path(DOCFORGE_DATA_DIR) / "default_config.yaml";
  REQUIRE(dfg_config_load(shipped.c_str(), &cfg) == DFG_OK);
  dfg_config* def = nullptr;
  REQUIRE(dfg_config_default(&def) == DFG_OK);
  char* a = nullptr;
  char* b = nullptr;
  REQUIRE(dfg_config_fingerprint(cfg, &a) == DFG_OK);
  REQUIRE(dfg_config_fingerprint(def, &b) == DFG_OK);
  CHECK(Take(a) == Take(b));
  char* j = nullptr;
  REQUIRE(dfg_config_to_json(def, &j) == DFG_OK);
  CHECK(json::parse(Take(j)).contains("table"));
  dfg_config_free(cfg);
  dfg_config_free(def);
}

TEST_CASE("compose, inspect and write a document") {
  Fixture f;
  dfg_document* doc = nullptr;
  REQUIRE(dfg_compose(f.context, DFG_WITH_CHART, 11, DFG_CHART_PIE, &doc) == DFG_OK);
  const std::string ann = dfg_document_annotation(doc);
  CHECK(ann.find("<chart type=\"pie\"") != std::string::npos);
  CHECK(dfg_document_seed(doc) == 11);
  CHECK(dfg_document_category(doc) == DFG_WITH_CHART);
  int w = 0, h = 0;
  REQUIRE(dfg_document_size(doc, &w, &h) == DFG_OK);
  CHECK(w > 0);
  CHECK(h > 0);
  char* hash = nullptr;
  REQUIRE(dfg_document_pixel_hash(doc, &hash) == DFG_OK);
  const std::string hash_text = Take(hash);
  CHECK(hash_text.size() == 64);

  char* dj = nullptr;
  REQUIRE(dfg_document_to_json(doc, &dj) == DFG_OK);
  const json parsed = json::parse(Take(dj));
  CHECK(parsed.at("annotation") == ann);
  CHECK(parsed.at("category") == "with_chart");
  CHECK(parsed.at("elements").is_array());

  Scratch s;
  const fs::path png = s.dir / "doc.png";
  REQUIRE(dfg_document_write_png(doc, png.c_str()) == DFG_OK);
  const std::string bytes = Slurp(png);
  REQUIRE(bytes.size() > 8);
  CHECK(bytes.substr(1, 3) == "PNG");
  CHECK(dfg_document_write_png(doc, "/proc/nope/x.png") == DFG_IO);

  // Same inputs, same document.
  dfg_document* again = nullptr;
  REQUIRE(dfg_compose(f.context, DFG_WITH_CHART, 11, DFG_CHART_PIE, &again) == DFG_OK);
  CHECK(std::string(dfg_document_annotation(again)) == ann);
  char* hash2 = nullptr;
  REQUIRE(dfg_document_pixel_hash(again, &hash2) == DFG_OK);
  CHECK(Take(hash2) == hash_text);
  dfg_document_free(again);
  dfg_document_free(doc);

  CHECK(dfg_compose(f.context, 9, 1, DFG_CHART_ANY, &doc) == DFG_INVALID_ARGUMENT);
  CHECK(dfg_compose(f.context, DFG_PURE_EN, 1, 17, &doc) == DFG_INVALID_ARGUMENT);
}

TEST_CASE("generate, verify and evaluate through the C API") {
  Fixture f;
  Scratch s;
  const int counts[DFG_CATEGORY_COUNT] = {2, 1, 1, 2, 2};
  int progress_calls = 0;
  char* summary = nullptr;
  REQUIRE(dfg_generate_dataset(
              f.context, counts, 42, (s.dir / "ds").c_str(), 2,
              [](size_t, size_t total, void* user) {
                CHECK(total == 8);
                ++*static_cast<int*>(user);
              },
              &progress_calls, &summary) == DFG_OK);
  const json sj = json::parse(Take(summary));
  CHECK(sj.at("records") == 8);
  CHECK(sj.at("counts").at("with_table") == 2);
  CHECK(sj.at("config_fingerprint").get<std::string>().size() == 64);
  CHECK(progress_calls >= 1);

  const fs::path manifest = s.dir / "ds" / "manifest.jsonl";
  char* report = nullptr;
  int passed = 0;
  REQUIRE(dfg_verify_dataset(manifest.c_str(), 1, &report, &passed) == DFG_OK);
  CHECK(passed == 1);
  CHECK(json::parse(Take(report)).is_object());

  char* eval = nullptr;
  char* grid = nullptr;
  REQUIRE(dfg_evaluate(manifest.c_str(), manifest.c_str(), 1, &eval, &grid) == DFG_OK);
  const json ej = json::parse(Take(eval));
  CHECK(ej.dump().find("f1") != std::string::npos);
  const std::string grid_text = Take(grid);
  CHECK(grid_text.find("Average") != std::string::npos);

  const int zero[DFG_CATEGORY_COUNT] = {0, 0, 0, 0, 0};
  CHECK(dfg_generate_dataset(f.context, zero, 1, "/proc/nope/ds", 1, nullptr, nullptr,
                             nullptr) == DFG_IO);
  CHECK(std::string(dfg_last_error()).find("/proc/nope") != std::string::npos);
  CHECK(dfg_generate_dataset(f.context, counts, 1, (s.dir / "x").c_str(), 0, nullptr,
                             nullptr, nullptr) == DFG_INVALID_ARGUMENT);
}

TEST_CASE("edit distance entry points") {
  CHECK(dfg_edit_distance("kitten", "sitting") == 3);
  CHECK(dfg_edit_distance("", "") == 0);
  CHECK(dfg_edit_distance("中文", "中") == 1);  // counts code points
  CHECK(dfg_normalized_edit_distance("abc", "abc") == 0.0);
  CHECK(dfg_normalized_edit_distance("abc", "") == 1.0);
  CHECK(dfg_normalized_edit_distance("", "") == 0.0);
}
