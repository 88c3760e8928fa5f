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

#include <string>

#include "docforge/config.hpp"
#include "docforge/error.hpp"
#include "docforge/rng.hpp"
#include "test_support.hpp"

using namespace docforge;
using docforge::testing::DataDir;

namespace {

// Pinned when the default config was settled; any change to a default value
// or to the canonical serialization must update this deliberately.
constexpr const char* kDefaultFingerprint =
    "fcea38004afc3f341dff73c2aca1a3db68a7410b1ed614b2c006b7044a59e841";

std::string ErrorText(const std::string& yaml) {
  try {
    ParseConfigYaml(yaml);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kConfig);
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("shipped default config matches the built-in defaults") {
  const GenerationConfig loaded = LoadConfig(DataDir() / "default_config.yaml");
  CHECK(loaded == GenerationConfig{});
  CHECK(Fingerprint(loaded) == kDefaultFingerprint);
  CHECK(Fingerprint(GenerationConfig{}) == kDefaultFingerprint);
  CHECK(loaded.base_dir == DataDir());
  CHECK(ResolvePath(loaded, loaded.corpora.english) == DataDir() / "corpus/english.txt");
  CHECK(ResolvePath(loaded, "/abs/x.txt") == std::filesystem::path("/abs/x.txt"));
}

TEST_CASE("validation names the offending field") {
  CHECK(ErrorText("page:\n  margins: [90, 40]\n").find("margins") != std::string::npos);
  CHECK(ErrorText("page:\n  margns: [40, 80]\n").find("margns") != std::string::npos);
  CHECK(ErrorText("pages:\n  width: [1, 2]\n").find("pages") != std::string::npos);
  CHECK(ErrorText("compose:\n  chinese_page_probability: 1.5\n").find("chinese_page_probability") != std::string::npos);
  CHECK(ErrorText("layout:\n  element_count_weights: [0, 0, 0]\n").find("element_count_weights") != std::string::npos);
  CHECK(ErrorText("table:\n  rows: [3]\n").find("rows") != std::string::npos);
  CHECK(ErrorText("table:\n  rows: three\n").find("rows") != std::string::npos);
  CHECK(ErrorText("corpora:\n  format: xml\n").find("format") != std::string::npos);
  try {
    ParseConfigYaml("page:\n  width: [1, 2\n");
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kParse);
    CHECK(std::string(e.what()).find("line") != std::string::npos);
  }
}

TEST_CASE("scatter bounds are fixed unless overridden") {
  CHECK(ErrorText("chart:\n  scatter_points: [5, 30]\n").find("scatter_points") != std::string::npos);
  const GenerationConfig c =
      ParseConfigYaml("chart:\n  scatter_points: [5, 30]\n  allow_scatter_override: true\n");
  CHECK(c.chart.scatter_points == IntRange{5, 30});
}

TEST_CASE("missing keys keep their defaults") {
  const GenerationConfig c = ParseConfigYaml("page:\n  width: [800, 800]\n");
  CHECK(c.page.width == IntRange{800, 800});
  CHECK(c.page.height == GenerationConfig{}.page.height);
  CHECK(c.chart == GenerationConfig{}.chart);
  CHECK(ParseConfigYaml("") == GenerationConfig{});
}

TEST_CASE("fingerprint ignores key order and notices value changes") {
  const std::string a =
      "page:\n  width: [900, 900]\n  height: [1200, 1200]\ntable:\n  rows: [2, 5]\n";
  const std::string b =
      "table:\n  rows: [2, 5]\npage:\n  height: [1200, 1200]\n  width: [900, 900]\n";
  CHECK(Fingerprint(ParseConfigYaml(a)) == Fingerprint(ParseConfigYaml(b)));
  const std::string c =
      "table:\n  rows: [2, 6]\npage:\n  height: [1200, 1200]\n  width: [900, 900]\n";
  CHECK(Fingerprint(ParseConfigYaml(a)) != Fingerprint(ParseConfigYaml(c)));
  GenerationConfig d;
  d.base_dir = "/elsewhere";
  CHECK(Fingerprint(d) == kDefaultFingerprint);  // base_dir is not content
}

TEST_CASE("serialize then load is the identity") {
  Rng rng(6);
  for (int iter = 0; iter < 200; ++iter) {
    GenerationConfig c;
    const int lo = static_cast<int>(rng.UniformInt(20, 60));
    c.page.margins = {lo, lo + static_cast<int>(rng.UniformInt(0, 40))};
    c.page.two_column_probability = rng.Uniform();
    c.page.line_spacing = {1.1, rng.Uniform(1.1, 2.0)};
    c.table.merge_probability = rng.Uniform();
    c.table.rows = {2, static_cast<int>(rng.UniformInt(2, 12))};
    c.chart.kind_weights[rng.Below(5)] = rng.Uniform(0, 3);
    c.chart.rotations = {0, static_cast<int>(rng.UniformInt(1, 90))};
    c.compose.retry_budget = static_cast<int>(rng.UniformInt(1, 20));
    c.corpora.english = "corpus/french.txt";
    REQUIRE_NOTHROW(ValidateConfig(c));
    const GenerationConfig via_yaml = ParseConfigYaml(ConfigToYaml(c));
    CHECK(via_yaml == c);
    CHECK(Fingerprint(via_yaml) == Fingerprint(c));
    CHECK(ConfigFromJson(ConfigToJson(c)) == c);
    CHECK(ParseConfigYaml(ConfigToYaml(via_yaml)) == via_yaml);
  }
}

TEST_CASE("load reports io errors") {
  CHECK_THROWS_AS(LoadConfig(DataDir() / "no_such_config.yaml"), Error);
}
