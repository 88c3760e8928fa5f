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

// Drives the built docforge binary end to end.
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Result {
  int rc = -1;
  std::string out;  // stdout and stderr interleaved
};

Result Run(const std::string& args) {
  const std::string cmd = std::string("'") + DOCFORGE_CLI + "' " + args + " 2>&1";
  Result r;
  FILE* p = ::popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf;
  size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = ::pclose(p);
  r.rc = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

size_t Count(const std::string& hay, const std::string& needle) {
  size_t n = 0;
  for (size_t pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1))
    ++n;
  return n;
}

struct Scratch {
  fs::path dir;
  Scratch() {
    static int serial = 0;
    dir = fs::temp_directory_path() /
          ("dfg_cli_" + std::to_string(::getpid()) + "_" + std::to_string(serial++));
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Scratch() {
    std::error_code ec;
    fs::remove_all(dir, ec);
  }
  std::string operator/(const std::string& name) const { return (dir / name).string(); }
};

// One small dataset shared by the tests below.
const Scratch& Shared() {
  static Scratch s;
  static bool made = false;
  if (!made) {
    const Result r = Run("generate --counts pure_en=2,with_table=2 --seed 7 --out " + (s / "ds"));
    REQUIRE(r.rc == 0);
    made = true;
  }
  return s;
}

}  // namespace

TEST_CASE("generate writes images and a manifest") {
  Scratch s;
  const Result r = Run("generate --counts pure_en=2 --seed 7 --out " + (s / "ds"));
  CHECK(r.rc == 0);
  CHECK(r.out.find("pure_en: 2") != std::string::npos);
  CHECK(r.out.find("elapsed") != std::string::npos);
  CHECK(fs::exists(s.dir / "ds/images/pure_en_00000.png"));
  CHECK(fs::exists(s.dir / "ds/images/pure_en_00001.png"));
  CHECK(Count(Slurp(s.dir / "ds/manifest.jsonl"), "\n") == 2);
  CHECK(r.out.find('{') == std::string::npos);  // no JSON unless asked

  const Result j = Run("generate --counts pure_zh=1 --seed 7 --json --out " + (s / "js"));
  CHECK(j.rc == 0);
  const auto summary = nlohmann::json::parse(j.out.substr(j.out.find('{')));
  CHECK(summary.at("records") == 1);
}

TEST_CASE("usage errors exit 2 with help") {
  const Result missing = Run("generate --counts 2");
  CHECK(missing.rc == 2);
  CHECK(missing.out.find("--out") != std::string::npos);
  CHECK(missing.out.find("Usage") != std::string::npos);
  CHECK(Run("generate --counts bogus=3 --out /tmp/x").rc == 2);
  CHECK(Run("inspect --category nope").rc == 2);
  CHECK(Run("frobnicate").rc == 2);
}

TEST_CASE("runtime failures exit 1 and name the problem") {
  const Result r = Run("generate --counts pure_en=1 --out /proc/nope/ds");
  CHECK(r.rc == 1);
  CHECK(r.out.find("/proc/nope") != std::string::npos);
  const Result c = Run("generate --config /nonexistent.yaml --counts 1 --out /tmp/never");
  CHECK(c.rc == 1);
  CHECK(c.out.find("/nonexistent.yaml") != std::string::npos);
}

TEST_CASE("verify accepts a fresh dataset") {
  const Scratch& s = Shared();
  const Result r = Run("verify --check-pixels --manifest " + (s / "ds/manifest.jsonl"));
  CHECK(r.rc == 0);
  // Swap in a different page; pixel checking notices.
  Scratch t;
  fs::copy(s.dir / "ds", t.dir / "ds", fs::copy_options::recursive);
  fs::copy_file(t.dir / "ds/images/pure_en_00001.png", t.dir / "ds/images/pure_en_00000.png",
                fs::copy_options::overwrite_existing);
  CHECK(Run("verify --check-pixels --manifest " + (t / "ds/manifest.jsonl")).rc == 1);
}

TEST_CASE("evaluate against itself is perfect") {
  const Scratch& s = Shared();
  const std::string m = s / "ds/manifest.jsonl";
  const Result r = Run("evaluate --gt " + m + " --pred " + m + " --report " + (s / "rep.json"));
  CHECK(r.rc == 0);
  std::istringstream lines(r.out);
  std::string line;
  int rows = 0;
  while (std::getline(lines, line)) {
    if (line.rfind("AED", 0) == 0) {
      ++rows;
      CHECK(Count(line, "0.000") == 3);  // English, table, average
    } else if (line.rfind("F1-score", 0) == 0) {
      ++rows;
      CHECK(Count(line, "1.000") == 3);
    }
  }
  CHECK(rows == 2);
  CHECK(fs::exists(s.dir / "rep.json"));
}

TEST_CASE("evaluate tolerates missing predictions but not disjoint sets") {
  const Scratch& s = Shared();
  const std::string gt = s / "ds/manifest.jsonl";
  std::istringstream all(Slurp(gt));
  std::string first;
  std::getline(all, first);
  std::ofstream(s / "half.jsonl") << first << "\n";
  const Result half = Run("evaluate --gt " + gt + " --pred " + (s / "half.jsonl"));
  CHECK(half.rc == 0);
  CHECK(half.out.find("missing predictions: 3") != std::string::npos);

  std::ofstream(s / "disjoint.jsonl") << R"({"image":"images/none.png","prediction":"x"})"
                                      << "\n";
  const Result dis = Run("evaluate --gt " + gt + " --pred " + (s / "disjoint.jsonl"));
  CHECK(dis.rc == 1);
}

TEST_CASE("inspect is deterministic and emits one structured element") {
  Scratch s;
  const Result a = Run("inspect --category with_table --seed 3 --out " + (s / "a.png"));
  const Result b = Run("inspect --category with_table --seed 3 --out " + (s / "b.png"));
  CHECK(a.rc == 0);
  CHECK(Count(a.out, "<table>") == 1);
  CHECK(Slurp(s.dir / "a.png") == Slurp(s.dir / "b.png"));
  CHECK(a.out.substr(0, a.out.rfind("wrote")) == b.out.substr(0, b.out.rfind("wrote")));

  const Result c = Run("inspect --category with_chart --seed 5 --out " + (s / "c.png"));
  CHECK(c.rc == 0);
  CHECK(Count(c.out, "<chart type=") == 1);
  const Result p =
      Run("inspect --category with_chart --chart-kind pie --seed 5 --json --out " + (s / "p.png"));
  CHECK(p.rc == 0);
  const auto doc = nlohmann::json::parse(p.out.substr(p.out.find('{')));
  CHECK(doc.at("annotation").get<std::string>().find("<chart type=\"pie\"") != std::string::npos);
}
