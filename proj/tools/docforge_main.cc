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

// docforge command-line tool. A thin wrapper over the C API: every behavior
// lives in the library, this file only parses flags and prints results.
//
// Exit codes: 0 success, 1 operational failure, 2 usage error.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "docforge/docforge.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct StringDeleter {
  void operator()(char* s) const { dfg_string_free(s); }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;

struct ConfigDeleter {
  void operator()(dfg_config* c) const { dfg_config_free(c); }
};
struct ContextDeleter {
  void operator()(dfg_context* c) const { dfg_context_free(c); }
};
struct DocumentDeleter {
  void operator()(dfg_document* d) const { dfg_document_free(d); }
};

// Prints the library's message for a failed call; returns the exit code.
int Fail(dfg_status status, const std::string& what, bool json) {
  const std::string message = dfg_last_error();
  if (json) {
    std::cout << nlohmann::json{{"ok", false},
                                {"command", what},
                                {"status", dfg_status_name(status)},
                                {"error", message}}
                     .dump()
              << "\n";
  }
  std::cerr << "docforge " << what << ": " << message << "\n";
  return kExitFailure;
}

std::unique_ptr<dfg_config, ConfigDeleter> LoadConfig(const std::string& path,
                                                      dfg_status* status) {
  dfg_config* config = nullptr;
  *status = path == "default" ? dfg_config_default(&config)
                              : dfg_config_load(path.c_str(), &config);
  return std::unique_ptr<dfg_config, ConfigDeleter>(config);
}

// "1000" (every category) or "pure_en=2,with_chart=3" (others zero).
std::vector<int> ParseCounts(const std::string& text) {
  std::vector<int> counts(DFG_CATEGORY_COUNT, 0);
  auto parse_int = [&](const std::string& s) {
    size_t used = 0;
    int value = -1;
    try {
      value = std::stoi(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || s.empty() || value < 0) {
      throw UsageError("--counts: bad count '" + s + "'");
    }
    return value;
  };
  if (text.find('=') == std::string::npos) {
    counts.assign(DFG_CATEGORY_COUNT, parse_int(text));
    return counts;
  }
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const size_t eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("--counts: expected name=N, got '" + item + "'");
    const int category = dfg_category_from_name(item.substr(0, eq).c_str());
    if (category < 0) throw UsageError("--counts: unknown category '" + item.substr(0, eq) + "'");
    counts[category] = parse_int(item.substr(eq + 1));
  }
  return counts;
}

struct GenerateArgs {
  std::string config = "default";
  std::string counts = "1000";
  uint64_t seed = 0;
  std::string out;
  int workers = 1;
  bool progress = false;
};

int RunGenerate(const GenerateArgs& args, bool json) {
  const std::vector<int> counts = ParseCounts(args.counts);
  dfg_status status;
  auto config = LoadConfig(args.config, &status);
  if (status != DFG_OK) return Fail(status, "generate", json);
  dfg_context* raw_context = nullptr;
  status = dfg_context_create(config.get(), &raw_context);
  std::unique_ptr<dfg_context, ContextDeleter> context(raw_context);
  if (status != DFG_OK) return Fail(status, "generate", json);

  dfg_progress_fn progress = nullptr;
  if (args.progress) {
    progress = [](size_t done, size_t total, void*) {
      std::cerr << "\r" << done << "/" << total << std::flush;
      if (done == total) std::cerr << "\n";
    };
  }
  const auto start = std::chrono::steady_clock::now();
  char* summary_raw = nullptr;
  status = dfg_generate_dataset(context.get(), counts.data(), args.seed, args.out.c_str(),
                                args.workers, progress, nullptr, &summary_raw);
  OwnedString summary_text(summary_raw);
  if (status != DFG_OK) return Fail(status, "generate", json);
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  nlohmann::json summary = nlohmann::json::parse(summary_text.get());
  summary["ok"] = true;
  summary["command"] = "generate";
  summary["elapsed_seconds"] = elapsed;
  summary["workers"] = args.workers;
  if (json) {
    std::cout << summary.dump() << "\n";
    return kExitOk;
  }
  for (int c = 0; c < DFG_CATEGORY_COUNT; ++c) {
    std::cout << dfg_category_name(c) << ": " << counts[c] << "\n";
  }
  std::cout << "total: " << summary["records"].get<size_t>() << " documents in " << args.out
            << "\n";
  std::cout << "elapsed: " << std::fixed << std::setprecision(2) << elapsed << " s\n";
  return kExitOk;
}

struct VerifyArgs {
  std::string manifest;
  bool check_pixels = false;
};

int RunVerify(const VerifyArgs& args, bool json) {
  char* report_raw = nullptr;
  int passed = 0;
  const dfg_status status =
      dfg_verify_dataset(args.manifest.c_str(), args.check_pixels, &report_raw, &passed);
  OwnedString report_text(report_raw);
  if (status != DFG_OK) return Fail(status, "verify", json);
  const nlohmann::json report = nlohmann::json::parse(report_text.get());
  if (json) {
    std::cout << report.dump() << "\n";
  } else {
    for (const auto& check : report["checks"]) {
      std::cout << (check["passed"].get<bool>() ? "ok    " : "FAIL  ")
                << check["name"].get<std::string>();
      std::cout << "  (" << check["checked"] << " checked, " << check["failures"]
                << " failed)\n";
      for (const auto& detail : check["details"]) {
        std::cout << "      " << detail.get<std::string>() << "\n";
      }
    }
    std::cout << (passed ? "dataset verified" : "dataset verification failed") << "\n";
  }
  return passed ? kExitOk : kExitFailure;
}

struct EvaluateArgs {
  std::string gt;
  std::string pred;
  std::string report;
  int workers = 1;
};

int RunEvaluate(const EvaluateArgs& args, bool json) {
  char* report_raw = nullptr;
  char* grid_raw = nullptr;
  const dfg_status status =
      dfg_evaluate(args.gt.c_str(), args.pred.c_str(), args.workers, &report_raw, &grid_raw);
  OwnedString report_text(report_raw);
  OwnedString grid(grid_raw);
  if (status != DFG_OK) return Fail(status, "evaluate", json);
  const nlohmann::json report = nlohmann::json::parse(report_text.get());
  if (!args.report.empty()) {
    std::ofstream out(args.report);
    out << report.dump(2) << "\n";
    if (!out) {
      std::cerr << "docforge evaluate: cannot write report to " << args.report << "\n";
      return kExitFailure;
    }
  }
  if (json) {
    std::cout << report.dump() << "\n";
    return kExitOk;
  }
  std::cout << grid.get();
  std::cout << "matched " << report["matched"] << " of " << report["ground_truth_records"]
            << " ground-truth documents; missing predictions: " << report["missing"]
            << "; unmatched predictions: " << report["unmatched_predictions"] << "\n";
  return kExitOk;
}

struct InspectArgs {
  std::string config = "default";
  std::string category;
  uint64_t seed = 0;
  std::string chart_kind;
  std::string out;
};

int RunInspect(const InspectArgs& args, bool json) {
  const int category = dfg_category_from_name(args.category.c_str());
  if (category < 0) throw UsageError("--category: unknown category '" + args.category + "'");
  int chart_kind = DFG_CHART_ANY;
  if (!args.chart_kind.empty()) {
    chart_kind = dfg_chart_kind_from_name(args.chart_kind.c_str());
    if (chart_kind < 0) throw UsageError("--chart-kind: unknown kind '" + args.chart_kind + "'");
  }
  dfg_status status;
  auto config = LoadConfig(args.config, &status);
  if (status != DFG_OK) return Fail(status, "inspect", json);
  dfg_context* raw_context = nullptr;
  status = dfg_context_create(config.get(), &raw_context);
  std::unique_ptr<dfg_context, ContextDeleter> context(raw_context);
  if (status != DFG_OK) return Fail(status, "inspect", json);

  dfg_document* raw_doc = nullptr;
  status = dfg_compose(context.get(), category, args.seed, chart_kind, &raw_doc);
  std::unique_ptr<dfg_document, DocumentDeleter> doc(raw_doc);
  if (status != DFG_OK) return Fail(status, "inspect", json);

  const std::string out = args.out.empty() ? args.category + "_" + std::to_string(args.seed) + ".png"
                                           : args.out;
  status = dfg_document_write_png(doc.get(), out.c_str());
  if (status != DFG_OK) return Fail(status, "inspect", json);

  if (json) {
    char* doc_raw = nullptr;
    status = dfg_document_to_json(doc.get(), &doc_raw);
    OwnedString doc_text(doc_raw);
    if (status != DFG_OK) return Fail(status, "inspect", json);
    nlohmann::json j = nlohmann::json::parse(doc_text.get());
    j["ok"] = true;
    j["command"] = "inspect";
    j["image"] = out;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << dfg_document_annotation(doc.get()) << "\n";
    std::cerr << "wrote " << out << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"docforge: synthetic document images with reading-order ground truth"};
  app.set_version_flag("--version", std::string(dfg_version()));
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "Print a machine-readable JSON summary");

  GenerateArgs gen;
  CLI::App* generate = app.add_subcommand("generate", "Generate a dataset");
  generate->add_option("--config", gen.config, "Config YAML path, or 'default'")
      ->capture_default_str();
  generate->add_option("--counts", gen.counts,
                       "Documents per category: N for all, or name=N,... (others 0)")
      ->capture_default_str();
  generate->add_option("--seed", gen.seed, "Base seed")->capture_default_str();
  generate->add_option("--out", gen.out, "Output directory")->required();
  generate->add_option("--workers", gen.workers, "Worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  generate->add_flag("--progress", gen.progress, "Report progress on stderr");
  generate->add_flag("--json", json, "Print a machine-readable JSON summary");

  VerifyArgs ver;
  CLI::App* verify = app.add_subcommand("verify", "Check a generated dataset");
  verify->add_option("--manifest", ver.manifest, "manifest.jsonl path")->required();
  verify->add_flag("--check-pixels", ver.check_pixels, "Re-hash every image");
  verify->add_flag("--json", json, "Print a machine-readable JSON summary");

  EvaluateArgs eva;
  CLI::App* evaluate = app.add_subcommand("evaluate", "Score predictions against ground truth");
  evaluate->add_option("--gt", eva.gt, "Ground-truth manifest.jsonl")->required();
  evaluate->add_option("--pred", eva.pred,
                       "Prediction manifest.jsonl (image + prediction per line)")
      ->required();
  evaluate->add_option("--report", eva.report, "Where to write the JSON report");
  evaluate->add_option("--workers", eva.workers, "Worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  evaluate->add_flag("--json", json, "Print a machine-readable JSON summary");

  InspectArgs ins;
  CLI::App* inspect = app.add_subcommand("inspect", "Compose and preview one document");
  inspect->add_option("--config", ins.config, "Config YAML path, or 'default'")
      ->capture_default_str();
  inspect->add_option("--category", ins.category,
                      "pure_en, pure_zh, with_image, with_table or with_chart")
      ->required();
  inspect->add_option("--seed", ins.seed, "Document seed")->capture_default_str();
  inspect->add_option("--chart-kind", ins.chart_kind,
                      "bar_vertical, bar_horizontal, pie, line or scatter");
  inspect->add_option("--out", ins.out, "Image path (default <category>_<seed>.png)");
  inspect->add_flag("--json", json, "Print a machine-readable JSON summary");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n";
    CLI::App* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    std::cerr << sub->help();
    return kExitUsage;
  }

  try {
    if (generate->parsed()) return RunGenerate(gen, json);
    if (verify->parsed()) return RunVerify(ver, json);
    if (evaluate->parsed()) return RunEvaluate(eva, json);
    return RunInspect(ins, json);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "docforge: " << e.what() << "\n";
    return kExitFailure;
  }
}
