// Copyright 2026 The QRA Toolkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qra/cli/cli.h"

#include <cstdlib>
#include <filesystem>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qra/core/model.h"
#include "qra/error.h"
#include "qra/io/generations_io.h"
#include "qra/io/labels_io.h"
#include "qra/io/run_io.h"
#include "qra/io/scorer_client.h"
#include "qra/report/render.h"
#include "qra/report/report.h"
#include "qra/text/distinct.h"
#include "qra/text/tokenizer.h"
#include "qra/util/format.h"

namespace qra {
namespace {

namespace fs = std::filesystem;

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIo:
    case ErrorCode::kNetwork:
    case ErrorCode::kScorer:
    case ErrorCode::kCountMismatch:
      return kExitIo;
    case ErrorCode::kUnsupportedFormat:
      return kExitUsage;
    default:
      return kExitValidation;
  }
}

void Emit(const std::string& text, const std::string& out_path,
          std::ostream& out) {
  if (out_path.empty()) {
    out << text;
    if (!text.empty() && text.back() != '\n') out << '\n';
  } else {
    WriteFile(out_path, text);
  }
}

struct ValidateArgs {
  std::string run;
  std::string sidecar;
};

int RunValidate(const ValidateArgs& a, std::ostream& out) {
  const fs::path path(a.run);
  std::optional<fs::path> sidecar;
  if (!a.sidecar.empty()) sidecar = a.sidecar;
  const EvaluationRun run = LoadRun(path, DetectRunFormat(path), sidecar);
  out << "ok: run '" << run.run_id() << "' (" << ToString(run.label()) << "), "
      << run.cells().size() << " cells, " << run.metrics().size()
      << " metrics, " << run.Systems().size() << " systems\n";
  return kExitOk;
}

struct AssessArgs {
  std::string original;
  std::string repro;
  bool strict = false;
  bool lenient = false;
  double epsilon = 0.0;
  std::string sd_mode = "sample";
  std::string format = "markdown";
  std::string out;
  std::string save;
  std::string labels;
};

int RunAssess(const AssessArgs& a, std::ostream& out, std::ostream& err) {
  const RenderFormat format = ParseRenderFormat(a.format);
  ReportOptions options;
  options.epsilon = a.epsilon;
  options.sd_mode = ParseSdMode(a.sd_mode);
  options.align_mode = a.lenient ? AlignMode::kLenient : AlignMode::kStrict;

  const EvaluationRun original = LoadRun(a.original);
  const EvaluationRun repro = LoadRun(a.repro);
  options.provenance["original_file"] = fs::path(a.original).filename().string();
  options.provenance["original_sha256"] = Sha256Hex(ReadFile(a.original));
  options.provenance["reproduction_file"] = fs::path(a.repro).filename().string();
  options.provenance["reproduction_sha256"] = Sha256Hex(ReadFile(a.repro));
  if (!a.labels.empty()) {
    options.label_sets = LoadLabelSets(a.labels);
    options.provenance["labels_sha256"] = Sha256Hex(ReadFile(a.labels));
  }

  const PairedStudy study = AlignRuns(original, repro, options.align_mode);
  for (const CellKey& k : study.dropped_keys) {
    err << "note: dropped unpaired cell " << k.ToString() << '\n';
  }
  const ReproReport report = BuildReport(study, options);
  if (!a.save.empty()) WriteFile(a.save, Render(report, RenderFormat::kJson));
  Emit(Render(report, format), a.out, out);
  return kExitOk;
}

struct DistinctArgs {
  std::string generations;
  std::string orders = "1,2,3";
  std::string variant = "paper";
  std::string tokenizer = "whitespace";
  std::string merges;
  bool per_condition = false;
  std::string format = "text";
};

std::vector<int> ParseOrders(const std::string& text) {
  std::vector<int> orders;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    char* end = nullptr;
    const long v = std::strtol(item.c_str(), &end, 10);
    if (item.empty() || *end != '\0') {
      throw Error(ErrorCode::kSchema, "--n: '" + item + "' is not an integer");
    }
    if (v < 1) {
      throw Error(ErrorCode::kNonPositiveN, "--n: order must be >= 1");
    }
    orders.push_back(static_cast<int>(v));
  }
  if (orders.empty()) throw Error(ErrorCode::kSchema, "--n: no orders given");
  return orders;
}

int RunDistinct(const DistinctArgs& a, std::ostream& out) {
  const std::vector<int> orders = ParseOrders(a.orders);
  const DistinctVariant variant = ParseDistinctVariant(a.variant);
  const std::unique_ptr<Tokenizer> tokenizer =
      MakeTokenizer(a.tokenizer, a.merges);
  if (a.format != "text" && a.format != "json") {
    throw Error(ErrorCode::kUnsupportedFormat,
                "distinct output format must be text or json");
  }
  const std::vector<GenerationRecord> records = LoadGenerations(a.generations);
  if (records.empty()) {
    throw Error(ErrorCode::kEmptyOutputs,
                a.generations + ": no generation records");
  }

  // (system, condition) -> records; condition is "all" unless split.
  std::map<std::pair<std::string, std::string>, std::vector<GenerationRecord>>
      groups;
  for (const GenerationRecord& r : records) {
    const std::string condition =
        a.per_condition ? ConditionId(r.attributes) : std::string("all");
    groups[{r.system, condition}].push_back(r);
  }

  nlohmann::json scores = nlohmann::json::array();
  std::ostringstream text;
  text << "system\tcondition\tn\tvalue\tprefixes\n";
  for (const auto& [key, group] : groups) {
    for (int n : orders) {
      const DistinctScore s = SystemDistinctN(group, n, *tokenizer, variant);
      text << key.first << '\t' << key.second << '\t' << n << '\t'
           << FormatFixed(s.value, 4) << '\t' << s.prefix_count << '\n';
      scores.push_back({{"system", key.first},
                        {"condition", key.second},
                        {"n", n},
                        {"value", s.value},
                        {"prefix_count", s.prefix_count}});
    }
  }
  if (a.format == "json") {
    nlohmann::json doc{{"tokenizer", tokenizer->id()},
                       {"variant", std::string(ToString(variant))},
                       {"scores", scores}};
    out << doc.dump(2) << '\n';
  } else {
    out << "# tokenizer=" << tokenizer->id()
        << " variant=" << ToString(variant) << '\n'
        << text.str();
  }
  return kExitOk;
}

struct ScoreArgs {
  std::string generations;
  std::string task;
  std::string endpoint;
  std::string target;
  int max_batch = 32;
  int parallelism = 1;
  int timeout_ms = 30000;
  std::string label = "reproduction";
  std::string run_id;
  std::string sd_mode = "sample";
  std::string out;
};

int RunScore(const ScoreArgs& a, std::ostream& out) {
  ScorerEndpoint endpoint;
  endpoint.base_url = a.endpoint;
  endpoint.task = ParseScorerTask(a.task);
  if (!a.target.empty()) endpoint.target_label = a.target;
  endpoint.max_batch = a.max_batch;
  endpoint.parallelism = a.parallelism;
  endpoint.timeout = std::chrono::milliseconds(a.timeout_ms);
  if (const char* token = std::getenv(kScorerTokenEnv); token && *token) {
    endpoint.bearer_token = token;
  }
  const RunLabel label = ParseRunLabel(a.label);
  const SdMode sd_mode = ParseSdMode(a.sd_mode);

  const std::vector<GenerationRecord> records = LoadGenerations(a.generations);
  std::vector<ScoreCell> cells = ScoreRecords(records, endpoint);

  // Per-system mean and standard deviation over conditions, as reported for
  // multi-condition experiments.
  std::map<std::string, std::vector<ScoreCell>> by_system;
  for (const ScoreCell& c : cells) by_system[c.key.system].push_back(c);
  for (const auto& [system, group] : by_system) {
    if (group.size() > 1) cells.push_back(AggregateConditions(group, sd_mode));
  }

  MetricDescriptor metric = ScorerMetric(endpoint.task);
  metric.condition_order = {"avg"};
  std::map<std::string, std::string> provenance{
      {"generations_sha256", Sha256Hex(ReadFile(a.generations))},
      {"scorer_endpoint", a.endpoint},
      {"scorer_task", a.task},
      {"sd_mode", std::string(ToString(sd_mode))}};
  if (endpoint.target_label) provenance["scorer_target"] = *endpoint.target_label;
  const std::string run_id =
      a.run_id.empty() ? fs::path(a.generations).stem().string() + "-" + a.task
                       : a.run_id;
  const EvaluationRun run(run_id, label, std::move(provenance), {metric},
                          std::move(cells));
  Emit(SerializeRun(run), a.out, out);
  return kExitOk;
}

struct ReportArgs {
  std::string from;
  std::string format = "markdown";
  std::string out;
};

int RunReport(const ReportArgs& a, std::ostream& out) {
  const RenderFormat format = ParseRenderFormat(a.format);
  const std::string text = ReadFile(a.from);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kParse, a.from + ": " + e.what());
  }
  Emit(Render(ReportFromJson(doc), format), a.out, out);
  return kExitOk;
}

}  // namespace

int CliMain(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Quantified reproducibility assessment of paired evaluation runs"};
  app.require_subcommand(1);

  ValidateArgs validate;
  CLI::App* validate_cmd = app.add_subcommand("validate", "Check a run file");
  validate_cmd->add_option("run", validate.run, "Run document (.json or .csv)")
      ->required();
  validate_cmd->add_option("--sidecar", validate.sidecar,
                           "Metadata sidecar for tabular runs");

  AssessArgs assess;
  CLI::App* assess_cmd = app.add_subcommand(
      "assess", "Compare an original and a reproduction run");
  assess_cmd->add_option("--original", assess.original)->required();
  assess_cmd->add_option("--repro", assess.repro)->required();
  CLI::Option* strict = assess_cmd->add_flag("--strict", assess.strict,
                                             "Require identical cell keys (default)");
  assess_cmd->add_flag("--lenient", assess.lenient, "Pair the shared cells only")
      ->excludes(strict);
  assess_cmd->add_option("--epsilon", assess.epsilon, "Tie tolerance for findings")
      ->check(CLI::NonNegativeNumber);
  assess_cmd->add_option("--sd-mode", assess.sd_mode)
      ->check(CLI::IsMember({"sample", "population"}));
  assess_cmd->add_option("--format", assess.format,
                         "markdown, latex, csv or json");
  assess_cmd->add_option("--out", assess.out, "Output file (default stdout)");
  assess_cmd->add_option("--save", assess.save,
                         "Also save the report as JSON for `report --from`");
  assess_cmd->add_option("--labels", assess.labels,
                         "Type III label sets (JSON)");

  DistinctArgs distinct;
  CLI::App* distinct_cmd =
      app.add_subcommand("distinct", "Distinct-n of generated outputs");
  distinct_cmd->add_option("--generations", distinct.generations)->required();
  distinct_cmd->add_option("--n", distinct.orders, "Comma-separated orders");
  distinct_cmd->add_option("--variant", distinct.variant)
      ->check(CLI::IsMember({"paper", "standard"}));
  distinct_cmd->add_option("--tokenizer", distinct.tokenizer)
      ->check(CLI::IsMember({"whitespace", "bpe"}));
  distinct_cmd->add_option("--merges", distinct.merges,
                           "BPE merges file for --tokenizer bpe");
  distinct_cmd->add_flag("--per-condition", distinct.per_condition,
                         "Score each attribute combination separately");
  distinct_cmd->add_option("--format", distinct.format, "text or json");

  ScoreArgs score;
  CLI::App* score_cmd =
      app.add_subcommand("score", "Score generations with an external scorer");
  score_cmd->add_option("--generations", score.generations)->required();
  score_cmd->add_option("--task", score.task)
      ->required()
      ->check(CLI::IsMember({"sentiment", "topic", "toxicity", "perplexity"}));
  score_cmd->add_option("--endpoint", score.endpoint)->required();
  score_cmd->add_option("--target", score.target, "Target label for all records");
  score_cmd->add_option("--max-batch", score.max_batch)->check(CLI::PositiveNumber);
  score_cmd->add_option("--parallelism", score.parallelism)
      ->check(CLI::PositiveNumber);
  score_cmd->add_option("--timeout-ms", score.timeout_ms)
      ->check(CLI::PositiveNumber);
  score_cmd->add_option("--label", score.label)
      ->check(CLI::IsMember({"original", "reproduction"}));
  score_cmd->add_option("--run-id", score.run_id);
  score_cmd->add_option("--sd-mode", score.sd_mode)
      ->check(CLI::IsMember({"sample", "population"}));
  score_cmd->add_option("--out", score.out, "Output run file (default stdout)");

  ReportArgs report;
  CLI::App* report_cmd =
      app.add_subcommand("report", "Re-render a saved JSON report");
  report_cmd->add_option("--from", report.from)->required();
  report_cmd->add_option("--format", report.format);
  report_cmd->add_option("--out", report.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (validate_cmd->parsed()) return RunValidate(validate, out);
    if (assess_cmd->parsed()) return RunAssess(assess, out, err);
    if (distinct_cmd->parsed()) return RunDistinct(distinct, out);
    if (score_cmd->parsed()) return RunScore(score, out);
    if (report_cmd->parsed()) return RunReport(report, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return ExitCodeFor(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitUsage;
}

}  // namespace qra
