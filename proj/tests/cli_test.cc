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

#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "json.hpp"
#include "qra/io/run_io.h"
#include "qra/util/format.h"
#include "stub_scorer.h"
#include "test_support.h"

namespace qra {
namespace {

namespace fs = std::filesystem;
using testing::Fixture;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result Qra(std::vector<std::string> args) {
  args.insert(args.begin(), "qra");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = CliMain(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("qra_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string Path(const std::string& name) const {
    return (dir_ / name).string();
  }
  fs::path dir_;
};

TEST_F(CliTest, ValidateFixture) {
  const Result r = Qra({"validate", Fixture("single_original.json").string()});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("26"), std::string::npos) << r.out;
  EXPECT_EQ(Qra({"validate", Fixture("multi_original.csv").string()}).code,
            kExitOk);
}

TEST_F(CliTest, ValidateErrors) {
  WriteFile(Path("bad.json"), "{\"schema_version\": 1,");
  Result r = Qra({"validate", Path("bad.json")});
  EXPECT_EQ(r.code, kExitValidation);
  EXPECT_NE(r.err.find("bad.json"), std::string::npos) << r.err;
  r = Qra({"validate", Path("missing.json")});
  EXPECT_EQ(r.code, kExitIo);
  EXPECT_EQ(Qra({"validate"}).code, kExitUsage);
  EXPECT_EQ(Qra({"frobnicate"}).code, kExitUsage);
}

TEST_F(CliTest, AssessSingleAttribute) {
  const Result r = Qra({"assess", "--original",
                        Fixture("single_original.json").string(), "--repro",
                        Fixture("single_reproduction.json").string()});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("13/13"), std::string::npos);
  EXPECT_NE(r.out.find("5.44"), std::string::npos);
}

TEST_F(CliTest, AssessSaveAndReport) {
  const Result r = Qra({"assess", "--original",
                        Fixture("multi_original.json").string(), "--repro",
                        Fixture("multi_reproduction.json").string(),
                        "--format", "csv", "--out", Path("cv.csv"), "--save",
                        Path("report.json")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(ReadFile(Path("cv.csv")).starts_with("system,avg,sent,"));
  const auto saved = nlohmann::json::parse(ReadFile(Path("report.json")));
  EXPECT_EQ(saved["provenance"]["original_sha256"],
            Sha256Hex(ReadFile(Fixture("multi_original.json"))));

  const Result md = Qra({"report", "--from", Path("report.json"), "--format",
                         "markdown"});
  EXPECT_EQ(md.code, kExitOk) << md.err;
  EXPECT_NE(md.out.find("18/18"), std::string::npos);
  const Result csv =
      Qra({"report", "--from", Path("report.json"), "--format", "csv"});
  EXPECT_EQ(csv.out, ReadFile(Path("cv.csv")));
  EXPECT_EQ(Qra({"report", "--from", Path("report.json"), "--format", "docx"})
                .code,
            kExitUsage);
}

TEST_F(CliTest, AssessDescriptorMismatch) {
  std::string text = ReadFile(Fixture("multi_reproduction.json"));
  const std::string from = "\"direction\": \"lower\"";
  ASSERT_NE(text.find(from), std::string::npos);
  text.replace(text.find(from), from.size(), "\"direction\": \"higher\"");
  WriteFile(Path("flipped.json"), text);
  const Result r = Qra({"assess", "--original",
                        Fixture("multi_original.json").string(), "--repro",
                        Path("flipped.json")});
  EXPECT_EQ(r.code, kExitValidation);
  EXPECT_NE(r.err.find("DescriptorMismatch"), std::string::npos) << r.err;
}

TEST_F(CliTest, AssessStrictVersusLenient) {
  const EvaluationRun p = LoadRun(Fixture("multi_reproduction.json"));
  std::vector<ScoreCell> cells = p.cells();
  cells.pop_back();
  WriteFile(Path("partial.json"),
            SerializeRun(EvaluationRun(p.run_id(), p.label(), p.provenance(),
                                       p.metrics(), cells)));
  const std::vector<std::string> base = {
      "assess", "--original", Fixture("multi_original.json").string(),
      "--repro", Path("partial.json")};
  Result r = Qra(base);
  EXPECT_EQ(r.code, kExitValidation);
  EXPECT_NE(r.err.find("KeyMismatch"), std::string::npos) << r.err;
  std::vector<std::string> lenient = base;
  lenient.push_back("--lenient");
  r = Qra(lenient);
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("dropped: 1"), std::string::npos) << r.out;
}

TEST_F(CliTest, DistinctOnSyntheticCorpus) {
  const Result r = Qra({"distinct", "--generations",
                        Fixture("generations_synthetic.jsonl").string(),
                        "--format", "json"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  ASSERT_EQ(doc["scores"].size(), 3u);
  for (const auto& s : doc["scores"]) {
    EXPECT_GE(s["value"].get<double>(), 0.0);
    EXPECT_LE(s["value"].get<double>(), 1.0);
    EXPECT_EQ(s["prefix_count"], 35);
  }
  EXPECT_EQ(doc["tokenizer"], "whitespace");
  EXPECT_EQ(doc["variant"], "paper");
  EXPECT_EQ(Qra({"distinct", "--generations",
                 Fixture("generations_synthetic.jsonl").string(), "--variant",
                 "nope"})
                .code,
            kExitUsage);
}

TEST_F(CliTest, ScoreAgainstStubServer) {
  testing::StubScorer stub(testing::StubScorer::Mode::kAllTarget);
  const Result r = Qra({"score", "--generations",
                        Fixture("generations_synthetic.jsonl").string(),
                        "--task", "sentiment", "--endpoint", stub.url(),
                        "--max-batch", "40", "--out", Path("scored.json")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const EvaluationRun run = LoadRun(Path("scored.json"));
  ASSERT_EQ(run.cells().size(), 1u);
  EXPECT_EQ(run.cells()[0].value, 100.0);
  EXPECT_EQ(run.cells()[0].n_basis, 175);
  EXPECT_EQ(run.provenance().at("scorer_task"), "sentiment");
}

TEST_F(CliTest, ScoreUnreachableEndpoint) {
  const Result r = Qra({"score", "--generations",
                        Fixture("generations_synthetic.jsonl").string(),
                        "--task", "perplexity", "--endpoint",
                        "http://127.0.0.1:1/score", "--timeout-ms", "300"});
  EXPECT_EQ(r.code, kExitIo);
  EXPECT_NE(r.err.find("Network"), std::string::npos) << r.err;
}

}  // namespace
}  // namespace qra
