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

#include "qra/measures/findings.h"

#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "qra/error.h"
#include "qra/io/run_io.h"
#include "test_support.h"

namespace qra {
namespace {

using testing::Cell;
using testing::Fixture;
using testing::MakeRun;
using testing::Metric;

const Finding* FindColumn(const std::vector<Finding>& fs,
                          const std::string& metric,
                          const std::string& condition) {
  for (const Finding& f : fs) {
    if (f.metric == metric && f.condition == condition) return &f;
  }
  return nullptr;
}

TEST(ExtractFindingsTest, SingleAttributeOriginal) {
  const std::vector<Finding> fs =
      ExtractFindings(LoadRun(Fixture("single_original.json")));
  ASSERT_EQ(fs.size(), 13u);
  const Finding* pos = FindColumn(fs, "sent", "pos");
  ASSERT_NE(pos, nullptr);
  EXPECT_EQ(pos->relation, Relation::kTied);
  // Perplexity is lower-better: 61 beats 61.6.
  const Finding* ppl = FindColumn(fs, "ppl", "overall");
  ASSERT_NE(ppl, nullptr);
  EXPECT_EQ(ppl->system_a, "PriorCTG");
  EXPECT_EQ(ppl->system_b, "PriorCTG+extend");
  EXPECT_EQ(ppl->relation, Relation::kBetter);
  EXPECT_EQ(FindColumn(fs, "dist2", "overall")->relation, Relation::kBetter);
  EXPECT_EQ(FindColumn(fs, "detox", "overall")->relation, Relation::kWorse);
}

TEST(ExtractFindingsTest, SingleSystemHasNoPairs) {
  const EvaluationRun run = MakeRun("r", RunLabel::kOriginal, {Metric("m")},
                                    {Cell("A", "m", 1.0)});
  try {
    ExtractFindings(run);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNoComparablePairs);
  }
}

TEST(ExtractFindingsTest, EpsilonTies) {
  const EvaluationRun run =
      MakeRun("r", RunLabel::kOriginal, {Metric("m")},
              {Cell("A", "m", 1.0), Cell("B", "m", 1.04)});
  EXPECT_EQ(ExtractFindings(run)[0].relation, Relation::kWorse);
  FindingOptions opts;
  opts.epsilon = 0.05;
  EXPECT_EQ(ExtractFindings(run, opts)[0].relation, Relation::kTied);
}

TEST(ExtractFindingsTest, SystemFilter) {
  FindingOptions opts;
  opts.systems = std::vector<std::string>{"MultiCTG", "PriorCTG"};
  EXPECT_EQ(ExtractFindings(LoadRun(Fixture("multi_original.json")), opts).size(),
            6u);
}

TEST(ExtractFindingsPropertyTest, Antisymmetric) {
  std::mt19937 rng(31);
  std::uniform_int_distribution<int> v(0, 4);
  for (int i = 0; i < 100; ++i) {
    const double a = v(rng), b = v(rng);
    const Direction d = i % 2 ? Direction::kHigherBetter : Direction::kLowerBetter;
    const auto ab = ExtractFindings(MakeRun(
        "r", RunLabel::kOriginal, {Metric("m", d)},
        {Cell("A", "m", a), Cell("B", "m", b)}));
    // Renaming swaps which system sorts first.
    const auto ba = ExtractFindings(MakeRun(
        "r", RunLabel::kOriginal, {Metric("m", d)},
        {Cell("B", "m", a), Cell("A", "m", b)}));
    const Relation x = ab[0].relation, y = ba[0].relation;
    if (x == Relation::kTied) {
      EXPECT_EQ(y, Relation::kTied);
    } else {
      EXPECT_EQ(y, x == Relation::kBetter ? Relation::kWorse : Relation::kBetter);
    }
  }
}

TEST(FindingsUpheldTest, Fixtures) {
  auto check = [](const std::string& prefix, int expected) {
    const auto o = ExtractFindings(LoadRun(Fixture(prefix + "_original.json")));
    const auto r =
        ExtractFindings(LoadRun(Fixture(prefix + "_reproduction.json")));
    const FindingsReport report = FindingsUpheld(o, r);
    EXPECT_EQ(report.total, expected);
    EXPECT_EQ(report.upheld, expected);
    EXPECT_DOUBLE_EQ(report.proportion(), 1.0);
  };
  check("single", 13);
  check("multi", 18);
}

TEST(FindingsUpheldTest, FlippedFinding) {
  const Finding better{"m", "overall", "A", "B", Relation::kBetter};
  Finding worse = better;
  worse.relation = Relation::kWorse;
  const FindingsReport r = FindingsUpheld(std::vector<Finding>{better},
                                          std::vector<Finding>{worse});
  EXPECT_EQ(r.total, 1);
  EXPECT_EQ(r.upheld, 0);
  EXPECT_DOUBLE_EQ(r.proportion(), 0.0);
}

TEST(FindingsUpheldTest, KeyMismatchAndDuplicate) {
  const Finding f{"m", "overall", "A", "B", Relation::kBetter};
  Finding g = f;
  g.metric = "n";
  try {
    FindingsUpheld(std::vector<Finding>{f}, std::vector<Finding>{g});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kKeyMismatch);
  }
  try {
    FindingsUpheld(std::vector<Finding>{f, f}, std::vector<Finding>{f, f});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDuplicateKey);
  }
}

TEST(FindingsUpheldPropertyTest, SelfComparisonIsOne) {
  std::mt19937 rng(37);
  std::uniform_int_distribution<int> rel(0, 2), count(1, 20);
  for (int i = 0; i < 50; ++i) {
    std::vector<Finding> fs;
    const int n = count(rng);
    for (int k = 0; k < n; ++k) {
      fs.push_back({"m" + std::to_string(k), "overall", "A", "B",
                    static_cast<Relation>(rel(rng))});
    }
    EXPECT_DOUBLE_EQ(FindingsUpheld(fs, fs).proportion(), 1.0);
  }
}

}  // namespace
}  // namespace qra
