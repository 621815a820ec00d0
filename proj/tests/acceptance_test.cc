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

// Acceptance suite: one PASS/FAIL line per criterion. Exits non-zero when
// any criterion fails.

#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <memory>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "golden.h"
#include "oracles.h"
#include "qra/core/model.h"
#include "qra/error.h"
#include "qra/io/generations_io.h"
#include "qra/io/run_io.h"
#include "qra/io/scorer_client.h"
#include "qra/measures/agreement.h"
#include "qra/measures/correlation.h"
#include "qra/measures/cv_star.h"
#include "qra/measures/findings.h"
#include "qra/measures/study.h"
#include "qra/report/report.h"
#include "qra/text/distinct.h"
#include "qra/util/format.h"
#include "stub_scorer.h"
#include "test_support.h"

namespace qra {
namespace {

using testing::Fixture;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  std::vector<std::string> failed;

  void Check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      failed.push_back(what);
    }
  }
};

PairedStudy Load(const std::string& prefix) {
  return AlignRuns(LoadRun(Fixture(prefix + "_original.json")),
                   LoadRun(Fixture(prefix + "_reproduction.json")),
                   AlignMode::kStrict);
}

bool Within2dp(double computed, double printed) {
  return std::abs(RoundHalfUp(computed, 2) - printed) <= 0.005 + 1e-9;
}

std::string Fmt(double v, int digits) { return FormatFixed(v, digits); }

void SingleGrid(Outcome& o) {
  const ReproReport r = BuildReport(Load("single"));
  const auto& cols = golden::SingleColumns();
  int cells = 0, matched = 0;
  for (const auto& row : golden::SingleCv()) {
    for (std::size_t i = 0; i < cols.size(); ++i) {
      const CvStarResult* c = r.FindCv({row.system, cols[i].first, cols[i].second});
      ++cells;
      if (c != nullptr && Within2dp(c->cv_star, row.values[i])) {
        ++matched;
      } else {
        o.Check(false, row.system + " " + cols[i].first + "/" + cols[i].second);
      }
    }
  }
  int avg_matched = 0;
  for (std::size_t i = 0; i < cols.size(); ++i) {
    const std::string label = Column{cols[i].first, cols[i].second}.Label();
    const double mean = r.MetricMean(label).value_or(-1.0);
    if (Within2dp(mean, golden::SingleAverage()[i])) {
      ++avg_matched;
    } else {
      o.Check(false, "average " + label + " = " + Fmt(mean, 4) +
                         ", expected " + Fmt(golden::SingleAverage()[i], 2));
    }
  }
  o.detail << "cells " << matched << "/" << cells << ", average row "
           << avg_matched << "/" << cols.size() << ", detox average "
           << Fmt(*r.MetricMean("detox"), 2);
}

void MultiGrid(Outcome& o) {
  const ReproReport r = BuildReport(Load("multi"));
  const auto& cols = golden::MultiColumns();
  int matched = 0, cells = 0;
  for (const auto& row : golden::MultiCv()) {
    for (std::size_t i = 0; i < cols.size(); ++i) {
      const CvStarResult* c = r.FindCv({row.system, cols[i].first, cols[i].second});
      const bool deviant = row.system == golden::kDeviantSystem &&
                           cols[i].first == golden::kDeviantMetric;
      if (deviant) {
        const bool ok = c != nullptr && Within2dp(c->cv_star, golden::kDeviantComputed);
        o.Check(ok, "deviant cell");
        if (c != nullptr) {
          o.detail << "known deviation: " << row.system << " ppl = "
                   << Fmt(c->cv_star, 2) << " (printed "
                   << Fmt(row.values[i], 2) << "); ";
        }
        continue;
      }
      ++cells;
      if (c != nullptr && Within2dp(c->cv_star, row.values[i])) {
        ++matched;
      } else {
        o.Check(false, row.system + " " + cols[i].first);
      }
    }
  }
  o.Check(matched == 17, "17 matching cells");
  o.detail << "cells " << matched << "/" << cells << " + 1 flagged";
}

void StudyLevel(Outcome& o) {
  const double single = BuildReport(Load("single")).study_cv;
  const double multi = BuildReport(Load("multi")).study_cv;
  o.Check(std::abs(single - 1.154) <= 0.01, "single-attribute");
  o.Check(std::abs(multi - 1.402) <= 0.01, "multi-attribute");
  o.detail << "single " << Fmt(single, 4) << ", multi " << Fmt(multi, 4);
}

void Findings(Outcome& o) {
  const ReproReport s = BuildReport(Load("single"));
  const ReproReport m = BuildReport(Load("multi"));
  o.Check(s.findings.total == 13 && s.findings.upheld == 13, "single 13/13");
  o.Check(m.findings.total == 18 && m.findings.upheld == 18, "multi 18/18");
  o.detail << "single " << s.findings.upheld << "/" << s.findings.total
           << ", multi " << m.findings.upheld << "/" << m.findings.total;
}

void Correlations(Outcome& o) {
  const ReproReport m = BuildReport(Load("multi"));
  const ReproReport s = BuildReport(Load("single"));
  double sent = std::nan("");
  for (const CorrelationResult& c : m.correlations) {
    if (c.scope == CorrelationScope::kMetricLevel &&
        c.kind == CorrelationKind::kPearson && c.key == "sent") {
      sent = c.coefficient.value_or(std::nan(""));
    }
  }
  const CorrelationSummary* mean =
      m.FindSummary(CorrelationScope::kMetricLevel, CorrelationKind::kPearson);
  const double mean_r = mean && mean->mean ? *mean->mean : std::nan("");
  o.Check(std::abs(sent - 0.969) <= 0.0005, "sentiment r");
  o.Check(std::abs(mean_r - 0.994) <= 0.001, "mean metric-level r");
  double min_system = 1.0;
  int system_count = 0;
  for (const ReproReport* r : {&m, &s}) {
    for (const CorrelationResult& c : r->correlations) {
      if (c.scope == CorrelationScope::kSystemLevel &&
          c.kind == CorrelationKind::kPearson) {
        const double v = c.coefficient.value_or(-2.0);
        min_system = std::min(min_system, v);
        ++system_count;
        o.Check(v > 0.99, "system-level " + c.key);
      }
    }
  }
  o.Check(system_count == 5, "5 system-level coefficients");
  o.detail << "sentiment r " << Fmt(sent, 4) << ", mean metric-level r "
           << Fmt(mean_r, 4) << ", min system-level r " << Fmt(min_system, 4)
           << " over " << system_count;
}

void EstimatorIdentity(Outcome& o) {
  // The n = 2 coefficient is exactly 9 sqrt(pi) / 16 = 0.997005...
  const double k = 9.0 * std::sqrt(std::numbers::pi) / 16.0;
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> u(0.001, 1000.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double a = u(rng), b = u(rng);
    const double general = CvStar(std::vector<double>{a, b}).cv_star;
    const double closed = k * std::abs(a - b) / ((a + b) / 2.0) * 100.0;
    worst = std::max(worst, std::abs(general - closed));
  }
  o.Check(worst <= 1e-9, "max difference " + std::to_string(worst));
  o.detail << "1000 pairs, coefficient " << Fmt(k, 6) << ", max |diff| "
           << worst;
}

void DistinctOracle(Outcome& o) {
  const WhitespaceTokenizer ws;
  std::mt19937 rng(99);
  int comparisons = 0, equal = 0;
  for (int c = 0; c < 100; ++c) {
    const auto corpus = oracle::RandomCorpus(rng);
    std::vector<GenerationRecord> records;
    for (const auto& [prefix, outputs] : corpus) {
      for (std::size_t i = 0; i < outputs.size(); ++i) {
        records.push_back({"sys", {}, prefix, static_cast<int>(i), outputs[i]});
      }
    }
    for (DistinctVariant v :
         {DistinctVariant::kPaperAppendix, DistinctVariant::kStandard}) {
      for (int n = 1; n <= 3; ++n) {
        ++comparisons;
        const double lib = SystemDistinctN(records, n, ws, v).value;
        const double ref = oracle::SystemDistinct(
            corpus, n, v == DistinctVariant::kPaperAppendix);
        equal += lib == ref;
      }
    }
  }
  o.Check(equal == comparisons, "exact equality");
  o.detail << equal << "/" << comparisons << " exactly equal over 100 corpora";
}

LabelMatrix ToMatrix(const oracle::Labels& labels) {
  LabelMatrix m;
  m.labels = labels;
  for (std::size_t i = 0; i < labels.size(); ++i) m.items.push_back(std::to_string(i));
  for (std::size_t r = 0; r < labels[0].size(); ++r) m.raters.push_back(std::to_string(r));
  m.categories = {"A", "B", "C", "D"};
  return m;
}

void Agreement(Outcome& o) {
  const oracle::Labels perfect = {{"A", "A", "A"}, {"B", "B", "B"}, {"C", "C", "C"}};
  o.Check(FleissKappa(ToMatrix(perfect)).value == 1.0, "kappa perfect");
  o.Check(KrippendorffAlpha(ToMatrix(perfect)) == 1.0, "alpha perfect");
  // ((A,B),(B,A)): P = 0, Pe = 1/2 so kappa = -1; Do = 1, De = 2/3 so
  // alpha = -1/2.
  const oracle::Labels flip = {{"A", "B"}, {"B", "A"}};
  o.Check(std::abs(FleissKappa(ToMatrix(flip)).value + 1.0) <= 1e-12, "kappa -1");
  o.Check(std::abs(KrippendorffAlpha(ToMatrix(flip)) + 0.5) <= 1e-12,
          "alpha -0.5");
  std::mt19937 rng(4242);
  std::uniform_int_distribution<int> items(2, 6), raters(2, 5), cats(2, 4);
  int checked = 0;
  double worst = 0.0;
  while (checked < 50) {
    const int k = cats(rng);
    const oracle::Labels m = oracle::RandomLabels(rng, items(rng), raters(rng), k, 0.0);
    const KappaResult kappa = FleissKappa(ToMatrix(m));
    if (kappa.degenerate) continue;
    worst = std::max(worst, std::abs(kappa.value - oracle::FleissKappa(m)));
    worst = std::max(worst, std::abs(KrippendorffAlpha(ToMatrix(m)) -
                                     oracle::KrippendorffAlpha(m)));
    ++checked;
  }
  o.Check(worst <= 1e-9, "random matrices");
  o.detail << "perfect 1.0/1.0, 2x2 flip kappa -1 alpha -0.5, " << checked
           << " random matrices max |diff| " << worst;
}

void Properties(Outcome& o) {
  std::mt19937 rng(777);
  std::uniform_real_distribution<double> u(0.5, 100.0);
  // CV* scale invariance.
  for (int i = 0; i < 200; ++i) {
    std::vector<double> v(2 + i % 5);
    for (double& x : v) x = u(rng);
    const double c = u(rng);
    std::vector<double> s = v;
    for (double& x : s) x *= c;
    const double a = CvStar(v).cv_star, b = CvStar(s).cv_star;
    if (std::abs(a - b) > 1e-9 * std::max(1.0, a)) {
      o.Check(false, "CV* scale invariance");
      break;
    }
  }
  // Correlation bounds and affine behavior.
  for (int i = 0; i < 200; ++i) {
    std::vector<double> x(5), y(5), pos(5), neg(5);
    for (double& v : x) v = u(rng);
    for (double& v : y) v = u(rng);
    const double a = u(rng) / 10.0, b = u(rng) - 50.0;
    for (int k = 0; k < 5; ++k) {
      pos[k] = a * y[k] + b;
      neg[k] = -a * y[k] + b;
    }
    const double r = *Pearson(x, y).coefficient;
    const double s = *Spearman(x, y).coefficient;
    if (r < -1 || r > 1 || s < -1 || s > 1 ||
        std::abs(*Pearson(x, pos).coefficient - r) > 1e-9 ||
        std::abs(*Pearson(x, neg).coefficient + r) > 1e-9) {
      o.Check(false, "correlation bounds/affine");
      break;
    }
  }
  // Findings self-comparison.
  for (const std::string prefix : {"single", "multi"}) {
    const auto f = ExtractFindings(LoadRun(Fixture(prefix + "_original.json")));
    o.Check(FindingsUpheld(f, f).proportion() == 1.0, "findings self " + prefix);
  }
  // Ingestion round trip.
  for (const std::string name :
       {"single_original.json", "single_reproduction.json",
        "multi_original.json", "multi_reproduction.json",
        "single_original.csv", "multi_original.csv"}) {
    const EvaluationRun a = LoadRun(Fixture(name));
    const std::string text = SerializeRun(a);
    const EvaluationRun b = ParseRunJson(text, name);
    o.Check(a.cells() == b.cells() && a.metrics() == b.metrics() &&
                SerializeRun(b) == text,
            "round trip " + name);
  }
  // Batch-size independence against the stub scorer.
  testing::StubScorer stub;
  const auto records = LoadGenerations(Fixture("generations_synthetic.jsonl"));
  ScorerEndpoint ep;
  ep.base_url = stub.url();
  ep.max_batch = 1;
  const auto one = ScoreRecords(records, ep);
  ep.max_batch = 64;
  const auto many = ScoreRecords(records, ep);
  o.Check(one == many, "batch-size independence");
  ep.task = ScorerTask::kPerplexity;
  ep.max_batch = 1;
  const auto p1 = ScoreRecords(records, ep);
  ep.max_batch = 64;
  o.Check(p1 == ScoreRecords(records, ep), "batch-size independence (perplexity)");
  o.detail << "CV* scale, correlation bounds/affine, findings self = 1, "
              "6 round trips, scorer batch 1 vs 64";
}

}  // namespace
}  // namespace qra

int main() {
  using Criterion = std::pair<const char*, std::function<void(qra::Outcome&)>>;
  const std::vector<Criterion> criteria = {
      {"single-attribute CV* grid and average row", qra::SingleGrid},
      {"multi-attribute CV* grid", qra::MultiGrid},
      {"study-level CV*", qra::StudyLevel},
      {"findings upheld", qra::Findings},
      {"correlations", qra::Correlations},
      {"CV* n = 2 closed form", qra::EstimatorIdentity},
      {"distinct-n oracle equivalence", qra::DistinctOracle},
      {"agreement measures", qra::Agreement},
      {"property suites", qra::Properties},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    qra::Outcome o;
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.Check(false, std::string("exception: ") + e.what());
    }
    failures += !o.pass;
    std::string detail = o.detail.str();
    for (const std::string& f : o.failed) detail += "; failed: " + f;
    std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first, detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n",
              static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
