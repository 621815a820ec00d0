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

#include "qra/measures/study.h"

#include <numeric>

#include "qra/error.h"

namespace qra {

std::vector<MetricCv> MetricLevelCv(const PairedStudy& study,
                                    const CvStarOptions& options) {
  std::vector<MetricCv> out;
  const std::vector<std::string> systems = study.Systems();
  for (const Column& column : study.Columns()) {
    MetricCv metric{column, {}, 0.0};
    for (const std::string& system : systems) {
      const CellKey key{system, column.metric, column.condition};
      const ScoreCell* a = study.original.Find(key);
      const ScoreCell* b = study.reproduction.Find(key);
      if (a == nullptr || b == nullptr) continue;
      const double values[] = {a->value, b->value};
      CvStarResult r;
      try {
        r = CvStar(values, options);
      } catch (const Error& e) {
        throw Error(e.code(), key.ToString() + ": " + e.what());
      }
      r.key = key;
      metric.mean += r.cv_star;
      metric.cells.push_back(std::move(r));
    }
    metric.mean /= static_cast<double>(metric.cells.size());
    out.push_back(std::move(metric));
  }
  return out;
}

double StudyLevelCv(std::span<const double> metric_means) {
  if (metric_means.empty()) {
    throw Error(ErrorCode::kEmptyInput, "no metric-level means");
  }
  return std::accumulate(metric_means.begin(), metric_means.end(), 0.0) /
         static_cast<double>(metric_means.size());
}

CorrelationResult SystemLevelCorrelation(const PairedStudy& study,
                                         const std::string& system,
                                         CorrelationKind kind) {
  std::vector<double> xs, ys;
  for (const Column& column : study.Columns()) {
    const CellKey key{system, column.metric, column.condition};
    const ScoreCell* a = study.original.Find(key);
    const ScoreCell* b = study.reproduction.Find(key);
    if (a == nullptr || b == nullptr) continue;
    xs.push_back(a->value);
    ys.push_back(b->value);
  }
  if (xs.size() < 2) {
    throw Error(ErrorCode::kTooFewValues,
                "system '" + system + "' has " + std::to_string(xs.size()) +
                    " aligned cells, need 2");
  }
  CorrelationResult r = Correlate(kind, xs, ys);
  r.scope = CorrelationScope::kSystemLevel;
  r.key = system;
  return r;
}

CorrelationResult MetricLevelCorrelation(const PairedStudy& study,
                                         const Column& column,
                                         CorrelationKind kind) {
  std::vector<double> xs, ys;
  for (const std::string& system : study.Systems()) {
    const CellKey key{system, column.metric, column.condition};
    const ScoreCell* a = study.original.Find(key);
    const ScoreCell* b = study.reproduction.Find(key);
    if (a == nullptr || b == nullptr) continue;
    xs.push_back(a->value);
    ys.push_back(b->value);
  }
  if (xs.size() < 2) {
    throw Error(ErrorCode::kTooFewValues,
                "column '" + column.Label() + "' has " +
                    std::to_string(xs.size()) + " aligned systems, need 2");
  }
  CorrelationResult r = Correlate(kind, xs, ys);
  r.scope = CorrelationScope::kMetricLevel;
  r.key = column.Label();
  return r;
}

CorrelationSummary Summarize(std::span<const CorrelationResult> results,
                             CorrelationScope scope, CorrelationKind kind) {
  CorrelationSummary s{scope, kind, std::nullopt, 0, 0};
  double sum = 0.0;
  for (const CorrelationResult& r : results) {
    if (r.scope != scope || r.kind != kind) continue;
    if (r.defined()) {
      sum += *r.coefficient;
      ++s.defined_count;
    } else {
      ++s.excluded_count;
    }
  }
  if (s.defined_count > 0) s.mean = sum / s.defined_count;
  return s;
}

}  // namespace qra
