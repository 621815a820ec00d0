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

#ifndef QRA_MEASURES_STUDY_H_
#define QRA_MEASURES_STUDY_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qra/core/model.h"
#include "qra/measures/correlation.h"
#include "qra/measures/cv_star.h"

namespace qra {

// CV* cells of one result column, one per system, and their mean.
struct MetricCv {
  Column column;
  std::vector<CvStarResult> cells;
  double mean = 0.0;
};

// CV* for every aligned key, grouped by column in canonical column order.
std::vector<MetricCv> MetricLevelCv(const PairedStudy& study,
                                    const CvStarOptions& options = {});

// Mean of metric-level means. Throws kEmptyInput.
double StudyLevelCv(std::span<const double> metric_means);

// Correlation across all aligned columns of one system.
CorrelationResult SystemLevelCorrelation(
    const PairedStudy& study, const std::string& system,
    CorrelationKind kind = CorrelationKind::kPearson);

// Correlation across systems for one column.
CorrelationResult MetricLevelCorrelation(
    const PairedStudy& study, const Column& column,
    CorrelationKind kind = CorrelationKind::kPearson);

struct CorrelationSummary {
  CorrelationScope scope = CorrelationScope::kMetricLevel;
  CorrelationKind kind = CorrelationKind::kPearson;
  // Mean over defined coefficients; unset when none are defined.
  std::optional<double> mean;
  int defined_count = 0;
  int excluded_count = 0;
};

// Summarises results of one scope and kind; undefined ones are excluded
// from the mean and counted.
CorrelationSummary Summarize(std::span<const CorrelationResult> results,
                             CorrelationScope scope, CorrelationKind kind);

}  // namespace qra

#endif  // QRA_MEASURES_STUDY_H_
