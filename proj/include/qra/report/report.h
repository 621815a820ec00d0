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

#ifndef QRA_REPORT_REPORT_H_
#define QRA_REPORT_REPORT_H_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qra/core/model.h"
#include "qra/measures/agreement.h"
#include "qra/measures/correlation.h"
#include "qra/measures/cv_star.h"
#include "qra/measures/findings.h"
#include "qra/measures/study.h"

namespace qra {

inline constexpr int kReportSchemaVersion = 1;

// Display metadata of one result column.
struct ReportColumn {
  Column column;
  std::string label;
  std::string name;
  Direction direction = Direction::kHigherBetter;
  Unit unit = Unit::kPercent;
};

// Original and reproduction scores of one aligned key.
struct PairedValue {
  CellKey key;
  double original = 0.0;
  std::optional<double> original_dispersion;
  double reproduction = 0.0;
  std::optional<double> reproduction_dispersion;
};

// Type III results: a label matrix from the original study and one from the
// reproduction over the same items and categories.
struct LabelSet {
  std::string id;
  LabelMatrix original;
  LabelMatrix reproduction;
};

struct AgreementResult {
  std::string id;
  // Raters of both studies pooled per item.
  std::optional<double> fleiss_kappa;
  bool kappa_degenerate = false;
  std::optional<double> krippendorff_alpha;
  // Why a coefficient is absent (e.g. incomplete matrix for kappa).
  std::vector<std::string> notes;
};

struct ReproReport {
  std::string study_id;
  int paired_keys = 0;
  std::vector<CellKey> dropped_keys;
  std::vector<std::string> systems;
  std::vector<ReportColumn> columns;
  std::vector<PairedValue> pairs;
  std::vector<CvStarResult> cv_cells;
  // Per column label, in column order.
  std::vector<std::pair<std::string, double>> metric_means;
  double study_cv = 0.0;
  std::vector<CorrelationResult> correlations;
  std::vector<CorrelationSummary> correlation_summaries;
  FindingsReport findings;
  std::vector<AgreementResult> agreements;
  std::map<std::string, std::string> provenance;

  const CvStarResult* FindCv(const CellKey& key) const;
  const PairedValue* FindPair(const CellKey& key) const;
  std::optional<double> MetricMean(const std::string& label) const;
  const CorrelationSummary* FindSummary(CorrelationScope scope,
                                        CorrelationKind kind) const;
};

struct ReportOptions {
  double epsilon = 0.0;
  SdMode sd_mode = SdMode::kSample;
  AlignMode align_mode = AlignMode::kStrict;
  CvStarOptions cv;
  std::vector<LabelSet> label_sets;
  // Merged into the report provenance (e.g. input file hashes).
  std::map<std::string, std::string> provenance;
};

// Type I (CV*), Type II (metric- and system-level Pearson and Spearman) and
// Type IV (findings) results for an aligned study, plus Type III agreement
// when label sets are given.
ReproReport BuildReport(const PairedStudy& study,
                        const ReportOptions& options = {});

nlohmann::json ReportToJson(const ReproReport& report);
// Throws kSchema / kParse on malformed input.
ReproReport ReportFromJson(const nlohmann::json& doc);

}  // namespace qra

#endif  // QRA_REPORT_REPORT_H_
