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

#ifndef QRA_MEASURES_FINDINGS_H_
#define QRA_MEASURES_FINDINGS_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qra/core/model.h"

namespace qra {

// Relation of system_a to system_b after direction adjustment.
enum class Relation { kBetter, kTied, kWorse };

std::string_view ToString(Relation r);
Relation ParseRelation(std::string_view s);

// One pairwise system ranking on one (metric, condition) column.
// system_a < system_b lexicographically.
struct Finding {
  std::string metric;
  std::string condition;
  std::string system_a;
  std::string system_b;
  Relation relation = Relation::kTied;

  bool SameKey(const Finding& other) const;
};

struct FindingOptions {
  // Absolute differences at or below epsilon count as ties.
  double epsilon = 0.0;
  // Restrict to these systems when set.
  std::optional<std::vector<std::string>> systems;
};

// One Finding per unordered system pair per shared (metric, condition), in
// column order then pair order. Throws kNoComparablePairs when no column has
// two systems.
std::vector<Finding> ExtractFindings(const EvaluationRun& run,
                                     const FindingOptions& options = {});

struct FindingComparison {
  Finding original;
  Finding reproduction;
  bool upheld = false;
};

struct FindingsReport {
  int total = 0;
  int upheld = 0;
  std::vector<FindingComparison> per_finding;

  double proportion() const {
    return total == 0 ? 0.0 : static_cast<double>(upheld) / total;
  }
};

// Pairs findings by (metric, condition, system pair). Both lists must cover
// the same keys (kKeyMismatch otherwise).
FindingsReport FindingsUpheld(std::span<const Finding> original,
                              std::span<const Finding> reproduction);

}  // namespace qra

#endif  // QRA_MEASURES_FINDINGS_H_
