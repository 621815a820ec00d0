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

#ifndef QRA_MEASURES_CORRELATION_H_
#define QRA_MEASURES_CORRELATION_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qra {

enum class CorrelationKind { kPearson, kSpearman };
enum class CorrelationScope { kPairwise, kMetricLevel, kSystemLevel };

std::string_view ToString(CorrelationKind k);
std::string_view ToString(CorrelationScope s);
CorrelationKind ParseCorrelationKind(std::string_view s);
CorrelationScope ParseCorrelationScope(std::string_view s);

struct CorrelationResult {
  CorrelationScope scope = CorrelationScope::kPairwise;
  // Metric column label or system id, depending on scope.
  std::string key;
  CorrelationKind kind = CorrelationKind::kPearson;
  // Unset when either side has zero variance.
  std::optional<double> coefficient;
  int pair_count = 0;

  bool defined() const { return coefficient.has_value(); }
};

// Product-moment correlation. Throws kLengthMismatch / kTooFewValues.
CorrelationResult Pearson(std::span<const double> xs,
                          std::span<const double> ys);

// Pearson correlation of the average ranks of xs and ys.
CorrelationResult Spearman(std::span<const double> xs,
                           std::span<const double> ys);

CorrelationResult Correlate(CorrelationKind kind, std::span<const double> xs,
                            std::span<const double> ys);

// 1-based ranks; tied values share the mean of the ranks they span.
std::vector<double> AverageRanks(std::span<const double> values);

}  // namespace qra

#endif  // QRA_MEASURES_CORRELATION_H_
