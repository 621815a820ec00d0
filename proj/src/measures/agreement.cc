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

#include "qra/measures/agreement.h"

#include <algorithm>
#include <map>
#include <set>

#include "qra/error.h"

namespace qra {

void LabelMatrix::Validate() const {
  if (labels.size() != items.size()) {
    throw Error(ErrorCode::kInvariantViolation,
                "label matrix has " + std::to_string(labels.size()) +
                    " rows for " + std::to_string(items.size()) + " items");
  }
  const std::set<std::string> known(categories.begin(), categories.end());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i].size() != raters.size()) {
      throw Error(ErrorCode::kInvariantViolation,
                  "item '" + items[i] + "' has " +
                      std::to_string(labels[i].size()) + " labels for " +
                      std::to_string(raters.size()) + " raters");
    }
    for (std::size_t r = 0; r < labels[i].size(); ++r) {
      if (labels[i][r] && !known.contains(*labels[i][r])) {
        throw Error(ErrorCode::kInvariantViolation,
                    "item '" + items[i] + "', rater '" + raters[r] +
                        "': label '" + *labels[i][r] +
                        "' is not a declared category");
      }
    }
  }
}

bool LabelMatrix::Complete() const {
  return std::all_of(labels.begin(), labels.end(), [](const auto& row) {
    return std::all_of(row.begin(), row.end(),
                       [](const auto& l) { return l.has_value(); });
  });
}

KappaResult FleissKappa(const LabelMatrix& m) {
  m.Validate();
  if (m.items.size() < 2 || m.raters.size() < 2) {
    throw Error(ErrorCode::kInsufficientData,
                "Fleiss' kappa needs >= 2 items and >= 2 raters");
  }
  if (!m.Complete()) {
    throw Error(ErrorCode::kIncompleteMatrix,
                "Fleiss' kappa needs every rater to label every item");
  }

  const double raters = static_cast<double>(m.raters.size());
  const double items = static_cast<double>(m.items.size());
  std::map<std::string, double> category_totals;
  double p_bar = 0.0;
  for (const auto& row : m.labels) {
    std::map<std::string, double> counts;
    for (const auto& label : row) counts[*label] += 1.0;
    double agreeing = 0.0;
    for (const auto& [category, n] : counts) {
      agreeing += n * (n - 1.0);
      category_totals[category] += n;
    }
    p_bar += agreeing / (raters * (raters - 1.0));
  }
  p_bar /= items;

  double p_e = 0.0;
  for (const auto& [category, total] : category_totals) {
    const double p = total / (items * raters);
    p_e += p * p;
  }

  if (p_e >= 1.0) return {1.0, true};
  if (p_bar >= 1.0) return {1.0, false};
  return {(p_bar - p_e) / (1.0 - p_e), false};
}

double KrippendorffAlpha(const LabelMatrix& m, AlphaMetric /*metric*/) {
  m.Validate();
  const std::size_t k = m.categories.size();
  std::map<std::string, std::size_t> index;
  for (std::size_t c = 0; c < k; ++c) index[m.categories[c]] = c;

  // coincidences[c][d]: pairable (c, d) value pairs, each unit weighted by
  // 1 / (m_u - 1).
  std::vector<std::vector<double>> coincidences(k, std::vector<double>(k, 0.0));
  for (const auto& row : m.labels) {
    std::vector<double> counts(k, 0.0);
    double m_u = 0.0;
    for (const auto& label : row) {
      if (!label) continue;
      counts[index.at(*label)] += 1.0;
      m_u += 1.0;
    }
    if (m_u < 2.0) continue;
    for (std::size_t c = 0; c < k; ++c) {
      for (std::size_t d = 0; d < k; ++d) {
        const double pairs = c == d ? counts[c] * (counts[c] - 1.0)
                                    : counts[c] * counts[d];
        coincidences[c][d] += pairs / (m_u - 1.0);
      }
    }
  }

  std::vector<double> marginals(k, 0.0);
  double n = 0.0;
  for (std::size_t c = 0; c < k; ++c) {
    for (std::size_t d = 0; d < k; ++d) marginals[c] += coincidences[c][d];
    n += marginals[c];
  }
  if (n < 2.0) {
    throw Error(ErrorCode::kInsufficientData,
                "Krippendorff's alpha needs at least 2 pairable labels");
  }

  double observed = 0.0, expected = 0.0;
  for (std::size_t c = 0; c < k; ++c) {
    for (std::size_t d = 0; d < k; ++d) {
      if (c == d) continue;
      observed += coincidences[c][d];
      expected += marginals[c] * marginals[d];
    }
  }
  observed /= n;
  expected /= n * (n - 1.0);
  if (expected <= 0.0) {
    throw Error(ErrorCode::kInsufficientData,
                "expected disagreement is zero (a single category is used)");
  }
  return 1.0 - observed / expected;
}

}  // namespace qra
