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

#ifndef QRA_MEASURES_AGREEMENT_H_
#define QRA_MEASURES_AGREEMENT_H_

#include <optional>
#include <string>
#include <vector>

namespace qra {

// Categorical labels assigned by raters to items. labels[i][r] is the label
// rater r gave item i, or unset when missing.
struct LabelMatrix {
  std::vector<std::string> items;
  std::vector<std::string> raters;
  std::vector<std::vector<std::optional<std::string>>> labels;
  std::vector<std::string> categories;

  // Shape and category membership. Throws Error(kInvariantViolation).
  void Validate() const;
  bool Complete() const;
};

struct KappaResult {
  double value = 0.0;
  // Every label fell into one category, so chance agreement is 1 and the
  // ratio is 0/0. Value is reported as 1.0.
  bool degenerate = false;
};

// Fleiss' kappa. Requires a complete matrix with >= 2 items and >= 2 raters.
KappaResult FleissKappa(const LabelMatrix& m);

enum class AlphaMetric { kNominal };

// Krippendorff's alpha from the coincidence matrix. Items with fewer than two
// labels are not pairable and are skipped. Throws kInsufficientData when the
// expected disagreement is zero.
double KrippendorffAlpha(const LabelMatrix& m,
                         AlphaMetric metric = AlphaMetric::kNominal);

}  // namespace qra

#endif  // QRA_MEASURES_AGREEMENT_H_
