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

#ifndef QRA_MEASURES_CV_STAR_H_
#define QRA_MEASURES_CV_STAR_H_

#include <optional>
#include <span>
#include <string_view>

#include "qra/core/model.h"

namespace qra {

// Identifier of the estimator below, embedded in report provenance.
inline constexpr std::string_view kCvStarFormulaId =
    "cv*=(1+1/(4n))*(s_{n-1}/c4(n))/mean*100";

// Bias-correction constant for the sample standard deviation under
// normality: c4(n) = sqrt(2/(n-1)) * Gamma(n/2) / Gamma((n-1)/2).
// Throws Error(kDomain) for n < 2.
double C4(int n);

struct CvStarOptions {
  // When set, values are shifted by -scale_minimum before computing, so that
  // the scale's minimum maps to zero. Never applied unless requested.
  std::optional<double> scale_minimum;
};

struct CvStarResult {
  CellKey key;
  int n = 0;
  double mean = 0.0;
  // Percentage.
  double cv_star = 0.0;
};

// Small-sample coefficient of variation of `values`, as a percentage:
// (1 + 1/(4n)) * (s / c4(n)) / mean * 100 with s the n-1 sample standard
// deviation. Requires n >= 2 and a positive mean.
CvStarResult CvStar(std::span<const double> values,
                    const CvStarOptions& options = {});

}  // namespace qra

#endif  // QRA_MEASURES_CV_STAR_H_
