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

#include "qra/measures/cv_star.h"

#include <cmath>
#include <string>
#include <vector>

#include "qra/error.h"

namespace qra {

double C4(int n) {
  if (n < 2) {
    throw Error(ErrorCode::kDomain,
                "c4(n) needs n >= 2, got " + std::to_string(n));
  }
  const double dn = static_cast<double>(n);
  // Ratio of gamma functions through lgamma; exact enough for any n that
  // fits in an int.
  return std::sqrt(2.0 / (dn - 1.0)) *
         std::exp(std::lgamma(dn / 2.0) - std::lgamma((dn - 1.0) / 2.0));
}

CvStarResult CvStar(std::span<const double> values,
                    const CvStarOptions& options) {
  if (values.size() < 2) {
    throw Error(ErrorCode::kTooFewValues,
                "CV* needs at least 2 values, got " +
                    std::to_string(values.size()));
  }
  const double shift = options.scale_minimum.value_or(0.0);
  const double n = static_cast<double>(values.size());

  double sum = 0.0;
  for (double v : values) sum += v - shift;
  const double mean = sum / n;
  if (!(mean > 0.0)) {
    throw Error(ErrorCode::kNonPositiveMean,
                "CV* is undefined for mean " + std::to_string(mean));
  }
  double ss = 0.0;
  for (double v : values) {
    const double d = (v - shift) - mean;
    ss += d * d;
  }
  const double sd = std::sqrt(ss / (n - 1.0));
  const int count = static_cast<int>(values.size());
  const double unbiased_sd = sd / C4(count);

  CvStarResult r;
  r.n = count;
  r.mean = mean;
  r.cv_star = (1.0 + 1.0 / (4.0 * n)) * (unbiased_sd / mean) * 100.0;
  return r;
}

}  // namespace qra
