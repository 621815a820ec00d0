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

#include "qra/measures/correlation.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qra/error.h"

namespace qra {

std::string_view ToString(CorrelationKind k) {
  return k == CorrelationKind::kPearson ? "pearson" : "spearman";
}

std::string_view ToString(CorrelationScope s) {
  switch (s) {
    case CorrelationScope::kPairwise: return "pairwise";
    case CorrelationScope::kMetricLevel: return "metric-level";
    case CorrelationScope::kSystemLevel: return "system-level";
  }
  return "pairwise";
}

CorrelationKind ParseCorrelationKind(std::string_view s) {
  if (s == "pearson") return CorrelationKind::kPearson;
  if (s == "spearman") return CorrelationKind::kSpearman;
  throw Error(ErrorCode::kSchema, "unknown correlation kind '" +
                                      std::string(s) + "'");
}

CorrelationScope ParseCorrelationScope(std::string_view s) {
  if (s == "pairwise") return CorrelationScope::kPairwise;
  if (s == "metric-level") return CorrelationScope::kMetricLevel;
  if (s == "system-level") return CorrelationScope::kSystemLevel;
  throw Error(ErrorCode::kSchema, "unknown correlation scope '" +
                                      std::string(s) + "'");
}

namespace {

void CheckPair(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                "correlation inputs have lengths " + std::to_string(xs.size()) +
                    " and " + std::to_string(ys.size()));
  }
  if (xs.size() < 2) {
    throw Error(ErrorCode::kTooFewValues,
                "correlation needs at least 2 pairs, got " +
                    std::to_string(xs.size()));
  }
}

double Mean(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0) /
         static_cast<double>(v.size());
}

}  // namespace

CorrelationResult Pearson(std::span<const double> xs,
                          std::span<const double> ys) {
  CheckPair(xs, ys);
  const double mx = Mean(xs);
  const double my = Mean(ys);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  CorrelationResult r;
  r.kind = CorrelationKind::kPearson;
  r.pair_count = static_cast<int>(xs.size());
  if (sxx > 0.0 && syy > 0.0) {
    r.coefficient = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  }
  return r;
}

std::vector<double> AverageRanks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return values[a] < values[b];
  });
  std::vector<double> ranks(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    // Positions i..j (0-based) hold ranks i+1..j+1.
    const double rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

CorrelationResult Spearman(std::span<const double> xs,
                           std::span<const double> ys) {
  CheckPair(xs, ys);
  const std::vector<double> rx = AverageRanks(xs);
  const std::vector<double> ry = AverageRanks(ys);
  CorrelationResult r = Pearson(rx, ry);
  r.kind = CorrelationKind::kSpearman;
  return r;
}

CorrelationResult Correlate(CorrelationKind kind, std::span<const double> xs,
                            std::span<const double> ys) {
  return kind == CorrelationKind::kPearson ? Pearson(xs, ys) : Spearman(xs, ys);
}

}  // namespace qra
