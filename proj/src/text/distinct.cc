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

#include "qra/text/distinct.h"

#include <map>
#include <unordered_set>
#include <vector>

#include "qra/error.h"

namespace qra {

std::string_view ToString(DistinctVariant v) {
  return v == DistinctVariant::kPaperAppendix ? "paper" : "standard";
}

DistinctVariant ParseDistinctVariant(std::string_view s) {
  if (s == "paper" || s == "paper-appendix") {
    return DistinctVariant::kPaperAppendix;
  }
  if (s == "standard") return DistinctVariant::kStandard;
  throw Error(ErrorCode::kSchema, "unknown distinct variant '" +
                                      std::string(s) + "'");
}

double PrefixDistinctN(std::span<const std::string> outputs, int n,
                       const Tokenizer& tokenizer, DistinctVariant variant) {
  if (outputs.empty()) {
    throw Error(ErrorCode::kEmptyOutputs, "no outputs for prefix");
  }
  if (n < 1) {
    throw Error(ErrorCode::kNonPositiveN,
                "n-gram order must be >= 1, got " + std::to_string(n));
  }
  const std::size_t order = static_cast<std::size_t>(n);
  std::unordered_set<std::string> unique;
  std::size_t tokens = 0;
  std::size_t ngrams = 0;
  for (const std::string& text : outputs) {
    const std::vector<std::string> toks = tokenizer.Tokenize(text);
    tokens += toks.size();
    if (toks.size() < order) continue;
    for (std::size_t i = 0; i + order <= toks.size(); ++i) {
      std::string gram = toks[i];
      for (std::size_t k = 1; k < order; ++k) {
        gram += '\x1f';
        gram += toks[i + k];
      }
      unique.insert(std::move(gram));
      ++ngrams;
    }
  }
  const std::size_t denominator =
      variant == DistinctVariant::kPaperAppendix ? tokens : ngrams;
  if (denominator == 0) return 0.0;
  return static_cast<double>(unique.size()) / static_cast<double>(denominator);
}

DistinctScore SystemDistinctN(std::span<const GenerationRecord> records, int n,
                              const Tokenizer& tokenizer,
                              DistinctVariant variant) {
  if (records.empty()) {
    throw Error(ErrorCode::kEmptyOutputs, "no generation records");
  }
  std::map<std::string, std::vector<std::string>> by_prefix;
  for (const GenerationRecord& r : records) {
    if (r.system != records[0].system) {
      throw Error(ErrorCode::kMixedKeys, "records mix systems '" +
                                             records[0].system + "' and '" +
                                             r.system + "'");
    }
    by_prefix[r.prefix_id].push_back(r.text);
  }
  double sum = 0.0;
  for (const auto& [prefix, outputs] : by_prefix) {
    sum += PrefixDistinctN(outputs, n, tokenizer, variant);
  }
  DistinctScore score;
  score.system = records[0].system;
  score.n = n;
  score.value = sum / static_cast<double>(by_prefix.size());
  score.prefix_count = static_cast<int>(by_prefix.size());
  score.tokenizer_id = tokenizer.id();
  score.variant = variant;
  return score;
}

double MultiDistinct(std::span<const GenerationRecord> records,
                     const Tokenizer& tokenizer, DistinctVariant variant) {
  double sum = 0.0;
  for (int n = 1; n <= 3; ++n) {
    sum += SystemDistinctN(records, n, tokenizer, variant).value;
  }
  return sum / 3.0;
}

}  // namespace qra
