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

#ifndef QRA_TEXT_DISTINCT_H_
#define QRA_TEXT_DISTINCT_H_

#include <span>
#include <string>
#include <string_view>

#include "qra/core/model.h"
#include "qra/text/tokenizer.h"

namespace qra {

// kPaperAppendix divides unique n-grams by the pooled token count;
// kStandard divides by the pooled n-gram count.
enum class DistinctVariant { kPaperAppendix, kStandard };

std::string_view ToString(DistinctVariant v);
DistinctVariant ParseDistinctVariant(std::string_view s);

struct DistinctScore {
  std::string system;
  int n = 1;
  // In [0, 1].
  double value = 0.0;
  int prefix_count = 0;
  std::string tokenizer_id;
  DistinctVariant variant = DistinctVariant::kPaperAppendix;
};

// Distinct-n over the pooled outputs of one prefix. N-grams never cross
// output boundaries; outputs shorter than n still add their tokens to the
// paper-appendix denominator. A standard-variant pool with no n-grams
// scores 0.
double PrefixDistinctN(std::span<const std::string> outputs, int n,
                       const Tokenizer& tokenizer, DistinctVariant variant);

// Mean of PrefixDistinctN over the prefixes of one system's records.
DistinctScore SystemDistinctN(std::span<const GenerationRecord> records, int n,
                              const Tokenizer& tokenizer,
                              DistinctVariant variant);

// Mean of the system-level Distinct-1, -2 and -3.
double MultiDistinct(std::span<const GenerationRecord> records,
                     const Tokenizer& tokenizer, DistinctVariant variant);

}  // namespace qra

#endif  // QRA_TEXT_DISTINCT_H_
