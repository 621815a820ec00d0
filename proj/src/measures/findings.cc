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

#include "qra/measures/findings.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <tuple>

#include "qra/error.h"

namespace qra {

std::string_view ToString(Relation r) {
  switch (r) {
    case Relation::kBetter: return "better";
    case Relation::kTied: return "tied";
    case Relation::kWorse: return "worse";
  }
  return "tied";
}

Relation ParseRelation(std::string_view s) {
  if (s == "better") return Relation::kBetter;
  if (s == "tied") return Relation::kTied;
  if (s == "worse") return Relation::kWorse;
  throw Error(ErrorCode::kSchema, "unknown relation '" + std::string(s) + "'");
}

bool Finding::SameKey(const Finding& other) const {
  return metric == other.metric && condition == other.condition &&
         system_a == other.system_a && system_b == other.system_b;
}

std::vector<Finding> ExtractFindings(const EvaluationRun& run,
                                     const FindingOptions& options) {
  std::vector<std::string> systems = run.Systems();
  if (options.systems) {
    const std::set<std::string> keep(options.systems->begin(),
                                     options.systems->end());
    std::erase_if(systems,
                  [&keep](const std::string& s) { return !keep.contains(s); });
  }

  std::vector<Finding> findings;
  const std::vector<CellKey> keys = run.Keys();
  for (const Column& column : OrderColumns(run, keys)) {
    const MetricDescriptor* metric = run.FindMetric(column.metric);
    const double sign =
        metric->direction == Direction::kHigherBetter ? 1.0 : -1.0;
    for (std::size_t i = 0; i < systems.size(); ++i) {
      const ScoreCell* a =
          run.Find({systems[i], column.metric, column.condition});
      if (a == nullptr) continue;
      for (std::size_t j = i + 1; j < systems.size(); ++j) {
        const ScoreCell* b =
            run.Find({systems[j], column.metric, column.condition});
        if (b == nullptr) continue;
        const double diff = sign * (a->value - b->value);
        Relation relation = Relation::kTied;
        if (std::abs(diff) > options.epsilon) {
          relation = diff > 0.0 ? Relation::kBetter : Relation::kWorse;
        }
        findings.push_back({column.metric, column.condition, systems[i],
                            systems[j], relation});
      }
    }
  }
  if (findings.empty()) {
    throw Error(ErrorCode::kNoComparablePairs,
                "run '" + run.run_id() +
                    "' has no column scored for two or more systems");
  }
  return findings;
}

FindingsReport FindingsUpheld(std::span<const Finding> original,
                              std::span<const Finding> reproduction) {
  using Key = std::tuple<std::string, std::string, std::string, std::string>;
  auto key_of = [](const Finding& f) {
    return Key{f.metric, f.condition, f.system_a, f.system_b};
  };
  std::map<Key, const Finding*> repro_by_key;
  for (const Finding& f : reproduction) {
    if (!repro_by_key.emplace(key_of(f), &f).second) {
      throw Error(ErrorCode::kDuplicateKey,
                  "reproduction finding repeated: " + f.metric + "/" +
                      f.condition + " " + f.system_a + " vs " + f.system_b);
    }
  }
  if (repro_by_key.size() != original.size()) {
    throw Error(ErrorCode::kKeyMismatch,
                "original has " + std::to_string(original.size()) +
                    " findings, reproduction has " +
                    std::to_string(repro_by_key.size()));
  }

  FindingsReport report;
  for (const Finding& f : original) {
    auto it = repro_by_key.find(key_of(f));
    if (it == repro_by_key.end()) {
      throw Error(ErrorCode::kKeyMismatch,
                  "no reproduction finding for " + f.metric + "/" +
                      f.condition + " " + f.system_a + " vs " + f.system_b);
    }
    const bool upheld = it->second->relation == f.relation;
    report.per_finding.push_back({f, *it->second, upheld});
    ++report.total;
    if (upheld) ++report.upheld;
  }
  return report;
}

}  // namespace qra
