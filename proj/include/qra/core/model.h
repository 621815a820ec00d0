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

#ifndef QRA_CORE_MODEL_H_
#define QRA_CORE_MODEL_H_

#include <compare>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qra {

// Condition used for scores that are reported once per system (e.g.
// perplexity, distinct-n).
inline constexpr std::string_view kOverallCondition = "overall";

enum class Direction { kHigherBetter, kLowerBetter };
enum class Unit { kPercent, kRaw };
enum class ResultType { kTypeI, kTypeII, kTypeIII, kTypeIVSource };
enum class RunLabel { kOriginal, kReproduction };
enum class SdMode { kSample, kPopulation };
enum class AlignMode { kStrict, kLenient };

std::string_view ToString(Direction d);
std::string_view ToString(Unit u);
std::string_view ToString(ResultType t);
std::string_view ToString(RunLabel l);
std::string_view ToString(SdMode m);
std::string_view ToString(AlignMode m);

// Parsers accept the serialized names above. They throw Error(kSchema).
Direction ParseDirection(std::string_view s);
Unit ParseUnit(std::string_view s);
ResultType ParseResultType(std::string_view s);
RunLabel ParseRunLabel(std::string_view s);
SdMode ParseSdMode(std::string_view s);

struct MetricDescriptor {
  std::string id;
  std::string name;
  Direction direction = Direction::kHigherBetter;
  Unit unit = Unit::kPercent;
  ResultType result_type = ResultType::kTypeI;
  // Display order of this metric's conditions. Conditions not listed sort
  // lexicographically after the listed ones.
  std::vector<std::string> condition_order;

  bool operator==(const MetricDescriptor&) const = default;
};

struct CellKey {
  std::string system;
  std::string metric;
  std::string condition;

  auto operator<=>(const CellKey&) const = default;
  std::string ToString() const;
};

struct ScoreCell {
  CellKey key;
  double value = 0.0;
  std::optional<double> dispersion;
  std::optional<int> n_basis;

  bool operator==(const ScoreCell&) const = default;
};

// A (metric, condition) pair: one column of a side-by-side results table.
struct Column {
  std::string metric;
  std::string condition;

  auto operator<=>(const Column&) const = default;
  // "sent_pos" for metric "sent" and condition "pos"; just the metric id for
  // the overall condition.
  std::string Label() const;
};

// One labelled set of scores. Immutable once constructed; the constructor
// enforces every run invariant and throws Error on violation.
class EvaluationRun {
 public:
  EvaluationRun(std::string run_id, RunLabel label,
                std::map<std::string, std::string> provenance,
                std::vector<MetricDescriptor> metrics,
                std::vector<ScoreCell> cells);

  const std::string& run_id() const { return run_id_; }
  RunLabel label() const { return label_; }
  const std::map<std::string, std::string>& provenance() const {
    return provenance_;
  }
  const std::vector<MetricDescriptor>& metrics() const { return metrics_; }
  const std::vector<ScoreCell>& cells() const { return cells_; }

  const ScoreCell* Find(const CellKey& key) const;
  const MetricDescriptor* FindMetric(std::string_view id) const;

  // Sorted, unique.
  std::vector<std::string> Systems() const;
  std::vector<CellKey> Keys() const;

  // Copy of this run restricted to `keys` (which must all resolve).
  EvaluationRun Subset(std::span<const CellKey> keys) const;

 private:
  std::string run_id_;
  RunLabel label_;
  std::map<std::string, std::string> provenance_;
  std::vector<MetricDescriptor> metrics_;
  std::vector<ScoreCell> cells_;
  std::map<CellKey, std::size_t> index_;
};

// Canonical column order for a run: metric descriptor order, then each
// descriptor's condition_order, then lexicographic. Only columns that occur
// in `keys` are returned.
std::vector<Column> OrderColumns(const EvaluationRun& run,
                                 std::span<const CellKey> keys);

struct PairedStudy {
  EvaluationRun original;
  EvaluationRun reproduction;
  // Sorted.
  std::vector<CellKey> aligned_keys;
  // Keys present in only one run (lenient alignment only).
  std::vector<CellKey> dropped_keys;

  std::vector<std::string> Systems() const;
  std::vector<Column> Columns() const;
};

PairedStudy AlignRuns(const EvaluationRun& original,
                      const EvaluationRun& reproduction, AlignMode mode);

// Mean over conditions for one system and metric, with standard deviation
// as the dispersion. In sample mode a single input leaves the dispersion
// unset (undefined).
ScoreCell AggregateConditions(std::span<const ScoreCell> cells, SdMode sd_mode,
                              std::string condition = "avg");

struct GenerationRecord {
  std::string system;
  std::map<std::string, std::string> attributes;
  std::string prefix_id;
  int repetition = 0;
  std::string text;

  bool operator==(const GenerationRecord&) const = default;
};

// "sentiment=positive;topic=world" with attribute names sorted, or the
// overall condition when there are no attributes.
std::string ConditionId(const std::map<std::string, std::string>& attributes);

}  // namespace qra

#endif  // QRA_CORE_MODEL_H_
