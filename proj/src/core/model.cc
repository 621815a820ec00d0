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

#include "qra/core/model.h"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <set>
#include <sstream>
#include <utility>

#include "qra/error.h"

namespace qra {

std::string_view ToString(Direction d) {
  return d == Direction::kHigherBetter ? "higher" : "lower";
}

std::string_view ToString(Unit u) {
  return u == Unit::kPercent ? "percent" : "raw";
}

std::string_view ToString(ResultType t) {
  switch (t) {
    case ResultType::kTypeI: return "TypeI";
    case ResultType::kTypeII: return "TypeII";
    case ResultType::kTypeIII: return "TypeIII";
    case ResultType::kTypeIVSource: return "TypeIV-source";
  }
  return "TypeI";
}

std::string_view ToString(RunLabel l) {
  return l == RunLabel::kOriginal ? "original" : "reproduction";
}

std::string_view ToString(SdMode m) {
  return m == SdMode::kSample ? "sample" : "population";
}

std::string_view ToString(AlignMode m) {
  return m == AlignMode::kStrict ? "strict" : "lenient";
}

namespace {

[[noreturn]] void BadEnum(std::string_view what, std::string_view value) {
  throw Error(ErrorCode::kSchema,
              "unknown " + std::string(what) + " '" + std::string(value) + "'");
}

}  // namespace

Direction ParseDirection(std::string_view s) {
  if (s == "higher" || s == "higher-better") return Direction::kHigherBetter;
  if (s == "lower" || s == "lower-better") return Direction::kLowerBetter;
  BadEnum("direction", s);
}

Unit ParseUnit(std::string_view s) {
  if (s == "percent") return Unit::kPercent;
  if (s == "raw") return Unit::kRaw;
  BadEnum("unit", s);
}

ResultType ParseResultType(std::string_view s) {
  if (s == "TypeI") return ResultType::kTypeI;
  if (s == "TypeII") return ResultType::kTypeII;
  if (s == "TypeIII") return ResultType::kTypeIII;
  if (s == "TypeIV-source") return ResultType::kTypeIVSource;
  BadEnum("result_type", s);
}

RunLabel ParseRunLabel(std::string_view s) {
  if (s == "original") return RunLabel::kOriginal;
  if (s == "reproduction") return RunLabel::kReproduction;
  BadEnum("label", s);
}

SdMode ParseSdMode(std::string_view s) {
  if (s == "sample") return SdMode::kSample;
  if (s == "population") return SdMode::kPopulation;
  BadEnum("sd_mode", s);
}

std::string CellKey::ToString() const {
  return "(" + system + ", " + metric + ", " + condition + ")";
}

std::string Column::Label() const {
  if (condition == kOverallCondition) return metric;
  return metric + "_" + condition;
}

EvaluationRun::EvaluationRun(std::string run_id, RunLabel label,
                             std::map<std::string, std::string> provenance,
                             std::vector<MetricDescriptor> metrics,
                             std::vector<ScoreCell> cells)
    : run_id_(std::move(run_id)),
      label_(label),
      provenance_(std::move(provenance)),
      metrics_(std::move(metrics)),
      cells_(std::move(cells)) {
  std::set<std::string> metric_ids;
  for (const MetricDescriptor& m : metrics_) {
    if (m.id.empty()) {
      throw Error(ErrorCode::kInvariantViolation,
                  "run '" + run_id_ + "': metric with empty id");
    }
    if (!metric_ids.insert(m.id).second) {
      throw Error(ErrorCode::kDuplicateKey,
                  "run '" + run_id_ + "': metric id '" + m.id + "' repeated");
    }
  }
  if (cells_.empty()) {
    throw Error(ErrorCode::kInvariantViolation,
                "run '" + run_id_ + "' has no score cells");
  }
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    const ScoreCell& c = cells_[i];
    const std::string where =
        "run '" + run_id_ + "' cell " + std::to_string(i) + " " + c.key.ToString();
    if (c.key.system.empty() || c.key.metric.empty() ||
        c.key.condition.empty()) {
      throw Error(ErrorCode::kInvariantViolation, where + ": empty key field");
    }
    if (!metric_ids.contains(c.key.metric)) {
      throw Error(ErrorCode::kInvariantViolation,
                  where + ": metric '" + c.key.metric + "' has no descriptor");
    }
    if (!std::isfinite(c.value)) {
      throw Error(ErrorCode::kInvariantViolation, where + ": value not finite");
    }
    if (c.dispersion &&
        (!std::isfinite(*c.dispersion) || *c.dispersion < 0.0)) {
      throw Error(ErrorCode::kInvariantViolation,
                  where + ": dispersion must be finite and >= 0");
    }
    if (c.n_basis && *c.n_basis <= 0) {
      throw Error(ErrorCode::kInvariantViolation,
                  where + ": n_basis must be positive");
    }
    if (!index_.emplace(c.key, i).second) {
      throw Error(ErrorCode::kDuplicateKey,
                  "run '" + run_id_ + "': duplicate cell " + c.key.ToString());
    }
  }
}

const ScoreCell* EvaluationRun::Find(const CellKey& key) const {
  auto it = index_.find(key);
  return it == index_.end() ? nullptr : &cells_[it->second];
}

const MetricDescriptor* EvaluationRun::FindMetric(std::string_view id) const {
  for (const MetricDescriptor& m : metrics_) {
    if (m.id == id) return &m;
  }
  return nullptr;
}

std::vector<std::string> EvaluationRun::Systems() const {
  std::set<std::string> systems;
  for (const ScoreCell& c : cells_) systems.insert(c.key.system);
  return {systems.begin(), systems.end()};
}

std::vector<CellKey> EvaluationRun::Keys() const {
  std::vector<CellKey> keys;
  keys.reserve(index_.size());
  for (const auto& [key, _] : index_) keys.push_back(key);
  return keys;
}

EvaluationRun EvaluationRun::Subset(std::span<const CellKey> keys) const {
  std::vector<ScoreCell> cells;
  cells.reserve(keys.size());
  for (const CellKey& k : keys) {
    const ScoreCell* c = Find(k);
    if (c == nullptr) {
      throw Error(ErrorCode::kKeyMismatch,
                  "run '" + run_id_ + "' has no cell " + k.ToString());
    }
    cells.push_back(*c);
  }
  return EvaluationRun(run_id_, label_, provenance_, metrics_,
                       std::move(cells));
}

std::vector<Column> OrderColumns(const EvaluationRun& run,
                                 std::span<const CellKey> keys) {
  std::set<Column> present;
  for (const CellKey& k : keys) present.insert({k.metric, k.condition});

  std::vector<Column> ordered;
  for (const MetricDescriptor& m : run.metrics()) {
    std::vector<Column> of_metric;
    for (const Column& c : present) {
      if (c.metric == m.id) of_metric.push_back(c);
    }
    auto rank = [&m](const Column& c) {
      auto it = std::find(m.condition_order.begin(), m.condition_order.end(),
                          c.condition);
      return static_cast<std::size_t>(
          std::distance(m.condition_order.begin(), it));
    };
    std::stable_sort(of_metric.begin(), of_metric.end(),
                     [&rank](const Column& a, const Column& b) {
                       return rank(a) < rank(b);
                     });
    ordered.insert(ordered.end(), of_metric.begin(), of_metric.end());
  }
  return ordered;
}

std::vector<std::string> PairedStudy::Systems() const {
  std::set<std::string> systems;
  for (const CellKey& k : aligned_keys) systems.insert(k.system);
  return {systems.begin(), systems.end()};
}

std::vector<Column> PairedStudy::Columns() const {
  return OrderColumns(original, aligned_keys);
}

namespace {

std::string JoinKeys(const std::vector<CellKey>& keys) {
  std::ostringstream out;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (i > 0) out << ", ";
    out << keys[i].ToString();
  }
  return out.str();
}

}  // namespace

PairedStudy AlignRuns(const EvaluationRun& original,
                      const EvaluationRun& reproduction, AlignMode mode) {
  for (const MetricDescriptor& m : original.metrics()) {
    const MetricDescriptor* other = reproduction.FindMetric(m.id);
    if (other == nullptr) continue;
    if (other->direction != m.direction || other->unit != m.unit) {
      throw Error(ErrorCode::kDescriptorMismatch,
                  "metric '" + m.id + "': original is " +
                      std::string(ToString(m.direction)) + "/" +
                      std::string(ToString(m.unit)) + ", reproduction is " +
                      std::string(ToString(other->direction)) + "/" +
                      std::string(ToString(other->unit)));
    }
  }

  const std::vector<CellKey> a = original.Keys();
  const std::vector<CellKey> b = reproduction.Keys();
  std::vector<CellKey> shared;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(shared));
  std::vector<CellKey> dropped;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                std::back_inserter(dropped));

  if (mode == AlignMode::kStrict && !dropped.empty()) {
    throw Error(ErrorCode::kKeyMismatch,
                "runs '" + original.run_id() + "' and '" +
                    reproduction.run_id() +
                    "' differ in cell keys: " + JoinKeys(dropped));
  }
  if (shared.empty()) {
    throw Error(ErrorCode::kEmptyIntersection,
                "runs '" + original.run_id() + "' and '" +
                    reproduction.run_id() + "' share no cell keys");
  }
  return PairedStudy{original, reproduction, std::move(shared),
                     std::move(dropped)};
}

ScoreCell AggregateConditions(std::span<const ScoreCell> cells, SdMode sd_mode,
                              std::string condition) {
  if (cells.empty()) {
    throw Error(ErrorCode::kEmptyInput, "no cells to aggregate");
  }
  std::set<std::string> conditions;
  for (const ScoreCell& c : cells) {
    if (c.key.system != cells[0].key.system ||
        c.key.metric != cells[0].key.metric) {
      throw Error(ErrorCode::kMixedKeys,
                  "cannot aggregate " + c.key.ToString() + " with " +
                      cells[0].key.ToString());
    }
    if (!conditions.insert(c.key.condition).second) {
      throw Error(ErrorCode::kMixedKeys,
                  "condition '" + c.key.condition + "' given twice");
    }
  }

  const double n = static_cast<double>(cells.size());
  double sum = 0.0;
  for (const ScoreCell& c : cells) sum += c.value;
  const double mean = sum / n;
  double ss = 0.0;
  for (const ScoreCell& c : cells) ss += (c.value - mean) * (c.value - mean);

  ScoreCell out;
  out.key = {cells[0].key.system, cells[0].key.metric, std::move(condition)};
  out.value = mean;
  out.n_basis = static_cast<int>(cells.size());
  if (sd_mode == SdMode::kPopulation) {
    out.dispersion = std::sqrt(ss / n);
  } else if (cells.size() > 1) {
    out.dispersion = std::sqrt(ss / (n - 1.0));
  }
  return out;
}

std::string ConditionId(const std::map<std::string, std::string>& attributes) {
  if (attributes.empty()) return std::string(kOverallCondition);
  std::string id;
  for (const auto& [name, value] : attributes) {
    if (!id.empty()) id += ';';
    id += name + "=" + value;
  }
  return id;
}

}  // namespace qra
