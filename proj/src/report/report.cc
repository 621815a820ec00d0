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

#include "qra/report/report.h"

#include <algorithm>
#include <utility>

#include "qra/error.h"
#include "qra/util/format.h"

#ifndef QRA_VERSION
#define QRA_VERSION "0.0.0"
#endif

namespace qra {

using nlohmann::json;

const CvStarResult* ReproReport::FindCv(const CellKey& key) const {
  for (const CvStarResult& c : cv_cells) {
    if (c.key == key) return &c;
  }
  return nullptr;
}

const PairedValue* ReproReport::FindPair(const CellKey& key) const {
  for (const PairedValue& p : pairs) {
    if (p.key == key) return &p;
  }
  return nullptr;
}

std::optional<double> ReproReport::MetricMean(const std::string& label) const {
  for (const auto& [l, v] : metric_means) {
    if (l == label) return v;
  }
  return std::nullopt;
}

const CorrelationSummary* ReproReport::FindSummary(CorrelationScope scope,
                                                   CorrelationKind kind) const {
  for (const CorrelationSummary& s : correlation_summaries) {
    if (s.scope == scope && s.kind == kind) return &s;
  }
  return nullptr;
}

namespace {

LabelMatrix PoolRaters(const LabelSet& set) {
  const LabelMatrix& a = set.original;
  const LabelMatrix& b = set.reproduction;
  a.Validate();
  b.Validate();
  if (a.items != b.items) {
    throw Error(ErrorCode::kKeyMismatch,
                "label set '" + set.id + "': item lists differ");
  }
  LabelMatrix pooled;
  pooled.items = a.items;
  for (const std::string& r : a.raters) pooled.raters.push_back("original:" + r);
  for (const std::string& r : b.raters) {
    pooled.raters.push_back("reproduction:" + r);
  }
  pooled.categories = a.categories;
  for (const std::string& c : b.categories) {
    if (std::find(pooled.categories.begin(), pooled.categories.end(), c) ==
        pooled.categories.end()) {
      pooled.categories.push_back(c);
    }
  }
  for (std::size_t i = 0; i < a.items.size(); ++i) {
    auto row = a.labels[i];
    row.insert(row.end(), b.labels[i].begin(), b.labels[i].end());
    pooled.labels.push_back(std::move(row));
  }
  return pooled;
}

AgreementResult Agreement(const LabelSet& set) {
  AgreementResult r;
  r.id = set.id;
  const LabelMatrix pooled = PoolRaters(set);
  try {
    const KappaResult k = FleissKappa(pooled);
    r.fleiss_kappa = k.value;
    r.kappa_degenerate = k.degenerate;
  } catch (const Error& e) {
    r.notes.push_back(std::string("fleiss_kappa: ") + e.what());
  }
  try {
    r.krippendorff_alpha = KrippendorffAlpha(pooled);
  } catch (const Error& e) {
    r.notes.push_back(std::string("krippendorff_alpha: ") + e.what());
  }
  return r;
}

}  // namespace

ReproReport BuildReport(const PairedStudy& study, const ReportOptions& options) {
  ReproReport report;
  report.study_id =
      study.original.run_id() + " vs " + study.reproduction.run_id();
  report.paired_keys = static_cast<int>(study.aligned_keys.size());
  report.dropped_keys = study.dropped_keys;
  report.systems = study.Systems();

  const std::vector<Column> columns = study.Columns();
  for (const Column& c : columns) {
    const MetricDescriptor* m = study.original.FindMetric(c.metric);
    report.columns.push_back({c, c.Label(), m->name, m->direction, m->unit});
  }
  for (const Column& c : columns) {
    for (const std::string& s : report.systems) {
      const CellKey key{s, c.metric, c.condition};
      const ScoreCell* a = study.original.Find(key);
      const ScoreCell* b = study.reproduction.Find(key);
      if (a == nullptr || b == nullptr) continue;
      report.pairs.push_back(
          {key, a->value, a->dispersion, b->value, b->dispersion});
    }
  }

  // Type I.
  std::vector<double> means;
  for (MetricCv& m : MetricLevelCv(study, options.cv)) {
    report.metric_means.emplace_back(m.column.Label(), m.mean);
    means.push_back(m.mean);
    for (CvStarResult& c : m.cells) report.cv_cells.push_back(std::move(c));
  }
  report.study_cv = StudyLevelCv(means);

  // Type II.
  for (CorrelationKind kind :
       {CorrelationKind::kPearson, CorrelationKind::kSpearman}) {
    if (report.systems.size() >= 2) {
      for (const Column& c : columns) {
        try {
          report.correlations.push_back(MetricLevelCorrelation(study, c, kind));
        } catch (const Error& e) {
          if (e.code() != ErrorCode::kTooFewValues) throw;
        }
      }
    }
    for (const std::string& s : report.systems) {
      try {
        report.correlations.push_back(SystemLevelCorrelation(study, s, kind));
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kTooFewValues) throw;
      }
    }
  }
  for (CorrelationScope scope :
       {CorrelationScope::kMetricLevel, CorrelationScope::kSystemLevel}) {
    for (CorrelationKind kind :
         {CorrelationKind::kPearson, CorrelationKind::kSpearman}) {
      CorrelationSummary s = Summarize(report.correlations, scope, kind);
      if (s.defined_count + s.excluded_count > 0) {
        report.correlation_summaries.push_back(s);
      }
    }
  }

  // Type IV.
  if (report.systems.size() >= 2) {
    const EvaluationRun original = study.original.Subset(study.aligned_keys);
    const EvaluationRun reproduction =
        study.reproduction.Subset(study.aligned_keys);
    FindingOptions fo;
    fo.epsilon = options.epsilon;
    try {
      const std::vector<Finding> a = ExtractFindings(original, fo);
      const std::vector<Finding> b = ExtractFindings(reproduction, fo);
      report.findings = FindingsUpheld(a, b);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNoComparablePairs) throw;
    }
  }

  // Type III.
  for (const LabelSet& set : options.label_sets) {
    report.agreements.push_back(Agreement(set));
  }

  auto& p = report.provenance;
  p["tool_version"] = QRA_VERSION;
  p["cv_formula"] = std::string(kCvStarFormulaId);
  p["cv_scale_minimum"] = options.cv.scale_minimum
                              ? FormatShortest(*options.cv.scale_minimum)
                              : "none";
  p["sd_mode"] = std::string(ToString(options.sd_mode));
  p["align_mode"] = std::string(ToString(options.align_mode));
  p["finding_epsilon"] = FormatShortest(options.epsilon);
  p["original_run"] = study.original.run_id();
  p["reproduction_run"] = study.reproduction.run_id();
  for (const auto& [k, v] : study.original.provenance()) p["original." + k] = v;
  for (const auto& [k, v] : study.reproduction.provenance()) {
    p["reproduction." + k] = v;
  }
  for (const auto& [k, v] : options.provenance) p[k] = v;
  return report;
}

// ---------------------------------------------------------------------------
// JSON form.

namespace {

json KeyToJson(const CellKey& k) {
  return {{"system", k.system}, {"metric", k.metric}, {"condition", k.condition}};
}

json Optional(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

template <typename T>
T Get(const json& obj, const char* field) {
  try {
    return obj.at(field).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kSchema,
                std::string("report field '") + field + "': " + e.what());
  }
}

std::optional<double> GetOptional(const json& obj, const char* field) {
  if (!obj.contains(field) || obj.at(field).is_null()) return std::nullopt;
  return Get<double>(obj, field);
}

CellKey KeyFromJson(const json& j) {
  return {Get<std::string>(j, "system"), Get<std::string>(j, "metric"),
          Get<std::string>(j, "condition")};
}

}  // namespace

json ReportToJson(const ReproReport& r) {
  json doc;
  doc["schema_version"] = kReportSchemaVersion;
  doc["study_id"] = r.study_id;
  doc["paired_keys"] = r.paired_keys;
  doc["dropped_keys"] = json::array();
  for (const CellKey& k : r.dropped_keys) doc["dropped_keys"].push_back(KeyToJson(k));
  doc["systems"] = r.systems;
  doc["columns"] = json::array();
  for (const ReportColumn& c : r.columns) {
    doc["columns"].push_back({{"metric", c.column.metric},
                              {"condition", c.column.condition},
                              {"label", c.label},
                              {"name", c.name},
                              {"direction", std::string(ToString(c.direction))},
                              {"unit", std::string(ToString(c.unit))}});
  }
  doc["pairs"] = json::array();
  for (const PairedValue& p : r.pairs) {
    json j = KeyToJson(p.key);
    j["original"] = p.original;
    j["original_std"] = Optional(p.original_dispersion);
    j["reproduction"] = p.reproduction;
    j["reproduction_std"] = Optional(p.reproduction_dispersion);
    doc["pairs"].push_back(std::move(j));
  }
  doc["cv_cells"] = json::array();
  for (const CvStarResult& c : r.cv_cells) {
    json j = KeyToJson(c.key);
    j["n"] = c.n;
    j["mean"] = c.mean;
    j["cv_star"] = c.cv_star;
    doc["cv_cells"].push_back(std::move(j));
  }
  doc["metric_means"] = json::array();
  for (const auto& [label, mean] : r.metric_means) {
    doc["metric_means"].push_back({{"column", label}, {"mean", mean}});
  }
  doc["study_cv"] = r.study_cv;
  doc["correlations"] = json::array();
  for (const CorrelationResult& c : r.correlations) {
    doc["correlations"].push_back(
        {{"scope", std::string(ToString(c.scope))},
         {"key", c.key},
         {"kind", std::string(ToString(c.kind))},
         {"coefficient", Optional(c.coefficient)},
         {"pair_count", c.pair_count}});
  }
  doc["correlation_summaries"] = json::array();
  for (const CorrelationSummary& s : r.correlation_summaries) {
    doc["correlation_summaries"].push_back(
        {{"scope", std::string(ToString(s.scope))},
         {"kind", std::string(ToString(s.kind))},
         {"mean", Optional(s.mean)},
         {"defined", s.defined_count},
         {"excluded", s.excluded_count}});
  }
  json findings;
  findings["total"] = r.findings.total;
  findings["upheld"] = r.findings.upheld;
  findings["proportion"] = r.findings.proportion();
  findings["per_finding"] = json::array();
  for (const FindingComparison& f : r.findings.per_finding) {
    findings["per_finding"].push_back(
        {{"metric", f.original.metric},
         {"condition", f.original.condition},
         {"system_a", f.original.system_a},
         {"system_b", f.original.system_b},
         {"original", std::string(ToString(f.original.relation))},
         {"reproduction", std::string(ToString(f.reproduction.relation))},
         {"upheld", f.upheld}});
  }
  doc["findings"] = std::move(findings);
  doc["agreements"] = json::array();
  for (const AgreementResult& a : r.agreements) {
    doc["agreements"].push_back({{"id", a.id},
                                 {"fleiss_kappa", Optional(a.fleiss_kappa)},
                                 {"kappa_degenerate", a.kappa_degenerate},
                                 {"krippendorff_alpha",
                                  Optional(a.krippendorff_alpha)},
                                 {"notes", a.notes}});
  }
  doc["provenance"] = r.provenance;
  return doc;
}

ReproReport ReportFromJson(const json& doc) {
  if (!doc.is_object()) {
    throw Error(ErrorCode::kSchema, "report: expected an object");
  }
  if (Get<int>(doc, "schema_version") != kReportSchemaVersion) {
    throw Error(ErrorCode::kSchema, "report: unsupported schema_version");
  }
  ReproReport r;
  try {
    r.study_id = Get<std::string>(doc, "study_id");
    r.paired_keys = Get<int>(doc, "paired_keys");
    for (const json& k : doc.at("dropped_keys")) r.dropped_keys.push_back(KeyFromJson(k));
    r.systems = Get<std::vector<std::string>>(doc, "systems");
    for (const json& c : doc.at("columns")) {
      r.columns.push_back({{Get<std::string>(c, "metric"),
                            Get<std::string>(c, "condition")},
                           Get<std::string>(c, "label"),
                           Get<std::string>(c, "name"),
                           ParseDirection(Get<std::string>(c, "direction")),
                           ParseUnit(Get<std::string>(c, "unit"))});
    }
    for (const json& p : doc.at("pairs")) {
      r.pairs.push_back({KeyFromJson(p), Get<double>(p, "original"),
                         GetOptional(p, "original_std"),
                         Get<double>(p, "reproduction"),
                         GetOptional(p, "reproduction_std")});
    }
    for (const json& c : doc.at("cv_cells")) {
      r.cv_cells.push_back({KeyFromJson(c), Get<int>(c, "n"),
                            Get<double>(c, "mean"), Get<double>(c, "cv_star")});
    }
    for (const json& m : doc.at("metric_means")) {
      r.metric_means.emplace_back(Get<std::string>(m, "column"),
                                  Get<double>(m, "mean"));
    }
    r.study_cv = Get<double>(doc, "study_cv");
    for (const json& c : doc.at("correlations")) {
      CorrelationResult cr;
      cr.scope = ParseCorrelationScope(Get<std::string>(c, "scope"));
      cr.key = Get<std::string>(c, "key");
      cr.kind = ParseCorrelationKind(Get<std::string>(c, "kind"));
      cr.coefficient = GetOptional(c, "coefficient");
      cr.pair_count = Get<int>(c, "pair_count");
      r.correlations.push_back(std::move(cr));
    }
    for (const json& s : doc.at("correlation_summaries")) {
      r.correlation_summaries.push_back(
          {ParseCorrelationScope(Get<std::string>(s, "scope")),
           ParseCorrelationKind(Get<std::string>(s, "kind")),
           GetOptional(s, "mean"), Get<int>(s, "defined"),
           Get<int>(s, "excluded")});
    }
    const json& f = doc.at("findings");
    r.findings.total = Get<int>(f, "total");
    r.findings.upheld = Get<int>(f, "upheld");
    for (const json& pf : f.at("per_finding")) {
      Finding a{Get<std::string>(pf, "metric"), Get<std::string>(pf, "condition"),
                Get<std::string>(pf, "system_a"),
                Get<std::string>(pf, "system_b"),
                ParseRelation(Get<std::string>(pf, "original"))};
      Finding b = a;
      b.relation = ParseRelation(Get<std::string>(pf, "reproduction"));
      r.findings.per_finding.push_back({a, b, Get<bool>(pf, "upheld")});
    }
    for (const json& a : doc.at("agreements")) {
      r.agreements.push_back({Get<std::string>(a, "id"),
                              GetOptional(a, "fleiss_kappa"),
                              Get<bool>(a, "kappa_degenerate"),
                              GetOptional(a, "krippendorff_alpha"),
                              Get<std::vector<std::string>>(a, "notes")});
    }
    r.provenance = Get<std::map<std::string, std::string>>(doc, "provenance");
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kSchema, std::string("report: ") + e.what());
  }
  return r;
}

}  // namespace qra
