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

#include "qra/io/run_io.h"

#include <cmath>
#include <cstdlib>
#include <utility>
#include <vector>

#include "json_util.h"
#include "qra/util/format.h"

namespace qra {
namespace {

using json_util::json;

struct RunHeader {
  std::string run_id;
  RunLabel label = RunLabel::kOriginal;
  std::map<std::string, std::string> provenance;
  std::vector<MetricDescriptor> metrics;
};

template <typename Fn>
auto WithPath(const std::string& path, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    // Enum parsers throw without location.
    if (e.code() == ErrorCode::kSchema &&
        std::string_view(e.what()).find(path) == std::string_view::npos) {
      throw Error(ErrorCode::kSchema, path + ": " + e.what());
    }
    throw;
  }
}

MetricDescriptor ParseMetric(const json& m, const std::string& path) {
  json_util::ExpectObject(m, path);
  json_util::RejectUnknownFields(
      m, {"id", "name", "direction", "unit", "result_type", "conditions"},
      path);
  MetricDescriptor d;
  d.id = json_util::RequireString(m, "id", path);
  d.name = m.contains("name") ? json_util::RequireString(m, "name", path) : d.id;
  const std::string direction = json_util::RequireString(m, "direction", path);
  d.direction = WithPath(path + ".direction",
                         [&] { return ParseDirection(direction); });
  const std::string unit = json_util::RequireString(m, "unit", path);
  d.unit = WithPath(path + ".unit", [&] { return ParseUnit(unit); });
  if (m.contains("result_type")) {
    const std::string t = json_util::RequireString(m, "result_type", path);
    d.result_type =
        WithPath(path + ".result_type", [&] { return ParseResultType(t); });
  }
  if (m.contains("conditions")) {
    const json& conds = m.at("conditions");
    json_util::ExpectArray(conds, path + ".conditions");
    for (std::size_t i = 0; i < conds.size(); ++i) {
      if (!conds[i].is_string()) {
        throw Error(ErrorCode::kSchema, path + ".conditions[" +
                                            std::to_string(i) +
                                            "]: expected a string");
      }
      d.condition_order.push_back(conds[i].get<std::string>());
    }
  }
  return d;
}

RunHeader ParseHeader(const json& doc, std::string_view source,
                      std::initializer_list<std::string_view> known) {
  const std::string root(source);
  json_util::ExpectObject(doc, root);
  json_util::RejectUnknownFields(doc, known, root);
  const json& version = json_util::Require(doc, "schema_version", root);
  if (!version.is_number_integer() ||
      version.get<int>() != kRunSchemaVersion) {
    throw Error(ErrorCode::kSchema,
                root + ".schema_version: unsupported version " + version.dump());
  }
  RunHeader h;
  h.run_id = json_util::RequireString(doc, "run_id", root);
  const std::string label = json_util::RequireString(doc, "label", root);
  h.label = WithPath(root + ".label", [&] { return ParseRunLabel(label); });
  if (doc.contains("provenance")) {
    const json& p = doc.at("provenance");
    json_util::ExpectObject(p, root + ".provenance");
    for (const auto& [key, value] : p.items()) {
      h.provenance[key] = value.is_string() ? value.get<std::string>()
                                            : value.dump();
    }
  }
  const json& metrics = json_util::Require(doc, "metrics", root);
  json_util::ExpectArray(metrics, root + ".metrics");
  for (std::size_t i = 0; i < metrics.size(); ++i) {
    h.metrics.push_back(
        ParseMetric(metrics[i], root + ".metrics[" + std::to_string(i) + "]"));
  }
  return h;
}

EvaluationRun Build(RunHeader header, std::vector<ScoreCell> cells,
                    std::string_view source) {
  try {
    return EvaluationRun(std::move(header.run_id), header.label,
                         std::move(header.provenance),
                         std::move(header.metrics), std::move(cells));
  } catch (const Error& e) {
    throw Error(e.code(), std::string(source) + ": " + e.what());
  }
}

// Splits one CSV record, honouring double-quoted fields.
std::vector<std::string> SplitCsv(std::string_view line,
                                  const std::string& where) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else {
      field += c;
    }
  }
  if (quoted) throw Error(ErrorCode::kParse, where + ": unterminated quote");
  fields.push_back(std::move(field));
  return fields;
}

std::string Trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

double ParseNumber(const std::string& text, const std::string& where) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size()) {
    throw Error(ErrorCode::kParse, where + ": '" + text + "' is not a number");
  }
  return v;
}

}  // namespace

RunFormat DetectRunFormat(const std::filesystem::path& path) {
  return path.extension() == ".csv" ? RunFormat::kTabular
                                    : RunFormat::kStructured;
}

EvaluationRun ParseRunJson(std::string_view text, std::string_view source) {
  const json doc = json_util::Parse(text, source);
  RunHeader header =
      ParseHeader(doc, source,
                  {"schema_version", "run_id", "label", "provenance", "metrics",
                   "cells"});
  const std::string root(source);
  const json& cells_json = json_util::Require(doc, "cells", root);
  json_util::ExpectArray(cells_json, root + ".cells");
  std::vector<ScoreCell> cells;
  for (std::size_t i = 0; i < cells_json.size(); ++i) {
    const std::string path = root + ".cells[" + std::to_string(i) + "]";
    const json& c = cells_json[i];
    json_util::ExpectObject(c, path);
    json_util::RejectUnknownFields(
        c, {"system", "metric", "condition", "value", "std", "n_basis"}, path);
    ScoreCell cell;
    cell.key.system = json_util::RequireString(c, "system", path);
    cell.key.metric = json_util::RequireString(c, "metric", path);
    cell.key.condition = c.contains("condition")
                             ? json_util::RequireString(c, "condition", path)
                             : std::string(kOverallCondition);
    cell.value = json_util::RequireNumber(c, "value", path);
    if (c.contains("std")) cell.dispersion = json_util::RequireNumber(c, "std", path);
    if (c.contains("n_basis")) {
      const json& n = c.at("n_basis");
      if (!n.is_number_integer()) {
        throw Error(ErrorCode::kSchema, path + ".n_basis: expected an integer");
      }
      cell.n_basis = n.get<int>();
    }
    cells.push_back(std::move(cell));
  }
  return Build(std::move(header), std::move(cells), source);
}

EvaluationRun ParseRunTable(std::string_view csv, std::string_view sidecar_json,
                            std::string_view source) {
  const std::string sidecar_source = std::string(source) + " (sidecar)";
  RunHeader header =
      ParseHeader(json_util::Parse(sidecar_json, sidecar_source),
                  sidecar_source,
                  {"schema_version", "run_id", "label", "provenance",
                   "metrics"});

  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start <= csv.size()) {
    std::size_t end = csv.find('\n', start);
    if (end == std::string_view::npos) end = csv.size();
    std::string line(csv.substr(start, end - start));
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
    start = end + 1;
  }

  std::vector<Column> columns;
  std::vector<ScoreCell> cells;
  bool have_header = false;
  for (std::size_t li = 0; li < lines.size(); ++li) {
    const std::string where = std::string(source) + ":" + std::to_string(li + 1);
    if (Trim(lines[li]).empty() || lines[li].starts_with("#")) continue;
    const std::vector<std::string> fields = SplitCsv(lines[li], where);
    if (!have_header) {
      have_header = true;
      for (std::size_t f = 1; f < fields.size(); ++f) {
        const std::string name = Trim(fields[f]);
        const auto slash = name.find('/');
        Column col = slash == std::string::npos
                         ? Column{name, std::string(kOverallCondition)}
                         : Column{name.substr(0, slash), name.substr(slash + 1)};
        if (col.metric.empty() || col.condition.empty()) {
          throw Error(ErrorCode::kParse, where + ":" + std::to_string(f + 1) +
                                             ": bad column header '" + name +
                                             "'");
        }
        columns.push_back(std::move(col));
      }
      continue;
    }
    if (fields.size() != columns.size() + 1) {
      throw Error(ErrorCode::kParse,
                  where + ": expected " + std::to_string(columns.size() + 1) +
                      " fields, found " + std::to_string(fields.size()));
    }
    const std::string system = Trim(fields[0]);
    for (std::size_t f = 1; f < fields.size(); ++f) {
      const std::string field_where = where + ":" + std::to_string(f + 1);
      std::string text = Trim(fields[f]);
      if (text.empty()) continue;
      ScoreCell cell;
      cell.key = {system, columns[f - 1].metric, columns[f - 1].condition};
      std::size_t pm = text.find("\xC2\xB1");  // U+00B1 PLUS-MINUS SIGN
      std::size_t pm_len = 2;
      if (pm == std::string::npos) {
        pm = text.find("+-");
        pm_len = 2;
      }
      if (pm != std::string::npos) {
        cell.value = ParseNumber(Trim(text.substr(0, pm)), field_where);
        cell.dispersion =
            ParseNumber(Trim(text.substr(pm + pm_len)), field_where);
      } else {
        cell.value = ParseNumber(text, field_where);
      }
      cells.push_back(std::move(cell));
    }
  }
  return Build(std::move(header), std::move(cells), source);
}

EvaluationRun LoadRun(const std::filesystem::path& path, RunFormat format,
                      std::optional<std::filesystem::path> sidecar) {
  const std::string text = ReadFile(path);
  if (format == RunFormat::kStructured) {
    return ParseRunJson(text, path.string());
  }
  std::filesystem::path meta = sidecar.value_or(
      path.parent_path() / (path.stem().string() + ".meta.json"));
  return ParseRunTable(text, ReadFile(meta), path.string());
}

EvaluationRun LoadRun(const std::filesystem::path& path) {
  return LoadRun(path, DetectRunFormat(path));
}

std::string SerializeRun(const EvaluationRun& run) {
  json doc;
  doc["schema_version"] = kRunSchemaVersion;
  doc["run_id"] = run.run_id();
  doc["label"] = std::string(ToString(run.label()));
  doc["provenance"] = json::object();
  for (const auto& [k, v] : run.provenance()) doc["provenance"][k] = v;
  doc["metrics"] = json::array();
  for (const MetricDescriptor& m : run.metrics()) {
    json jm{{"id", m.id},
            {"name", m.name},
            {"direction", std::string(ToString(m.direction))},
            {"unit", std::string(ToString(m.unit))},
            {"result_type", std::string(ToString(m.result_type))}};
    if (!m.condition_order.empty()) jm["conditions"] = m.condition_order;
    doc["metrics"].push_back(std::move(jm));
  }
  doc["cells"] = json::array();
  for (const ScoreCell& c : run.cells()) {
    json jc{{"system", c.key.system},
            {"metric", c.key.metric},
            {"condition", c.key.condition},
            {"value", c.value}};
    if (c.dispersion) jc["std"] = *c.dispersion;
    if (c.n_basis) jc["n_basis"] = *c.n_basis;
    doc["cells"].push_back(std::move(jc));
  }
  return doc.dump(2) + "\n";
}

}  // namespace qra
