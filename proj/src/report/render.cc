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

#include "qra/report/render.h"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <vector>

#include "qra/error.h"
#include "qra/util/format.h"

namespace qra {

RenderFormat ParseRenderFormat(std::string_view name) {
  if (name == "markdown" || name == "md") return RenderFormat::kMarkdown;
  if (name == "latex" || name == "tex") return RenderFormat::kLatex;
  if (name == "csv") return RenderFormat::kCsv;
  if (name == "json" || name == "structured-object") return RenderFormat::kJson;
  throw Error(ErrorCode::kUnsupportedFormat,
              "unknown output format '" + std::string(name) + "'");
}

namespace {

constexpr std::string_view kMissing = "-";

// Scores keep their reported precision unless they carry more than two
// decimals.
std::string FormatScore(double v) {
  std::string s = FormatShortest(v);
  const auto dot = s.find('.');
  if (dot != std::string::npos && s.find('e') == std::string::npos &&
      s.size() - dot - 1 > 2) {
    return FormatFixed(v, 2);
  }
  if (s.find('e') != std::string::npos) return FormatFixed(v, 2);
  return s;
}

std::string FormatCoefficient(const std::optional<double>& c) {
  return c ? FormatFixed(*c, 3) : "undefined";
}

std::string LatexEscape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '\\': out += "\\textbackslash{}"; break;
      case '&': case '%': case '$': case '#': case '_': case '{': case '}':
        out += '\\';
        out += c;
        break;
      case '~': out += "\\textasciitilde{}"; break;
      case '^': out += "\\textasciicircum{}"; break;
      default: out += c;
    }
  }
  return out;
}

std::string CsvField(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// Table as rows of already formatted cells; the first row is the header.
using Grid = std::vector<std::vector<std::string>>;

std::string PairCell(const ReproReport& r, const CellKey& key, bool original,
                     std::string_view pm) {
  const PairedValue* p = r.FindPair(key);
  if (p == nullptr) return std::string(kMissing);
  const double v = original ? p->original : p->reproduction;
  const auto& d = original ? p->original_dispersion : p->reproduction_dispersion;
  std::string s = FormatScore(v);
  if (d) s += std::string(pm) + FormatScore(*d);
  return s;
}

Grid SideBySideGrid(const ReproReport& r, std::string_view pm) {
  Grid g;
  std::vector<std::string> header{"System"};
  for (const ReportColumn& c : r.columns) header.push_back(c.label);
  g.push_back(std::move(header));
  for (const std::string& s : r.systems) {
    for (bool original : {true, false}) {
      std::vector<std::string> row{original ? s : s + " Repro"};
      for (const ReportColumn& c : r.columns) {
        row.push_back(PairCell(r, {s, c.column.metric, c.column.condition},
                               original, pm));
      }
      g.push_back(std::move(row));
    }
  }
  return g;
}

Grid CvGrid(const ReproReport& r, std::string_view first_header) {
  Grid g;
  std::vector<std::string> header{std::string(first_header)};
  for (const ReportColumn& c : r.columns) header.push_back(c.label);
  g.push_back(std::move(header));
  for (const std::string& s : r.systems) {
    std::vector<std::string> row{s};
    for (const ReportColumn& c : r.columns) {
      const CvStarResult* cv = r.FindCv({s, c.column.metric, c.column.condition});
      row.push_back(cv ? FormatFixed(cv->cv_star, 2) : std::string(kMissing));
    }
    g.push_back(std::move(row));
  }
  std::vector<std::string> avg{"Average"};
  for (const ReportColumn& c : r.columns) {
    const auto m = r.MetricMean(c.label);
    avg.push_back(m ? FormatFixed(*m, 2) : std::string(kMissing));
  }
  g.push_back(std::move(avg));
  return g;
}

void MarkdownTable(std::ostringstream& out, const Grid& g) {
  for (std::size_t i = 0; i < g.size(); ++i) {
    out << '|';
    for (const std::string& cell : g[i]) out << ' ' << cell << " |";
    out << '\n';
    if (i == 0) {
      out << "|---|";
      for (std::size_t c = 1; c < g[i].size(); ++c) out << "---:|";
      out << '\n';
    }
  }
  out << '\n';
}

void LatexTable(std::ostringstream& out, const Grid& g,
                const std::string& caption) {
  const std::size_t cols = g.empty() ? 0 : g[0].size();
  out << "\\begin{table}[t]\n\\centering\n\\small\n\\begin{tabular}{|l|";
  for (std::size_t c = 1; c < cols; ++c) out << "c|";
  out << "}\n\\hline\n";
  for (const auto& row : g) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) out << " & ";
      out << row[c];
    }
    out << " \\\\\n\\hline\n";
  }
  out << "\\end{tabular}\n\\caption{" << caption << "}\n\\end{table}\n\n";
}

// Numeric cells need no escaping; headers and row labels do.
Grid EscapeLabels(Grid g) {
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t c = 0; c < g[i].size(); ++c) {
      if (i == 0 || c == 0) g[i][c] = LatexEscape(g[i][c]);
    }
  }
  return g;
}

Grid EscapeGrid(Grid g) {
  for (auto& row : g) {
    for (auto& cell : row) cell = LatexEscape(cell);
  }
  return g;
}

bool HasScope(const ReproReport& r, CorrelationScope scope) {
  for (const CorrelationResult& c : r.correlations) {
    if (c.scope == scope) return true;
  }
  return false;
}

// Rows: key, Pearson, Spearman, pairs.
Grid CorrelationGrid(const ReproReport& r, CorrelationScope scope) {
  Grid g{{scope == CorrelationScope::kMetricLevel ? "Metric" : "System",
          "Pearson r", "Spearman rho", "Pairs"}};
  std::vector<std::string> keys;
  for (const CorrelationResult& c : r.correlations) {
    if (c.scope != scope) continue;
    if (std::find(keys.begin(), keys.end(), c.key) == keys.end()) {
      keys.push_back(c.key);
    }
  }
  for (const std::string& k : keys) {
    std::string pearson(kMissing), spearman(kMissing), pairs = "0";
    for (const CorrelationResult& c : r.correlations) {
      if (c.scope != scope || c.key != k) continue;
      (c.kind == CorrelationKind::kPearson ? pearson : spearman) =
          FormatCoefficient(c.coefficient);
      pairs = std::to_string(c.pair_count);
    }
    g.push_back({k, pearson, spearman, pairs});
  }
  return g;
}

std::string SummaryLine(const CorrelationSummary& s) {
  return "Mean " + std::string(ToString(s.scope)) + " " +
         std::string(ToString(s.kind)) + ": " + FormatCoefficient(s.mean) +
         " (defined " + std::to_string(s.defined_count) + ", excluded " +
         std::to_string(s.excluded_count) + ")";
}

std::string FindingsLine(const FindingsReport& f) {
  return "Findings upheld: " + std::to_string(f.upheld) + "/" +
         std::to_string(f.total) + " (" + FormatFixed(f.proportion(), 3) + ")";
}

Grid FindingsGrid(const FindingsReport& f) {
  Grid g{{"Metric", "Condition", "System A", "System B", "Original",
          "Reproduction", "Upheld"}};
  for (const FindingComparison& c : f.per_finding) {
    g.push_back({c.original.metric, c.original.condition, c.original.system_a,
                 c.original.system_b, std::string(ToString(c.original.relation)),
                 std::string(ToString(c.reproduction.relation)),
                 c.upheld ? "yes" : "no"});
  }
  return g;
}

Grid AgreementGrid(const ReproReport& r) {
  Grid g{{"Label set", "Fleiss kappa", "Krippendorff alpha", "Notes"}};
  for (const AgreementResult& a : r.agreements) {
    std::string kappa = FormatCoefficient(a.fleiss_kappa);
    if (a.kappa_degenerate) kappa += " (degenerate)";
    std::string notes;
    for (const std::string& n : a.notes) {
      if (!notes.empty()) notes += "; ";
      notes += n;
    }
    g.push_back({a.id, kappa, FormatCoefficient(a.krippendorff_alpha),
                 notes.empty() ? std::string(kMissing) : notes});
  }
  return g;
}

Grid ProvenanceGrid(const ReproReport& r) {
  Grid g{{"Key", "Value"}};
  for (const auto& [k, v] : r.provenance) g.push_back({k, v});
  return g;
}

std::string RenderMarkdown(const ReproReport& r) {
  std::ostringstream out;
  out << "# Reproducibility report: " << r.study_id << "\n\n";
  out << "Aligned cells: " << r.paired_keys
      << " (dropped: " << r.dropped_keys.size() << ")\n\n";
  if (!r.dropped_keys.empty()) {
    out << "Dropped keys:\n\n";
    for (const CellKey& k : r.dropped_keys) out << "- " << k.ToString() << '\n';
    out << '\n';
  }

  out << "## Side-by-side results\n\n";
  MarkdownTable(out, SideBySideGrid(r, " \xC2\xB1 "));

  out << "## Type I: CV*\n\n";
  MarkdownTable(out, CvGrid(r, "System"));
  out << "Study-level CV*: " << FormatFixed(r.study_cv, 3) << "\n\n";

  if (!r.correlations.empty()) {
    out << "## Type II: correlations\n\n";
    for (CorrelationScope scope :
         {CorrelationScope::kMetricLevel, CorrelationScope::kSystemLevel}) {
      if (!HasScope(r, scope)) continue;
      out << "### " << (scope == CorrelationScope::kMetricLevel ? "Metric" : "System")
          << "-level\n\n";
      MarkdownTable(out, CorrelationGrid(r, scope));
      for (const CorrelationSummary& s : r.correlation_summaries) {
        if (s.scope == scope) out << "- " << SummaryLine(s) << '\n';
      }
      out << '\n';
    }
  }

  if (!r.agreements.empty()) {
    out << "## Type III: agreement\n\n";
    MarkdownTable(out, AgreementGrid(r));
  }

  if (r.findings.total > 0) {
    out << "## Type IV: findings\n\n" << FindingsLine(r.findings) << "\n\n";
    MarkdownTable(out, FindingsGrid(r.findings));
  }

  out << "## Provenance\n\n";
  MarkdownTable(out, ProvenanceGrid(r));
  std::string s = out.str();
  while (s.size() >= 2 && s[s.size() - 1] == '\n' && s[s.size() - 2] == '\n') {
    s.pop_back();
  }
  return s;
}

std::string RenderLatex(const ReproReport& r) {
  std::ostringstream out;
  out << "% Reproducibility report: " << r.study_id << "\n\n";
  LatexTable(out, EscapeLabels(SideBySideGrid(r, " $\\pm$ ")),
             "Side-by-side original and reproduction scores.");
  LatexTable(out, EscapeLabels(CvGrid(r, "System")),
             "CV* between original and reproduction scores for each "
             "evaluation measure; study-level CV* = " +
                 FormatFixed(r.study_cv, 3) + ".");
  for (CorrelationScope scope :
       {CorrelationScope::kMetricLevel, CorrelationScope::kSystemLevel}) {
    if (!HasScope(r, scope)) continue;
    std::string caption = std::string(ToString(scope)) + " correlations.";
    for (const CorrelationSummary& s : r.correlation_summaries) {
      if (s.scope == scope) caption += " " + SummaryLine(s) + ".";
    }
    caption[0] = static_cast<char>(std::toupper(caption[0]));
    LatexTable(out, EscapeLabels(CorrelationGrid(r, scope)),
               LatexEscape(caption));
  }
  if (!r.agreements.empty()) {
    LatexTable(out, EscapeGrid(AgreementGrid(r)), "Agreement.");
  }
  if (r.findings.total > 0) {
    out << "% " << FindingsLine(r.findings) << "\n";
    LatexTable(out, EscapeGrid(FindingsGrid(r.findings)),
               LatexEscape(FindingsLine(r.findings)) + ".");
  }
  std::string s = out.str();
  while (!s.empty() && s.back() == '\n') s.pop_back();
  return s + "\n";
}

std::string RenderCsv(const ReproReport& r) {
  std::ostringstream out;
  for (const auto& row : CvGrid(r, "system")) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) out << ',';
      out << CsvField(row[c]);
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace

std::string Render(const ReproReport& report, RenderFormat format) {
  switch (format) {
    case RenderFormat::kMarkdown: return RenderMarkdown(report);
    case RenderFormat::kLatex: return RenderLatex(report);
    case RenderFormat::kCsv: return RenderCsv(report);
    case RenderFormat::kJson: return ReportToJson(report).dump(2) + "\n";
  }
  throw Error(ErrorCode::kUnsupportedFormat, "unknown output format");
}

}  // namespace qra
