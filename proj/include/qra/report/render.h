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

#ifndef QRA_REPORT_RENDER_H_
#define QRA_REPORT_RENDER_H_

#include <string>
#include <string_view>

#include "qra/report/report.h"

namespace qra {

enum class RenderFormat { kMarkdown, kLatex, kCsv, kJson };

// Accepts markdown|md, latex|tex, csv, json. Throws kUnsupportedFormat.
RenderFormat ParseRenderFormat(std::string_view name);

// Pure function of the report; identical reports render byte-identically.
//  - markdown / latex: side-by-side table (each system followed by its
//    "Repro" row), CV* grid with an Average row, correlation, findings,
//    agreement and provenance sections. Empty sections are omitted.
//  - csv: the CV* grid only, "system,<column labels...>" then one row per
//    system and an "Average" row.
//  - json: the saved report form, re-loadable with ReportFromJson.
// CV* is shown at 2 decimals and correlations at 3, rounded half-up.
std::string Render(const ReproReport& report, RenderFormat format);

}  // namespace qra

#endif  // QRA_REPORT_RENDER_H_
