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

#ifndef QRA_IO_RUN_IO_H_
#define QRA_IO_RUN_IO_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "qra/core/model.h"

namespace qra {

inline constexpr int kRunSchemaVersion = 1;

enum class RunFormat {
  // Canonical JSON run document.
  kStructured,
  // CSV laid out like a results table (rows = systems, columns = metric or
  // metric/condition) plus a JSON sidecar with run metadata and metrics.
  kTabular,
};

// ".csv" files are tabular, everything else structured.
RunFormat DetectRunFormat(const std::filesystem::path& path);

// For tabular runs the sidecar defaults to "<stem>.meta.json" next to the
// CSV file.
EvaluationRun LoadRun(const std::filesystem::path& path, RunFormat format,
                      std::optional<std::filesystem::path> sidecar = {});
EvaluationRun LoadRun(const std::filesystem::path& path);

// `source` names the input in error messages.
EvaluationRun ParseRunJson(std::string_view text, std::string_view source);
EvaluationRun ParseRunTable(std::string_view csv, std::string_view sidecar_json,
                            std::string_view source);

// Canonical form: sorted keys, two-space indent, trailing newline.
std::string SerializeRun(const EvaluationRun& run);

}  // namespace qra

#endif  // QRA_IO_RUN_IO_H_
