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

#ifndef QRA_IO_LABELS_IO_H_
#define QRA_IO_LABELS_IO_H_

#include <filesystem>
#include <string_view>
#include <vector>

#include "qra/report/report.h"

namespace qra {

// Type III label sets:
//   {"label_sets": [{"id", "items": [...], "categories": [...],
//                    "original": {"raters": [...], "labels": [[...]]},
//                    "reproduction": {...}}]}
// labels[i][r] is a category string or null for a missing label.
std::vector<LabelSet> ParseLabelSets(std::string_view text,
                                     std::string_view source);
std::vector<LabelSet> LoadLabelSets(const std::filesystem::path& path);

}  // namespace qra

#endif  // QRA_IO_LABELS_IO_H_
