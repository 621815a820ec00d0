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

#ifndef QRA_IO_GENERATIONS_IO_H_
#define QRA_IO_GENERATIONS_IO_H_

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qra/core/model.h"

namespace qra {

// Newline-delimited JSON, one record per line:
//   {"system", "attributes": {name: value}, "prefix_id", "repetition", "text"}
// Blank lines are skipped. Duplicate (system, attributes, prefix_id,
// repetition) tuples are rejected with the offending line numbers.
std::vector<GenerationRecord> ParseGenerations(std::string_view text,
                                               std::string_view source);
std::vector<GenerationRecord> LoadGenerations(
    const std::filesystem::path& path);

std::string SerializeGenerations(std::span<const GenerationRecord> records);

}  // namespace qra

#endif  // QRA_IO_GENERATIONS_IO_H_
