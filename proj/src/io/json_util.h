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

#ifndef QRA_IO_JSON_UTIL_H_
#define QRA_IO_JSON_UTIL_H_

#include <string>
#include <string_view>

#include "json.hpp"
#include "qra/error.h"

namespace qra::json_util {

using nlohmann::json;

// Parses `text`, turning parse failures into Error(kParse) with line:column.
json Parse(std::string_view text, std::string_view source);

// Typed field access with a dotted path in error messages.
const json& Require(const json& obj, std::string_view field,
                    const std::string& path);
std::string RequireString(const json& obj, std::string_view field,
                          const std::string& path);
double RequireNumber(const json& obj, std::string_view field,
                     const std::string& path);
void ExpectObject(const json& value, const std::string& path);
void ExpectArray(const json& value, const std::string& path);
void RejectUnknownFields(const json& obj,
                         std::initializer_list<std::string_view> known,
                         const std::string& path);

}  // namespace qra::json_util

#endif  // QRA_IO_JSON_UTIL_H_
