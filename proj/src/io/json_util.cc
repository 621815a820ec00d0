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

#include "json_util.h"

#include <algorithm>

namespace qra::json_util {

json Parse(std::string_view text, std::string_view source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // e.byte is 1-based and points just past the offending character.
    const std::size_t offset =
        std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < offset; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw Error(ErrorCode::kParse, std::string(source) + ":" +
                                       std::to_string(line) + ":" +
                                       std::to_string(column) + ": " +
                                       e.what());
  }
}

void ExpectObject(const json& value, const std::string& path) {
  if (!value.is_object()) {
    throw Error(ErrorCode::kSchema, path + ": expected an object");
  }
}

void ExpectArray(const json& value, const std::string& path) {
  if (!value.is_array()) {
    throw Error(ErrorCode::kSchema, path + ": expected an array");
  }
}

const json& Require(const json& obj, std::string_view field,
                    const std::string& path) {
  auto it = obj.find(field);
  if (it == obj.end()) {
    throw Error(ErrorCode::kSchema,
                path + "." + std::string(field) + ": missing field");
  }
  return *it;
}

std::string RequireString(const json& obj, std::string_view field,
                          const std::string& path) {
  const json& v = Require(obj, field, path);
  if (!v.is_string()) {
    throw Error(ErrorCode::kSchema,
                path + "." + std::string(field) + ": expected a string");
  }
  return v.get<std::string>();
}

double RequireNumber(const json& obj, std::string_view field,
                     const std::string& path) {
  const json& v = Require(obj, field, path);
  if (!v.is_number()) {
    throw Error(ErrorCode::kSchema,
                path + "." + std::string(field) + ": expected a number");
  }
  return v.get<double>();
}

void RejectUnknownFields(const json& obj,
                         std::initializer_list<std::string_view> known,
                         const std::string& path) {
  for (const auto& [key, _] : obj.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw Error(ErrorCode::kSchema, path + "." + key + ": unknown field");
    }
  }
}

}  // namespace qra::json_util
