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

#include "qra/io/generations_io.h"

#include <map>
#include <tuple>

#include "json_util.h"
#include "qra/util/format.h"

namespace qra {

using json_util::json;

std::vector<GenerationRecord> ParseGenerations(std::string_view text,
                                               std::string_view source) {
  using Key = std::tuple<std::string, std::map<std::string, std::string>,
                         std::string, int>;
  std::map<Key, std::size_t> seen;
  std::vector<GenerationRecord> records;

  std::size_t start = 0;
  std::size_t line_no = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;

    const std::string where = std::string(source) + ":" + std::to_string(line_no);
    const json obj = json_util::Parse(line, where);
    json_util::ExpectObject(obj, where);
    json_util::RejectUnknownFields(
        obj, {"system", "attributes", "prefix_id", "repetition", "text"}, where);

    GenerationRecord r;
    r.system = json_util::RequireString(obj, "system", where);
    r.text = json_util::RequireString(obj, "text", where);
    const json& prefix = json_util::Require(obj, "prefix_id", where);
    if (prefix.is_string()) {
      r.prefix_id = prefix.get<std::string>();
    } else if (prefix.is_number_integer()) {
      r.prefix_id = std::to_string(prefix.get<long long>());
    } else {
      throw Error(ErrorCode::kSchema,
                  where + ".prefix_id: expected a string or integer");
    }
    const json& rep = json_util::Require(obj, "repetition", where);
    if (!rep.is_number_integer() || rep.get<long long>() < 0) {
      throw Error(ErrorCode::kSchema,
                  where + ".repetition: expected a non-negative integer");
    }
    r.repetition = rep.get<int>();
    if (obj.contains("attributes")) {
      const json& attrs = obj.at("attributes");
      json_util::ExpectObject(attrs, where + ".attributes");
      for (const auto& [name, value] : attrs.items()) {
        if (!value.is_string()) {
          throw Error(ErrorCode::kSchema,
                      where + ".attributes." + name + ": expected a string");
        }
        r.attributes[name] = value.get<std::string>();
      }
    }

    auto [it, inserted] =
        seen.emplace(Key{r.system, r.attributes, r.prefix_id, r.repetition},
                     line_no);
    if (!inserted) {
      throw Error(ErrorCode::kDuplicateRecord,
                  where + ": record (" + r.system + ", " +
                      ConditionId(r.attributes) + ", prefix " + r.prefix_id +
                      ", repetition " + std::to_string(r.repetition) +
                      ") already given on line " + std::to_string(it->second));
    }
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<GenerationRecord> LoadGenerations(
    const std::filesystem::path& path) {
  return ParseGenerations(ReadFile(path), path.string());
}

std::string SerializeGenerations(std::span<const GenerationRecord> records) {
  std::string out;
  for (const GenerationRecord& r : records) {
    json obj{{"system", r.system},
             {"attributes", r.attributes},
             {"prefix_id", r.prefix_id},
             {"repetition", r.repetition},
             {"text", r.text}};
    out += obj.dump();
    out += '\n';
  }
  return out;
}

}  // namespace qra
