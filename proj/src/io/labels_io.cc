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

#include "qra/io/labels_io.h"

#include "json_util.h"
#include "qra/util/format.h"

namespace qra {

using json_util::json;

namespace {

std::vector<std::string> StringList(const json& obj, std::string_view field,
                                    const std::string& path) {
  const json& arr = json_util::Require(obj, field, path);
  const std::string where = path + "." + std::string(field);
  json_util::ExpectArray(arr, where);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_string()) {
      throw Error(ErrorCode::kSchema,
                  where + "[" + std::to_string(i) + "]: expected a string");
    }
    out.push_back(arr[i].get<std::string>());
  }
  return out;
}

LabelMatrix ParseMatrix(const json& obj, const std::vector<std::string>& items,
                        const std::vector<std::string>& categories,
                        const std::string& path) {
  json_util::ExpectObject(obj, path);
  LabelMatrix m;
  m.items = items;
  m.categories = categories;
  m.raters = StringList(obj, "raters", path);
  const json& rows = json_util::Require(obj, "labels", path);
  json_util::ExpectArray(rows, path + ".labels");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string row_path = path + ".labels[" + std::to_string(i) + "]";
    json_util::ExpectArray(rows[i], row_path);
    std::vector<std::optional<std::string>> row;
    for (std::size_t r = 0; r < rows[i].size(); ++r) {
      const json& l = rows[i][r];
      if (l.is_null()) {
        row.emplace_back();
      } else if (l.is_string()) {
        row.emplace_back(l.get<std::string>());
      } else {
        throw Error(ErrorCode::kSchema, row_path + "[" + std::to_string(r) +
                                            "]: expected a string or null");
      }
    }
    m.labels.push_back(std::move(row));
  }
  try {
    m.Validate();
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
  return m;
}

}  // namespace

std::vector<LabelSet> ParseLabelSets(std::string_view text,
                                     std::string_view source) {
  const json doc = json_util::Parse(text, source);
  const std::string root(source);
  json_util::ExpectObject(doc, root);
  const json& sets = json_util::Require(doc, "label_sets", root);
  json_util::ExpectArray(sets, root + ".label_sets");
  std::vector<LabelSet> out;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const std::string path = root + ".label_sets[" + std::to_string(i) + "]";
    const json& s = sets[i];
    json_util::ExpectObject(s, path);
    LabelSet set;
    set.id = json_util::RequireString(s, "id", path);
    const auto items = StringList(s, "items", path);
    const auto categories = StringList(s, "categories", path);
    set.original = ParseMatrix(json_util::Require(s, "original", path), items,
                               categories, path + ".original");
    set.reproduction =
        ParseMatrix(json_util::Require(s, "reproduction", path), items,
                    categories, path + ".reproduction");
    out.push_back(std::move(set));
  }
  return out;
}

std::vector<LabelSet> LoadLabelSets(const std::filesystem::path& path) {
  return ParseLabelSets(ReadFile(path), path.string());
}

}  // namespace qra
