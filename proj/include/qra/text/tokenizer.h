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

#ifndef QRA_TEXT_TOKENIZER_H_
#define QRA_TEXT_TOKENIZER_H_

#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qra {

// Deterministic text -> token sequence. Implementations are stateless after
// construction and safe to share between threads.
class Tokenizer {
 public:
  virtual ~Tokenizer() = default;
  virtual std::string id() const = 0;
  virtual std::vector<std::string> Tokenize(std::string_view text) const = 0;
};

// Splits on runs of ASCII whitespace.
class WhitespaceTokenizer : public Tokenizer {
 public:
  std::string id() const override { return "whitespace"; }
  std::vector<std::string> Tokenize(std::string_view text) const override;
};

// Byte-level BPE in the GPT-2 style, driven by a merges file ("a b" per
// line, highest priority first). Pre-tokenization follows the GPT-2 split
// rules with every non-ASCII code point treated as a letter.
class BpeTokenizer : public Tokenizer {
 public:
  BpeTokenizer(std::string id,
               std::vector<std::pair<std::string, std::string>> merges);

  static BpeTokenizer FromMergesFile(const std::filesystem::path& path);

  std::string id() const override { return id_; }
  std::vector<std::string> Tokenize(std::string_view text) const override;

  // Pieces produced by the pre-tokenizer, before byte mapping and merges.
  static std::vector<std::string> PreTokenize(std::string_view text);

 private:
  std::vector<std::string> Encode(std::string_view piece) const;

  std::string id_;
  std::map<std::pair<std::string, std::string>, int> ranks_;
};

// "whitespace", or "bpe" with a merges file.
std::unique_ptr<Tokenizer> MakeTokenizer(std::string_view id,
                                         const std::filesystem::path& merges = {});

}  // namespace qra

#endif  // QRA_TEXT_TOKENIZER_H_
