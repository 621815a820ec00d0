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

#include "qra/text/tokenizer.h"

#include <array>
#include <fstream>
#include <limits>
#include <sstream>

#include "qra/error.h"

namespace qra {
namespace {

bool IsSpace(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' ||
         c == '\f';
}

enum class CharClass { kSpace, kLetter, kDigit, kOther };

CharClass Classify(unsigned char c) {
  if (IsSpace(c)) return CharClass::kSpace;
  if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c >= 0x80) {
    return CharClass::kLetter;
  }
  if (c >= '0' && c <= '9') return CharClass::kDigit;
  return CharClass::kOther;
}

std::string EncodeUtf8(unsigned int cp) {
  std::string out;
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
  return out;
}

// GPT-2's reversible byte -> printable code point table.
const std::array<std::string, 256>& ByteSymbols() {
  static const std::array<std::string, 256> table = [] {
    std::array<std::string, 256> t;
    std::array<bool, 256> printable{};
    for (int b = '!'; b <= '~'; ++b) printable[b] = true;
    for (int b = 0xA1; b <= 0xAC; ++b) printable[b] = true;
    for (int b = 0xAE; b <= 0xFF; ++b) printable[b] = true;
    unsigned int next = 256;
    for (int b = 0; b < 256; ++b) {
      t[b] = EncodeUtf8(printable[b] ? static_cast<unsigned int>(b) : next++);
    }
    return t;
  }();
  return table;
}

}  // namespace

std::vector<std::string> WhitespaceTokenizer::Tokenize(
    std::string_view text) const {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && IsSpace(text[i])) ++i;
    std::size_t j = i;
    while (j < text.size() && !IsSpace(text[j])) ++j;
    if (j > i) tokens.emplace_back(text.substr(i, j - i));
    i = j;
  }
  return tokens;
}

BpeTokenizer::BpeTokenizer(
    std::string id, std::vector<std::pair<std::string, std::string>> merges)
    : id_(std::move(id)) {
  for (std::size_t i = 0; i < merges.size(); ++i) {
    ranks_.emplace(std::move(merges[i]), static_cast<int>(i));
  }
}

BpeTokenizer BpeTokenizer::FromMergesFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kIo, "cannot open merges file " + path.string());
  }
  std::vector<std::pair<std::string, std::string>> merges;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.starts_with("#version")) continue;
    std::istringstream fields(line);
    std::string a, b, extra;
    if (!(fields >> a >> b) || (fields >> extra)) {
      throw Error(ErrorCode::kParse, path.string() + ":" +
                                         std::to_string(line_no) +
                                         ": expected two symbols");
    }
    merges.emplace_back(std::move(a), std::move(b));
  }
  return BpeTokenizer("bpe:" + path.filename().string(), std::move(merges));
}

std::vector<std::string> BpeTokenizer::PreTokenize(std::string_view text) {
  static constexpr std::array<std::string_view, 7> kContractions = {
      "'s", "'t", "'re", "'ve", "'m", "'ll", "'d"};
  std::vector<std::string> pieces;
  const std::size_t n = text.size();
  std::size_t i = 0;
  auto cls = [&](std::size_t k) {
    return Classify(static_cast<unsigned char>(text[k]));
  };
  while (i < n) {
    if (text[i] == '\'') {
      bool matched = false;
      for (std::string_view c : kContractions) {
        if (text.substr(i).starts_with(c)) {
          pieces.emplace_back(c);
          i += c.size();
          matched = true;
          break;
        }
      }
      if (matched) continue;
    }
    std::size_t start = i;
    std::size_t j = i;
    if (text[j] == ' ' && j + 1 < n && cls(j + 1) != CharClass::kSpace) ++j;
    if (cls(j) != CharClass::kSpace) {
      const CharClass run = cls(j);
      while (j < n && cls(j) == run) ++j;
      pieces.emplace_back(text.substr(start, j - start));
      i = j;
      continue;
    }
    // Whitespace run; a trailing space before a word is left to prefix it.
    while (j < n && cls(j) == CharClass::kSpace) ++j;
    if (j < n && j - start > 1) --j;
    pieces.emplace_back(text.substr(start, j - start));
    i = j;
  }
  return pieces;
}

std::vector<std::string> BpeTokenizer::Encode(std::string_view piece) const {
  const auto& symbols = ByteSymbols();
  std::vector<std::string> word;
  word.reserve(piece.size());
  for (unsigned char c : piece) word.push_back(symbols[c]);

  while (word.size() > 1) {
    int best_rank = std::numeric_limits<int>::max();
    std::size_t best = 0;
    for (std::size_t k = 0; k + 1 < word.size(); ++k) {
      auto it = ranks_.find({word[k], word[k + 1]});
      if (it != ranks_.end() && it->second < best_rank) {
        best_rank = it->second;
        best = k;
      }
    }
    if (best_rank == std::numeric_limits<int>::max()) break;
    const std::string left = word[best];
    const std::string right = word[best + 1];
    std::vector<std::string> merged;
    merged.reserve(word.size());
    for (std::size_t k = 0; k < word.size(); ++k) {
      if (k + 1 < word.size() && word[k] == left && word[k + 1] == right) {
        merged.push_back(left + right);
        ++k;
      } else {
        merged.push_back(word[k]);
      }
    }
    word = std::move(merged);
  }
  return word;
}

std::vector<std::string> BpeTokenizer::Tokenize(std::string_view text) const {
  std::vector<std::string> tokens;
  for (const std::string& piece : PreTokenize(text)) {
    std::vector<std::string> encoded = Encode(piece);
    tokens.insert(tokens.end(), std::make_move_iterator(encoded.begin()),
                  std::make_move_iterator(encoded.end()));
  }
  return tokens;
}

std::unique_ptr<Tokenizer> MakeTokenizer(std::string_view id,
                                         const std::filesystem::path& merges) {
  if (id == "whitespace") return std::make_unique<WhitespaceTokenizer>();
  if (id == "bpe") {
    if (merges.empty()) {
      throw Error(ErrorCode::kSchema, "bpe tokenizer needs a merges file");
    }
    return std::make_unique<BpeTokenizer>(BpeTokenizer::FromMergesFile(merges));
  }
  throw Error(ErrorCode::kSchema, "unknown tokenizer '" + std::string(id) + "'");
}

}  // namespace qra
