// Copyright 2026 The Walklink Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef WALKLINK_TEXT_HPP_
#define WALKLINK_TEXT_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace walklink {

// A token and its byte range [begin, end) in the source text.
struct Token {
  std::string text;
  std::size_t begin = 0;
  std::size_t end = 0;
};

// Lowercases ASCII letters, splits on whitespace and emits every ASCII
// punctuation character as a token of its own. Bytes >= 0x80 are kept
// verbatim so UTF-8 sequences stay intact.
std::vector<Token> Tokenize(std::string_view text);

// Token strings only.
std::vector<std::string> TokenizeWords(std::string_view text);

// Canonical form of a surface string: its tokens joined by single spaces.
// Alias lookup keys and mention surfaces both go through this.
std::string NormalizeSurface(std::string_view text);

std::string JoinTokens(std::span<const std::string> tokens);

// Maps code point offsets to byte offsets. Returns npos for an offset past
// the end of the text.
std::size_t CodePointToByteOffset(std::string_view text, std::size_t offset);
std::size_t CodePointLength(std::string_view text);

// Levenshtein distance over bytes.
std::size_t EditDistance(std::string_view a, std::string_view b);

// 1 - distance / max(|a|, |b|); two empty strings are identical.
double EditSimilarity(std::string_view a, std::string_view b);

// |A n B| / |A u B| over token sets. Zero when both are empty.
double Jaccard(std::span<const std::string> a, std::span<const std::string> b);

}  // namespace walklink

#endif  // WALKLINK_TEXT_HPP_
