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

#include "walklink/text.hpp"

#include <algorithm>
#include <set>

namespace walklink {
namespace {

bool IsSpace(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

bool IsPunct(unsigned char c) {
  return c < 0x80 && ((c >= '!' && c <= '/') || (c >= ':' && c <= '@') ||
                      (c >= '[' && c <= '`') || (c >= '{' && c <= '~'));
}

char Lower(unsigned char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a')
                                : static_cast<char>(c);
}

}  // namespace

std::vector<Token> Tokenize(std::string_view text) {
  std::vector<Token> tokens;
  Token current;
  bool open = false;
  auto flush = [&](std::size_t end) {
    if (open) {
      current.end = end;
      tokens.push_back(std::move(current));
      current = Token();
      open = false;
    }
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    auto c = static_cast<unsigned char>(text[i]);
    if (IsSpace(c)) {
      flush(i);
    } else if (IsPunct(c)) {
      flush(i);
      tokens.push_back(Token{std::string(1, static_cast<char>(c)), i, i + 1});
    } else {
      if (!open) {
        current.begin = i;
        open = true;
      }
      current.text.push_back(Lower(c));
    }
  }
  flush(text.size());
  return tokens;
}

std::vector<std::string> TokenizeWords(std::string_view text) {
  std::vector<std::string> words;
  for (auto &token : Tokenize(text)) words.push_back(std::move(token.text));
  return words;
}

std::string JoinTokens(std::span<const std::string> tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

std::string NormalizeSurface(std::string_view text) {
  auto words = TokenizeWords(text);
  return JoinTokens(words);
}

std::size_t CodePointToByteOffset(std::string_view text, std::size_t offset) {
  std::size_t seen = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    // Continuation bytes do not start a code point.
    if ((static_cast<unsigned char>(text[i]) & 0xC0) == 0x80) continue;
    if (seen == offset) return i;
    ++seen;
  }
  return seen == offset ? text.size() : std::string_view::npos;
}

std::size_t CodePointLength(std::string_view text) {
  std::size_t n = 0;
  for (char c : text) {
    if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) ++n;
  }
  return n;
}

std::size_t EditDistance(std::string_view a, std::string_view b) {
  std::vector<std::size_t> prev(b.size() + 1), curr(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 0; i < a.size(); ++i) {
    curr[0] = i + 1;
    for (std::size_t j = 0; j < b.size(); ++j) {
      std::size_t substitution = prev[j] + (a[i] == b[j] ? 0 : 1);
      curr[j + 1] = std::min({prev[j + 1] + 1, curr[j] + 1, substitution});
    }
    prev.swap(curr);
  }
  return prev[b.size()];
}

double EditSimilarity(std::string_view a, std::string_view b) {
  std::size_t longest = std::max(a.size(), b.size());
  if (longest == 0) return 1.0;
  return 1.0 - static_cast<double>(EditDistance(a, b)) /
                   static_cast<double>(longest);
}

double Jaccard(std::span<const std::string> a, std::span<const std::string> b) {
  std::set<std::string_view> sa(a.begin(), a.end());
  std::set<std::string_view> sb(b.begin(), b.end());
  if (sa.empty() && sb.empty()) return 0.0;
  std::size_t common = 0;
  for (auto w : sa) common += sb.count(w);
  std::size_t all = sa.size() + sb.size() - common;
  return static_cast<double>(common) / static_cast<double>(all);
}

}  // namespace walklink
