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

#ifndef WALKLINK_CORPUS_HPP_
#define WALKLINK_CORPUS_HPP_

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "walklink/kb.hpp"

namespace walklink {

struct Candidate {
  std::string entity;
  EntityIndex kb_index = -1;
  double prior = 0.0;
};

enum class GoldStatus {
  kNone,     // unlabeled mention
  kInKb,     // gold names a KB page
  kOutOfKb,  // gold names an id the KB does not know
};

struct Mention {
  std::size_t source_index = 0;  // position in the input "mentions" array
  std::size_t ordinal = 0;       // position among retained mentions
  std::size_t char_begin = 0;    // code point offsets as given in the input
  std::size_t char_end = 0;
  std::size_t token_begin = 0;   // tokens of the document covered by the span
  std::size_t token_end = 0;
  std::vector<std::string> surface;
  std::optional<std::string> gold;
  GoldStatus gold_status = GoldStatus::kNone;
  std::vector<Candidate> candidates;  // prior descending, at most max_candidates

  // Slot of the gold entity in `candidates`, or -1.
  int GoldSlot() const;
};

struct Document {
  std::string doc_id;
  std::string text;
  std::vector<std::string> tokens;
  std::vector<Mention> mentions;  // retained mentions only
  // Deduplicated candidates, indexed by first-mention ordinal then rank.
  std::vector<std::string> candidate_union;
  std::vector<EntityIndex> union_kb;
  std::size_t annotated_mentions = 0;
  std::size_t dropped_mentions = 0;

  // Position of an entity in candidate_union, or -1.
  int UnionIndex(std::string_view entity) const;
};

struct MentionSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::optional<std::string> gold;
};

struct CorpusOptions {
  std::size_t max_candidates = 7;
};

struct CorpusStats {
  std::size_t documents = 0;
  std::size_t annotated_mentions = 0;
  std::size_t retained_mentions = 0;
  std::size_t dropped_mentions = 0;
  std::size_t unknown_gold = 0;
};

struct Corpus {
  std::vector<Document> documents;
  CorpusStats stats;
  std::vector<std::string> warnings;
};

// Builds one document: tokenizes the text, resolves spans, looks up and
// prunes candidates, drops mentions without candidates. Spans outside the
// text raise ParseError.
Document MakeDocument(std::string doc_id, std::string text,
                      const std::vector<MentionSpan> &spans,
                      const KnowledgeBase &kb, const CorpusOptions &options,
                      std::vector<std::string> *warnings = nullptr);

Corpus LoadCorpus(const std::string &path, const KnowledgeBase &kb,
                  const CorpusOptions &options = {});
Corpus ParseCorpus(std::istream &in, const KnowledgeBase &kb,
                   const CorpusOptions &options = {});

// Up to `window` tokens on each side of the mention, mention tokens excluded.
std::vector<std::string> ContextWindow(const Document &doc, const Mention &mention,
                                       std::size_t window);

// First min(n, |tokens|) tokens.
std::vector<std::string> DocumentPrefix(const Document &doc, std::size_t n);

}  // namespace walklink

#endif  // WALKLINK_CORPUS_HPP_
