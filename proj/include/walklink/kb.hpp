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

#ifndef WALKLINK_KB_HPP_
#define WALKLINK_KB_HPP_

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace walklink {

// Dense index of a page inside a KnowledgeBase.
using EntityIndex = int;

struct EntityPage {
  std::string id;
  std::string title_text;
  std::string text;
  std::vector<std::string> title;  // tokenized title
  std::vector<std::string> body;   // tokenized text, untruncated
  std::vector<EntityIndex> outlinks;  // sorted, unique
};

struct AliasCandidate {
  std::string entity;
  double prior = 0.0;

  bool operator==(const AliasCandidate &) const = default;
};

struct KbLoadStats {
  std::size_t pages = 0;
  std::size_t aliases = 0;
  std::size_t dangling_links = 0;
  std::size_t dangling_alias_entries = 0;
};

// Hyperlink relatedness of two pages given their sorted inlink sets and the
// number of pages in the KB. Degenerate inputs (an empty set, no common
// inlink, or a smaller set covering the whole KB) score 0.
double LinkRelatedness(std::span<const EntityIndex> inlinks_a,
                       std::span<const EntityIndex> inlinks_b,
                       std::size_t total_entities);

// Immutable, fully indexed knowledge base. All const members are safe to
// call concurrently.
class KnowledgeBase {
 public:
  // Incremental construction. Pages may reference ids added later; links
  // that never resolve are dropped by Build().
  class Builder {
   public:
    // Throws LoadError on a duplicate id.
    Builder &AddPage(std::string id, std::string title, std::string text,
                     std::vector<std::string> outlinks);
    // Throws LoadError on non-positive priors, a prior sum above 1 + 1e-6,
    // or a surface registered twice.
    Builder &AddAlias(std::string_view surface,
                      std::vector<std::pair<std::string, double>> candidates);
    KnowledgeBase Build() &&;

   private:
    struct RawPage {
      std::string id, title, text;
      std::vector<std::string> outlinks;
    };
    std::vector<RawPage> pages_;
    std::unordered_map<std::string, std::size_t> seen_;
    std::vector<std::pair<std::string, std::vector<std::pair<std::string, double>>>>
        aliases_;
    std::unordered_map<std::string, std::size_t> seen_aliases_;
  };

  // Reads the line-delimited JSON format. Malformed lines raise ParseError
  // carrying the line number.
  static KnowledgeBase Load(const std::string &path);
  static KnowledgeBase Parse(std::istream &in);

  // Writes the KB back in the line format: pages sorted by id, then aliases
  // sorted by surface. Dangling links are already gone.
  void Write(std::ostream &out) const;

  std::size_t total_entities() const { return pages_.size(); }
  const EntityPage &page(EntityIndex index) const { return pages_[index]; }
  std::optional<EntityIndex> Find(std::string_view id) const;
  // Throws LookupError for an unknown id.
  EntityIndex Index(std::string_view id) const;

  std::span<const EntityIndex> inlinks(EntityIndex index) const {
    return inlinks_[index];
  }

  double LinkRelatedness(EntityIndex a, EntityIndex b) const;
  double LinkRelatedness(std::string_view a, std::string_view b) const;

  // Candidates for a surface string sorted by prior descending, ties broken
  // by entity id. Unknown surfaces yield an empty list.
  std::vector<AliasCandidate> CandidatePriors(std::string_view surface) const;

  std::size_t alias_count() const { return aliases_.size(); }
  const KbLoadStats &stats() const { return stats_; }

 private:
  std::vector<EntityPage> pages_;
  std::unordered_map<std::string, EntityIndex> index_;
  std::vector<std::vector<EntityIndex>> inlinks_;
  std::unordered_map<std::string, std::vector<AliasCandidate>> aliases_;
  KbLoadStats stats_;
};

}  // namespace walklink

#endif  // WALKLINK_KB_HPP_
