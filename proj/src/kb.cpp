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

#include "walklink/kb.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include "json.hpp"
#include "walklink/errors.hpp"
#include "walklink/text.hpp"

namespace walklink {

using json = nlohmann::json;

double LinkRelatedness(std::span<const EntityIndex> inlinks_a,
                       std::span<const EntityIndex> inlinks_b,
                       std::size_t total_entities) {
  std::size_t size_a = inlinks_a.size();
  std::size_t size_b = inlinks_b.size();
  if (size_a == 0 || size_b == 0) return 0.0;

  std::size_t common = 0;
  auto a = inlinks_a.begin();
  auto b = inlinks_b.begin();
  while (a != inlinks_a.end() && b != inlinks_b.end()) {
    if (*a < *b) {
      ++a;
    } else if (*b < *a) {
      ++b;
    } else {
      ++common;
      ++a;
      ++b;
    }
  }
  if (common == 0) return 0.0;

  double larger = static_cast<double>(std::max(size_a, size_b));
  double smaller = static_cast<double>(std::min(size_a, size_b));
  double denominator =
      std::log(static_cast<double>(total_entities)) - std::log(smaller);
  if (!(denominator > 0.0)) return 0.0;
  double score =
      1.0 - (std::log(larger) - std::log(static_cast<double>(common))) /
                denominator;
  return std::clamp(score, 0.0, 1.0);
}

KnowledgeBase::Builder &KnowledgeBase::Builder::AddPage(
    std::string id, std::string title, std::string text,
    std::vector<std::string> outlinks) {
  if (seen_.count(id) != 0) throw LoadError("duplicate entity id '" + id + "'");
  seen_.emplace(id, pages_.size());
  pages_.push_back(RawPage{std::move(id), std::move(title), std::move(text),
                           std::move(outlinks)});
  return *this;
}

KnowledgeBase::Builder &KnowledgeBase::Builder::AddAlias(
    std::string_view surface,
    std::vector<std::pair<std::string, double>> candidates) {
  std::string key = NormalizeSurface(surface);
  if (seen_aliases_.count(key) != 0) {
    throw LoadError("alias '" + key + "' defined twice");
  }
  double total = 0.0;
  for (const auto &[entity, prior] : candidates) {
    if (!(prior > 0.0) || !std::isfinite(prior)) {
      throw LoadError("alias '" + key + "': prior for '" + entity +
                      "' must be positive");
    }
    total += prior;
  }
  if (total > 1.0 + 1e-6) {
    throw LoadError("alias '" + key + "': priors sum to " +
                    std::to_string(total));
  }
  seen_aliases_.emplace(key, aliases_.size());
  aliases_.emplace_back(std::move(key), std::move(candidates));
  return *this;
}

KnowledgeBase KnowledgeBase::Builder::Build() && {
  KnowledgeBase kb;
  kb.pages_.reserve(pages_.size());
  for (std::size_t i = 0; i < pages_.size(); ++i) {
    kb.index_.emplace(pages_[i].id, static_cast<EntityIndex>(i));
  }
  kb.inlinks_.resize(pages_.size());
  for (auto &raw : pages_) {
    EntityPage page;
    page.id = std::move(raw.id);
    page.title = TokenizeWords(raw.title);
    page.body = TokenizeWords(raw.text);
    page.title_text = std::move(raw.title);
    page.text = std::move(raw.text);
    for (const auto &target : raw.outlinks) {
      auto it = kb.index_.find(target);
      if (it == kb.index_.end()) {
        ++kb.stats_.dangling_links;
        continue;
      }
      page.outlinks.push_back(it->second);
    }
    std::sort(page.outlinks.begin(), page.outlinks.end());
    page.outlinks.erase(std::unique(page.outlinks.begin(), page.outlinks.end()),
                        page.outlinks.end());
    kb.pages_.push_back(std::move(page));
  }
  for (std::size_t source = 0; source < kb.pages_.size(); ++source) {
    for (EntityIndex target : kb.pages_[source].outlinks) {
      kb.inlinks_[target].push_back(static_cast<EntityIndex>(source));
    }
  }
  // Sources are visited in increasing order, so each inlink list is sorted.

  for (auto &[surface, entries] : aliases_) {
    std::vector<AliasCandidate> resolved;
    for (auto &[entity, prior] : entries) {
      if (kb.index_.count(entity) == 0) {
        ++kb.stats_.dangling_alias_entries;
        continue;
      }
      resolved.push_back(AliasCandidate{std::move(entity), prior});
    }
    std::sort(resolved.begin(), resolved.end(),
              [](const AliasCandidate &a, const AliasCandidate &b) {
                if (a.prior != b.prior) return a.prior > b.prior;
                return a.entity < b.entity;
              });
    kb.aliases_.emplace(surface, std::move(resolved));
  }
  kb.stats_.pages = kb.pages_.size();
  kb.stats_.aliases = kb.aliases_.size();
  return kb;
}

KnowledgeBase KnowledgeBase::Load(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open knowledge base '" + path + "'");
  return Parse(in);
}

KnowledgeBase KnowledgeBase::Parse(std::istream &in) {
  Builder builder;
  std::string line;
  long number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error &e) {
      throw ParseError(std::string("invalid JSON: ") + e.what(), number);
    }
    try {
      if (!record.is_object()) throw ParseError("record is not an object", number);
      const std::string type = record.at("type").get<std::string>();
      if (type == "page") {
        std::vector<std::string> outlinks;
        if (record.contains("outlinks")) {
          outlinks = record.at("outlinks").get<std::vector<std::string>>();
        }
        builder.AddPage(record.at("id").get<std::string>(),
                        record.value("title", std::string()),
                        record.value("text", std::string()),
                        std::move(outlinks));
      } else if (type == "alias") {
        std::vector<std::pair<std::string, double>> candidates;
        for (const auto &entry : record.at("candidates")) {
          if (!entry.is_array() || entry.size() != 2) {
            throw ParseError("alias candidate must be [id, prior]", number);
          }
          candidates.emplace_back(entry[0].get<std::string>(),
                                  entry[1].get<double>());
        }
        builder.AddAlias(record.at("surface").get<std::string>(),
                         std::move(candidates));
      } else {
        throw ParseError("unknown record type '" + type + "'", number);
      }
    } catch (const json::exception &e) {
      throw ParseError(std::string("bad record: ") + e.what(), number);
    } catch (const LoadError &e) {
      throw LoadError("line " + std::to_string(number) + ": " + e.what());
    }
  }
  return std::move(builder).Build();
}

void KnowledgeBase::Write(std::ostream &out) const {
  std::vector<EntityIndex> order(pages_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<EntityIndex>(i);
  std::sort(order.begin(), order.end(), [&](EntityIndex a, EntityIndex b) {
    return pages_[a].id < pages_[b].id;
  });
  for (EntityIndex i : order) {
    const auto &page = pages_[i];
    std::vector<std::string> links;
    for (EntityIndex target : page.outlinks) links.push_back(pages_[target].id);
    std::sort(links.begin(), links.end());
    json record = {{"type", "page"},
                   {"id", page.id},
                   {"title", page.title_text},
                   {"text", page.text},
                   {"outlinks", links}};
    out << record.dump() << '\n';
  }
  std::vector<const std::string *> surfaces;
  for (const auto &entry : aliases_) surfaces.push_back(&entry.first);
  std::sort(surfaces.begin(), surfaces.end(),
            [](const std::string *a, const std::string *b) { return *a < *b; });
  for (const std::string *surface : surfaces) {
    json candidates = json::array();
    for (const auto &c : aliases_.at(*surface)) {
      candidates.push_back(json::array({c.entity, c.prior}));
    }
    json record = {{"type", "alias"}, {"surface", *surface}, {"candidates", candidates}};
    out << record.dump() << '\n';
  }
}

std::optional<EntityIndex> KnowledgeBase::Find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

EntityIndex KnowledgeBase::Index(std::string_view id) const {
  auto found = Find(id);
  if (!found) throw LookupError("unknown entity '" + std::string(id) + "'");
  return *found;
}

double KnowledgeBase::LinkRelatedness(EntityIndex a, EntityIndex b) const {
  return walklink::LinkRelatedness(inlinks_[a], inlinks_[b], pages_.size());
}

double KnowledgeBase::LinkRelatedness(std::string_view a,
                                      std::string_view b) const {
  return LinkRelatedness(Index(a), Index(b));
}

std::vector<AliasCandidate> KnowledgeBase::CandidatePriors(
    std::string_view surface) const {
  auto it = aliases_.find(NormalizeSurface(surface));
  if (it == aliases_.end()) return {};
  return it->second;
}

}  // namespace walklink
