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

#include "worlds.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>
#include <vector>

#include "json.hpp"

namespace walklink::testing {
namespace {

using json = nlohmann::ordered_json;

std::string Id(std::size_t topic, std::size_t slot) {
  return "e" + std::to_string(topic) + "_" + std::to_string(slot);
}
std::string Name(std::size_t slot, std::size_t group) {
  return "n" + std::to_string(slot) + "g" + std::to_string(group);
}
std::string ShortName(std::size_t slot) { return "n" + std::to_string(slot); }
// Fixed width, so that string features cannot tell topics apart.
std::string Qualifier(std::size_t topic, std::size_t slot) {
  std::string t = std::to_string(topic);
  return "q" + std::string(t.size() < 3 ? 3 - t.size() : 0, '0') + t + "x" +
         std::to_string(slot);
}

std::string Handle(std::size_t topic, std::size_t slot) {
  return "h" + std::to_string(topic) + "x" + std::to_string(slot);
}

std::string PageLine(const std::string &id, const std::string &title, const std::string &text,
                     const std::vector<std::string> &outlinks) {
  json page = {{"type", "page"}, {"id", id}, {"title", title}, {"text", text},
               {"outlinks", outlinks}};
  return page.dump() + "\n";
}

std::string AliasLine(const std::string &surface,
                      const std::vector<std::pair<std::string, double>> &candidates) {
  json list = json::array();
  for (const auto &[id, prior] : candidates) list.push_back({id, prior});
  json alias = {{"type", "alias"}, {"surface", surface}, {"candidates", list}};
  return alias.dump() + "\n";
}

// Text builder that tracks mention offsets.
class Text {
 public:
  void Word(const std::string &w) {
    if (!text_.empty()) text_ += ' ';
    text_ += w;
  }
  json Mention(const std::string &surface, const std::string &gold) {
    if (!text_.empty()) text_ += ' ';
    std::size_t start = text_.size();
    text_ += surface;
    return {{"start", start}, {"end", text_.size()}, {"gold", gold}};
  }
  const std::string &str() const { return text_; }

 private:
  std::string text_;
};

// Which alias names each page. For every slot the topics are shuffled and
// cut into runs of `group_size`; a run shares one name. The first pages of
// a slot's first two runs are twins with the same qualifier and text.
struct Layout {
  std::vector<std::vector<std::size_t>> alias_of;  // [slot][topic] -> run index
  std::vector<std::vector<std::vector<std::size_t>>> runs;  // [slot][run] -> topics

  explicit Layout(const WorldOptions &o) {
    std::mt19937_64 rng(o.seed * 7919 + 1);
    const std::size_t topics = o.groups * o.group_size;
    alias_of.assign(o.slots, std::vector<std::size_t>(topics));
    runs.resize(o.slots);
    for (std::size_t s = 0; s < o.slots; ++s) {
      std::vector<std::size_t> order(topics);
      std::iota(order.begin(), order.end(), 0);
      std::shuffle(order.begin(), order.end(), rng);
      for (std::size_t r = 0; r < o.groups; ++r) {
        runs[s].emplace_back(order.begin() + r * o.group_size,
                             order.begin() + (r + 1) * o.group_size);
        for (std::size_t t : runs[s].back()) alias_of[s][t] = r;
      }
    }
  }

  bool twin(std::size_t slot, std::size_t topic) const {
    return runs[slot].size() >= 2 &&
           (runs[slot][0][0] == topic || runs[slot][1][0] == topic);
  }
  // Candidates of the short name of a slot: both twins first.
  std::vector<std::size_t> short_run(std::size_t slot) const {
    std::vector<std::size_t> out = {runs[slot][0][0], runs[slot][1][0]};
    for (std::size_t r = 2; r < runs[slot].size(); ++r) out.push_back(runs[slot][r][0]);
    for (std::size_t k = 1; out.size() < runs[slot][0].size(); ++k) {
      out.push_back(runs[slot][0][k]);
    }
    return out;
  }
  // Whose title and text the page of `topic` at `slot` carries.
  std::size_t source(std::size_t slot, std::size_t topic) const {
    return twin(slot, topic) ? runs[slot][0][0] : topic;
  }
};

}  // namespace

std::string WorldKb(const WorldOptions &o) {
  std::mt19937_64 rng(o.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t topics = o.groups * o.group_size;
  const Layout layout(o);
  std::vector<std::vector<std::string>> texts(topics, std::vector<std::string>(o.slots));
  for (std::size_t t = 0; t < topics; ++t) {
    for (std::size_t s = 0; s < o.slots; ++s) {
      std::string text;
      std::uniform_int_distribution<std::size_t> word(0, o.body_vocabulary - 1);
      const std::string prefix = o.topical_bodies ? " t" + std::to_string(t) + "w" : " w";
      for (std::size_t w = 0; w < o.body_words; ++w) text += prefix + std::to_string(word(rng));
      texts[t][s] = text;
    }
  }
  std::ostringstream out;
  for (std::size_t t = 0; t < topics; ++t) {
    for (std::size_t s = 0; s < o.slots; ++s) {
      const std::size_t src = layout.source(s, t);
      std::string title = Name(s, layout.alias_of[s][t]) + " " + Qualifier(src, s);
      std::vector<std::string> links;
      for (std::size_t u = 0; u < topics; ++u) {
        for (std::size_t r = 0; r < o.slots; ++r) {
          if (u == t ? r != s : unit(rng) < o.noise_link) links.push_back(Id(u, r));
        }
      }
      out << PageLine(Id(t, s), title, title + texts[src][s], links);
    }
  }
  for (std::size_t s = 0; s < o.slots; ++s) {
    if (layout.runs[s].size() < 2) continue;
    // Every page gets the same number of list inlinks; twins share theirs.
    const std::vector<std::string> twins = {Id(layout.runs[s][0][0], s),
                                            Id(layout.runs[s][1][0], s)};
    for (std::size_t k = 0; k < o.twin_lists; ++k) {
      out << PageLine("list" + std::to_string(s) + "_" + std::to_string(k), "list", "list",
                      twins);
      for (std::size_t t = 0; t < topics; ++t) {
        if (layout.twin(s, t)) continue;
        out << PageLine("list" + std::to_string(s) + "_" + std::to_string(k) + "_" +
                            std::to_string(t),
                        "list", "list", {Id(t, s)});
      }
    }
    std::vector<std::pair<std::string, double>> candidates;
    for (std::size_t t : layout.short_run(s)) {
      candidates.emplace_back(Id(t, s), 0.9 / static_cast<double>(o.group_size));
    }
    out << AliasLine(ShortName(s), candidates);
  }
  for (std::size_t s = 0; s < o.slots; ++s) {
    for (std::size_t r = 0; r < o.groups; ++r) {
      std::vector<std::pair<std::string, double>> candidates;
      for (std::size_t t : layout.runs[s][r]) {
        candidates.emplace_back(Id(t, s), 0.9 / static_cast<double>(o.group_size));
      }
      out << AliasLine(Name(s, r), candidates);
    }
  }
  for (std::size_t t = 0; t < topics; ++t) {
    for (std::size_t s = 0; s < o.slots; ++s) {
      out << AliasLine(Handle(t, s), {{Id(t, s), 1.0}});
    }
  }
  return out.str();
}

std::string WorldCorpus(const WorldOptions &world, const CorpusOptions &o) {
  std::mt19937_64 rng(o.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t topics = world.groups * world.group_size;
  const Layout layout(world);
  std::uniform_int_distribution<std::size_t> pick_topic(0, topics - 1);
  std::uniform_int_distribution<std::size_t> filler(0, 49);
  auto fill = [&](Text &text, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) text.Word("f" + std::to_string(filler(rng)));
  };

  std::ostringstream out;
  for (std::size_t d = 0; d < o.documents; ++d) {
    std::size_t topic = pick_topic(rng);
    std::size_t hard = world.slots;  // none
    if (world.groups >= 2 && unit(rng) < o.hard_rate) {
      hard = std::uniform_int_distribution<std::size_t>(0, world.slots - 1)(rng);
      topic = layout.runs[hard][unit(rng) < 0.5 ? 0 : 1][0];
    }
    std::vector<std::size_t> slots(world.slots);
    std::iota(slots.begin(), slots.end(), 0);
    std::shuffle(slots.begin(), slots.end(), rng);
    if (hard < world.slots) {
      std::iter_swap(slots.begin(), std::find(slots.begin(), slots.end(), hard));
    }
    slots.resize(std::min(o.mentions, world.slots));
    std::shuffle(slots.begin(), slots.end(), rng);
    const std::size_t named =
        hard < world.slots ? hard
                           : slots[std::uniform_int_distribution<std::size_t>(
                                 0, slots.size() - 1)(rng)];

    Text text;
    json mentions = json::array();
    fill(text, o.lead_words);
    for (std::size_t s : slots) {
      fill(text, o.gap_words);
      text.Word(Qualifier(layout.source(s, topic), s));
      fill(text, 1);
      std::string name = s == hard ? ShortName(s) : Name(s, layout.alias_of[s][topic]);
      mentions.push_back(text.Mention(name, Id(topic, s)));
      fill(text, 2);
    }
    if (hard == world.slots || unit(rng) >= o.orphan_rate) {
      fill(text, o.gap_words);
      mentions.push_back(text.Mention(Handle(topic, named), Id(topic, named)));
      fill(text, 2);
    }
    json doc = {{"doc_id", o.prefix + std::to_string(d)}, {"text", text.str()},
                {"mentions", mentions}};
    out << doc.dump() << "\n";
  }
  return out.str();
}

FlipScenario MakeFlipScenario(const WorldOptions &options) {
  FlipScenario scenario;
  std::ostringstream kb;
  kb << WorldKb(options);

  const std::size_t hubs = 10;
  for (std::size_t h = 0; h < hubs; ++h) {
    kb << PageLine("flip_h" + std::to_string(h), "hub " + std::to_string(h), "hub page",
                   {"flip_a", "flip_b"});
  }
  kb << PageLine("flip_z", "other", "other page", {"flip_c"});
  kb << PageLine("flip_a", "ka qa", "ka qa", {});
  kb << PageLine("flip_b", "kb qb", "kb qb", {});
  kb << PageLine("flip_c", "kb qc", "kb qc", {});
  kb << AliasLine("ka", {{"flip_a", 1.0}});
  kb << AliasLine("kb", {{"flip_c", 0.9}, {"flip_b", 0.1}});
  scenario.kb = kb.str();

  // The context names the rival, not the gold.
  Text text;
  json mentions = json::array();
  for (const char *w : {"f1", "qa"}) text.Word(w);
  mentions.push_back(text.Mention("ka", "flip_a"));
  for (const char *w : {"f2", "qc"}) text.Word(w);
  mentions.push_back(text.Mention("kb", "flip_b"));
  text.Word("f3");
  json doc = {{"doc_id", "flip"}, {"text", text.str()}, {"mentions", mentions}};
  scenario.corpus = doc.dump() + "\n";
  scenario.gold = "flip_b";
  scenario.rival = "flip_c";
  return scenario;
}

}  // namespace walklink::testing
