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

#ifndef WALKLINK_TESTS_SUPPORT_WORLDS_HPP_
#define WALKLINK_TESTS_SUPPORT_WORLDS_HPP_

#include <cstddef>
#include <cstdint>
#include <string>

namespace walklink::testing {

// A topical world: every topic holds `slots` pages that all link to each
// other. For every slot the topics are cut into `groups` random runs of
// `group_size`; the pages of one run share a name ("n<s>g<r>"), so each
// name has `group_size` candidates, told apart by a qualifier token in the
// title. The first pages of a slot's first two runs are twins: same
// qualifier, same text, different topics, a few common inlinks. The short
// name "n<s>" lists both twins and three other pages of the slot. Every
// page also has a one-candidate handle ("h<t>x<s>").
struct WorldOptions {
  std::uint64_t seed = 7;
  std::size_t groups = 4;
  std::size_t group_size = 5;
  std::size_t slots = 4;
  std::size_t body_words = 12;
  std::size_t body_vocabulary = 60;
  bool topical_bodies = false;  // body words drawn per topic instead of shared
  double noise_link = 0.0;     // probability of a cross-topic link
  std::size_t twin_lists = 4;  // list pages linking each page, shared by twins
};

// Documents about one topic: `mentions` name mentions of distinct slots,
// each with its qualifier nearby, then a handle mention of one of their
// pages. With probability `hard_rate` the topic owns a twin page that is
// named by its short name; the handle names that page and is all that
// tells the twins apart.
struct CorpusOptions {
  std::uint64_t seed = 11;
  std::size_t documents = 200;
  std::size_t mentions = 3;
  double hard_rate = 0.0;
  double orphan_rate = 0.0;  // chance that a hard document has no handle
  std::size_t lead_words = 100;  // filler before the first mention
  std::size_t gap_words = 12;    // filler before each name mention
  std::string prefix = "doc";
};

std::string WorldKb(const WorldOptions &options);
std::string WorldCorpus(const WorldOptions &world, const CorpusOptions &options);

// Extra pages and one document for the collective-flip scenario, on top of
// WorldKb(). Mention 0 names a page with a single candidate; mention 1 has
// a rival promoted by its context and a weakly supported gold that is
// linked closely with mention 0's page.
struct FlipScenario {
  std::string kb;      // WorldKb() plus the scenario pages and aliases
  std::string corpus;  // the single flip document
  std::string gold;    // gold of mention 1
  std::string rival;
};
FlipScenario MakeFlipScenario(const WorldOptions &options);

}  // namespace walklink::testing

#endif  // WALKLINK_TESTS_SUPPORT_WORLDS_HPP_
