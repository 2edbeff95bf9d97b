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

#include "walklink/synthetic.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

namespace walklink {

TinyWorld MakeTinyWorld(const TinyWorldOptions &options) {
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> word(0, options.vocabulary - 1);
  auto random_word = [&] { return "w" + std::to_string(word(rng)); };
  auto random_words = [&](std::size_t n) {
    std::string text;
    for (std::size_t i = 0; i < n; ++i) {
      if (i) text += ' ';
      text += random_word();
    }
    return text;
  };

  const std::size_t n = std::max(options.entities, options.candidates);
  KnowledgeBase::Builder builder;
  for (std::size_t e = 0; e < n; ++e) {
    std::vector<std::string> links;
    for (std::size_t t = 0; t < n; ++t) {
      if (t != e && unit(rng) < options.link_probability) links.push_back("e" + std::to_string(t));
    }
    builder.AddPage("e" + std::to_string(e), random_words(1 + e % 2),
                    random_words(options.body_tokens), std::move(links));
  }

  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  for (std::size_t m = 0; m < options.mentions; ++m) {
    std::shuffle(pool.begin(), pool.end(), rng);
    std::vector<std::pair<std::string, double>> candidates;
    std::vector<double> weights;
    for (std::size_t c = 0; c < options.candidates; ++c) weights.push_back(0.1 + unit(rng));
    double total = std::accumulate(weights.begin(), weights.end(), 0.0) * 1.05;
    for (std::size_t c = 0; c < options.candidates; ++c) {
      candidates.emplace_back("e" + std::to_string(pool[c]), weights[c] / total);
    }
    builder.AddAlias("m" + std::to_string(m), std::move(candidates));
  }

  TinyWorld world{std::move(builder).Build(), {}, {}};

  for (std::size_t d = 0; d < options.documents; ++d) {
    std::string text;
    std::vector<MentionSpan> spans;
    for (std::size_t m = 0; m < options.mentions; ++m) {
      text += random_words(options.filler_tokens) + ' ';
      std::string surface = "m" + std::to_string(m);
      MentionSpan span;
      span.begin = text.size();
      text += surface;
      span.end = text.size();
      auto priors = world.kb.CandidatePriors(surface);
      span.gold = priors[std::uniform_int_distribution<std::size_t>(0, priors.size() - 1)(rng)]
                      .entity;
      spans.push_back(span);
      text += ' ';
    }
    text += random_words(options.filler_tokens);
    world.documents.push_back(MakeDocument("d" + std::to_string(d), text, spans, world.kb,
                                           CorpusOptions{options.candidates}));
  }

  std::vector<std::string> tokens;
  for (std::size_t w = 0; w < options.vocabulary; ++w) tokens.push_back("w" + std::to_string(w));
  for (std::size_t m = 0; m < options.mentions; ++m) tokens.push_back("m" + std::to_string(m));
  world.embeddings = RandomEmbeddings(tokens, options.embedding_dim, 1.0, rng);
  return world;
}

}  // namespace walklink
