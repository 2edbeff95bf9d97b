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

#ifndef WALKLINK_SYNTHETIC_HPP_
#define WALKLINK_SYNTHETIC_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "walklink/corpus.hpp"
#include "walklink/encoder.hpp"
#include "walklink/kb.hpp"

namespace walklink {

// Small random worlds for gradient checks and property tests.
struct TinyWorldOptions {
  std::uint64_t seed = 1;
  std::size_t documents = 1;
  std::size_t mentions = 3;
  std::size_t candidates = 3;
  std::size_t entities = 6;  // pages in the KB
  std::size_t vocabulary = 12;
  std::size_t embedding_dim = 4;
  std::size_t body_tokens = 6;
  std::size_t filler_tokens = 4;  // words between mentions
  double link_probability = 0.5;
};

struct TinyWorld {
  KnowledgeBase kb;
  std::vector<Document> documents;
  EmbeddingTable embeddings;
};

// Pages e0..e{n-1} with random titles, bodies and outlinks; mention surface
// "m<i>" has `candidates` random pages as candidates with random priors.
TinyWorld MakeTinyWorld(const TinyWorldOptions &options);

}  // namespace walklink

#endif  // WALKLINK_SYNTHETIC_HPP_
