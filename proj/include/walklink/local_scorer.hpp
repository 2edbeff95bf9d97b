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

#ifndef WALKLINK_LOCAL_SCORER_HPP_
#define WALKLINK_LOCAL_SCORER_HPP_

#include <array>
#include <cstddef>
#include <span>
#include <string>

#include "walklink/tensor.hpp"

namespace walklink {

inline constexpr std::size_t kSparseFeatureCount = 8;
inline constexpr std::size_t kCnnFeatureCount = 6;
inline constexpr std::size_t kLocalFeatureCount = kSparseFeatureCount + kCnnFeatureCount;

// Hand-built mention/candidate features, in this order:
//   0 prior p(e|m)
//   1 log(1 + rank of the prior among the mention's candidates)
//   2 edit similarity of surface and title strings
//   3 surface equals title
//   4 surface contains title or title contains surface
//   5 Jaccard overlap of context-window tokens and title tokens
//   6 Jaccard overlap of context-window tokens and body-prefix tokens
//   7 log(1 + inlink count)
using SparseFeatures = std::array<double, kSparseFeatureCount>;

// Cosines [s.t, c.t, d.t, s.b, c.b, d.b] between mention granularities
// (surface, context, document) and entity granularities (title, body).
using CnnFeatures = std::array<double, kCnnFeatureCount>;

struct MentionVectors {
  Vector surface, context, document;
};

struct EntityVectors {
  Vector title, body;
};

struct SparseInputs {
  double prior = 0.0;
  std::size_t rank = 0;  // 0 for the highest prior
  std::span<const std::string> surface;
  std::span<const std::string> title;
  std::span<const std::string> context;
  std::span<const std::string> body_prefix;
  std::size_t inlinks = 0;
};

SparseFeatures ComputeSparseFeatures(const SparseInputs &in);

CnnFeatures ComputeCnnFeatures(const MentionVectors &mention,
                               const EntityVectors &entity);

// Accumulates d loss / d vectors given d loss / d features.
void CnnFeaturesBackward(const MentionVectors &mention, const EntityVectors &entity,
                         const CnnFeatures &upstream, MentionVectors *grad_mention,
                         EntityVectors *grad_entity);

// The concatenated [sparse; cnn] feature vector.
std::array<double, kLocalFeatureCount> LocalFeatures(const SparseFeatures &sparse,
                                                     const CnnFeatures &cnn);

// sigmoid(weights . [sparse; cnn]).
double Phi(const SparseFeatures &sparse, const CnnFeatures &cnn,
           std::span<const double> weights);

// phi / sum(phi). Throws ContractError for an empty candidate set.
Vector NormalizeScores(std::span<const double> phi);

}  // namespace walklink

#endif  // WALKLINK_LOCAL_SCORER_HPP_
