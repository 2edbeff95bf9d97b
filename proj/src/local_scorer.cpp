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

#include "walklink/local_scorer.hpp"

#include <cmath>

#include "walklink/errors.hpp"
#include "walklink/text.hpp"

namespace walklink {

SparseFeatures ComputeSparseFeatures(const SparseInputs &in) {
  const std::string surface = JoinTokens(in.surface);
  const std::string title = JoinTokens(in.title);
  SparseFeatures f{};
  f[0] = in.prior;
  f[1] = std::log1p(static_cast<double>(in.rank));
  f[2] = EditSimilarity(surface, title);
  f[3] = surface == title ? 1.0 : 0.0;
  bool nonempty = !surface.empty() && !title.empty();
  f[4] = nonempty && (title.find(surface) != std::string::npos ||
                      surface.find(title) != std::string::npos)
             ? 1.0
             : 0.0;
  f[5] = Jaccard(in.context, in.title);
  f[6] = Jaccard(in.context, in.body_prefix);
  f[7] = std::log1p(static_cast<double>(in.inlinks));
  return f;
}

CnnFeatures ComputeCnnFeatures(const MentionVectors &m, const EntityVectors &e) {
  return {Cosine(m.surface, e.title), Cosine(m.context, e.title),
          Cosine(m.document, e.title), Cosine(m.surface, e.body),
          Cosine(m.context, e.body),   Cosine(m.document, e.body)};
}

void CnnFeaturesBackward(const MentionVectors &m, const EntityVectors &e,
                         const CnnFeatures &g, MentionVectors *gm,
                         EntityVectors *ge) {
  CosineBackward(m.surface, e.title, g[0], gm->surface, ge->title);
  CosineBackward(m.context, e.title, g[1], gm->context, ge->title);
  CosineBackward(m.document, e.title, g[2], gm->document, ge->title);
  CosineBackward(m.surface, e.body, g[3], gm->surface, ge->body);
  CosineBackward(m.context, e.body, g[4], gm->context, ge->body);
  CosineBackward(m.document, e.body, g[5], gm->document, ge->body);
}

std::array<double, kLocalFeatureCount> LocalFeatures(const SparseFeatures &sparse,
                                                     const CnnFeatures &cnn) {
  std::array<double, kLocalFeatureCount> x{};
  for (std::size_t i = 0; i < kSparseFeatureCount; ++i) x[i] = sparse[i];
  for (std::size_t i = 0; i < kCnnFeatureCount; ++i) x[kSparseFeatureCount + i] = cnn[i];
  return x;
}

double Phi(const SparseFeatures &sparse, const CnnFeatures &cnn,
           std::span<const double> weights) {
  if (weights.size() != kLocalFeatureCount) {
    throw ContractError("local weight vector must have " +
                        std::to_string(kLocalFeatureCount) + " entries");
  }
  auto x = LocalFeatures(sparse, cnn);
  return Sigmoid(Dot(weights, x));
}

Vector NormalizeScores(std::span<const double> phi) {
  if (phi.empty()) throw ContractError("cannot normalize an empty candidate set");
  double total = 0.0;
  for (double p : phi) total += p;
  Vector out(phi.begin(), phi.end());
  for (double &p : out) p /= total;
  return out;
}

}  // namespace walklink
