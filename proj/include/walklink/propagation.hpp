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

#ifndef WALKLINK_PROPAGATION_HPP_
#define WALKLINK_PROPAGATION_HPP_

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "walklink/encoder.hpp"
#include "walklink/local_scorer.hpp"
#include "walklink/tensor.hpp"

namespace walklink {

// How raw entity-to-entity scores are produced before normalization.
enum class TransitionMode {
  kFull,      // hyperlink relatedness + semantic relatedness
  kLinkOnly,  // hyperlink relatedness only
  kLearned,   // trainable score of the entity vectors, no KB term
};

std::string_view ModeName(TransitionMode mode);
// Throws ConfigError on an unknown name.
TransitionMode ParseMode(std::string_view name);

// Which candidate entities may exchange evidence. The neighbors of entity j
// are the candidates of every mention that does not list j, so j never
// feeds its own competitors. An entity listed by two mentions can still
// receive from the competitors it has under either of them.
class NeighborMask {
 public:
  // `mention_rows[m]` lists the candidate rows of mention m.
  static NeighborMask Build(std::size_t dim,
                            const std::vector<std::vector<int>> &mention_rows);

  std::size_t dim() const { return neighbors_.size(); }
  // Rows i that receive evidence from column j, ascending.
  std::span<const int> neighbors(std::size_t j) const { return neighbors_[j]; }
  bool contains(std::size_t i, std::size_t j) const;

 private:
  std::vector<std::vector<int>> neighbors_;
};

struct TransitionEntry {
  int row = 0;
  double value = 0.0;
};

// Sparse column-stochastic matrix. Column j holds the outgoing distribution
// of candidate j; a column whose raw scores are all zero stays empty.
class TransitionMatrix {
 public:
  TransitionMatrix() = default;
  explicit TransitionMatrix(std::size_t dim)
      : columns_(dim), column_sums_(dim, 0.0) {}

  // Column j gets max(0, score(j, i)) for every neighbor i, normalized.
  static TransitionMatrix FromScores(
      const NeighborMask &mask, const std::function<double(int, int)> &score);

  // Dense row-major input, for tests and oracles. Columns are used as given.
  static TransitionMatrix FromDense(std::size_t dim, std::span<const double> values);

  std::size_t dim() const { return columns_.size(); }
  std::span<const TransitionEntry> column(std::size_t j) const { return columns_[j]; }
  // Sum of the raw scores of column j before normalization.
  double column_sum(std::size_t j) const { return column_sums_[j]; }
  bool IsZeroColumn(std::size_t j) const;
  double at(std::size_t i, std::size_t j) const;

  // y += T x
  void MultiplyAdd(std::span<const double> x, std::span<double> y) const;
  // y += T^T x
  void TransposeMultiplyAdd(std::span<const double> x, std::span<double> y) const;
  // Mass of x sitting on zero columns.
  double ZeroColumnMass(std::span<const double> x) const;

 private:
  std::vector<std::vector<TransitionEntry>> columns_;
  std::vector<double> column_sums_;
};

// d loss / d raw score for every entry of T, given d loss / d T with the
// same layout as the columns.
std::vector<std::vector<double>> TransitionBackward(
    const TransitionMatrix &transition,
    const std::vector<std::vector<double>> &grad_transition);

// [title; body] + position. Zero when the page vectors are both zero.
Vector SemanticVector(const EntityVectors &entity, std::span<const double> position);

// Cosine of the two positioned page vectors. A page whose title and body
// vectors are all zero carries no semantic evidence and scores 0.
double SemanticRelatedness(const EntityVectors &a, std::size_t ordinal_a,
                           const EntityVectors &b, std::size_t ordinal_b,
                           const PositionalEncoding &positions);

// One application of the random walk with restart for a single mention:
//   p' = (1 - restart) (T p + z(p) p0) + restart p0
// where z(p) is the mass on zero columns, returned to the restart vector.
Vector WalkStep(const TransitionMatrix &transition, std::span<const double> p,
                std::span<const double> p0, double restart);

// Per-mention evidence distributions over the document's candidate rows.
struct EvidenceState {
  std::vector<Vector> columns;  // column m is the distribution of mention m
  std::vector<Vector> initial;
  double restart = 0.5;
  std::size_t iteration = 0;
};

// Column m places `local[m][c]` on row `mention_rows[m][c]` and 0 elsewhere.
// Throws ConfigError when restart is outside [0, 1].
EvidenceState InitialState(std::size_t dim,
                           const std::vector<std::vector<int>> &mention_rows,
                           const std::vector<Vector> &local, double restart);

// `layers` applications of WalkStep to every column.
EvidenceState Propagate(EvidenceState state, const TransitionMatrix &transition,
                        std::size_t layers);

// Restart-free variant: q_{k+1} = T q_k + z(q_k) p0, q_0 = p0. Returns the
// whole trajectory q_0 .. q_layers.
std::vector<Vector> Walk(const TransitionMatrix &transition,
                         std::span<const double> p0, std::size_t layers,
                         double restart = 0.0);

// Backward pass of Walk. `upstream` is d loss / d q_layers. Accumulates into
// grad_transition (column layout) and grad_p0.
void WalkBackward(const TransitionMatrix &transition, std::span<const double> p0,
                  const std::vector<Vector> &trajectory, std::span<const double> upstream,
                  double restart, std::vector<std::vector<double>> *grad_transition,
                  std::span<double> grad_p0);

// Stationary point of WalkStep, p* = (1 - r)(T + p0 z^T) p* + r p0, by a
// dense LU solve. Throws NumericError when the system is singular.
Vector FixedPoint(const TransitionMatrix &transition, std::span<const double> p0,
                  double restart);

struct Decision {
  int slot = -1;       // index into the mention's candidate list
  double score = 0.0;  // renormalized over the mention's candidates
  Vector distribution;  // renormalized scores of all candidates
};

// Highest-scoring candidate row of each mention's column. Ties go to the
// earlier candidate.
std::vector<Decision> Decide(const EvidenceState &state,
                             const std::vector<std::vector<int>> &mention_rows);

}  // namespace walklink

#endif  // WALKLINK_PROPAGATION_HPP_
