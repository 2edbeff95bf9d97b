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

#include "walklink/propagation.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "walklink/errors.hpp"

namespace walklink {

std::string_view ModeName(TransitionMode mode) {
  switch (mode) {
    case TransitionMode::kFull:
      return "full";
    case TransitionMode::kLinkOnly:
      return "link_only";
    case TransitionMode::kLearned:
      return "learned";
  }
  return "full";
}

TransitionMode ParseMode(std::string_view name) {
  if (name == "full") return TransitionMode::kFull;
  if (name == "link_only") return TransitionMode::kLinkOnly;
  if (name == "learned") return TransitionMode::kLearned;
  throw ConfigError("unknown transition mode '" + std::string(name) +
                    "' (expected full, link_only or learned)");
}

NeighborMask NeighborMask::Build(std::size_t dim,
                                 const std::vector<std::vector<int>> &mention_rows) {
  // owners[e] = mentions listing candidate e
  std::vector<std::vector<std::size_t>> owners(dim);
  for (std::size_t m = 0; m < mention_rows.size(); ++m) {
    for (int row : mention_rows[m]) {
      if (owners[row].empty() || owners[row].back() != m) owners[row].push_back(m);
    }
  }
  NeighborMask mask;
  mask.neighbors_.resize(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    if (owners[j].empty()) continue;
    for (std::size_t i = 0; i < dim; ++i) {
      if (i == j || owners[i].empty()) continue;
      // Some mention must list i but not j.
      const auto &oj = owners[j];
      bool linked = std::any_of(owners[i].begin(), owners[i].end(), [&](std::size_t m) {
        return !std::binary_search(oj.begin(), oj.end(), m);
      });
      if (linked) mask.neighbors_[j].push_back(static_cast<int>(i));
    }
  }
  return mask;
}

bool NeighborMask::contains(std::size_t i, std::size_t j) const {
  return std::binary_search(neighbors_[j].begin(), neighbors_[j].end(),
                            static_cast<int>(i));
}

TransitionMatrix TransitionMatrix::FromScores(
    const NeighborMask &mask, const std::function<double(int, int)> &score) {
  TransitionMatrix t(mask.dim());
  for (std::size_t j = 0; j < mask.dim(); ++j) {
    auto &column = t.columns_[j];
    double total = 0.0;
    for (int i : mask.neighbors(j)) {
      double s = std::max(0.0, score(static_cast<int>(j), i));
      column.push_back(TransitionEntry{i, s});
      total += s;
    }
    t.column_sums_[j] = total;
    if (total > 0.0) {
      for (auto &entry : column) entry.value /= total;
    } else {
      column.clear();
    }
  }
  return t;
}

TransitionMatrix TransitionMatrix::FromDense(std::size_t dim,
                                             std::span<const double> values) {
  TransitionMatrix t(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    double total = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      double v = values[i * dim + j];
      if (v != 0.0) {
        t.columns_[j].push_back(TransitionEntry{static_cast<int>(i), v});
        total += v;
      }
    }
    t.column_sums_[j] = total;
  }
  return t;
}

bool TransitionMatrix::IsZeroColumn(std::size_t j) const {
  for (const auto &entry : columns_[j]) {
    if (entry.value != 0.0) return false;
  }
  return true;
}

double TransitionMatrix::at(std::size_t i, std::size_t j) const {
  for (const auto &entry : columns_[j]) {
    if (entry.row == static_cast<int>(i)) return entry.value;
  }
  return 0.0;
}

void TransitionMatrix::MultiplyAdd(std::span<const double> x, std::span<double> y) const {
  for (std::size_t j = 0; j < columns_.size(); ++j) {
    if (x[j] == 0.0) continue;
    for (const auto &entry : columns_[j]) y[entry.row] += entry.value * x[j];
  }
}

void TransitionMatrix::TransposeMultiplyAdd(std::span<const double> x,
                                            std::span<double> y) const {
  for (std::size_t j = 0; j < columns_.size(); ++j) {
    double sum = 0.0;
    for (const auto &entry : columns_[j]) sum += entry.value * x[entry.row];
    y[j] += sum;
  }
}

double TransitionMatrix::ZeroColumnMass(std::span<const double> x) const {
  double mass = 0.0;
  for (std::size_t j = 0; j < columns_.size(); ++j) {
    if (columns_[j].empty()) mass += x[j];
  }
  return mass;
}

std::vector<std::vector<double>> TransitionBackward(
    const TransitionMatrix &transition,
    const std::vector<std::vector<double>> &grad_transition) {
  std::vector<std::vector<double>> grad_scores(transition.dim());
  for (std::size_t j = 0; j < transition.dim(); ++j) {
    auto column = transition.column(j);
    grad_scores[j].assign(column.size(), 0.0);
    if (column.empty()) continue;
    // T_ij = s_ij / S_j  =>  dL/ds_ij = (g_ij - sum_k g_kj T_kj) / S_j
    double weighted = 0.0;
    for (std::size_t e = 0; e < column.size(); ++e) {
      weighted += grad_transition[j][e] * column[e].value;
    }
    double inv = 1.0 / transition.column_sum(j);
    for (std::size_t e = 0; e < column.size(); ++e) {
      grad_scores[j][e] = (grad_transition[j][e] - weighted) * inv;
    }
  }
  return grad_scores;
}

Vector SemanticVector(const EntityVectors &entity, std::span<const double> position) {
  const std::size_t v = entity.title.size();
  Vector out(2 * v, 0.0);
  bool content = false;
  for (std::size_t i = 0; i < v; ++i) {
    out[i] = entity.title[i];
    out[v + i] = entity.body[i];
    content = content || entity.title[i] != 0.0 || entity.body[i] != 0.0;
  }
  if (!content) return out;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += position[i];
  return out;
}

double SemanticRelatedness(const EntityVectors &a, std::size_t ordinal_a,
                           const EntityVectors &b, std::size_t ordinal_b,
                           const PositionalEncoding &positions) {
  Vector ua = SemanticVector(a, positions(ordinal_a));
  Vector ub = SemanticVector(b, positions(ordinal_b));
  return Cosine(ua, ub);
}

Vector WalkStep(const TransitionMatrix &transition, std::span<const double> p,
                std::span<const double> p0, double restart) {
  Vector moved(p.size(), 0.0);
  transition.MultiplyAdd(p, moved);
  double stranded = transition.ZeroColumnMass(p);
  Vector next(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    next[i] = (1.0 - restart) * (moved[i] + stranded * p0[i]) + restart * p0[i];
  }
  return next;
}

EvidenceState InitialState(std::size_t dim,
                           const std::vector<std::vector<int>> &mention_rows,
                           const std::vector<Vector> &local, double restart) {
  if (!(restart >= 0.0 && restart <= 1.0)) {
    throw ConfigError("restart probability must lie in [0, 1], got " +
                      std::to_string(restart));
  }
  EvidenceState state;
  state.restart = restart;
  for (std::size_t m = 0; m < mention_rows.size(); ++m) {
    Vector column(dim, 0.0);
    for (std::size_t c = 0; c < mention_rows[m].size(); ++c) {
      column[mention_rows[m][c]] += local[m][c];
    }
    state.initial.push_back(column);
    state.columns.push_back(std::move(column));
  }
  return state;
}

EvidenceState Propagate(EvidenceState state, const TransitionMatrix &transition,
                        std::size_t layers) {
  if (!(state.restart >= 0.0 && state.restart <= 1.0)) {
    throw ConfigError("restart probability must lie in [0, 1]");
  }
  for (std::size_t k = 0; k < layers; ++k) {
    for (std::size_t m = 0; m < state.columns.size(); ++m) {
      state.columns[m] =
          WalkStep(transition, state.columns[m], state.initial[m], state.restart);
    }
    ++state.iteration;
  }
  return state;
}

std::vector<Vector> Walk(const TransitionMatrix &transition,
                         std::span<const double> p0, std::size_t layers,
                         double restart) {
  std::vector<Vector> trajectory;
  trajectory.emplace_back(p0.begin(), p0.end());
  for (std::size_t k = 0; k < layers; ++k) {
    trajectory.push_back(WalkStep(transition, trajectory.back(), p0, restart));
  }
  return trajectory;
}

void WalkBackward(const TransitionMatrix &transition, std::span<const double> p0,
                  const std::vector<Vector> &trajectory, std::span<const double> upstream,
                  double restart, std::vector<std::vector<double>> *grad_transition,
                  std::span<double> grad_p0) {
  const std::size_t n = p0.size();
  const double a = 1.0 - restart;
  Vector g(upstream.begin(), upstream.end());
  for (std::size_t k = trajectory.size() - 1; k-- > 0;) {
    const Vector &q = trajectory[k];
    // q_{k+1} = a (T q + z(q) p0) + restart p0
    double p0_dot_g = Dot(p0, g);
    double stranded = transition.ZeroColumnMass(q);
    for (std::size_t j = 0; j < n; ++j) {
      auto column = transition.column(j);
      for (std::size_t e = 0; e < column.size(); ++e) {
        (*grad_transition)[j][e] += a * g[column[e].row] * q[j];
      }
    }
    for (std::size_t i = 0; i < n; ++i) grad_p0[i] += (a * stranded + restart) * g[i];
    Vector previous(n, 0.0);
    transition.TransposeMultiplyAdd(g, previous);
    for (std::size_t j = 0; j < n; ++j) {
      previous[j] *= a;
      if (transition.column(j).empty()) previous[j] += a * p0_dot_g;
    }
    g = std::move(previous);
  }
  for (std::size_t i = 0; i < n; ++i) grad_p0[i] += g[i];
}

Vector FixedPoint(const TransitionMatrix &transition, std::span<const double> p0,
                  double restart) {
  const auto n = static_cast<Eigen::Index>(transition.dim());
  Eigen::MatrixXd system = Eigen::MatrixXd::Identity(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const auto column = transition.column(static_cast<std::size_t>(j));
    if (column.empty()) {
      for (Eigen::Index i = 0; i < n; ++i) system(i, j) -= (1.0 - restart) * p0[i];
    }
    for (const auto &entry : column) system(entry.row, j) -= (1.0 - restart) * entry.value;
  }
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) rhs(i) = restart * p0[i];
  Eigen::FullPivLU<Eigen::MatrixXd> lu(system);
  if (!lu.isInvertible()) throw NumericError("fixed-point system is singular");
  Eigen::VectorXd solution = lu.solve(rhs);
  return Vector(solution.data(), solution.data() + n);
}

std::vector<Decision> Decide(const EvidenceState &state,
                             const std::vector<std::vector<int>> &mention_rows) {
  std::vector<Decision> decisions;
  for (std::size_t m = 0; m < mention_rows.size(); ++m) {
    Decision decision;
    double total = 0.0;
    for (int row : mention_rows[m]) total += state.columns[m][row];
    for (std::size_t c = 0; c < mention_rows[m].size(); ++c) {
      double value = state.columns[m][mention_rows[m][c]];
      decision.distribution.push_back(total > 0.0 ? value / total : 0.0);
      if (decision.slot < 0 || value > state.columns[m][mention_rows[m][decision.slot]]) {
        decision.slot = static_cast<int>(c);
      }
    }
    if (decision.slot >= 0) decision.score = decision.distribution[decision.slot];
    decisions.push_back(std::move(decision));
  }
  return decisions;
}

}  // namespace walklink
