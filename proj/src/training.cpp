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

#include "walklink/training.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "walklink/errors.hpp"
#include "walklink/synthetic.hpp"

namespace walklink {

void TrainConfig::Validate() const {
  auto in_unit = [](double x) { return x >= 0.0 && x <= 1.0; };
  if (!in_unit(gamma)) throw ConfigError("gamma must lie in [0, 1]");
  if (!in_unit(lambda)) throw ConfigError("lambda must lie in [0, 1]");
  if (!(alpha >= 0.0)) throw ConfigError("alpha must be nonnegative");
  if (!(learning_rate > 0.0)) throw ConfigError("learning_rate must be positive");
  if (model.filters == 0) throw ConfigError("filters must be positive");
  if (model.window == 0) throw ConfigError("window must be positive");
  if (model.max_candidates == 0) throw ConfigError("max_candidates must be positive");
  if (model.propagation_candidates == 0) {
    throw ConfigError("propagation_candidates must be positive");
  }
}

ObjectiveWeights TrainConfig::Weights(int phase) const {
  ObjectiveWeights weights;
  weights.mode = mode;
  weights.update_embeddings = update_embeddings;
  if (phase == 2) {
    weights.cross_entropy = 1.0 - gamma;
    weights.consistency = gamma;
    weights.layers = layers;
    weights.consistency_restart = consistency_restart ? lambda : 0.0;
  }
  return weights;
}

OptimizerState OptimizerState::For(const Parameters &params) {
  OptimizerState state;
  auto tensors = params.tensors();
  for (std::size_t t = 0; t < kTensorCount; ++t) {
    state.accumulators[t] = Tensor(tensors[t]->shape);
  }
  return state;
}

void OptimizerState::Step(Parameters &params, const Gradients &grads, double learning_rate,
                          const std::array<bool, kTensorCount> &frozen) {
  auto tensors = params.tensors();
  for (std::size_t t = 0; t < kTensorCount; ++t) {
    if (frozen[t]) continue;
    auto &theta = tensors[t]->values;
    auto &acc = accumulators[t].values;
    const auto &g = grads.tensors[t].values;
    for (std::size_t i = 0; i < theta.size(); ++i) {
      if (g[i] == 0.0) continue;
      acc[i] += g[i] * g[i];
      theta[i] -= learning_rate * g[i] / (std::sqrt(acc[i]) + kAdagradEpsilon);
    }
  }
}

double Regularize(const Parameters &params, double alpha,
                  const std::array<bool, kTensorCount> &frozen, Gradients *grads) {
  auto tensors = params.tensors();
  double total = 0.0;
  for (std::size_t t = 0; t < kTensorCount; ++t) {
    if (frozen[t]) continue;
    total += tensors[t]->SquaredNorm();
    if (!grads || alpha == 0.0) continue;
    auto &g = grads->tensors[t].values;
    const auto &theta = tensors[t]->values;
    for (std::size_t i = 0; i < theta.size(); ++i) g[i] += 2.0 * alpha * theta[i];
  }
  return alpha * total;
}

Trainer::Trainer(Parameters &params, TrainConfig config)
    : Trainer(params, config, OptimizerState::For(params)) {}

Trainer::Trainer(Parameters &params, TrainConfig config, OptimizerState state)
    : params_(params), config_(std::move(config)), optimizer_(std::move(state)),
      rng_(config_.seed) {
  config_.Validate();
}

std::array<bool, kTensorCount> Trainer::frozen() const {
  return {!config_.update_embeddings, false, false, false};
}

EpochStats Trainer::RunEpoch(std::span<const DocumentInstance> docs, int phase) {
  Model model(params_, config_.model);
  const ObjectiveWeights weights = config_.Weights(phase);
  const auto frozen_tensors = frozen();
  Gradients grads(params_);

  std::vector<std::size_t> order(docs.size());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng_);

  EpochStats stats;
  stats.phase = phase;
  stats.epoch = ++epochs_[phase == 2 ? 1 : 0];
  std::size_t supervised = 0, correct = 0;
  for (std::size_t index : order) {
    const auto &doc = docs[index];
    grads.Zero();
    ObjectiveParts parts;
    double value = model.Objective(doc, weights, &grads, &parts);
    Regularize(params_, config_.alpha, frozen_tensors, &grads);
    bool finite = std::isfinite(value);
    for (const auto &tensor : grads.tensors) {
      for (double g : tensor.values) finite = finite && std::isfinite(g);
    }
    if (!finite) {
      throw NumericError("objective diverged on document '" + doc.doc_id + "' in phase " +
                         std::to_string(phase) + ", epoch " + std::to_string(stats.epoch));
    }
    optimizer_.Step(params_, grads, config_.learning_rate, frozen_tensors);
    stats.loss += value;
    stats.cross_entropy += parts.cross_entropy;
    stats.consistency += parts.consistency;
    supervised += parts.supervised;
    correct += parts.correct;
  }
  stats.regularizer = Regularize(params_, config_.alpha, frozen_tensors, nullptr);
  stats.loss += stats.regularizer;
  stats.accuracy = supervised ? static_cast<double>(correct) / supervised : 0.0;
  double norm = 0.0;
  for (const Tensor *t : std::as_const(params_).tensors()) norm += t->SquaredNorm();
  stats.parameter_norm = std::sqrt(norm);
  return stats;
}

std::vector<EpochStats> Trainer::Train(
    std::span<const DocumentInstance> docs,
    const std::function<void(const EpochStats &)> &on_epoch) {
  std::vector<EpochStats> log;
  for (int phase = 1; phase <= 2; ++phase) {
    std::size_t epochs = phase == 1 ? config_.pretrain_epochs : config_.finetune_epochs;
    for (std::size_t e = 0; e < epochs; ++e) {
      log.push_back(RunEpoch(docs, phase));
      if (on_epoch) on_epoch(log.back());
    }
  }
  return log;
}

namespace {

double TotalObjective(const Parameters &params, const ModelConfig &config,
                      std::span<const DocumentInstance> docs,
                      const ObjectiveWeights &weights, double alpha,
                      const std::array<bool, kTensorCount> &frozen, Gradients *grads,
                      std::vector<std::uint8_t> *signature, double *consistency) {
  Model model(params, config);
  double total = 0.0;
  for (const auto &doc : docs) {
    ObjectiveParts parts;
    total += model.Objective(doc, weights, grads, &parts, signature);
    if (consistency) *consistency += parts.consistency;
  }
  return total + Regularize(params, alpha, frozen, grads);
}

}  // namespace

GradCheckReport GradCheck(Parameters &params, const ModelConfig &config,
                          std::span<const DocumentInstance> docs,
                          const ObjectiveWeights &weights, double alpha, double step) {
  const std::array<bool, kTensorCount> frozen = {!weights.update_embeddings, false, false,
                                                  false};
  GradCheckReport report;
  Gradients grads(params);
  std::vector<std::uint8_t> base;
  report.objective = TotalObjective(params, config, docs, weights, alpha, frozen, &grads,
                                    &base, &report.consistency);

  auto tensors = params.tensors();
  for (std::size_t t = 0; t < kTensorCount; ++t) {
    if (frozen[t]) continue;
    auto &theta = tensors[t]->values;
    for (std::size_t i = 0; i < theta.size(); ++i) {
      const double saved = theta[i];
      std::vector<std::uint8_t> plus_sig, minus_sig;
      theta[i] = saved + step;
      double plus = TotalObjective(params, config, docs, weights, alpha, frozen, nullptr,
                                   &plus_sig, nullptr);
      theta[i] = saved - step;
      double minus = TotalObjective(params, config, docs, weights, alpha, frozen, nullptr,
                                    &minus_sig, nullptr);
      theta[i] = saved;
      if (plus_sig != base || minus_sig != base) {
        ++report.skipped;
        continue;
      }
      double numeric = (plus - minus) / (2.0 * step);
      double analytic = grads.tensors[t].values[i];
      double scale = std::max({std::abs(numeric), std::abs(analytic), kGradCheckFloor});
      double error = std::abs(numeric - analytic) / scale;
      report.group_error[t] = std::max(report.group_error[t], error);
      report.max_relative_error = std::max(report.max_relative_error, error);
      ++report.checked;
    }
  }
  return report;
}

GradCheckReport GradCheck(const GradCheckOptions &options) {
  TinyWorldOptions world_options;
  world_options.seed = options.seed;
  world_options.embedding_dim = 4;
  TinyWorld world = MakeTinyWorld(world_options);

  ModelConfig config;
  config.filters = 4;
  config.window = 2;
  config.context_window = 3;
  config.prefix_tokens = 12;
  config.propagation_candidates = 2;

  Parameters params = Parameters::Initialize(world.embeddings, config, options.seed);
  std::mt19937_64 rng(options.seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> uniform(-options.scale, options.scale);
  for (std::size_t t = 1; t < kTensorCount; ++t) {
    for (double &x : params.tensors()[t]->values) x = uniform(rng);
  }

  std::vector<DocumentInstance> docs;
  for (const auto &doc : world.documents) {
    docs.push_back(CompileDocument(doc, world.kb, params.embeddings.vocab, config));
  }
  ObjectiveWeights weights;
  weights.cross_entropy = 1.0 - options.gamma;
  weights.consistency = options.gamma;
  weights.layers = options.layers;
  weights.mode = options.mode;
  weights.consistency_restart = options.consistency_restart ? options.restart : 0.0;
  return GradCheck(params, config, docs, weights, options.alpha, options.step);
}

}  // namespace walklink
