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

#ifndef WALKLINK_TRAINING_HPP_
#define WALKLINK_TRAINING_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "walklink/model.hpp"
#include "walklink/tensor.hpp"

namespace walklink {

inline constexpr double kAdagradEpsilon = 1e-8;

struct TrainConfig {
  double gamma = 0.1;
  double lambda = 0.5;
  std::size_t layers = 5;
  double alpha = 1e-5;
  double learning_rate = 0.01;
  std::size_t pretrain_epochs = 10;
  std::size_t finetune_epochs = 5;
  std::uint64_t seed = 1;
  TransitionMode mode = TransitionMode::kFull;
  bool update_embeddings = true;
  // Use the restart walk with lambda inside the consistency term.
  bool consistency_restart = false;
  ModelConfig model;

  // Throws ConfigError naming the first violated constraint.
  void Validate() const;
  ObjectiveWeights Weights(int phase) const;
};

// Diagonal AdaGrad.
struct OptimizerState {
  std::array<Tensor, kTensorCount> accumulators;

  static OptimizerState For(const Parameters &params);

  // acc += g^2; theta -= lr * g / (sqrt(acc) + eps). Tensors whose flag in
  // `frozen` is set are left alone.
  void Step(Parameters &params, const Gradients &grads, double learning_rate,
            const std::array<bool, kTensorCount> &frozen = {});
};

// alpha * |theta|^2 over the trainable tensors; adds 2 alpha theta to grads.
double Regularize(const Parameters &params, double alpha,
                  const std::array<bool, kTensorCount> &frozen, Gradients *grads);

struct EpochStats {
  int phase = 1;
  std::size_t epoch = 0;  // 1-based within the phase
  double loss = 0.0;      // weighted objective summed over documents + L2
  double cross_entropy = 0.0;
  double consistency = 0.0;
  double regularizer = 0.0;
  double accuracy = 0.0;  // local argmax accuracy on supervised mentions
  double parameter_norm = 0.0;
};

class Trainer {
 public:
  Trainer(Parameters &params, TrainConfig config);
  Trainer(Parameters &params, TrainConfig config, OptimizerState state);

  // One shuffled pass of per-document steps. Throws NumericError naming the
  // document when the objective stops being finite.
  EpochStats RunEpoch(std::span<const DocumentInstance> docs, int phase);

  // Both phases; `on_epoch` runs after every epoch.
  std::vector<EpochStats> Train(std::span<const DocumentInstance> docs,
                                const std::function<void(const EpochStats &)> &on_epoch = {});

  const OptimizerState &optimizer() const { return optimizer_; }
  const TrainConfig &config() const { return config_; }
  std::array<bool, kTensorCount> frozen() const;

 private:
  Parameters &params_;
  TrainConfig config_;
  OptimizerState optimizer_;
  std::mt19937_64 rng_;
  std::size_t epochs_[2] = {0, 0};
};

struct GradCheckOptions {
  std::uint64_t seed = 1;
  double gamma = 0.5;
  std::size_t layers = 2;
  double restart = 0.5;
  double alpha = 1e-3;
  TransitionMode mode = TransitionMode::kFull;
  bool consistency_restart = false;
  double step = 1e-4;
  double scale = 0.5;  // parameters drawn from uniform(-scale, scale)
};

struct GradCheckReport {
  double max_relative_error = 0.0;
  std::array<double, kTensorCount> group_error{};
  std::size_t checked = 0;
  std::size_t skipped = 0;  // coordinates whose +-step crosses a kink
  double objective = 0.0;
  double consistency = 0.0;
};

// |a - b| / max(|a|, |b|, kGradCheckFloor).
inline constexpr double kGradCheckFloor = 1e-6;

// Analytic vs central-difference gradient of the phase-2 objective plus L2
// on a tiny random instance.
GradCheckReport GradCheck(const GradCheckOptions &options);

// Same, on a caller-supplied instance.
GradCheckReport GradCheck(Parameters &params, const ModelConfig &config,
                          std::span<const DocumentInstance> docs,
                          const ObjectiveWeights &weights, double alpha, double step);

}  // namespace walklink

#endif  // WALKLINK_TRAINING_HPP_
