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

#ifndef WALKLINK_TENSOR_HPP_
#define WALKLINK_TENSOR_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <vector>

namespace walklink {

using Vector = std::vector<double>;

// Dense row-major tensor of doubles.
struct Tensor {
  std::vector<std::size_t> shape;
  std::vector<double> values;

  Tensor() = default;
  explicit Tensor(std::vector<std::size_t> dims)
      : shape(std::move(dims)),
        values(std::accumulate(shape.begin(), shape.end(), std::size_t{1},
                               std::multiplies<>()),
               0.0) {}

  std::size_t size() const { return values.size(); }
  double *data() { return values.data(); }
  const double *data() const { return values.data(); }
  void Zero() { std::fill(values.begin(), values.end(), 0.0); }
  double SquaredNorm() const {
    double sum = 0.0;
    for (double v : values) sum += v * v;
    return sum;
  }
};

inline double Dot(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

inline double Norm(std::span<const double> a) { return std::sqrt(Dot(a, a)); }

inline double Sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  double e = std::exp(x);
  return e / (1.0 + e);
}

// Cosine similarity; zero when either operand has zero norm.
inline double Cosine(std::span<const double> a, std::span<const double> b) {
  double na = Norm(a), nb = Norm(b);
  if (na == 0.0 || nb == 0.0) return 0.0;
  return Dot(a, b) / (na * nb);
}

// Accumulates upstream * d cos(a, b) into grad_a and grad_b. A zero-norm
// operand makes the cosine constant, so nothing is added.
inline void CosineBackward(std::span<const double> a, std::span<const double> b,
                           double upstream, std::span<double> grad_a,
                           std::span<double> grad_b) {
  double na = Norm(a), nb = Norm(b);
  if (na == 0.0 || nb == 0.0 || upstream == 0.0) return;
  double cos = Dot(a, b) / (na * nb);
  double inv = 1.0 / (na * nb);
  for (std::size_t i = 0; i < a.size(); ++i) {
    grad_a[i] += upstream * (b[i] * inv - cos * a[i] / (na * na));
    grad_b[i] += upstream * (a[i] * inv - cos * b[i] / (nb * nb));
  }
}

}  // namespace walklink

#endif  // WALKLINK_TENSOR_HPP_
