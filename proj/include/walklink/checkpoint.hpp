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

#ifndef WALKLINK_CHECKPOINT_HPP_
#define WALKLINK_CHECKPOINT_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>

#include "walklink/config.hpp"
#include "walklink/model.hpp"
#include "walklink/training.hpp"

namespace walklink {

inline constexpr char kCheckpointMagic[4] = {'W', 'L', 'N', 'K'};
inline constexpr std::uint32_t kCheckpointVersion = 1;

// Binary layout, all integers and floats little-endian:
//   "WLNK" u32 version
//   u64 n, n bytes of settings ("key=value\n" lines)
//   u64 n, n bytes of vocabulary (tokens joined by '\n')
//   u64 tensor count, then per tensor:
//     u32 name length, name, u32 rank, rank x u64 dims, f64 values
// Optimizer accumulators are stored as "adagrad.<tensor name>".
struct Checkpoint {
  RunConfig config;
  Parameters params;
  OptimizerState optimizer;
};

void WriteCheckpoint(std::ostream &out, const RunConfig &config, const Parameters &params,
                     const OptimizerState &optimizer);
Checkpoint ReadCheckpoint(std::istream &in);

// Writes to a temporary sibling and renames it into place.
void SaveCheckpoint(const std::string &path, const RunConfig &config,
                    const Parameters &params, const OptimizerState &optimizer);
Checkpoint LoadCheckpoint(const std::string &path);

}  // namespace walklink

#endif  // WALKLINK_CHECKPOINT_HPP_
