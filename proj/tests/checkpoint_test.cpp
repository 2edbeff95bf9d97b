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

#include "walklink/checkpoint.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "walklink/errors.hpp"

namespace walklink {
namespace {

struct Fixture {
  RunConfig config;
  Parameters params;
  OptimizerState optimizer;
};

Fixture Make() {
  Fixture f;
  f.config.kb = "/data/kb.jsonl";
  f.config.train.gamma = 0.3;
  f.config.train.mode = TransitionMode::kLearned;
  f.config.train.model.filters = 5;
  f.config.embedding_dim = 4;
  std::vector<std::string> tokens{"bay", "horse", "the", "caf\xc3\xa9"};
  std::mt19937_64 rng(3);
  f.params = Parameters::Initialize(RandomEmbeddings(tokens, 4, 0.5, rng),
                                    f.config.train.model, 9);
  f.optimizer = OptimizerState::For(f.params);
  for (auto &acc : f.optimizer.accumulators) {
    for (std::size_t i = 0; i < acc.size(); ++i) acc.values[i] = 0.1 * static_cast<double>(i);
  }
  return f;
}

void ExpectSame(const Fixture &f, const Checkpoint &c) {
  EXPECT_EQ(Describe(c.config), Describe(f.config));
  EXPECT_EQ(c.params.embeddings.vocab.tokens(), f.params.embeddings.vocab.tokens());
  auto a = f.params.tensors();
  auto b = c.params.tensors();
  for (std::size_t t = 0; t < kTensorCount; ++t) {
    EXPECT_EQ(a[t]->shape, b[t]->shape) << kTensorNames[t];
    EXPECT_EQ(a[t]->values, b[t]->values) << kTensorNames[t];
    EXPECT_EQ(f.optimizer.accumulators[t].values, c.optimizer.accumulators[t].values);
  }
  EXPECT_EQ(c.params.embeddings.vocab.Lookup("horse"), f.params.embeddings.vocab.Lookup("horse"));
}

TEST(CheckpointTest, StreamRoundTripIsExact) {
  auto f = Make();
  std::stringstream io;
  WriteCheckpoint(io, f.config, f.params, f.optimizer);
  auto back = ReadCheckpoint(io);
  ExpectSame(f, back);

  // Writing the read-back state again gives identical bytes.
  std::stringstream again;
  WriteCheckpoint(again, back.config, back.params, back.optimizer);
  EXPECT_EQ(again.str(), io.str());
}

TEST(CheckpointTest, RejectsForeignAndTruncatedInput) {
  std::istringstream junk("JUNKJUNKJUNK");
  EXPECT_THROW(ReadCheckpoint(junk), LoadError);
  auto f = Make();
  std::stringstream io;
  WriteCheckpoint(io, f.config, f.params, f.optimizer);
  std::string bytes = io.str();
  std::istringstream cut(bytes.substr(0, bytes.size() / 2));
  EXPECT_THROW(ReadCheckpoint(cut), LoadError);
  std::string bumped = bytes;
  bumped[4] = 7;  // version
  std::istringstream future(bumped);
  EXPECT_THROW(ReadCheckpoint(future), LoadError);
}

TEST(CheckpointTest, FileRoundTrip) {
  auto dir = std::filesystem::temp_directory_path() / "walklink_checkpoint_test";
  std::filesystem::create_directories(dir);
  auto path = (dir / "model.ckpt").string();
  auto f = Make();
  SaveCheckpoint(path, f.config, f.params, f.optimizer);
  ExpectSame(f, LoadCheckpoint(path));
  // Overwriting in place works and leaves no temporary behind.
  SaveCheckpoint(path, f.config, f.params, f.optimizer);
  std::size_t files = 0;
  for (const auto &entry : std::filesystem::directory_iterator(dir)) files += entry.is_regular_file();
  EXPECT_EQ(files, 1u);
  EXPECT_THROW(LoadCheckpoint((dir / "absent.ckpt").string()), LoadError);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace walklink
