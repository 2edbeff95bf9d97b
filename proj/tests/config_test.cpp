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

#include "walklink/config.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "walklink/errors.hpp"

namespace walklink {
namespace {

TEST(ParseSettingsTest, SkipsBlankAndCommentLines) {
  std::istringstream in("# comment\n\n  gamma = 0.2 \nkb=/x/kb.jsonl\n");
  auto settings = ParseSettings(in);
  ASSERT_EQ(settings.size(), 2u);
  EXPECT_EQ(settings[0], (std::pair<std::string, std::string>{"gamma", "0.2"}));
  EXPECT_EQ(settings[1].second, "/x/kb.jsonl");
}

TEST(ParseSettingsTest, LineWithoutEqualsNamesItsLine) {
  std::istringstream in("gamma = 0.2\n\nlambda 0.5\n");
  try {
    ParseSettings(in);
    FAIL() << "expected ParseError";
  } catch (const ParseError &e) {
    EXPECT_EQ(e.line(), 3);
  }
}

TEST(ApplySettingTest, SetsTypedFields) {
  RunConfig c;
  ApplySetting(c, "k", "3");
  ApplySetting(c, "lambda", "0.25");
  ApplySetting(c, "mode", "link_only");
  ApplySetting(c, "update_embeddings", "false");
  ApplySetting(c, "filters", "16");
  ApplySetting(c, "sweep_k", "0, 2,4");
  ApplySetting(c, "sweep_lambda", "0.1,0.9");
  EXPECT_EQ(c.train.layers, 3u);
  EXPECT_EQ(c.train.lambda, 0.25);
  EXPECT_EQ(c.train.mode, TransitionMode::kLinkOnly);
  EXPECT_FALSE(c.train.update_embeddings);
  EXPECT_EQ(c.train.model.filters, 16u);
  EXPECT_EQ(c.sweep_k, (std::vector<std::size_t>{0, 2, 4}));
  EXPECT_EQ(c.sweep_lambda, (std::vector<double>{0.1, 0.9}));
}

TEST(ApplySettingTest, RejectsUnknownKeysAndBadValues) {
  RunConfig c;
  EXPECT_THROW(ApplySetting(c, "gama", "0.1"), ConfigError);
  EXPECT_THROW(ApplySetting(c, "gamma", "lots"), ConfigError);
  EXPECT_THROW(ApplySetting(c, "gamma", "0.1x"), ConfigError);
  EXPECT_THROW(ApplySetting(c, "k", "-1"), ConfigError);
  EXPECT_THROW(ApplySetting(c, "mode", "psychic"), ConfigError);
  EXPECT_THROW(ApplySetting(c, "update_embeddings", "maybe"), ConfigError);
  EXPECT_THROW(ApplySetting(c, "sweep_k", "1,,2"), ConfigError);
}

TEST(RunConfigTest, ValidateChecksRangesAndGrids) {
  RunConfig c;
  EXPECT_NO_THROW(c.Validate());
  c.sweep_gamma = {1.2};
  EXPECT_THROW(c.Validate(), ConfigError);
  c = RunConfig{};
  c.sweep_k.clear();
  EXPECT_THROW(c.Validate(), ConfigError);
  c = RunConfig{};
  c.train.gamma = 2.0;
  EXPECT_THROW(c.Validate(), ConfigError);
}

TEST(RunConfigTest, DescribeRoundTrips) {
  RunConfig c;
  c.kb = "/data/kb.jsonl";
  c.train.gamma = 0.3;
  c.train.learning_rate = 0.1 + 0.2;  // not exactly representable in short form
  c.train.mode = TransitionMode::kLearned;
  c.train.consistency_restart = true;
  c.sweep_lambda = {0.1, 0.7};
  RunConfig back;
  for (const auto &[key, value] : Describe(c)) ApplySetting(back, key, value);
  EXPECT_EQ(Describe(back), Describe(c));
  EXPECT_EQ(back.train.learning_rate, c.train.learning_rate);
}

TEST(LoadRunConfigTest, RelativePathsResolveAgainstTheFile) {
  auto dir = std::filesystem::temp_directory_path() / "walklink_config_test";
  std::filesystem::create_directories(dir);
  auto path = dir / "run.cfg";
  std::ofstream(path) << "kb = data/kb.jsonl\ncorpus = /abs/train.jsonl\nseed = 4\n";
  auto c = LoadRunConfig(path.string());
  EXPECT_EQ(c.kb, (dir / "data/kb.jsonl").string());
  EXPECT_EQ(c.corpus, "/abs/train.jsonl");
  EXPECT_EQ(c.train.seed, 4u);
  EXPECT_THROW(LoadRunConfig((dir / "missing.cfg").string()), LoadError);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace walklink
