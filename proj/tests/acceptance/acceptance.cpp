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

// Acceptance checks A1 to A8. Prints one PASS or FAIL line per criterion.
// The exit status is 0 whenever every check ran to completion; a FAIL line
// is a finding, not a crash.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <iterator>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "walklink/pipeline.hpp"
#include "walklink/propagation.hpp"
#include "worlds.hpp"

namespace walklink {
namespace {

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

void Report(const char *id, bool pass, const std::string &detail) {
  std::printf("%s %s %s\n", id, pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
}

std::string Format(const char *fmt, auto... args) {
  char buffer[512];
  std::snprintf(buffer, sizeof buffer, fmt, args...);
  return buffer;
}

// The shared synthetic world: the flip scenario's KB, a 200-document
// training corpus and a 50-document held-out split.
struct World {
  KnowledgeBase kb;
  Corpus train, valid, flip;
  std::string flip_gold, flip_rival;
};

World MakeWorld() {
  testing::WorldOptions w;
  auto scenario = testing::MakeFlipScenario(w);
  World world;
  std::istringstream kb_in(scenario.kb);
  world.kb = KnowledgeBase::Parse(kb_in);
  testing::CorpusOptions train;
  train.documents = 200;
  train.mentions = 3;
  testing::CorpusOptions valid = train;
  valid.documents = 50;
  valid.seed = 99;
  valid.hard_rate = 0.2;
  valid.orphan_rate = 0.5;
  valid.prefix = "held";
  std::istringstream t(testing::WorldCorpus(w, train)), v(testing::WorldCorpus(w, valid)),
      f(scenario.corpus);
  world.train = ParseCorpus(t, world.kb);
  world.valid = ParseCorpus(v, world.kb);
  world.flip = ParseCorpus(f, world.kb);
  world.flip_gold = scenario.gold;
  world.flip_rival = scenario.rival;
  return world;
}

RunConfig WorldConfig(std::uint64_t seed) {
  RunConfig config;
  config.embedding_dim = 50;
  config.train.learning_rate = 0.05;
  config.train.pretrain_epochs = 40;
  config.train.finetune_epochs = 5;
  config.train.seed = seed;
  config.train.lambda = 0.5;
  config.train.layers = 5;
  return config;
}

double F1(const Model &model, const Corpus &corpus, const std::vector<DocumentInstance> &docs,
          TransitionMode mode, std::size_t k) {
  return Evaluate(LinkCorpus(model, corpus, docs, mode, k, 0.5), corpus).micro_f1.value_or(0.0);
}

// A1: columns of T and of the evidence state stay distributions.
void CheckStochasticity() {
  auto start = Clock::now();
  testing::WorldOptions w;
  std::istringstream kb_in(testing::WorldKb(w));
  auto kb = KnowledgeBase::Parse(kb_in);
  testing::CorpusOptions options;
  options.seed = 2025;
  options.documents = 1000;
  options.mentions = 4;
  options.hard_rate = 0.3;
  options.orphan_rate = 0.3;
  options.lead_words = 20;
  std::istringstream corpus_in(testing::WorldCorpus(w, options));
  auto corpus = ParseCorpus(corpus_in, kb);

  RunConfig config = WorldConfig(1);
  auto params = Parameters::Initialize(PrepareEmbeddings(config, kb, corpus),
                                       config.train.model, 17);
  // Wide random weights so that clamps and empty columns actually occur.
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  for (auto *tensor : params.tensors()) {
    for (double &x : tensor->values) x = u(rng);
  }
  auto docs = CompileCorpus(corpus, kb, params.embeddings.vocab, config.train.model);
  Model model(params, config.train.model);

  double worst_t = 0.0, worst_p = 0.0;
  std::size_t columns = 0, empty = 0, negative = 0;
  for (const auto &doc : docs) {
    if (doc.mentions.empty()) continue;
    auto local = model.Local(doc);
    auto rows = model.PropagationRows(doc, local);
    auto all_rows = doc.candidate_rows();
    for (auto mode : {TransitionMode::kFull, TransitionMode::kLinkOnly, TransitionMode::kLearned}) {
      auto t = model.Transition(doc, local, mode, rows);
      for (std::size_t j = 0; j < t.dim(); ++j) {
        ++columns;
        double sum = 0.0;
        for (const auto &e : t.column(j)) {
          if (e.value < 0.0) ++negative;
          sum += e.value;
        }
        if (t.column(j).empty() || sum == 0.0) {
          ++empty;
          continue;
        }
        worst_t = std::max(worst_t, std::abs(sum - 1.0));
      }
      auto state = InitialState(doc.dim(), all_rows, local.local, 0.5);
      for (int k = 0; k < 5; ++k) {
        state = Propagate(std::move(state), t, 1);
        for (const auto &column : state.columns) {
          double sum = 0.0;
          for (double x : column) {
            if (x < 0.0 || x > 1.0 + 1e-12) ++negative;
            sum += x;
          }
          worst_p = std::max(worst_p, std::abs(sum - 1.0));
        }
      }
    }
  }
  double elapsed = Seconds(start);
  bool pass = worst_t <= 1e-9 && worst_p <= 1e-9 && negative == 0 && elapsed < 30.0;
  Report("A1", pass,
         Format("docs=%zu columns=%zu empty=%zu max|colsum-1| T=%.2e P=%.2e out_of_range=%zu "
                "time=%.1fs",
                docs.size(), columns, empty, worst_t, worst_p, negative, elapsed));
}

// A2: 200 walk layers land on the dense fixed point.
void CheckFixedPoint() {
  auto start = Clock::now();
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int instance = 0; instance < 100; ++instance) {
    std::size_t n = std::uniform_int_distribution<std::size_t>(2, 20)(rng);
    std::vector<double> dense(n * n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      if (u(rng) < 0.15) continue;  // an empty column
      double sum = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (i == j || u(rng) < 0.3) continue;
        dense[i * n + j] = u(rng);
        sum += dense[i * n + j];
      }
      for (std::size_t i = 0; i < n && sum > 0.0; ++i) dense[i * n + j] /= sum;
    }
    auto t = TransitionMatrix::FromDense(n, dense);
    std::vector<int> rows;
    for (std::size_t i = 0; i < n; ++i) {
      if (u(rng) < 0.4 || rows.empty()) rows.push_back(static_cast<int>(i));
    }
    Vector local(rows.size());
    double total = 0.0;
    for (double &x : local) total += (x = u(rng) + 1e-3);
    for (double &x : local) x /= total;
    auto state = Propagate(InitialState(n, {rows}, {local}, 0.5), t, 200);
    auto fixed = FixedPoint(t, state.initial[0], 0.5);
    for (std::size_t i = 0; i < n; ++i) {
      worst = std::max(worst, std::abs(state.columns[0][i] - fixed[i]));
    }
  }
  double elapsed = Seconds(start);
  Report("A2", worst <= 1e-8 && elapsed < 10.0,
         Format("instances=100 max_abs_error=%.2e time=%.2fs", worst, elapsed));
}

// A3: analytic gradients against central differences.
void CheckGradients() {
  auto start = Clock::now();
  double worst = 0.0;
  std::size_t checked = 0, without_consistency = 0;
  std::array<double, kTensorCount> groups{};
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    GradCheckOptions options;
    options.seed = seed;
    options.gamma = 0.5;  // cross entropy and consistency together
    options.layers = 2;
    options.mode = TransitionMode::kFull;  // hyperlink plus semantic relatedness
    auto report = GradCheck(options);
    worst = std::max(worst, report.max_relative_error);
    checked += report.checked;
    if (!(report.consistency > 0.0)) ++without_consistency;
    for (std::size_t t = 0; t < kTensorCount; ++t) {
      groups[t] = std::max(groups[t], report.group_error[t]);
    }
  }
  double elapsed = Seconds(start);
  bool covered = without_consistency == 0 && groups[0] > 0.0 && groups[1] > 0.0 &&
                 groups[2] > 0.0;
  Report("A3", worst < 1e-4 && covered && elapsed < 120.0,
         Format("seeds=20 checked=%zu max_relative_error=%.2e zero_consistency=%zu time=%.1fs",
                checked, worst, without_consistency, elapsed));
}

// A4: K=5 propagation flips the planted mention to its weak gold.
void CheckFlip(const World &world) {
  RunConfig config = WorldConfig(1);
  auto embeddings = PrepareEmbeddings(config, world.kb, world.train);
  auto params = Parameters::Initialize(embeddings, config.train.model, config.train.seed);
  auto train = CompileCorpus(world.train, world.kb, params.embeddings.vocab, config.train.model);
  auto flip = CompileCorpus(world.flip, world.kb, params.embeddings.vocab, config.train.model);
  Trainer trainer(params, config.train);
  trainer.Train(train);
  Model model(params, config.train.model);

  const auto &mention = world.flip.documents[0].mentions[1];
  auto pick = [&](std::size_t k) {
    auto d = model.Link(flip[0], TransitionMode::kFull, k, 0.5);
    return std::pair{mention.candidates[d[1].slot].entity, d[1].score};
  };
  auto local = model.Local(flip[0]);
  double gold_local = 0.0, rival_local = 0.0;
  for (std::size_t c = 0; c < mention.candidates.size(); ++c) {
    if (mention.candidates[c].entity == world.flip_gold) gold_local = local.local[1][c];
    if (mention.candidates[c].entity == world.flip_rival) rival_local = local.local[1][c];
  }
  auto [k0, s0] = pick(0);
  auto [k5, s5] = pick(5);
  bool pass = k0 == world.flip_rival && k5 == world.flip_gold;
  Report("A4", pass,
         Format("local gold=%.3f rival=%.3f K=0 -> %s (%.3f) K=5 -> %s (%.3f)", gold_local,
                rival_local, k0.c_str(), s0, k5.c_str(), s5));
}

// A5: phase-1 training separates the training set and generalizes.
void CheckLearning(const World &world) {
  auto start = Clock::now();
  RunConfig config = WorldConfig(1);
  config.train.pretrain_epochs = 50;
  config.train.finetune_epochs = 0;
  auto embeddings = PrepareEmbeddings(config, world.kb, world.train);
  auto params = Parameters::Initialize(embeddings, config.train.model, config.train.seed);
  const auto &mc = config.train.model;
  auto train = CompileCorpus(world.train, world.kb, params.embeddings.vocab, mc);
  auto valid = CompileCorpus(world.valid, world.kb, params.embeddings.vocab, mc);
  Model model(params, mc);
  Trainer trainer(params, config.train);
  // The full phase-1 budget runs; the held-out split scores the final model.
  std::size_t reached = 0;
  double train_f1 = 0.0;
  for (std::size_t epoch = 1; epoch <= 50; ++epoch) {
    trainer.RunEpoch(train, 1);
    train_f1 = F1(model, world.train, train, config.train.mode, 0);
    if (train_f1 == 1.0 && !reached) reached = epoch;
  }
  double valid_f1 = F1(model, world.valid, valid, config.train.mode, 0);
  double elapsed = Seconds(start);
  Report("A5", reached > 0 && train_f1 == 1.0 && valid_f1 >= 0.95 && elapsed < 300.0,
         Format("train_f1 first 1.0 at epoch %zu, %.4f after 50; valid_f1=%.4f time=%.1fs",
                reached, train_f1, valid_f1, elapsed));
}

// A6: every K >= 1 beats K = 0 on the held-out split.
void CheckSweep(const World &world) {
  auto start = Clock::now();
  RunConfig config = WorldConfig(1);
  config.sweep_k = {0, 1, 2, 3, 4, 5, 6, 7};
  config.sweep_lambda = {0.5};
  config.sweep_gamma = {0.1};
  auto rows = Sweep(config, world.kb, world.train, world.valid,
                    PrepareEmbeddings(config, world.kb, world.train));
  double base = rows[0].micro_f1.value_or(0.0);
  bool pass = true;
  std::string detail;
  for (const auto &row : rows) {
    double f1 = row.micro_f1.value_or(0.0);
    if (row.k > 0 && !(f1 > base)) pass = false;
    detail += Format("K=%zu:%.4f ", row.k, f1);
  }
  Report("A6", pass, detail + Format("time=%.1fs", Seconds(start)));
}

// A7: mean F1 over five seeds, full >= link_only >= learned.
void CheckAblation(const World &world) {
  auto start = Clock::now();
  Corpus held = world.valid;
  held.documents.insert(held.documents.end(), world.flip.documents.begin(),
                        world.flip.documents.end());
  const TransitionMode modes[] = {TransitionMode::kFull, TransitionMode::kLinkOnly,
                                  TransitionMode::kLearned};
  double mean[3] = {0, 0, 0};
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    RunConfig config = WorldConfig(seed);
    const auto &mc = config.train.model;
    auto embeddings = PrepareEmbeddings(config, world.kb, world.train);
    Parameters base = Parameters::Initialize(embeddings, mc, seed);
    auto train = CompileCorpus(world.train, world.kb, base.embeddings.vocab, mc);
    auto docs = CompileCorpus(held, world.kb, base.embeddings.vocab, mc);
    // Phase 1 does not depend on the mode, so it is shared.
    TrainConfig pretrain = config.train;
    pretrain.finetune_epochs = 0;
    Trainer trainer(base, pretrain);
    trainer.Train(train);
    for (int m = 0; m < 3; ++m) {
      Parameters params = base;
      TrainConfig finetune = config.train;
      finetune.pretrain_epochs = 0;
      finetune.mode = modes[m];
      Trainer cell(params, finetune, trainer.optimizer());
      cell.Train(train);
      Model model(params, mc);
      mean[m] += F1(model, held, docs, modes[m], 5) / 5.0;
    }
  }
  bool pass = mean[0] >= mean[1] && mean[1] >= mean[2];
  Report("A7", pass,
         Format("mean micro_f1 full=%.4f link_only=%.4f learned=%.4f time=%.1fs", mean[0],
                mean[1], mean[2], Seconds(start)));
}

// Brute-force hyperlink relatedness straight from the set definition.
double OracleRelatedness(const std::set<EntityIndex> &a, const std::set<EntityIndex> &b,
                         std::size_t total) {
  std::set<EntityIndex> common;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::inserter(common, common.begin()));
  double big = static_cast<double>(std::max(a.size(), b.size()));
  double small = static_cast<double>(std::min(a.size(), b.size()));
  double w = static_cast<double>(total);
  if (a.empty() || b.empty() || common.empty() || small >= w) return 0.0;
  double value =
      1.0 - std::log(big / static_cast<double>(common.size())) / std::log(w / small);
  return std::clamp(value, 0.0, 1.0);
}

// A8: hyperlink relatedness against set arithmetic.
void CheckRelatedness() {
  std::mt19937_64 rng(8);
  double worst = 0.0;
  std::size_t empty = 0, disjoint = 0, whole = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    std::size_t w = std::uniform_int_distribution<std::size_t>(1, 60)(rng);
    auto draw = [&] {
      std::set<EntityIndex> s;
      // Every fourth draw may be empty or cover the whole KB.
      double density = trial % 4 == 0 ? std::uniform_int_distribution<int>(0, 1)(rng)
                                      : std::uniform_real_distribution<double>(0, 0.6)(rng);
      for (std::size_t e = 0; e < w; ++e) {
        if (std::uniform_real_distribution<double>(0, 1)(rng) < density) {
          s.insert(static_cast<EntityIndex>(e));
        }
      }
      return s;
    };
    auto a = draw();
    auto b = draw();
    std::vector<EntityIndex> va(a.begin(), a.end()), vb(b.begin(), b.end());
    double got = LinkRelatedness(va, vb, w);
    double want = OracleRelatedness(a, b, w);
    if (a.empty() || b.empty()) {
      ++empty;
    } else if (std::none_of(a.begin(), a.end(), [&](EntityIndex e) { return b.count(e); })) {
      ++disjoint;
    } else if (std::min(a.size(), b.size()) == w) {
      ++whole;
    }
    worst = std::max(worst, std::abs(got - want));
  }
  bool covered = empty > 0 && disjoint > 0 && whole > 0;
  Report("A8", worst <= 1e-12 && covered,
         Format("triples=10000 empty=%zu disjoint=%zu whole_kb=%zu max_abs_error=%.2e", empty,
                disjoint, whole, worst));
}

}  // namespace
}  // namespace walklink

int main() {
  using namespace walklink;
  try {
    CheckStochasticity();
    CheckFixedPoint();
    CheckGradients();
    World world = MakeWorld();
    CheckFlip(world);
    CheckLearning(world);
    CheckSweep(world);
    CheckAblation(world);
    CheckRelatedness();
  } catch (const std::exception &e) {
    std::fprintf(stderr, "acceptance: error: %s\n", e.what());
    return 1;
  }
  return 0;
}
