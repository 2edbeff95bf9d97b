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

// Command-line front end: build-kb, train, link, eval, sweep.

#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "walklink/checkpoint.hpp"
#include "walklink/config.hpp"
#include "walklink/corpus.hpp"
#include "walklink/errors.hpp"
#include "walklink/evaluation.hpp"
#include "walklink/kb.hpp"
#include "walklink/pipeline.hpp"
#include "walklink/training.hpp"

namespace walklink {
namespace {

void ApplyOverrides(RunConfig &config, const std::vector<std::string> &overrides) {
  for (const auto &item : overrides) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + item + "'");
    ApplySetting(config, item.substr(0, eq), item.substr(eq + 1));
  }
}

RunConfig ReadConfig(const std::string &path, const std::vector<std::string> &overrides) {
  RunConfig config = LoadRunConfig(path);
  ApplyOverrides(config, overrides);
  config.Validate();
  return config;
}

Corpus ReadCorpus(const std::string &path, const KnowledgeBase &kb, std::size_t max_candidates) {
  Corpus corpus = LoadCorpus(path, kb, CorpusOptions{max_candidates});
  for (const auto &warning : corpus.warnings) std::cerr << "warning: " << warning << '\n';
  std::cerr << "corpus " << path << ": " << corpus.stats.documents << " documents, "
            << corpus.stats.retained_mentions << " mentions kept, "
            << corpus.stats.dropped_mentions << " dropped\n";
  return corpus;
}

// Output stream that is stdout unless a path is given.
class Output {
 public:
  explicit Output(const std::string &path) {
    if (path.empty()) return;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw LoadError("cannot write '" + path + "'");
  }
  std::ostream &stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

int BuildKb(const std::string &raw, const std::string &out_path) {
  KnowledgeBase kb = KnowledgeBase::Load(raw);
  const auto &s = kb.stats();
  std::cerr << "pages " << s.pages << ", aliases " << s.aliases << ", dangling links dropped "
            << s.dangling_links << ", dangling alias entries dropped "
            << s.dangling_alias_entries << '\n';
  Output out(out_path == "-" ? "" : out_path);
  kb.Write(out.stream());
  return 0;
}

int Train(const std::string &config_path, const std::vector<std::string> &overrides) {
  RunConfig config = ReadConfig(config_path, overrides);
  if (config.kb.empty() || config.corpus.empty()) throw ConfigError("kb and corpus are required");
  if (config.checkpoint.empty()) throw ConfigError("checkpoint is required");
  KnowledgeBase kb = KnowledgeBase::Load(config.kb);
  const auto &model_config = config.train.model;
  Corpus corpus = ReadCorpus(config.corpus, kb, model_config.max_candidates);
  Parameters params = Parameters::Initialize(PrepareEmbeddings(config, kb, corpus),
                                             model_config, config.train.seed);
  auto docs = CompileCorpus(corpus, kb, params.embeddings.vocab, model_config);

  Output log(config.log);
  Trainer trainer(params, config.train);
  trainer.Train(docs, [&](const EpochStats &stats) {
    log.stream() << EpochJson(stats) << std::endl;
    SaveCheckpoint(config.checkpoint, config, params, trainer.optimizer());
  });
  if (config.train.pretrain_epochs + config.train.finetune_epochs == 0) {
    SaveCheckpoint(config.checkpoint, config, params, trainer.optimizer());
  }
  std::cerr << "checkpoint written to " << config.checkpoint << '\n';
  return 0;
}

struct LinkFlags {
  std::optional<std::size_t> k;
  std::optional<double> lambda;
  std::optional<std::string> mode;
  std::string kb;
  std::string output;
};

int Link(const std::string &checkpoint_path, const std::string &corpus_path,
         const LinkFlags &flags) {
  Checkpoint ckpt = LoadCheckpoint(checkpoint_path);
  const auto &train = ckpt.config.train;
  const std::size_t k = flags.k.value_or(train.layers);
  const double lambda = flags.lambda.value_or(train.lambda);
  const TransitionMode mode = flags.mode ? ParseMode(*flags.mode) : train.mode;
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw ConfigError("--lambda must lie in [0, 1]");
  const std::string kb_path = flags.kb.empty() ? ckpt.config.kb : flags.kb;
  if (kb_path.empty()) throw ConfigError("no knowledge base: pass --kb");
  KnowledgeBase kb = KnowledgeBase::Load(kb_path);
  Corpus corpus = ReadCorpus(corpus_path, kb, train.model.max_candidates);
  auto docs = CompileCorpus(corpus, kb, ckpt.params.embeddings.vocab, train.model);
  Model model(ckpt.params, train.model);
  Output out(flags.output);
  for (const auto &p : LinkCorpus(model, corpus, docs, mode, k, lambda)) {
    WritePrediction(out.stream(), p);
  }
  return 0;
}

int Eval(const std::string &predictions_path, const std::string &corpus_path,
         const std::string &kb_path, std::size_t max_candidates) {
  KnowledgeBase kb = KnowledgeBase::Load(kb_path);
  Corpus corpus = ReadCorpus(corpus_path, kb, max_candidates);
  EvalReport report = Evaluate(LoadPredictions(predictions_path), corpus);
  std::cout << ReportJson(report) << '\n';
  return 0;
}

int RunSweep(const std::string &config_path, const std::vector<std::string> &overrides) {
  RunConfig config = ReadConfig(config_path, overrides);
  if (config.kb.empty() || config.corpus.empty() || config.valid_corpus.empty()) {
    throw ConfigError("kb, corpus and valid_corpus are required");
  }
  KnowledgeBase kb = KnowledgeBase::Load(config.kb);
  const auto max_candidates = config.train.model.max_candidates;
  Corpus train = ReadCorpus(config.corpus, kb, max_candidates);
  Corpus valid = ReadCorpus(config.valid_corpus, kb, max_candidates);
  auto rows = Sweep(config, kb, train, valid, PrepareEmbeddings(config, kb, train),
                    [](const SweepRow &row) {
                      std::cerr << "k=" << row.k << " lambda=" << row.lambda
                                << " gamma=" << row.gamma << " micro_f1="
                                << (row.micro_f1 ? std::to_string(*row.micro_f1) : "null")
                                << '\n';
                    });
  Output out(config.output);
  WriteSweepCsv(out.stream(), rows);
  return 0;
}

}  // namespace
}  // namespace walklink

int main(int argc, char **argv) {
  using namespace walklink;
  CLI::App app{"Collective entity linking with random walks over a knowledge base"};
  app.require_subcommand(1);

  std::string raw, kb_out;
  auto *build = app.add_subcommand("build-kb", "Validate a KB file and write it normalized");
  build->add_option("raw", raw, "Input KB (JSON lines)")->required();
  build->add_option("out", kb_out, "Output path, - for stdout")->required();

  std::string config_path;
  std::vector<std::string> overrides;
  auto *train = app.add_subcommand("train", "Train a model from a config file");
  train->add_option("config", config_path, "key = value config file")->required();
  train->add_option("--set", overrides, "Override a config value (key=value)");

  std::string checkpoint, corpus;
  LinkFlags flags;
  auto *link = app.add_subcommand("link", "Link the mentions of a corpus");
  link->add_option("checkpoint", checkpoint)->required();
  link->add_option("corpus", corpus)->required();
  link->add_option("--k", flags.k, "Random-walk layers (default: checkpoint)");
  link->add_option("--lambda", flags.lambda, "Restart probability (default: checkpoint)");
  link->add_option("--mode", flags.mode, "full, link_only or learned")
      ->check(CLI::IsMember({"full", "link_only", "learned"}));
  link->add_option("--kb", flags.kb, "KB file (default: the one used for training)");
  link->add_option("-o,--output", flags.output, "Write predictions here instead of stdout");

  std::string predictions, eval_kb;
  std::size_t max_candidates = 7;
  auto *eval = app.add_subcommand("eval", "Score predictions against corpus golds");
  eval->add_option("predictions", predictions)->required();
  eval->add_option("corpus", corpus)->required();
  eval->add_option("--kb", eval_kb, "KB file used to rebuild candidates")->required();
  eval->add_option("--max-candidates", max_candidates, "Candidates kept per mention");

  auto *sweep = app.add_subcommand("sweep", "Grid over k, lambda and gamma");
  sweep->add_option("config", config_path)->required();
  sweep->add_option("--set", overrides, "Override a config value (key=value)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*build) return BuildKb(raw, kb_out);
    if (*train) return Train(config_path, overrides);
    if (*link) return Link(checkpoint, corpus, flags);
    if (*eval) return Eval(predictions, corpus, eval_kb, max_candidates);
    if (*sweep) return RunSweep(config_path, overrides);
  } catch (const std::exception &e) {
    std::cerr << "walklink: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
