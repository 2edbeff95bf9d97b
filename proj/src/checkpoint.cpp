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

#include <bit>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "walklink/errors.hpp"

namespace walklink {
namespace {

void PutU64(std::ostream &out, std::uint64_t x) {
  char bytes[8];
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((x >> (8 * i)) & 0xFF);
  out.write(bytes, 8);
}

void PutU32(std::ostream &out, std::uint32_t x) {
  char bytes[4];
  for (int i = 0; i < 4; ++i) bytes[i] = static_cast<char>((x >> (8 * i)) & 0xFF);
  out.write(bytes, 4);
}

void PutBlob(std::ostream &out, const std::string &s) {
  PutU64(out, s.size());
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

void PutTensor(std::ostream &out, const std::string &name, const Tensor &t) {
  PutU32(out, static_cast<std::uint32_t>(name.size()));
  out.write(name.data(), static_cast<std::streamsize>(name.size()));
  PutU32(out, static_cast<std::uint32_t>(t.shape.size()));
  for (auto d : t.shape) PutU64(out, d);
  for (double v : t.values) PutU64(out, std::bit_cast<std::uint64_t>(v));
}

class Reader {
 public:
  explicit Reader(std::istream &in) : in_(in) {}

  void Bytes(char *dst, std::size_t n) {
    in_.read(dst, static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in_.gcount()) != n) throw LoadError("checkpoint is truncated");
  }
  std::uint64_t U64() {
    unsigned char b[8];
    Bytes(reinterpret_cast<char *>(b), 8);
    std::uint64_t x = 0;
    for (int i = 7; i >= 0; --i) x = (x << 8) | b[i];
    return x;
  }
  std::uint32_t U32() {
    unsigned char b[4];
    Bytes(reinterpret_cast<char *>(b), 4);
    std::uint32_t x = 0;
    for (int i = 3; i >= 0; --i) x = (x << 8) | b[i];
    return x;
  }
  std::string String(std::uint64_t n) {
    if (n > (1ull << 34)) throw LoadError("checkpoint field too large");
    std::string s(n, '\0');
    if (n) Bytes(s.data(), n);
    return s;
  }
  Tensor ReadTensor(std::string *name) {
    *name = String(U32());
    std::uint32_t rank = U32();
    if (rank > 8) throw LoadError("tensor '" + *name + "' has rank " + std::to_string(rank));
    std::vector<std::size_t> dims;
    std::uint64_t total = 1;
    for (std::uint32_t i = 0; i < rank; ++i) {
      dims.push_back(U64());
      total *= dims.back();
      if (total > (1ull << 32)) throw LoadError("tensor '" + *name + "' is too large");
    }
    Tensor t(dims);
    for (double &v : t.values) v = std::bit_cast<double>(U64());
    return t;
  }

 private:
  std::istream &in_;
};

}  // namespace

void WriteCheckpoint(std::ostream &out, const RunConfig &config, const Parameters &params,
                     const OptimizerState &optimizer) {
  out.write(kCheckpointMagic, 4);
  PutU32(out, kCheckpointVersion);
  std::string settings;
  for (const auto &[key, value] : Describe(config)) settings += key + "=" + value + "\n";
  PutBlob(out, settings);
  std::string vocab;
  for (const auto &token : params.embeddings.vocab.tokens()) {
    if (token.find('\n') != std::string::npos) {
      throw ContractError("vocabulary token contains a newline");
    }
    vocab += token + "\n";
  }
  PutBlob(out, vocab);
  auto tensors = params.tensors();
  PutU64(out, 2 * kTensorCount);
  for (std::size_t t = 0; t < kTensorCount; ++t) {
    PutTensor(out, std::string(kTensorNames[t]), *tensors[t]);
  }
  for (std::size_t t = 0; t < kTensorCount; ++t) {
    PutTensor(out, "adagrad." + std::string(kTensorNames[t]), optimizer.accumulators[t]);
  }
  if (!out) throw LoadError("failed writing checkpoint");
}

Checkpoint ReadCheckpoint(std::istream &in) {
  Reader reader(in);
  char magic[4];
  reader.Bytes(magic, 4);
  if (std::memcmp(magic, kCheckpointMagic, 4) != 0) throw LoadError("not a checkpoint file");
  std::uint32_t version = reader.U32();
  if (version != kCheckpointVersion) {
    throw LoadError("unsupported checkpoint version " + std::to_string(version));
  }

  Checkpoint ckpt;
  std::istringstream settings(reader.String(reader.U64()));
  for (std::string line; std::getline(settings, line);) {
    auto eq = line.find('=');
    if (eq == std::string::npos) throw LoadError("corrupt checkpoint settings");
    ApplySetting(ckpt.config, line.substr(0, eq), line.substr(eq + 1));
  }

  std::string vocab = reader.String(reader.U64());
  std::size_t start = 0;
  while (start < vocab.size()) {
    auto nl = vocab.find('\n', start);
    if (nl == std::string::npos) throw LoadError("corrupt checkpoint vocabulary");
    ckpt.params.embeddings.vocab.Add(vocab.substr(start, nl - start));
    start = nl + 1;
  }

  std::map<std::string, Tensor> found;
  std::uint64_t count = reader.U64();
  for (std::uint64_t i = 0; i < count; ++i) {
    std::string name;
    Tensor t = reader.ReadTensor(&name);
    found[name] = std::move(t);
  }
  auto take = [&](const std::string &name) {
    auto it = found.find(name);
    if (it == found.end()) throw LoadError("checkpoint lacks tensor '" + name + "'");
    return std::move(it->second);
  };

  auto &params = ckpt.params;
  params.embeddings.matrix = take("embeddings");
  params.encoder.weights = take("filters");
  params.local_weights = take("w_local");
  params.relation_weights = take("w_relation");
  const auto &model = ckpt.config.train.model;
  const auto &emb = params.embeddings.matrix.shape;
  const auto &filters = params.encoder.weights.shape;
  if (emb.size() != 2 || emb[0] != params.embeddings.vocab.size() + 1) {
    throw LoadError("embedding table does not match the vocabulary");
  }
  if (filters.size() != 3 || filters[0] != model.filters || filters[1] != model.window ||
      filters[2] != emb[1]) {
    throw LoadError("filter tensor does not match the recorded dimensions");
  }
  if (params.local_weights.size() != kLocalFeatureCount ||
      params.relation_weights.size() != 2 * model.filters) {
    throw LoadError("weight vectors do not match the recorded dimensions");
  }
  params.encoder.filters = filters[0];
  params.encoder.window = filters[1];
  params.encoder.input_dim = filters[2];

  auto tensors = std::as_const(params).tensors();
  for (std::size_t t = 0; t < kTensorCount; ++t) {
    auto name = "adagrad." + std::string(kTensorNames[t]);
    ckpt.optimizer.accumulators[t] = take(name);
    if (ckpt.optimizer.accumulators[t].shape != tensors[t]->shape) {
      throw LoadError("tensor '" + name + "' has the wrong shape");
    }
  }
  return ckpt;
}

void SaveCheckpoint(const std::string &path, const RunConfig &config,
                    const Parameters &params, const OptimizerState &optimizer) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw LoadError("cannot write checkpoint '" + tmp + "'");
    WriteCheckpoint(out, config, params, optimizer);
  }
  std::filesystem::rename(tmp, path);
}

Checkpoint LoadCheckpoint(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot open checkpoint '" + path + "'");
  try {
    return ReadCheckpoint(in);
  } catch (const LoadError &e) {
    throw LoadError(path + ": " + e.what());
  }
}

}  // namespace walklink
