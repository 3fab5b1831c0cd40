// Copyright 2026 The scembed Authors.
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

#include "scembed/models.hpp"

namespace scembed {

ModelKind parse_model_kind(std::string_view name) {
  if (name == "lsa") return ModelKind::kLsa;
  if (name == "sgns" || name == "skipgram" || name == "skip-gram") return ModelKind::kSgns;
  if (name == "random") return ModelKind::kRandom;
  throw InvalidInput("unknown model '" + std::string(name) + "' (expected lsa|sgns|random)");
}

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::kLsa:
      return "lsa";
    case ModelKind::kSgns:
      return "sgns";
    case ModelKind::kRandom:
      return "random";
  }
  return "unknown";
}

std::string ModelConfig::label() const {
  if (kind == ModelKind::kSgns) {
    return "sgns(win=" + std::to_string(sgns.window) + ",neg=" + std::to_string(sgns.negatives) + ")";
  }
  return to_string(kind);
}

nlohmann::json ModelConfig::to_json() const {
  nlohmann::json j = {{"model", to_string(kind)}};
  if (kind == ModelKind::kLsa) j["lsa"] = lsa.to_json();
  if (kind == ModelKind::kSgns) j["sgns"] = sgns.to_json();
  return j;
}

Embedding train_model(const Corpus& corpus, const ModelConfig& config, std::size_t dim, std::uint64_t seed) {
  switch (config.kind) {
    case ModelKind::kLsa: {
      LsaParams p = config.lsa;
      p.dim = dim;
      p.seed = seed;
      return train_lsa(corpus, p);
    }
    case ModelKind::kSgns: {
      SgnsParams p = config.sgns;
      p.dim = dim;
      p.seed = seed;
      return train_sgns(corpus, p);
    }
    case ModelKind::kRandom:
      return random_embedding(corpus, dim, seed);
  }
  throw InvalidInput("unknown model kind");
}

Embedding random_embedding(const Corpus& corpus, std::size_t dim, std::uint64_t seed) {
  if (corpus.empty()) throw InvalidInput("cannot build an embedding for an empty corpus");
  if (dim < 1) throw InvalidInput("random embedding: dim must be >= 1");
  Vocabulary vocab = build_vocabulary(corpus);
  Rng rng(seed);
  Matrix m(vocab.size(), dim);
  for (double& x : m.data()) x = standard_normal(rng);
  return Embedding(std::move(vocab), std::move(m), "random", {{"model", "random"}, {"dim", dim}, {"seed", seed}});
}

}  // namespace scembed
