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

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include <json.hpp>

#include "scembed/corpus.hpp"
#include "scembed/lsa.hpp"
#include "scembed/semspace.hpp"
#include "scembed/sgns.hpp"

namespace scembed {

enum class ModelKind {
  kLsa,
  kSgns,
  kRandom,  // Gaussian vectors ignoring the corpus; a floor for comparisons
};

ModelKind parse_model_kind(std::string_view name);
std::string to_string(ModelKind kind);

/// Everything needed to train one embedding except dimension and seed,
/// which sweeps vary per cell.
struct ModelConfig {
  ModelKind kind = ModelKind::kLsa;
  LsaParams lsa;
  SgnsParams sgns;

  /// "lsa", "sgns(win=15,neg=10)", "random".
  std::string label() const;
  nlohmann::json to_json() const;
};

Embedding train_model(const Corpus& corpus, const ModelConfig& config, std::size_t dim, std::uint64_t seed);

/// Standard normal vectors for every corpus word.
Embedding random_embedding(const Corpus& corpus, std::size_t dim, std::uint64_t seed);

}  // namespace scembed
