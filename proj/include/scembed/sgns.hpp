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
#include <functional>
#include <span>
#include <vector>

#include <json.hpp>

#include "scembed/common.hpp"
#include "scembed/corpus.hpp"
#include "scembed/lexicon.hpp"
#include "scembed/semspace.hpp"

namespace scembed {

/// Skip-gram with negative sampling. Defaults follow the usual word2vec
/// toolkit defaults (5 epochs, lr 0.025 -> 1e-4, sample 1e-3).
struct SgnsParams {
  std::size_t dim = 100;
  std::size_t window = 5;
  std::size_t negatives = 5;
  std::size_t epochs = 5;
  double lr_initial = 0.025;
  double lr_final = 1e-4;
  double subsample_t = 1e-3;
  std::uint64_t seed = 1;
  /// 1 = deterministic single-threaded training. More workers update the
  /// shared matrices without locks and are not reproducible.
  std::size_t workers = 1;

  void validate() const;
  nlohmann::json to_json() const;
};

/// Unigram^0.75 noise distribution with a cumulative table for sampling.
class NoiseDistribution {
 public:
  explicit NoiseDistribution(std::span<const std::uint64_t> counts, double power = 0.75);

  std::size_t size() const noexcept { return prob_.size(); }
  double probability(std::size_t i) const { return prob_.at(i); }
  std::uint32_t sample(Rng& rng) const;

 private:
  std::vector<double> prob_;
  std::vector<double> cumulative_;
};

struct PairLoss {
  double loss = 0.0;
  std::vector<double> grad_center;
  std::vector<double> grad_context;
  std::vector<std::vector<double>> grad_negatives;
};

/// loss = -log s(c.v) - sum_n log s(-c.v_n), s the logistic function,
/// with gradients for every input vector. Evaluated with softplus, so the
/// loss is finite and accurate for any finite or infinite dot product.
/// Throws InvalidInput on a dimension mismatch.
PairLoss sgns_pair_loss(std::span<const double> center, std::span<const double> context,
                        const std::vector<std::span<const double>>& negatives);

/// Trainable parameter matrices (float, row-major |V| x dim).
struct SgnsModel {
  Vocabulary vocab;
  std::size_t dim = 0;
  std::vector<float> input;   // center vectors; these become the embedding
  std::vector<float> output;  // context vectors

  std::span<const float> input_row(std::size_t i) const { return {input.data() + i * dim, dim}; }
  std::span<const float> output_row(std::size_t i) const { return {output.data() + i * dim, dim}; }
};

/// Called after each epoch (1-based) with the current parameters.
using EpochCallback = std::function<void(std::size_t epoch, const SgnsModel& model)>;

/// Train on the corpus. Per epoch and document: frequent words are dropped
/// with probability 1 - sqrt(t / f(w)); for each kept center a window b is
/// drawn from {1..window}; each context within +-b gets one positive and
/// `negatives` noise updates. The step size decays linearly from lr_initial
/// to lr_final over all scheduled positions. Inputs start uniform in
/// [-0.5/dim, 0.5/dim], outputs at zero.
///
/// Throws InvalidInput for an empty corpus or fewer than 2 vocabulary words.
SgnsModel train_sgns_model(const Corpus& corpus, const SgnsParams& params, const EpochCallback& on_epoch = {});

/// train_sgns_model, returning the input vectors as an Embedding.
Embedding train_sgns(const Corpus& corpus, const SgnsParams& params, const EpochCallback& on_epoch = {});

}  // namespace scembed
