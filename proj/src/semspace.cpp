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

#include "scembed/semspace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "scembed/simd.hpp"

namespace scembed {

Embedding::Embedding(Vocabulary vocab, Matrix vectors, std::string model_tag, nlohmann::json params)
    : vocab_(std::move(vocab)),
      vectors_(std::move(vectors)),
      model_tag_(std::move(model_tag)),
      params_(std::move(params)) {
  if (vectors_.rows() != vocab_.size()) {
    throw InvalidInput("embedding has " + std::to_string(vectors_.rows()) + " rows for " +
                       std::to_string(vocab_.size()) + " words");
  }
  const auto& k = simd::active();
  norms_.resize(vectors_.rows());
  for (std::size_t i = 0; i < vectors_.rows(); ++i) {
    const auto v = vectors_.row(i);
    norms_[i] = std::sqrt(k.dot_f64(v.data(), v.data(), v.size()));
    if (norms_[i] == 0.0) dead_.push_back(static_cast<std::uint32_t>(i));
  }
}

std::uint32_t Embedding::live_index(std::string_view word) const {
  const std::uint32_t i = vocab_.index_of(word);
  if (is_dead(i)) throw DeadWord(std::string(word));
  return i;
}

std::vector<double> Embedding::similarities_to(std::size_t i) const {
  const auto& k = simd::active();
  const auto target = vectors_.row(i);
  std::vector<double> sims(size(), std::numeric_limits<double>::quiet_NaN());
  if (is_dead(i)) return sims;
  for (std::size_t j = 0; j < size(); ++j) {
    if (is_dead(j)) continue;
    if (j == i) {
      sims[j] = 1.0;
      continue;
    }
    const double c = k.dot_f64(target.data(), vectors_.row(j).data(), dim()) / (norms_[i] * norms_[j]);
    sims[j] = std::clamp(c, -1.0, 1.0);
  }
  return sims;
}

double similarity(const Embedding& emb, std::string_view w1, std::string_view w2) {
  const std::uint32_t a = emb.live_index(w1);
  const std::uint32_t b = emb.live_index(w2);
  if (a == b) return 1.0;
  const double dot = simd::active().dot_f64(emb.vector(a).data(), emb.vector(b).data(), emb.dim());
  return std::clamp(dot / (emb.norm(a) * emb.norm(b)), -1.0, 1.0);
}

double distance(const Embedding& emb, std::string_view w1, std::string_view w2) {
  return 1.0 - similarity(emb, w1, w2);
}

NeighborList neighbors(const Embedding& emb, std::string_view target, std::size_t k, std::uint64_t min_count) {
  const std::uint32_t t = emb.live_index(target);
  const auto sims = emb.similarities_to(t);
  const Vocabulary& vocab = emb.vocabulary();

  std::vector<std::uint32_t> candidates;
  for (std::uint32_t j = 0; j < emb.size(); ++j) {
    if (j == t || emb.is_dead(j) || vocab.corpus_count(j) < min_count) continue;
    candidates.push_back(j);
  }
  auto before = [&](std::uint32_t a, std::uint32_t b) {
    if (sims[a] != sims[b]) return sims[a] > sims[b];
    return vocab.word(a) < vocab.word(b);
  };
  const std::size_t take = std::min(k, candidates.size());
  std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(take), candidates.end(),
                    before);

  NeighborList out{std::string(target), {}, min_count};
  for (std::size_t i = 0; i < take; ++i) out.entries.push_back({vocab.word(candidates[i]), sims[candidates[i]]});
  return out;
}

std::size_t rank_distance(const Embedding& emb, std::string_view target, std::string_view probe) {
  const std::uint32_t t = emb.live_index(target);
  const std::uint32_t p = emb.live_index(probe);
  if (t == p) throw InvalidInput("rank distance of a word to itself is undefined: '" + std::string(target) + "'");
  const auto sims = emb.similarities_to(t);
  const Vocabulary& vocab = emb.vocabulary();
  const double ps = sims[p];
  const std::string& pw = vocab.word(p);
  std::size_t rank = 1;
  for (std::uint32_t j = 0; j < emb.size(); ++j) {
    if (j == t || j == p || emb.is_dead(j)) continue;
    if (sims[j] > ps || (sims[j] == ps && vocab.word(j) < pw)) ++rank;
  }
  return rank;
}

std::optional<std::size_t> min_rank_distance(const Embedding& emb, std::string_view target,
                                             const std::set<std::string>& probes) {
  const std::uint32_t t = emb.live_index(target);
  const Vocabulary& vocab = emb.vocabulary();
  std::vector<std::uint32_t> present;
  for (const auto& w : probes) {
    if (auto i = vocab.find(w); i && *i != t && !emb.is_dead(*i)) present.push_back(*i);
  }
  if (present.empty()) return std::nullopt;

  const auto sims = emb.similarities_to(t);
  std::optional<std::size_t> best;
  for (std::uint32_t p : present) {
    const double ps = sims[p];
    const std::string& pw = vocab.word(p);
    std::size_t rank = 1;
    for (std::uint32_t j = 0; j < emb.size(); ++j) {
      if (j == t || j == p || emb.is_dead(j)) continue;
      if (sims[j] > ps || (sims[j] == ps && vocab.word(j) < pw)) ++rank;
    }
    if (!best || rank < *best) best = rank;
  }
  return best;
}

}  // namespace scembed
