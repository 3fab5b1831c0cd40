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

#include "scembed/sgns.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "scembed/simd.hpp"

namespace scembed {

void SgnsParams::validate() const {
  if (dim < 1) throw InvalidInput("sgns: dim must be >= 1");
  if (window < 1) throw InvalidInput("sgns: window must be >= 1");
  if (negatives < 1) throw InvalidInput("sgns: negatives must be >= 1");
  if (!(lr_final > 0.0) || !(lr_initial > lr_final)) {
    throw InvalidInput("sgns: learning rates must satisfy lr_initial > lr_final > 0");
  }
  if (subsample_t < 0.0) throw InvalidInput("sgns: subsample_t must be >= 0");
  if (workers < 1) throw InvalidInput("sgns: workers must be >= 1");
}

nlohmann::json SgnsParams::to_json() const {
  return {{"dim", dim},           {"window", window},     {"negatives", negatives},
          {"epochs", epochs},     {"lr_initial", lr_initial}, {"lr_final", lr_final},
          {"subsample_t", subsample_t}, {"seed", seed},   {"workers", workers}};
}

NoiseDistribution::NoiseDistribution(std::span<const std::uint64_t> counts, double power) {
  if (counts.empty()) throw InvalidInput("noise distribution over an empty vocabulary");
  prob_.resize(counts.size());
  double total = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] == 0) throw InvalidInput("noise distribution needs positive counts");
    prob_[i] = std::pow(static_cast<double>(counts[i]), power);
    total += prob_[i];
  }
  cumulative_.resize(prob_.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < prob_.size(); ++i) {
    prob_[i] /= total;
    acc += prob_[i];
    cumulative_[i] = acc;
  }
  cumulative_.back() = 1.0;
}

std::uint32_t NoiseDistribution::sample(Rng& rng) const {
  const double u = uniform01(rng);
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  const auto idx = static_cast<std::size_t>(it - cumulative_.begin());
  return static_cast<std::uint32_t>(std::min(idx, cumulative_.size() - 1));
}

namespace {

double softplus(double z) {
  if (std::isinf(z)) return z > 0 ? z : 0.0;
  return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z)));
}

double logistic(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double plain_dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

PairLoss sgns_pair_loss(std::span<const double> center, std::span<const double> context,
                        const std::vector<std::span<const double>>& negatives) {
  const std::size_t d = center.size();
  if (context.size() != d) throw InvalidInput("sgns_pair_loss: context dimension mismatch");
  for (const auto& n : negatives) {
    if (n.size() != d) throw InvalidInput("sgns_pair_loss: negative dimension mismatch");
  }

  PairLoss out;
  out.grad_center.assign(d, 0.0);
  out.grad_context.assign(d, 0.0);

  // d/dx softplus(-x) = -s(-x); d/dx softplus(x) = s(x)
  const double pos = plain_dot(center, context);
  out.loss += softplus(-pos);
  const double gpos = -logistic(-pos);
  for (std::size_t i = 0; i < d; ++i) {
    out.grad_center[i] += gpos * context[i];
    out.grad_context[i] = gpos * center[i];
  }
  for (const auto& n : negatives) {
    const double neg = plain_dot(center, n);
    out.loss += softplus(neg);
    const double gneg = logistic(neg);
    std::vector<double> g(d);
    for (std::size_t i = 0; i < d; ++i) {
      out.grad_center[i] += gneg * n[i];
      g[i] = gneg * center[i];
    }
    out.grad_negatives.push_back(std::move(g));
  }
  return out;
}

namespace {

struct TrainState {
  const SgnsParams& params;
  const NoiseDistribution& noise;
  const std::vector<std::vector<std::uint32_t>>& docs;
  const std::vector<double>& keep_prob;
  SgnsModel& model;
  double total_positions;
  std::atomic<std::uint64_t>& processed;
};

void train_pair(TrainState& st, std::uint32_t center, std::uint32_t context, float lr, Rng& rng,
                std::vector<float>& grad) {
  const auto& k = simd::active();
  const std::size_t dim = st.model.dim;
  float* h = st.model.input.data() + static_cast<std::size_t>(center) * dim;
  std::fill(grad.begin(), grad.end(), 0.0f);
  for (std::size_t s = 0; s <= st.params.negatives; ++s) {
    const std::uint32_t target = s == 0 ? context : st.noise.sample(rng);
    const float label = s == 0 ? 1.0f : 0.0f;
    float* v = st.model.output.data() + static_cast<std::size_t>(target) * dim;
    const float f = k.dot_f32(h, v, dim);
    const float g = (label - static_cast<float>(logistic(f))) * lr;
    k.axpy_f32(g, v, grad.data(), dim);
    k.axpy_f32(g, h, v, dim);
  }
  k.axpy_f32(1.0f, grad.data(), h, dim);
}

void train_documents(TrainState& st, std::size_t begin, std::size_t end, Rng& rng) {
  const SgnsParams& p = st.params;
  std::vector<float> grad(st.model.dim);
  std::vector<std::uint32_t> kept;
  for (std::size_t d = begin; d < end; ++d) {
    const auto& doc = st.docs[d];
    kept.clear();
    for (std::uint32_t w : doc) {
      if (st.keep_prob[w] >= 1.0 || uniform01(rng) < st.keep_prob[w]) kept.push_back(w);
    }
    const std::uint64_t base = st.processed.load(std::memory_order_relaxed);
    for (std::size_t i = 0; i < kept.size(); ++i) {
      const double progress = static_cast<double>(base + i) / st.total_positions;
      const float lr = static_cast<float>(std::max(p.lr_final, p.lr_initial - (p.lr_initial - p.lr_final) * progress));
      const std::size_t b = 1 + static_cast<std::size_t>(uniform_index(rng, p.window));
      const std::size_t lo = i >= b ? i - b : 0;
      const std::size_t hi = std::min(kept.size() - 1, i + b);
      for (std::size_t j = lo; j <= hi; ++j) {
        if (j != i) train_pair(st, kept[i], kept[j], lr, rng, grad);
      }
    }
    st.processed.fetch_add(doc.size(), std::memory_order_relaxed);
  }
}

}  // namespace

SgnsModel train_sgns_model(const Corpus& corpus, const SgnsParams& params, const EpochCallback& on_epoch) {
  params.validate();
  if (corpus.empty()) throw InvalidInput("cannot train skip-gram on an empty corpus");
  SgnsModel model;
  model.vocab = build_vocabulary(corpus);
  if (model.vocab.size() < 2) {
    throw InvalidInput("skip-gram needs at least 2 vocabulary words for negative sampling");
  }
  const std::size_t n = model.vocab.size();
  model.dim = params.dim;

  std::vector<std::vector<std::uint32_t>> docs;
  docs.reserve(corpus.size());
  for (const TokenDocument& d : corpus.documents()) {
    std::vector<std::uint32_t> ids;
    ids.reserve(d.tokens.size());
    for (const auto& t : d.tokens) ids.push_back(model.vocab.index_of(t));
    docs.push_back(std::move(ids));
  }

  const double total_tokens = static_cast<double>(corpus.token_count());
  std::vector<double> keep_prob(n, 1.0);
  if (params.subsample_t > 0.0) {
    for (std::size_t w = 0; w < n; ++w) {
      const double f = static_cast<double>(model.vocab.corpus_count(w)) / total_tokens;
      keep_prob[w] = std::clamp(std::sqrt(params.subsample_t / f), 0.0, 1.0);
    }
  }

  Rng init_rng(derive_seed(params.seed, {0}));
  model.input.resize(n * params.dim);
  for (float& x : model.input) x = static_cast<float>((uniform01(init_rng) - 0.5) / static_cast<double>(params.dim));
  model.output.assign(n * params.dim, 0.0f);

  const NoiseDistribution noise(model.vocab.corpus_counts());
  std::atomic<std::uint64_t> processed{0};
  TrainState st{params, noise, docs, keep_prob, model,
                std::max(1.0, total_tokens * static_cast<double>(params.epochs)), processed};

  const std::size_t workers = std::min(params.workers, docs.size());
  for (std::size_t epoch = 0; epoch < params.epochs; ++epoch) {
    if (workers <= 1) {
      Rng rng(derive_seed(params.seed, {1, epoch}));
      train_documents(st, 0, docs.size(), rng);
    } else {
      std::vector<std::thread> pool;
      for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = docs.size() * w / workers;
        const std::size_t end = docs.size() * (w + 1) / workers;
        pool.emplace_back([&st, &params, begin, end, epoch, w] {
          Rng rng(derive_seed(params.seed, {1, epoch, w + 1}));
          train_documents(st, begin, end, rng);
        });
      }
      for (auto& t : pool) t.join();
    }
    if (on_epoch) on_epoch(epoch + 1, model);
  }
  return model;
}

Embedding train_sgns(const Corpus& corpus, const SgnsParams& params, const EpochCallback& on_epoch) {
  SgnsModel model = train_sgns_model(corpus, params, on_epoch);
  Matrix vectors(model.vocab.size(), model.dim);
  for (std::size_t i = 0; i < model.input.size(); ++i) vectors.data()[i] = model.input[i];
  nlohmann::json fp = params.to_json();
  fp["model"] = "sgns";
  return Embedding(std::move(model.vocab), std::move(vectors), "sgns", std::move(fp));
}

}  // namespace scembed
