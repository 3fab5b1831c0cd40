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

#include <doctest.h>

#include <cmath>
#include <limits>

#include "scembed/sgns.hpp"
#include "scembed/synth.hpp"

using namespace scembed;

namespace {

double loss_only(const std::vector<double>& c, const std::vector<double>& o,
                 const std::vector<std::vector<double>>& negs) {
  std::vector<std::span<const double>> spans(negs.begin(), negs.end());
  return sgns_pair_loss(c, o, spans).loss;
}

double cosine(std::span<const double> a, std::span<const double> b) {
  double d = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    d += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  return d / std::sqrt(na * nb);
}

SgnsParams small_params() {
  SgnsParams p;
  p.dim = 20;
  p.window = 3;
  p.negatives = 3;
  p.epochs = 3;
  p.seed = 5;
  return p;
}

}  // namespace

TEST_CASE("pair loss matches its closed form") {
  const std::vector<double> c{0.5, -1.0}, o{2.0, 0.25};
  const std::vector<std::vector<double>> negs{{1.0, 1.0}, {-0.5, 0.0}};
  const double pos = 0.5 * 2.0 - 0.25;
  const double n1 = 0.5 - 1.0, n2 = -0.25;
  const double expected = std::log1p(std::exp(-pos)) + std::log1p(std::exp(n1)) + std::log1p(std::exp(n2));
  CHECK(loss_only(c, o, negs) == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("pair loss gradients agree with central differences") {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t d = 1 + uniform_index(rng, 12);
    const std::size_t k = 1 + uniform_index(rng, 5);
    auto draw = [&] {
      std::vector<double> v(d);
      for (double& x : v) x = standard_normal(rng);
      return v;
    };
    std::vector<double> c = draw(), o = draw();
    std::vector<std::vector<double>> negs;
    for (std::size_t i = 0; i < k; ++i) negs.push_back(draw());
    std::vector<std::span<const double>> spans(negs.begin(), negs.end());
    const PairLoss pl = sgns_pair_loss(c, o, spans);
    const double h = 1e-5;
    auto check = [&](std::vector<double>& v, const std::vector<double>& grad) {
      for (std::size_t i = 0; i < d; ++i) {
        const double keep = v[i];
        v[i] = keep + h;
        const double up = loss_only(c, o, negs);
        v[i] = keep - h;
        const double down = loss_only(c, o, negs);
        v[i] = keep;
        const double fd = (up - down) / (2 * h);
        CHECK(std::abs(fd - grad[i]) <= 1e-6 * std::max(1.0, std::abs(fd)));
      }
    };
    check(c, pl.grad_center);
    check(o, pl.grad_context);
    for (std::size_t n = 0; n < k; ++n) check(negs[n], pl.grad_negatives[n]);
  }
}

TEST_CASE("pair loss stays finite for extreme dot products") {
  const double big = 1e200;
  const std::vector<double> c{big}, o{-big};
  const std::vector<std::vector<double>> negs{{big}};
  const double l = loss_only(c, o, negs);
  CHECK(std::isinf(l));
  CHECK(l > 0);
  const std::vector<double> c2{1.0}, o2{800.0};
  const std::vector<std::vector<double>> n2{{-800.0}};
  CHECK(loss_only(c2, o2, n2) < 1e-300);
  CHECK_THROWS_AS(loss_only({1.0, 2.0}, {1.0}, {}), InvalidInput);
}

TEST_CASE("noise distribution follows count^0.75") {
  const std::vector<std::uint64_t> counts{1, 16, 81};
  const NoiseDistribution noise(counts);
  const double z = 1.0 + 8.0 + 27.0;
  CHECK(noise.probability(0) == doctest::Approx(1.0 / z));
  CHECK(noise.probability(2) == doctest::Approx(27.0 / z));
  Rng rng(3);
  std::vector<double> hits(3, 0.0);
  const int draws = 200000;
  for (int i = 0; i < draws; ++i) hits[noise.sample(rng)] += 1.0;
  for (std::size_t i = 0; i < 3; ++i) CHECK(hits[i] / draws == doctest::Approx(noise.probability(i)).epsilon(0.03));
  CHECK_THROWS_AS(NoiseDistribution(std::vector<std::uint64_t>{}), InvalidInput);
  CHECK_THROWS_AS(NoiseDistribution(std::vector<std::uint64_t>{1, 0}), InvalidInput);
}

TEST_CASE("parameter validation") {
  SgnsParams p;
  CHECK_NOTHROW(p.validate());
  p.window = 0;
  CHECK_THROWS_AS(p.validate(), InvalidInput);
  p = SgnsParams{};
  p.lr_final = p.lr_initial;
  CHECK_THROWS_AS(p.validate(), InvalidInput);
  p = SgnsParams{};
  p.workers = 0;
  CHECK_THROWS_AS(p.validate(), InvalidInput);
  CHECK(SgnsParams{}.to_json()["negatives"] == 5);
}

TEST_CASE("single-worker training is bitwise reproducible") {
  const auto topics = synth::two_topic_corpus(150, 25, 2);
  const SgnsModel a = train_sgns_model(topics.corpus, small_params());
  const SgnsModel b = train_sgns_model(topics.corpus, small_params());
  CHECK(a.input == b.input);
  CHECK(a.output == b.output);
  SgnsParams other = small_params();
  other.seed = 6;
  CHECK(train_sgns_model(topics.corpus, other).input != a.input);
}

TEST_CASE("epoch callback sees every epoch and initial values respect bounds") {
  const Corpus c({{"a", {"x", "y", "z"}}, {"b", {"y", "z", "w"}}}, "t");
  SgnsParams p = small_params();
  p.epochs = 0;
  p.subsample_t = 0.0;
  const SgnsModel init = train_sgns_model(c, p);
  for (float v : init.input) CHECK(std::abs(v) <= 0.5f / 20.0f);
  for (float v : init.output) CHECK(v == 0.0f);

  p.epochs = 4;
  std::vector<std::size_t> seen;
  train_sgns_model(c, p, [&](std::size_t e, const SgnsModel& m) {
    seen.push_back(e);
    CHECK(m.dim == 20);
  });
  CHECK(seen == std::vector<std::size_t>{1, 2, 3, 4});
}

TEST_CASE("training separates planted topics") {
  const auto topics = synth::two_topic_corpus(400, 30, 8);
  SgnsParams p = small_params();
  p.epochs = 30;
  const Embedding e = train_sgns(topics.corpus, p);
  CHECK(e.model_tag() == "sgns");
  auto vec = [&](const std::string& w) { return e.vector(e.vocabulary().index_of(w)); };
  double mean_within = 0.0, mean_across = 0.0;
  for (std::size_t i = 0; i < 10; ++i) {
    double within = 0.0, across = 0.0;
    for (std::size_t j = 0; j < 10; ++j) {
      if (j != i) within += cosine(vec(topics.topic_a[i]), vec(topics.topic_a[j])) / 9.0;
      across += cosine(vec(topics.topic_a[i]), vec(topics.topic_b[j])) / 10.0;
    }
    CHECK(within > across);
    mean_within += within / 10.0;
    mean_across += across / 10.0;
  }
  CHECK(mean_within > mean_across + 0.5);
}

TEST_CASE("multi-worker training runs and yields finite vectors") {
  const auto topics = synth::two_topic_corpus(200, 25, 3);
  SgnsParams p = small_params();
  p.workers = 3;
  const Embedding e = train_sgns(topics.corpus, p);
  for (double v : e.vectors().data()) CHECK(std::isfinite(v));
}

TEST_CASE("training rejects unusable corpora") {
  CHECK_THROWS_AS(train_sgns(Corpus(), SgnsParams{}), InvalidInput);
  CHECK_THROWS_AS(train_sgns(Corpus({{"a", {"solo", "solo"}}}, "t"), SgnsParams{}), InvalidInput);
}
