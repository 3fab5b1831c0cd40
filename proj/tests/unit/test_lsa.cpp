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

#include "oracles.hpp"
#include "scembed/lsa.hpp"
#include "scembed/synth.hpp"

using namespace scembed;

namespace {

// Random sparse matrix with roughly `density` nonzeros, wrapped as weights.
WeightedTermDocMatrix random_weights(std::size_t m, std::size_t n, double density, std::uint64_t seed,
                                     std::vector<double>& dense) {
  Rng rng(seed);
  dense.assign(m * n, 0.0);
  std::vector<std::size_t> ptr{0};
  std::vector<SparseMatrix::Entry> entries;
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t r = 0; r < m; ++r) {
      if (uniform01(rng) < density) {
        const double v = standard_normal(rng);
        dense[r * n + c] = v;
        entries.push_back({static_cast<std::uint32_t>(r), v});
      }
    }
    ptr.push_back(entries.size());
  }
  return {SparseMatrix(m, n, std::move(ptr), std::move(entries))};
}

double reconstruction_error(const SvdFactors& f, const std::vector<double>& dense, std::size_t n) {
  const std::size_t m = f.u.rows(), k = f.s.size();
  double sq = 0.0;
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      double v = 0.0;
      for (std::size_t i = 0; i < k; ++i) v += f.u(r, i) * f.s[i] * f.vt(i, c);
      sq += (dense[r * n + c] - v) * (dense[r * n + c] - v);
    }
  }
  return std::sqrt(sq);
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

}  // namespace

TEST_CASE("truncated SVD matches the LAPACK oracle on both solver paths") {
  struct Case {
    std::size_t m, n, k;
    double density;
  };
  // Small k exercises the Krylov iteration, large k the exact fallback.
  const Case cases[] = {{40, 30, 3, 1.0}, {40, 30, 8, 0.5}, {30, 40, 5, 0.7}, {120, 90, 6, 0.2},
                        {200, 60, 10, 0.1}, {40, 30, 25, 1.0}, {10, 10, 10, 1.0}};
  std::uint64_t seed = 100;
  for (const auto& c : cases) {
    CAPTURE(c.m);
    CAPTURE(c.n);
    CAPTURE(c.k);
    std::vector<double> dense;
    const auto w = random_weights(c.m, c.n, c.density, ++seed, dense);
    LsaParams p;
    p.dim = c.k;
    p.seed = seed;
    const SvdFactors f = truncated_svd(w, p);
    const oracle::Svd ref = oracle::lapack_svd(dense, c.m, c.n);
    REQUIRE(f.s.size() == c.k);
    CHECK(f.converged);
    for (std::size_t i = 0; i < c.k; ++i) CHECK(std::abs(f.s[i] - ref.s[i]) < 1e-8);
    const double best = oracle::best_rank_k_error(ref, c.k);
    CHECK(reconstruction_error(f, dense, c.n) <= best * (1 + 1e-6) + 1e-9);
  }
}

TEST_CASE("truncated SVD is deterministic per seed and canonically signed") {
  std::vector<double> dense;
  const auto w = random_weights(150, 80, 0.15, 5, dense);
  LsaParams p;
  p.dim = 6;
  const SvdFactors a = truncated_svd(w, p);
  const SvdFactors b = truncated_svd(w, p);
  CHECK(a.u == b.u);
  CHECK(a.s == b.s);
  p.seed = 999;
  const SvdFactors c = truncated_svd(w, p);
  for (std::size_t i = 0; i < 6; ++i) CHECK(c.s[i] == doctest::Approx(a.s[i]).epsilon(1e-9));
  for (std::size_t col = 0; col < 6; ++col) {
    // Different seeds, same singular vectors after sign canonicalization.
    double dot = 0.0;
    for (std::size_t r = 0; r < 150; ++r) dot += a.u(r, col) * c.u(r, col);
    CHECK(dot == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("truncated SVD rejects degenerate input") {
  LsaParams p;
  p.dim = 0;
  std::vector<double> dense;
  const auto w = random_weights(5, 5, 1.0, 1, dense);
  CHECK_THROWS_AS(truncated_svd(w, p), InvalidInput);
  p.dim = 2;
  const WeightedTermDocMatrix zero{SparseMatrix(3, 2, {0, 0, 0}, {})};
  CHECK_THROWS_AS(truncated_svd(zero, p), InvalidInput);
}

TEST_CASE("LSA clamps the dimension and records a warning") {
  const Corpus c({{"a", {"x", "y"}}, {"b", {"y", "z"}}, {"c", {"z", "w", "x"}}}, "t");
  LsaParams p;
  p.dim = 50;
  const Embedding e = train_lsa(c, p);
  CHECK(e.dim() == 3);
  REQUIRE(e.warnings().size() == 1);
  CHECK(e.warnings()[0].find("clamped to 3") != std::string::npos);
  CHECK(e.params()["requested_dim"] == 50);
  CHECK(e.params()["dim"] == 3);
  CHECK(e.model_tag() == "lsa");
}

TEST_CASE("LSA gives words found in every document a zero vector") {
  const Corpus c({{"a", {"all", "x", "y"}}, {"b", {"all", "y"}}, {"c", {"all", "z"}}, {"d", {"all", "x"}}}, "t");
  LsaParams p;
  p.dim = 2;
  const Embedding e = train_lsa(c, p);
  const auto i = e.vocabulary().index_of("all");
  CHECK(e.is_dead(i));
  CHECK(e.dead_words().size() == 1);
  CHECK_FALSE(e.is_dead(e.vocabulary().index_of("x")));
}

TEST_CASE("LSA vectors are U scaled by singular values unless disabled") {
  const auto topics = synth::two_topic_corpus(200, 30, 4);
  LsaParams p;
  p.dim = 5;
  const Embedding scaled = train_lsa(topics.corpus, p);
  p.scale_by_singular_values = false;
  const Embedding unit = train_lsa(topics.corpus, p);
  const SvdFactors f = [&] {
    LsaParams q;
    q.dim = 5;
    const Vocabulary v = build_vocabulary(topics.corpus);
    return truncated_svd(tfidf(count_matrix(topics.corpus, v)), q);
  }();
  for (std::size_t w = 0; w < scaled.size(); w += 17) {
    for (std::size_t c = 0; c < 5; ++c) {
      CHECK(scaled.vectors()(w, c) == doctest::Approx(f.u(w, c) * f.s[c]).epsilon(1e-12));
      CHECK(unit.vectors()(w, c) == doctest::Approx(f.u(w, c)).epsilon(1e-12));
    }
  }
}

TEST_CASE("LSA separates two planted topics") {
  const auto topics = synth::two_topic_corpus(300, 30, 9);
  LsaParams p;
  p.dim = 10;
  const Embedding e = train_lsa(topics.corpus, p);
  auto vec = [&](const std::string& w) { return e.vector(e.vocabulary().index_of(w)); };
  double within = 0.0, across = 0.0;
  std::size_t nw = 0, na = 0;
  for (std::size_t i = 0; i < 10; ++i) {
    for (std::size_t j = i + 1; j < 10; ++j) {
      within += cosine(vec(topics.topic_a[i]), vec(topics.topic_a[j]));
      ++nw;
    }
    for (std::size_t j = 0; j < 10; ++j) {
      across += cosine(vec(topics.topic_a[i]), vec(topics.topic_b[j]));
      ++na;
    }
  }
  CHECK(within / double(nw) > across / double(na) + 0.3);
}

TEST_CASE("LSA rejects empty corpora") {
  CHECK_THROWS_AS(train_lsa(Corpus(), LsaParams{}), InvalidInput);
  CHECK_THROWS_AS(train_lsa(Corpus({{"a", {}}}, "t"), LsaParams{}), InvalidInput);
}
