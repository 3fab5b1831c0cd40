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
#include <map>
#include <set>
#include <sstream>

#include "scembed/lexicon.hpp"

using namespace scembed;

namespace {

Corpus small_corpus() {
  return Corpus({{"d0", {"apple", "pear", "apple"}},
                 {"d1", {"pear", "fig"}},
                 {"d2", {"apple", "kiwi", "kiwi", "kiwi"}},
                 {"d3", {}}},
                "fruit");
}

// Dense tf-idf computed straight from the token lists.
std::map<std::pair<std::string, std::size_t>, double> reference_tfidf(const Corpus& c) {
  std::map<std::string, std::size_t> df;
  for (const auto& d : c.documents()) {
    std::set<std::string> seen(d.tokens.begin(), d.tokens.end());
    for (const auto& w : seen) ++df[w];
  }
  std::map<std::pair<std::string, std::size_t>, double> out;
  for (std::size_t j = 0; j < c.size(); ++j) {
    std::map<std::string, double> col;
    for (const auto& w : c[j].tokens) col[w] += 1.0;
    double norm = 0.0;
    for (auto& [w, v] : col) {
      v *= std::log2(static_cast<double>(c.size()) / static_cast<double>(df[w]));
      norm += v * v;
    }
    norm = std::sqrt(norm);
    for (const auto& [w, v] : col) {
      if (v != 0.0) out[{w, j}] = v / norm;
    }
  }
  return out;
}

}  // namespace

TEST_CASE("vocabulary keeps first-occurrence order and statistics") {
  const Vocabulary v = build_vocabulary(small_corpus());
  CHECK(v.words() == std::vector<std::string>{"apple", "pear", "fig", "kiwi"});
  CHECK(v.corpus_count(0) == 3);
  CHECK(v.doc_frequency(0) == 2);
  CHECK(v.corpus_count(3) == 3);
  CHECK(v.doc_frequency(3) == 1);
  CHECK(v.n_documents() == 4);
  CHECK(v.index_of("fig") == 2);
  CHECK_FALSE(v.find("banana").has_value());
  CHECK_THROWS_AS(v.index_of("banana"), OutOfVocabulary);

  const Vocabulary trimmed = build_vocabulary(small_corpus(), 2);
  CHECK(trimmed.words() == std::vector<std::string>{"apple", "kiwi"});
}

TEST_CASE("vocabulary fingerprint depends on words and order") {
  const Vocabulary a({"x", "y"}, {1, 1}, {1, 1}, 1);
  const Vocabulary b({"y", "x"}, {1, 1}, {1, 1}, 1);
  const Vocabulary c({"x", "y"}, {5, 5}, {1, 1}, 9);
  CHECK(a.fingerprint() != b.fingerprint());
  CHECK(a.fingerprint() == c.fingerprint());
  CHECK_THROWS_AS(Vocabulary({"x", "x"}, {1, 1}, {1, 1}, 1), InvalidInput);
  CHECK_THROWS_AS(Vocabulary({"x"}, {1, 1}, {1}, 1), InvalidInput);
}

TEST_CASE("count matrix holds raw occurrences") {
  const Corpus c = small_corpus();
  const Vocabulary v = build_vocabulary(c);
  const SparseMatrix m = count_matrix(c, v).counts;
  CHECK(m.rows() == 4);
  CHECK(m.cols() == 4);
  CHECK(m.at(0, 0) == 2.0);
  CHECK(m.at(3, 2) == 3.0);
  CHECK(m.at(2, 0) == 0.0);
  CHECK(m.column(3).empty());
  CHECK(m.nonzeros() == 6);

  const Vocabulary partial({"kiwi"}, {3}, {1}, 4);
  const SparseMatrix p = count_matrix(c, partial).counts;
  CHECK(p.nonzeros() == 1);
  CHECK(p.at(0, 2) == 3.0);
}

TEST_CASE("tf-idf matches a dense reference and has unit columns") {
  const Corpus c = small_corpus();
  const Vocabulary v = build_vocabulary(c);
  const SparseMatrix w = tfidf(count_matrix(c, v)).weights;
  const auto ref = reference_tfidf(c);
  std::size_t nonzero = 0;
  for (std::size_t j = 0; j < w.cols(); ++j) {
    double norm = 0.0;
    for (const auto& e : w.column(j)) {
      ++nonzero;
      norm += e.value * e.value;
      const auto it = ref.find({v.word(e.row), j});
      REQUIRE(it != ref.end());
      CHECK(e.value == doctest::Approx(it->second).epsilon(1e-14));
    }
    if (!w.column(j).empty()) CHECK(norm == doctest::Approx(1.0).epsilon(1e-14));
  }
  CHECK(nonzero == ref.size());
}

TEST_CASE("words present in every document get zero weight and are dropped") {
  const Corpus c({{"a", {"all", "x"}}, {"b", {"all", "y"}}, {"c", {"all"}}}, "t");
  const Vocabulary v = build_vocabulary(c);
  const SparseMatrix w = tfidf(count_matrix(c, v)).weights;
  for (std::size_t j = 0; j < w.cols(); ++j)
    for (const auto& e : w.column(j)) CHECK(v.word(e.row) != "all");
  CHECK(w.column(2).empty());
  CHECK_THROWS_AS(tfidf(TermDocMatrix{SparseMatrix(3, 0, {0}, {})}), InvalidInput);
}

TEST_CASE("sparse matrix validates its structure") {
  CHECK_THROWS_AS(SparseMatrix(2, 1, {0, 2}, {{1, 1.0}, {0, 1.0}}), InvalidInput);
  CHECK_THROWS_AS(SparseMatrix(2, 1, {0, 1}, {{5, 1.0}}), InvalidInput);
  CHECK_THROWS_AS(SparseMatrix(2, 2, {0, 1}, {{0, 1.0}}), InvalidInput);
}

TEST_CASE("triplet dump round-trips") {
  const Corpus c = small_corpus();
  const Vocabulary v = build_vocabulary(c);
  const SparseMatrix w = tfidf(count_matrix(c, v)).weights;
  std::stringstream ss;
  write_triplets(w, v.fingerprint(), ss);
  std::uint64_t hash = 0;
  const SparseMatrix back = read_triplets(ss, &hash);
  CHECK(hash == v.fingerprint());
  CHECK(back.rows() == w.rows());
  CHECK(back.cols() == w.cols());
  REQUIRE(back.nonzeros() == w.nonzeros());
  for (std::size_t j = 0; j < w.cols(); ++j)
    for (const auto& e : w.column(j)) CHECK(back.at(e.row, j) == e.value);

  std::stringstream bad("not json\n");
  CHECK_THROWS_AS(read_triplets(bad), InvalidInput);
  std::stringstream empty;
  CHECK_THROWS_AS(read_triplets(empty), InvalidInput);
}
