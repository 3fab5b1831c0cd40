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
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "scembed/corpus.hpp"
#include "scembed/models.hpp"
#include "scembed/semspace.hpp"

namespace scembed {

struct Category {
  std::string name;
  std::vector<std::string> words;
};

/// Named groups of words expected to cluster together.
struct CategorySet {
  std::vector<Category> categories;

  std::set<std::string> all_words() const;
};

/// TSV, one "category<TAB>word" per line; categories keep first-seen order.
/// Duplicate words within a category are rejected.
CategorySet load_category_set(const std::filesystem::path& path);
CategorySet parse_category_set(std::istream& in, const std::string& source = "<stream>");

struct WordPair {
  std::string w1;
  std::string w2;
  double score = 0.0;  // human judgement in [0, 10]
};

struct WordPairSet {
  std::vector<WordPair> pairs;

  std::set<std::string> all_words() const;
};

/// CSV "word1,word2,score" with one header line.
WordPairSet load_word_pair_set(const std::filesystem::path& path);
WordPairSet parse_word_pair_set(std::istream& in, const std::string& source = "<stream>");

using DistanceFn = std::function<double(std::size_t, std::size_t)>;

/// Silhouette of item i: (b - a) / max(a, b), where a is the mean distance
/// to the other members of i's label and b the smallest mean distance to the
/// members of another label. 0 when max(a, b) == 0.
/// Throws InvalidInput if i's label has a single member or only one label
/// exists.
double silhouette_coefficient(std::size_t i, std::span<const std::size_t> labels, const DistanceFn& dist);

struct SilhouetteEntry {
  std::string word;
  std::string category;
  double a = 0.0;
  double b = 0.0;
  double s = 0.0;
};

struct SkippedWord {
  std::string word;
  std::string category;
  std::string reason;
};

struct SilhouetteReport {
  std::vector<SilhouetteEntry> per_word;
  double score = 0.0;
  std::vector<SkippedWord> skipped;

  nlohmann::json to_json() const;
};

/// Silhouette of every usable category word under cosine distance. Words
/// missing from the vocabulary (or with a zero vector) are skipped; so are
/// categories left with fewer than two usable words.
/// Throws InvalidInput when fewer than two categories remain.
SilhouetteReport categorization_test(const Embedding& emb, const CategorySet& cats);

struct WordPairReport {
  double rho = 0.0;
  std::size_t n_used = 0;
  std::vector<WordPair> skipped;

  nlohmann::json to_json() const;
};

/// Spearman correlation between human scores and cosine similarities.
/// Throws InvalidInput with fewer than two usable pairs.
WordPairReport wordpair_test(const Embedding& emb, const WordPairSet& pairs);

/// One of the two semantic tests, ready to score embeddings.
struct EvalTask {
  enum class Kind { kCategories, kWordPairs };

  Kind kind = Kind::kCategories;
  CategorySet categories;
  WordPairSet pairs;

  static EvalTask categorization(CategorySet cats);
  static EvalTask word_pairs(WordPairSet pairs);

  std::string name() const;  // "categories" or "wordsim"
  double score(const Embedding& emb) const;
  std::set<std::string> words() const;
};

inline const std::vector<std::size_t> kDefaultDims = {7, 15, 25, 50, 100, 200, 400};

/// Forces the best cell of matching groups, overriding the score argmax.
/// Unset fields match anything.
struct BestOverride {
  std::optional<std::string> model;
  std::optional<std::size_t> dim;
  std::optional<std::size_t> window;
  std::optional<std::size_t> negatives;
};

struct SweepCell {
  std::size_t level = 0;
  std::string model;  // lsa | sgns | random
  std::size_t dim = 0;
  std::size_t effective_dim = 0;
  std::size_t window = 0;     // 0 for models without a window
  std::size_t negatives = 0;  // 0 for models without negatives
  std::size_t repetition = 0;
  std::uint64_t seed = 0;
  std::size_t doc_count = 0;
  std::size_t token_count = 0;
  double score = 0.0;  // NaN when the cell failed
  std::string error;
  bool best = false;

  /// "level=0 model=sgns dim=50 window=5 negatives=10 repetition=0".
  std::string coordinates() const;
};

/// Best score of one (level, model) over repetitions.
struct SweepSummary {
  std::size_t level = 0;
  std::string model;
  std::size_t doc_count = 0;
  std::size_t token_count = 0;
  std::size_t repetitions = 0;  // repetitions with a successful best cell
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation; 0 for one repetition
  double min = 0.0;
  double max = 0.0;
};

struct SweepReport {
  std::string task;
  std::vector<SweepCell> cells;
  std::vector<SweepSummary> summary;

  bool ok() const;
  std::vector<std::string> errors() const;
  const SweepCell* best(std::size_t level, const std::string& model, std::size_t repetition = 0) const;

  nlohmann::json to_json() const;
  /// One row per cell.
  void write_csv(std::ostream& out) const;
  /// One row per (level, model).
  void write_summary_csv(std::ostream& out) const;
};

struct SweepOptions {
  std::size_t jobs = 1;
  std::optional<BestOverride> best_override;
};

/// Grid for one model family. Window and negatives lists are ignored for
/// models that do not use them; an empty list means the configured value.
struct ModelGrid {
  ModelConfig config;
  std::vector<std::size_t> windows;
  std::vector<std::size_t> negatives;
};

/// One embedding per dim, scored with `task`. Cell seeds derive from
/// (seed, level, model, dim, window, negatives, repetition).
/// Throws InvalidInput for an empty or duplicated dim list.
SweepReport dimension_sweep(const Corpus& corpus, const ModelConfig& model, const std::vector<std::size_t>& dims,
                            const EvalTask& task, std::uint64_t seed, const SweepOptions& options = {});

/// dims x windows x negatives for one model, marking the single best cell.
/// Ties go to the smallest dim, then window, then negatives.
SweepReport grid_search(const Corpus& corpus, const ModelGrid& grid, const std::vector<std::size_t>& dims,
                        const EvalTask& task, std::uint64_t seed, const SweepOptions& options = {});

/// For every chain level, model, and repetition, runs the model's grid and
/// keeps the best score; summaries give mean and spread over repetitions
/// with the level's token count as x value.
SweepReport corpus_size_experiment(const SubsampleChain& chain, const std::vector<ModelGrid>& models,
                                   const std::vector<std::size_t>& dims, const EvalTask& task,
                                   std::size_t repetitions, std::uint64_t seed, const SweepOptions& options = {});

}  // namespace scembed
