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
#include <string>
#include <vector>

#include <json.hpp>

#include "scembed/corpus.hpp"
#include "scembed/dreamcase.hpp"
#include "scembed/evalsuite.hpp"

namespace scembed::synth {

/// Deterministic pronounceable pseudo-words ("bado", "kemilu", ...) that are
/// never stopwords, "num", or one of `reserved`.
std::vector<std::string> make_words(std::size_t n, std::uint64_t seed, const std::vector<std::string>& reserved = {});

/// Zipf(s) sampler over ranks [0, n).
class Zipf {
 public:
  Zipf(std::size_t n, double s);
  std::size_t operator()(Rng& rng) const;
  std::size_t size() const noexcept { return cdf_.size(); }

 private:
  std::vector<double> cdf_;
};

struct PlantedCategoryParams {
  std::size_t n_docs = 20000;
  std::size_t n_categories = 10;
  std::size_t words_per_category = 10;
  std::size_t background_vocab = 3000;
  std::size_t doc_length = 40;
  /// Share of a document's tokens drawn from its topic category.
  double topic_share = 0.2;
  double zipf_exponent = 1.0;
  std::uint64_t seed = 1;

  nlohmann::json to_json() const;
};

struct PlantedCorpus {
  Corpus corpus;
  CategorySet categories;
};

/// Each document picks one category and mixes its words (uniformly) into
/// Zipf-distributed background text.
PlantedCorpus planted_category_corpus(const PlantedCategoryParams& params);

/// Documents alternate between two disjoint topic vocabularies that share a
/// common background. Returns the corpus and the two topic word lists.
struct TwoTopicCorpus {
  Corpus corpus;
  std::vector<std::string> topic_a;
  std::vector<std::string> topic_b;
};
TwoTopicCorpus two_topic_corpus(std::size_t n_docs, std::size_t doc_length, std::uint64_t seed);

struct DreamSynthParams {
  std::size_t n_series = 30;
  std::size_t reports_min = 100;
  std::size_t reports_max = 200;
  /// Reports containing the target, per series.
  std::size_t target_reports_min = 10;
  std::size_t target_reports_max = 25;
  /// Target-free reports about chasing, so probe forms exist in every series.
  std::size_t chase_only_reports = 6;
  std::size_t report_length = 25;
  std::size_t background_vocab = 1500;
  std::uint64_t seed = 1;

  nlohmann::json to_json() const;
};

/// Series "series01".. with escape/chase fractions evenly spaced over
/// [0, 1] (in shuffled order). In a fraction-f series, each target report is
/// a chase/escape scene with probability f and a sports scene otherwise.
SeriesCollection dream_collection(const DreamSynthParams& params, const ProbeSet& probes = {});

/// Writes "<dir>/<name>.txt" per series (one report per line) and the
/// ground-truth CSV.
void write_series_collection(const SeriesCollection& collection, const std::filesystem::path& dir,
                             const std::filesystem::path& ground_truth_path);

/// Writes one document per line.
void write_corpus(const Corpus& corpus, const std::filesystem::path& path);

/// Writes "category<TAB>word" lines.
void write_category_set(const CategorySet& cats, const std::filesystem::path& path);

}  // namespace scembed::synth
