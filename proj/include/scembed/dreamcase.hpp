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
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "scembed/corpus.hpp"
#include "scembed/models.hpp"
#include "scembed/semspace.hpp"
#include "scembed/stats.hpp"

namespace scembed {

/// All reports of one dreamer; each report is one document.
struct DreamSeries {
  std::string name;
  Corpus reports;
  std::size_t target_count = 0;  // occurrences of the target word after cleaning
};

/// Number of tokens equal to `target` across the corpus.
std::size_t count_target(const Corpus& corpus, const std::string& target);

/// Per-series fraction of target occurrences in an escape/chase context.
struct GroundTruth {
  std::map<std::string, double> fraction;
};

/// CSV "series,fraction" with a header line; fractions must lie in [0, 1].
GroundTruth load_ground_truth(const std::filesystem::path& path);
GroundTruth parse_ground_truth(std::istream& in, const std::string& source = "<stream>");

struct ProbeSet {
  std::string target = "run";
  std::set<std::string> probes = {"escape", "escapes", "escaping", "escaped",
                                  "chase",  "chases",  "chasing",  "chased"};

  /// Throws InvalidInput if the target is itself a probe or probes are empty.
  void validate() const;
  nlohmann::json to_json() const;
};

struct SeriesCollection {
  std::vector<DreamSeries> series;  // sorted by name
  GroundTruth truth;
  /// Ground-truth rows without a series file.
  std::vector<std::string> unmatched;
};

/// Directory of "<name>.txt" files (one report per line) joined with a
/// ground-truth CSV. Throws InvalidInput when a series has no ground-truth
/// row.
SeriesCollection load_series_collection(const std::filesystem::path& series_dir,
                                        const std::filesystem::path& ground_truth_path,
                                        const StopwordSet& stopwords, const std::string& target = "run");

/// Trains on the series alone and returns the minimum probe rank around the
/// target, or nullopt when no probe form is in the vocabulary.
/// Throws OutOfVocabulary / DeadWord when the target is unusable.
std::optional<std::size_t> series_rank(const DreamSeries& series, const ModelConfig& model, std::size_t dim,
                                       const ProbeSet& probes, std::uint64_t seed);

/// Top-k neighbors of the target in an embedding trained on the series.
NeighborList series_neighborhood(const DreamSeries& series, const ModelConfig& model, std::size_t dim,
                                 const std::string& target, std::size_t k, std::uint64_t min_count,
                                 std::uint64_t seed);

void write_neighbors_csv(const NeighborList& list, std::ostream& out);

struct DreamOptions {
  std::size_t dim = 200;
  std::size_t min_target_count = 5;
  std::size_t repetitions = 10;
  std::uint64_t base_seed = 1;
  std::size_t sample_repetition = 0;
  /// Train once per repetition on the union of eligible series instead of
  /// once per series. Each series' target occurrences are renamed to
  /// "<target>__<series>" first, so every series keeps its own target vector;
  /// ranks ignore the other series' renamed targets.
  bool whole_corpus = false;
  std::size_t jobs = 1;

  nlohmann::json to_json() const;
};

struct SeriesPoint {
  std::string series;
  double fraction = 0.0;
  std::optional<std::size_t> rank;
};

struct Exclusion {
  std::string series;
  std::string reason;
};

struct RepetitionResult {
  std::size_t repetition = 0;
  std::vector<SeriesPoint> points;  // usable points only
  std::optional<stats::RegressionFit> fit;
  std::string error;  // nonempty when the repetition failed
};

struct DreamExperimentReport {
  std::string model;
  nlohmann::json params;
  DreamOptions options;
  ProbeSet probes;
  std::vector<std::string> analyzed;  // eligible series with at least one rank
  std::vector<Exclusion> excluded;
  std::vector<RepetitionResult> repetitions;
  double mean_slope = 0.0;  // NaN when no repetition succeeded
  std::optional<stats::Correlation> sample_correlation;

  std::vector<double> slopes() const;
  std::size_t successful() const;

  nlohmann::json to_json() const;
  /// series,fraction,rank for the sample repetition.
  void write_points_csv(std::ostream& out) const;
  /// repetition,series,fraction,rank for every repetition.
  void write_all_points_csv(std::ostream& out) const;
  /// repetition,slope,intercept,r,p (empty fields for failed repetitions).
  void write_fits_csv(std::ostream& out) const;
};

/// Rank-versus-fraction regression repeated with per-(repetition, series)
/// seeds. Series below min_target_count, series whose target is unusable,
/// and series without any probe in the vocabulary are excluded with a
/// reason. Throws InvalidInput if fewer than 3 series remain.
DreamExperimentReport dreams_experiment(const SeriesCollection& collection, const ModelConfig& model,
                                        const ProbeSet& probes, const DreamOptions& options);

/// Two-sample KS test over the slopes of successful repetitions.
stats::KsResult compare_models(const DreamExperimentReport& a, const DreamExperimentReport& b);

}  // namespace scembed
