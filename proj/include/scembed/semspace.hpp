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
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "scembed/lexicon.hpp"
#include "scembed/linalg.hpp"

namespace scembed {

/// Word vectors plus the vocabulary and training parameters behind them.
/// Immutable after construction; all queries are safe from many threads.
class Embedding {
 public:
  Embedding() = default;
  Embedding(Vocabulary vocab, Matrix vectors, std::string model_tag, nlohmann::json params);

  const Vocabulary& vocabulary() const noexcept { return vocab_; }
  const Matrix& vectors() const noexcept { return vectors_; }
  std::size_t dim() const noexcept { return vectors_.cols(); }
  std::size_t size() const noexcept { return vectors_.rows(); }
  const std::string& model_tag() const noexcept { return model_tag_; }
  const nlohmann::json& params() const noexcept { return params_; }
  std::string params_fingerprint() const { return params_.dump(); }

  std::span<const double> vector(std::size_t i) const { return vectors_.row(i); }
  double norm(std::size_t i) const { return norms_[i]; }

  /// All-zero rows; such words cannot take part in similarity queries.
  bool is_dead(std::size_t i) const { return norms_[i] == 0.0; }
  const std::vector<std::uint32_t>& dead_words() const noexcept { return dead_; }

  /// Notes produced during training (e.g. dimension clamping).
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }
  void add_warning(std::string w) { warnings_.push_back(std::move(w)); }

  /// Index of a queryable word: throws OutOfVocabulary or DeadWord.
  std::uint32_t live_index(std::string_view word) const;

  /// Cosine similarity between every word and row `i` (NaN for dead words).
  std::vector<double> similarities_to(std::size_t i) const;

 private:
  Vocabulary vocab_;
  Matrix vectors_;
  std::string model_tag_;
  nlohmann::json params_;
  std::vector<double> norms_;
  std::vector<std::uint32_t> dead_;
  std::vector<std::string> warnings_;
};

/// Cosine similarity, clamped to [-1, 1]; exactly 1 for a word with itself.
double similarity(const Embedding& emb, std::string_view w1, std::string_view w2);

/// 1 - similarity.
double distance(const Embedding& emb, std::string_view w1, std::string_view w2);

struct Neighbor {
  std::string word;
  double similarity;
};

struct NeighborList {
  std::string target;
  std::vector<Neighbor> entries;
  std::uint64_t min_count = 0;
};

/// The k words most similar to `target` among live words with corpus count
/// >= min_count. Ties go to the lexicographically smaller word.
NeighborList neighbors(const Embedding& emb, std::string_view target, std::size_t k, std::uint64_t min_count = 0);

/// 1-based position of `probe` when every other live word is ordered by
/// descending similarity to `target` (ties: ascending word order).
std::size_t rank_distance(const Embedding& emb, std::string_view target, std::string_view probe);

/// Minimum rank over the probes that are in the vocabulary (and not dead);
/// nullopt when none is.
std::optional<std::size_t> min_rank_distance(const Embedding& emb, std::string_view target,
                                             const std::set<std::string>& probes);

// Binary format: "SCEM1", u32 tag length + tag, u32 dim, u32 |V|, u32
// fingerprint length + JSON fingerprint, |V| x (u32 length + word bytes),
// |V| x dim little-endian float32, then an optional "SCVC" trailer with u64
// document count and u64 (corpus_count, doc_frequency) per word.
void save_embedding(const Embedding& emb, std::ostream& out);
void save_embedding(const Embedding& emb, const std::filesystem::path& path);
Embedding load_embedding(std::istream& in);
Embedding load_embedding(const std::filesystem::path& path);

/// Text interchange: header "|V| dim", then "word v1 ... vdim" per line.
void save_embedding_text(const Embedding& emb, std::ostream& out);
Embedding load_embedding_text(std::istream& in, std::string model_tag = "text");

}  // namespace scembed
