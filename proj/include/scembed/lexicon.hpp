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
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "scembed/corpus.hpp"

namespace scembed {

/// Word/index tables with per-word corpus statistics.
class Vocabulary {
 public:
  Vocabulary() = default;

  /// Assemble from parallel arrays (used when loading embeddings).
  Vocabulary(std::vector<std::string> words, std::vector<std::uint64_t> corpus_count,
             std::vector<std::uint64_t> doc_frequency, std::uint64_t n_documents);

  std::size_t size() const noexcept { return words_.size(); }
  bool empty() const noexcept { return words_.empty(); }

  const std::vector<std::string>& words() const noexcept { return words_; }
  const std::string& word(std::size_t i) const { return words_.at(i); }

  std::optional<std::uint32_t> find(std::string_view word) const;
  bool contains(std::string_view word) const { return find(word).has_value(); }
  /// Throws OutOfVocabulary.
  std::uint32_t index_of(std::string_view word) const;

  std::uint64_t corpus_count(std::size_t i) const { return corpus_count_.at(i); }
  std::uint64_t doc_frequency(std::size_t i) const { return doc_frequency_.at(i); }
  const std::vector<std::uint64_t>& corpus_counts() const noexcept { return corpus_count_; }
  const std::vector<std::uint64_t>& doc_frequencies() const noexcept { return doc_frequency_; }
  std::uint64_t n_documents() const noexcept { return n_documents_; }

  /// FNV-1a over the newline-joined word list.
  std::uint64_t fingerprint() const;

 private:
  friend Vocabulary build_vocabulary(const Corpus& corpus, std::uint64_t min_count);

  std::vector<std::string> words_;
  std::unordered_map<std::string, std::uint32_t> index_;
  std::vector<std::uint64_t> corpus_count_;
  std::vector<std::uint64_t> doc_frequency_;
  std::uint64_t n_documents_ = 0;
};

/// Words with corpus count > min_count, in first-occurrence order.
Vocabulary build_vocabulary(const Corpus& corpus, std::uint64_t min_count = 0);

/// Compressed sparse column matrix (words x documents). Row indices are
/// strictly increasing within each column.
class SparseMatrix {
 public:
  struct Entry {
    std::uint32_t row;
    double value;
  };

  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols, std::vector<std::size_t> col_ptr, std::vector<Entry> entries);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t nonzeros() const noexcept { return entries_.size(); }

  std::span<const Entry> column(std::size_t c) const {
    return {entries_.data() + col_ptr_[c], col_ptr_[c + 1] - col_ptr_[c]};
  }
  const std::vector<std::size_t>& col_ptr() const noexcept { return col_ptr_; }
  const std::vector<Entry>& entries() const noexcept { return entries_; }

  double at(std::size_t row, std::size_t col) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::size_t> col_ptr_{0};
  std::vector<Entry> entries_;
};

/// Raw counts c(w, d).
struct TermDocMatrix {
  SparseMatrix counts;
};

/// tf-idf weights with unit-norm document columns.
struct WeightedTermDocMatrix {
  SparseMatrix weights;
};

/// Entry (w, d) = occurrences of w in document d; out-of-vocabulary tokens
/// are ignored.
TermDocMatrix count_matrix(const Corpus& corpus, const Vocabulary& vocab);

/// weight(w, d) = c(w, d) * log2(N / df(w)), then each nonzero column scaled
/// to unit Euclidean norm. Entries that become exactly zero (df == N) are
/// dropped, so sparsity never grows. Throws InvalidInput when N == 0.
WeightedTermDocMatrix tfidf(const TermDocMatrix& counts);

/// Sparse triplet dump: one JSON header line ({"rows","cols","nonzeros",
/// "vocabulary_hash"}) then "word_index doc_index value" per nonzero.
void write_triplets(const SparseMatrix& m, std::uint64_t vocabulary_hash, std::ostream& out);
SparseMatrix read_triplets(std::istream& in, std::uint64_t* vocabulary_hash = nullptr);

}  // namespace scembed
