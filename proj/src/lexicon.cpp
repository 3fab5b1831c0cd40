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

#include "scembed/lexicon.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "scembed/common.hpp"

namespace scembed {

Vocabulary::Vocabulary(std::vector<std::string> words, std::vector<std::uint64_t> corpus_count,
                       std::vector<std::uint64_t> doc_frequency, std::uint64_t n_documents)
    : words_(std::move(words)),
      corpus_count_(std::move(corpus_count)),
      doc_frequency_(std::move(doc_frequency)),
      n_documents_(n_documents) {
  if (corpus_count_.size() != words_.size() || doc_frequency_.size() != words_.size()) {
    throw InvalidInput("vocabulary arrays have mismatched lengths");
  }
  index_.reserve(words_.size());
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (!index_.emplace(words_[i], static_cast<std::uint32_t>(i)).second) {
      throw InvalidInput("duplicate vocabulary word: '" + words_[i] + "'");
    }
  }
}

std::optional<std::uint32_t> Vocabulary::find(std::string_view word) const {
  // C++20 heterogeneous lookup on unordered_map needs a transparent hash;
  // the copy is cheap relative to every caller.
  auto it = index_.find(std::string(word));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::uint32_t Vocabulary::index_of(std::string_view word) const {
  if (auto i = find(word)) return *i;
  throw OutOfVocabulary(std::string(word));
}

std::uint64_t Vocabulary::fingerprint() const {
  std::string joined;
  for (const auto& w : words_) {
    joined += w;
    joined += '\n';
  }
  return hash_string(joined);
}

Vocabulary build_vocabulary(const Corpus& corpus, std::uint64_t min_count) {
  std::vector<std::string> order;
  std::unordered_map<std::string, std::size_t> pos;
  std::vector<std::uint64_t> count;
  std::vector<std::uint64_t> df;
  std::vector<std::size_t> last_doc;

  for (std::size_t d = 0; d < corpus.size(); ++d) {
    for (const auto& t : corpus[d].tokens) {
      auto [it, inserted] = pos.try_emplace(t, order.size());
      if (inserted) {
        order.push_back(t);
        count.push_back(0);
        df.push_back(0);
        last_doc.push_back(static_cast<std::size_t>(-1));
      }
      const std::size_t i = it->second;
      ++count[i];
      if (last_doc[i] != d) {
        ++df[i];
        last_doc[i] = d;
      }
    }
  }

  Vocabulary v;
  v.n_documents_ = corpus.size();
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (count[i] <= min_count) continue;
    v.index_.emplace(order[i], static_cast<std::uint32_t>(v.words_.size()));
    v.words_.push_back(std::move(order[i]));
    v.corpus_count_.push_back(count[i]);
    v.doc_frequency_.push_back(df[i]);
  }
  return v;
}

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols, std::vector<std::size_t> col_ptr,
                           std::vector<Entry> entries)
    : rows_(rows), cols_(cols), col_ptr_(std::move(col_ptr)), entries_(std::move(entries)) {
  if (col_ptr_.size() != cols_ + 1 || col_ptr_.front() != 0 || col_ptr_.back() != entries_.size()) {
    throw InvalidInput("malformed sparse matrix column pointers");
  }
  for (std::size_t c = 0; c < cols_; ++c) {
    if (col_ptr_[c] > col_ptr_[c + 1]) throw InvalidInput("column pointers must be non-decreasing");
    for (std::size_t k = col_ptr_[c]; k < col_ptr_[c + 1]; ++k) {
      if (entries_[k].row >= rows_) throw InvalidInput("sparse row index out of range");
      if (k > col_ptr_[c] && entries_[k].row <= entries_[k - 1].row) {
        throw InvalidInput("sparse row indices must increase within a column");
      }
    }
  }
}

double SparseMatrix::at(std::size_t row, std::size_t col) const {
  const auto col_entries = column(col);
  auto it = std::lower_bound(col_entries.begin(), col_entries.end(), row,
                             [](const Entry& e, std::size_t r) { return e.row < r; });
  return (it != col_entries.end() && it->row == row) ? it->value : 0.0;
}

TermDocMatrix count_matrix(const Corpus& corpus, const Vocabulary& vocab) {
  std::vector<std::size_t> col_ptr{0};
  std::vector<SparseMatrix::Entry> entries;
  std::vector<std::uint32_t> ids;
  for (const TokenDocument& doc : corpus.documents()) {
    ids.clear();
    for (const auto& t : doc.tokens) {
      if (auto i = vocab.find(t)) ids.push_back(*i);
    }
    std::sort(ids.begin(), ids.end());
    for (std::size_t k = 0; k < ids.size();) {
      std::size_t j = k;
      while (j < ids.size() && ids[j] == ids[k]) ++j;
      entries.push_back({ids[k], static_cast<double>(j - k)});
      k = j;
    }
    col_ptr.push_back(entries.size());
  }
  return {SparseMatrix(vocab.size(), corpus.size(), std::move(col_ptr), std::move(entries))};
}

WeightedTermDocMatrix tfidf(const TermDocMatrix& counts) {
  const SparseMatrix& c = counts.counts;
  if (c.cols() == 0) throw InvalidInput("tf-idf needs at least one document");

  std::vector<std::uint64_t> df(c.rows(), 0);
  for (const auto& e : c.entries()) {
    if (e.value != 0.0) ++df[e.row];
  }
  const double n = static_cast<double>(c.cols());
  std::vector<double> idf(c.rows(), 0.0);
  for (std::size_t w = 0; w < c.rows(); ++w) {
    if (df[w] > 0) idf[w] = std::log2(n / static_cast<double>(df[w]));
  }

  std::vector<std::size_t> col_ptr{0};
  std::vector<SparseMatrix::Entry> entries;
  entries.reserve(c.nonzeros());
  for (std::size_t d = 0; d < c.cols(); ++d) {
    const std::size_t start = entries.size();
    double sq = 0.0;
    for (const auto& e : c.column(d)) {
      const double w = e.value * idf[e.row];
      if (w == 0.0) continue;
      entries.push_back({e.row, w});
      sq += w * w;
    }
    if (sq > 0.0) {
      const double inv = 1.0 / std::sqrt(sq);
      for (std::size_t k = start; k < entries.size(); ++k) entries[k].value *= inv;
    }
    col_ptr.push_back(entries.size());
  }
  return {SparseMatrix(c.rows(), c.cols(), std::move(col_ptr), std::move(entries))};
}

void write_triplets(const SparseMatrix& m, std::uint64_t vocabulary_hash, std::ostream& out) {
  const nlohmann::json header = {{"rows", m.rows()},
                                 {"cols", m.cols()},
                                 {"nonzeros", m.nonzeros()},
                                 {"vocabulary_hash", vocabulary_hash}};
  out << header.dump() << '\n';
  out << std::setprecision(17);
  for (std::size_t d = 0; d < m.cols(); ++d) {
    for (const auto& e : m.column(d)) out << e.row << ' ' << d << ' ' << e.value << '\n';
  }
}

SparseMatrix read_triplets(std::istream& in, std::uint64_t* vocabulary_hash) {
  std::string line;
  if (!std::getline(in, line)) throw InvalidInput("triplet file is empty");
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("triplet header is not JSON: ") + e.what());
  }
  const std::size_t rows = header.at("rows").get<std::size_t>();
  const std::size_t cols = header.at("cols").get<std::size_t>();
  if (vocabulary_hash) *vocabulary_hash = header.at("vocabulary_hash").get<std::uint64_t>();

  struct Triplet {
    std::size_t row, col;
    double value;
  };
  std::vector<Triplet> ts;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ls(line);
    Triplet t{};
    if (!(ls >> t.row >> t.col >> t.value) || t.row >= rows || t.col >= cols) {
      throw InvalidInput("bad triplet on line " + std::to_string(line_no));
    }
    ts.push_back(t);
  }
  std::sort(ts.begin(), ts.end(), [](const Triplet& a, const Triplet& b) {
    return a.col != b.col ? a.col < b.col : a.row < b.row;
  });
  std::vector<std::size_t> col_ptr(cols + 1, 0);
  std::vector<SparseMatrix::Entry> entries;
  entries.reserve(ts.size());
  for (const auto& t : ts) {
    ++col_ptr[t.col + 1];
    entries.push_back({static_cast<std::uint32_t>(t.row), t.value});
  }
  for (std::size_t c = 0; c < cols; ++c) col_ptr[c + 1] += col_ptr[c];
  return SparseMatrix(rows, cols, std::move(col_ptr), std::move(entries));
}

}  // namespace scembed
