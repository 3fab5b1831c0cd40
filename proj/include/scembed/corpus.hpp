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
#include <memory>
#include <ranges>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "scembed/common.hpp"

namespace scembed {

/// Sentinel emitted for every maximal run of ASCII digits.
inline constexpr std::string_view kNumberToken = "NUM";

struct RawDocument {
  std::string doc_id;
  std::string text;
};

struct TokenDocument {
  std::string doc_id;
  std::vector<std::string> tokens;
};

using StopwordSet = std::unordered_set<std::string>;

/// Immutable, ordered collection of cleaned documents. Documents are held by
/// shared pointer so sub-corpora share storage with their parent.
class Corpus {
 public:
  using DocPtr = std::shared_ptr<const TokenDocument>;

  Corpus() = default;
  Corpus(std::vector<TokenDocument> documents, std::string provenance);
  Corpus(std::vector<DocPtr> documents, std::string provenance);

  std::size_t size() const noexcept { return docs_.size(); }
  bool empty() const noexcept { return docs_.empty(); }
  const TokenDocument& operator[](std::size_t i) const { return *docs_[i]; }
  const DocPtr& shared(std::size_t i) const { return docs_[i]; }

  auto documents() const {
    return docs_ | std::views::transform([](const DocPtr& p) -> const TokenDocument& { return *p; });
  }

  const std::string& provenance() const noexcept { return provenance_; }
  std::size_t token_count() const noexcept { return token_count_; }

  /// Sub-corpus made of the documents at the given positions, in that order.
  Corpus select(const std::vector<std::size_t>& positions, std::string provenance) const;

 private:
  std::vector<DocPtr> docs_;
  std::string provenance_;
  std::size_t token_count_ = 0;
};

/// The built-in 127-word English stoplist (data/stopwords_en.txt).
StopwordSet default_stopwords();

/// One word per line, UTF-8. Blank lines and surrounding whitespace ignored;
/// entries are lowercased.
StopwordSet load_stopwords(const std::filesystem::path& path);

/// Tokenize, lowercase, drop stopwords, and replace digit runs with "NUM".
///
/// Tokens are maximal runs of alphabetic code points; everything else is a
/// separator. A maximal run of ASCII digits becomes one "NUM" token, which is
/// never stopword-filtered. An alphabetic run spelled exactly "NUM" is kept
/// as the sentinel so cleaning is idempotent.
///
/// Throws InvalidInput if the text is not valid UTF-8.
TokenDocument clean_document(const RawDocument& raw, const StopwordSet& stopwords);

enum class CorpusFormat {
  kLines,      // one document per line of a single file
  kDirectory,  // one document per .txt file, lexicographic file order
};

CorpusFormat parse_corpus_format(std::string_view name);

Corpus load_corpus(const std::filesystem::path& path, CorpusFormat format,
                   const StopwordSet& stopwords);

/// Raw (uncleaned) documents, in the same order load_corpus would use.
std::vector<RawDocument> read_raw_documents(const std::filesystem::path& path, CorpusFormat format);

/// Space-joined tokens, one document per line.
void write_cleaned(const Corpus& corpus, std::ostream& out);

struct Repair {
  std::string removed_doc;
  std::string added_doc;
  std::string missing_word;
};

struct SubsampleChain {
  std::vector<Corpus> levels;
  std::set<std::string> required_words;
  std::uint64_t seed = 0;
  /// repairs[i] lists the coverage swaps applied while building level i.
  std::vector<std::vector<Repair>> repairs;
};

/// Target document counts: round(N * (min_docs / N)^(i / (n_levels - 1))).
std::vector<std::size_t> subsample_sizes(std::size_t n_documents, std::size_t n_levels,
                                         std::size_t min_docs);

/// Chain of nested random sub-corpora. Level 0 is the full corpus; each later
/// level is a uniform random subset of the previous one. Required words
/// missing from a level are restored by swapping a document of the level for
/// a discarded document of the previous level that contains the word. The
/// swapped-out document is drawn uniformly among those whose removal keeps
/// every other required word covered.
SubsampleChain nested_subsamples(const Corpus& corpus, std::size_t n_levels, std::size_t min_docs,
                                 const std::set<std::string>& required_words, std::uint64_t seed);

nlohmann::json chain_manifest(const SubsampleChain& chain);

}  // namespace scembed
