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

#include "scembed/corpus.hpp"

#include <locale.h>
#include <wctype.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "scembed/common.hpp"
#include "stopwords_data.hpp"

namespace scembed {

Corpus::Corpus(std::vector<TokenDocument> documents, std::string provenance)
    : provenance_(std::move(provenance)) {
  docs_.reserve(documents.size());
  for (auto& d : documents) {
    token_count_ += d.tokens.size();
    docs_.push_back(std::make_shared<const TokenDocument>(std::move(d)));
  }
}

Corpus::Corpus(std::vector<DocPtr> documents, std::string provenance)
    : docs_(std::move(documents)), provenance_(std::move(provenance)) {
  for (const auto& d : docs_) token_count_ += d->tokens.size();
}

Corpus Corpus::select(const std::vector<std::size_t>& positions, std::string provenance) const {
  std::vector<DocPtr> picked;
  picked.reserve(positions.size());
  for (std::size_t p : positions) picked.push_back(docs_.at(p));
  return Corpus(std::move(picked), std::move(provenance));
}

namespace {

// UTF-8 character classification through the C.UTF-8 locale; ASCII-only
// fallback when the locale is not installed.
class CharClass {
 public:
  CharClass() : loc_(newlocale(LC_CTYPE_MASK, "C.UTF-8", static_cast<locale_t>(nullptr))) {}
  ~CharClass() {
    if (loc_ != static_cast<locale_t>(nullptr)) freelocale(loc_);
  }
  CharClass(const CharClass&) = delete;
  CharClass& operator=(const CharClass&) = delete;

  bool is_alpha(char32_t c) const {
    if (c < 0x80) return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
    if (loc_ == static_cast<locale_t>(nullptr)) return false;
    return iswalpha_l(static_cast<wint_t>(c), loc_) != 0;
  }
  char32_t to_lower(char32_t c) const {
    if (c < 0x80) return (c >= 'A' && c <= 'Z') ? c + ('a' - 'A') : c;
    if (loc_ == static_cast<locale_t>(nullptr)) return c;
    return static_cast<char32_t>(towlower_l(static_cast<wint_t>(c), loc_));
  }

 private:
  locale_t loc_;
};

const CharClass& char_class() {
  static const CharClass cc;
  return cc;
}

bool is_digit(char32_t c) { return c >= '0' && c <= '9'; }

void append_utf8(std::string& out, char32_t c) {
  if (c < 0x80) {
    out.push_back(static_cast<char>(c));
  } else if (c < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (c >> 6)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  } else if (c < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (c >> 12)));
    out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (c >> 18)));
    out.push_back(static_cast<char>(0x80 | ((c >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  }
}

// Decodes one code point at `pos`; returns false on malformed input.
bool decode_utf8(std::string_view s, std::size_t& pos, char32_t& out) {
  const auto b0 = static_cast<unsigned char>(s[pos]);
  if (b0 < 0x80) {
    out = b0;
    ++pos;
    return true;
  }
  int len = 0;
  char32_t cp = 0;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    return false;
  }
  if (pos + len > s.size()) return false;
  for (int k = 1; k < len; ++k) {
    const auto b = static_cast<unsigned char>(s[pos + k]);
    if ((b & 0xC0) != 0x80) return false;
    cp = (cp << 6) | (b & 0x3F);
  }
  // Overlong forms, surrogates, and out-of-range values.
  static constexpr char32_t kMin[] = {0, 0, 0x80, 0x800, 0x10000};
  if (cp < kMin[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return false;
  out = cp;
  pos += len;
  return true;
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

StopwordSet parse_stopwords(std::string_view text) {
  StopwordSet out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    std::string w = trim(line);
    if (w.empty()) continue;
    const TokenDocument doc = clean_document({"", w}, {});
    for (const auto& t : doc.tokens) out.insert(t);
  }
  return out;
}

}  // namespace

StopwordSet default_stopwords() { return parse_stopwords(detail::kStopwordsEn); }

StopwordSet load_stopwords(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot read stopword list: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_stopwords(ss.str());
}

TokenDocument clean_document(const RawDocument& raw, const StopwordSet& stopwords) {
  const CharClass& cc = char_class();
  TokenDocument out{raw.doc_id, {}};
  const std::string_view text = raw.text;

  enum class Run { kNone, kAlpha, kDigit };
  Run run = Run::kNone;
  std::string current;
  std::string original;  // un-lowercased spelling, to recognise the sentinel

  auto flush = [&] {
    if (run == Run::kAlpha) {
      if (original == kNumberToken) {
        out.tokens.emplace_back(kNumberToken);
      } else if (!stopwords.contains(current)) {
        out.tokens.push_back(current);
      }
    } else if (run == Run::kDigit) {
      out.tokens.emplace_back(kNumberToken);
    }
    current.clear();
    original.clear();
    run = Run::kNone;
  };

  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t at = pos;
    char32_t c = 0;
    if (!decode_utf8(text, pos, c)) {
      throw InvalidInput("invalid UTF-8 in document '" + raw.doc_id + "' at byte " +
                         std::to_string(at));
    }
    if (is_digit(c)) {
      if (run != Run::kDigit) flush();
      run = Run::kDigit;
    } else if (cc.is_alpha(c)) {
      if (run != Run::kAlpha) flush();
      run = Run::kAlpha;
      append_utf8(current, cc.to_lower(c));
      append_utf8(original, c);
    } else {
      flush();
    }
  }
  flush();
  return out;
}

CorpusFormat parse_corpus_format(std::string_view name) {
  if (name == "lines" || name == "one-doc-per-line") return CorpusFormat::kLines;
  if (name == "dir" || name == "directory" || name == "one-file-per-doc") return CorpusFormat::kDirectory;
  throw InvalidInput("unknown corpus format '" + std::string(name) + "' (expected lines|dir)");
}

std::vector<RawDocument> read_raw_documents(const std::filesystem::path& path, CorpusFormat format) {
  namespace fs = std::filesystem;
  std::vector<RawDocument> raw;
  if (format == CorpusFormat::kLines) {
    std::ifstream in(path, std::ios::binary);
    if (!in || fs::is_directory(path)) throw InvalidInput("cannot read corpus file: " + path.string());
    std::string line;
    std::size_t line_no = 0;
    const std::string stem = path.filename().string();
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      raw.push_back({stem + ":" + std::to_string(line_no), std::move(line)});
    }
    return raw;
  }

  if (!fs::is_directory(path)) throw InvalidInput("corpus directory not found: " + path.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(path)) {
    if (entry.is_regular_file() && entry.path().extension() == ".txt") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end(),
            [](const fs::path& a, const fs::path& b) { return a.filename().string() < b.filename().string(); });
  for (const auto& f : files) {
    std::ifstream in(f, std::ios::binary);
    if (!in) throw InvalidInput("cannot read corpus file: " + f.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    raw.push_back({f.filename().string(), ss.str()});
  }
  return raw;
}

Corpus load_corpus(const std::filesystem::path& path, CorpusFormat format, const StopwordSet& stopwords) {
  std::vector<RawDocument> raw = read_raw_documents(path, format);
  std::vector<TokenDocument> docs;
  docs.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    try {
      docs.push_back(clean_document(raw[i], stopwords));
    } catch (const InvalidInput& e) {
      throw InvalidInput(path.string() + ": document #" + std::to_string(i + 1) + ": " + e.what());
    }
  }
  return Corpus(std::move(docs), path.string());
}

void write_cleaned(const Corpus& corpus, std::ostream& out) {
  for (const TokenDocument& d : corpus.documents()) {
    for (std::size_t i = 0; i < d.tokens.size(); ++i) {
      if (i) out << ' ';
      out << d.tokens[i];
    }
    out << '\n';
  }
}

std::vector<std::size_t> subsample_sizes(std::size_t n_documents, std::size_t n_levels, std::size_t min_docs) {
  if (n_levels < 1) throw InvalidInput("n_levels must be >= 1");
  if (min_docs < 1) throw InvalidInput("min_docs must be >= 1");
  if (min_docs > n_documents) {
    throw InvalidInput("min_docs (" + std::to_string(min_docs) + ") exceeds corpus size (" +
                       std::to_string(n_documents) + ")");
  }
  std::vector<std::size_t> sizes{n_documents};
  const double ratio = static_cast<double>(min_docs) / static_cast<double>(n_documents);
  for (std::size_t i = 1; i < n_levels; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(n_levels - 1);
    sizes.push_back(static_cast<std::size_t>(std::llround(static_cast<double>(n_documents) * std::pow(ratio, t))));
  }
  return sizes;
}

SubsampleChain nested_subsamples(const Corpus& corpus, std::size_t n_levels, std::size_t min_docs,
                                 const std::set<std::string>& required_words, std::uint64_t seed) {
  const std::vector<std::size_t> sizes = subsample_sizes(corpus.size(), n_levels, min_docs);

  // Required-word ids per document.
  std::map<std::string, std::size_t> req_id;
  std::vector<std::string> req_words(required_words.begin(), required_words.end());
  for (std::size_t i = 0; i < req_words.size(); ++i) req_id[req_words[i]] = i;

  std::vector<std::vector<std::size_t>> doc_req(corpus.size());
  std::vector<std::size_t> full_count(req_words.size(), 0);
  for (std::size_t d = 0; d < corpus.size(); ++d) {
    std::set<std::size_t> seen;
    for (const auto& t : corpus[d].tokens) {
      if (auto it = req_id.find(t); it != req_id.end()) seen.insert(it->second);
    }
    doc_req[d].assign(seen.begin(), seen.end());
    for (std::size_t r : seen) ++full_count[r];
  }
  for (std::size_t r = 0; r < req_words.size(); ++r) {
    if (full_count[r] == 0) throw InvalidInput("required word absent from full corpus: '" + req_words[r] + "'");
  }

  SubsampleChain chain;
  chain.required_words = required_words;
  chain.seed = seed;

  std::vector<std::size_t> prev(corpus.size());
  for (std::size_t d = 0; d < prev.size(); ++d) prev[d] = d;
  chain.levels.push_back(corpus);
  chain.repairs.emplace_back();

  for (std::size_t level = 1; level < sizes.size(); ++level) {
    Rng rng(derive_seed(seed, {level}));
    std::vector<std::size_t> order = prev;
    for (std::size_t i = order.size(); i > 1; --i) {
      std::swap(order[i - 1], order[uniform_index(rng, i)]);
    }
    const std::size_t keep = sizes[level];
    std::vector<std::size_t> selected(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(keep));
    std::vector<std::size_t> discarded(order.begin() + static_cast<std::ptrdiff_t>(keep), order.end());
    std::sort(selected.begin(), selected.end());
    std::sort(discarded.begin(), discarded.end());

    std::vector<std::size_t> count(req_words.size(), 0);
    for (std::size_t d : selected)
      for (std::size_t r : doc_req[d]) ++count[r];

    std::vector<Repair> repairs;
    for (;;) {
      std::size_t missing = req_words.size();
      for (std::size_t r = 0; r < req_words.size(); ++r) {
        if (count[r] == 0) {
          missing = r;
          break;
        }
      }
      if (missing == req_words.size()) break;

      std::vector<std::size_t> donors;
      for (std::size_t i = 0; i < discarded.size(); ++i) {
        const auto& rs = doc_req[discarded[i]];
        if (std::binary_search(rs.begin(), rs.end(), missing)) donors.push_back(i);
      }
      std::vector<std::size_t> removable;
      for (std::size_t i = 0; i < selected.size(); ++i) {
        const auto& rs = doc_req[selected[i]];
        if (std::none_of(rs.begin(), rs.end(), [&](std::size_t r) { return count[r] == 1; })) {
          removable.push_back(i);
        }
      }
      // Donors always exist: the word is present in the previous level.
      if (donors.empty() || removable.empty()) {
        throw InvalidInput("cannot cover required words at level " + std::to_string(level) + " with " +
                           std::to_string(keep) + " documents");
      }
      const std::size_t out_i = removable[uniform_index(rng, removable.size())];
      const std::size_t in_i = donors[uniform_index(rng, donors.size())];
      const std::size_t out_doc = selected[out_i];
      const std::size_t in_doc = discarded[in_i];
      for (std::size_t r : doc_req[out_doc]) --count[r];
      for (std::size_t r : doc_req[in_doc]) ++count[r];
      selected[out_i] = in_doc;
      discarded[in_i] = out_doc;
      repairs.push_back({corpus[out_doc].doc_id, corpus[in_doc].doc_id, req_words[missing]});
    }
    std::sort(selected.begin(), selected.end());

    chain.levels.push_back(corpus.select(selected, corpus.provenance() + "#level" + std::to_string(level)));
    chain.repairs.push_back(std::move(repairs));
    prev = std::move(selected);
  }
  return chain;
}

nlohmann::json chain_manifest(const SubsampleChain& chain) {
  nlohmann::json levels = nlohmann::json::array();
  for (std::size_t i = 0; i < chain.levels.size(); ++i) {
    const Corpus& c = chain.levels[i];
    nlohmann::json ids = nlohmann::json::array();
    for (const TokenDocument& d : c.documents()) ids.push_back(d.doc_id);
    nlohmann::json repairs = nlohmann::json::array();
    for (const Repair& r : chain.repairs[i]) {
      repairs.push_back({{"removed", r.removed_doc}, {"added", r.added_doc}, {"word", r.missing_word}});
    }
    levels.push_back({{"level", i},
                      {"doc_count", c.size()},
                      {"token_count", c.token_count()},
                      {"doc_ids", std::move(ids)},
                      {"repairs", std::move(repairs)}});
  }
  return {{"seed", chain.seed},
          {"required_words", std::vector<std::string>(chain.required_words.begin(), chain.required_words.end())},
          {"levels", std::move(levels)}};
}

}  // namespace scembed
