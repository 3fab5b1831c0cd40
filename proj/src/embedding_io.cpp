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

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "scembed/semspace.hpp"

namespace scembed {
namespace {

constexpr std::array<char, 5> kMagic{'S', 'C', 'E', 'M', '1'};
constexpr std::array<char, 4> kCountsTag{'S', 'C', 'V', 'C'};

template <typename T>
void put_le(std::ostream& out, T value) {
  static_assert(std::is_unsigned_v<T>);
  std::array<char, sizeof(T)> bytes{};
  for (std::size_t i = 0; i < sizeof(T); ++i) bytes[i] = static_cast<char>((value >> (8 * i)) & 0xFF);
  out.write(bytes.data(), bytes.size());
}

template <typename T>
T get_le(std::istream& in, const char* what) {
  std::array<unsigned char, sizeof(T)> bytes{};
  if (!in.read(reinterpret_cast<char*>(bytes.data()), bytes.size())) {
    throw InvalidInput(std::string("truncated embedding file while reading ") + what);
  }
  T value = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) value |= static_cast<T>(bytes[i]) << (8 * i);
  return value;
}

void put_string(std::ostream& out, const std::string& s) {
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(s.size()));
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

std::string get_string(std::istream& in, const char* what) {
  const auto len = get_le<std::uint32_t>(in, what);
  std::string s(len, '\0');
  if (len > 0 && !in.read(s.data(), len)) throw InvalidInput(std::string("truncated embedding file in ") + what);
  return s;
}

}  // namespace

void save_embedding(const Embedding& emb, std::ostream& out) {
  out.write(kMagic.data(), kMagic.size());
  put_string(out, emb.model_tag());
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(emb.dim()));
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(emb.size()));
  put_string(out, emb.params_fingerprint());
  const Vocabulary& vocab = emb.vocabulary();
  for (const auto& w : vocab.words()) put_string(out, w);
  for (std::size_t i = 0; i < emb.size(); ++i) {
    for (double v : emb.vector(i)) put_le<std::uint32_t>(out, std::bit_cast<std::uint32_t>(static_cast<float>(v)));
  }
  out.write(kCountsTag.data(), kCountsTag.size());
  put_le<std::uint64_t>(out, vocab.n_documents());
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    put_le<std::uint64_t>(out, vocab.corpus_count(i));
    put_le<std::uint64_t>(out, vocab.doc_frequency(i));
  }
  if (!out) throw Error("failed writing embedding");
}

void save_embedding(const Embedding& emb, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidInput("cannot write embedding file: " + path.string());
  save_embedding(emb, out);
}

Embedding load_embedding(std::istream& in) {
  std::array<char, 5> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic) throw InvalidInput("not an SCEM1 embedding file");
  std::string tag = get_string(in, "model tag");
  const auto dim = get_le<std::uint32_t>(in, "dimension");
  const auto n = get_le<std::uint32_t>(in, "vocabulary size");
  const std::string fingerprint = get_string(in, "parameter fingerprint");
  nlohmann::json params;
  try {
    params = fingerprint.empty() ? nlohmann::json::object() : nlohmann::json::parse(fingerprint);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("embedding fingerprint is not JSON: ") + e.what());
  }
  std::vector<std::string> words;
  words.reserve(n);
  for (std::uint32_t i = 0; i < n; ++i) words.push_back(get_string(in, "word"));
  Matrix m(n, dim);
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = 0; j < dim; ++j) m(i, j) = std::bit_cast<float>(get_le<std::uint32_t>(in, "vectors"));
  }

  std::vector<std::uint64_t> counts(n, 0);
  std::vector<std::uint64_t> dfs(n, 0);
  std::uint64_t n_docs = 0;
  std::array<char, 4> tag_bytes{};
  if (in.read(tag_bytes.data(), tag_bytes.size())) {
    if (tag_bytes != kCountsTag) throw InvalidInput("unknown trailer in embedding file");
    n_docs = get_le<std::uint64_t>(in, "document count");
    for (std::uint32_t i = 0; i < n; ++i) {
      counts[i] = get_le<std::uint64_t>(in, "corpus counts");
      dfs[i] = get_le<std::uint64_t>(in, "document frequencies");
    }
  }
  return Embedding(Vocabulary(std::move(words), std::move(counts), std::move(dfs), n_docs), std::move(m),
                   std::move(tag), std::move(params));
}

Embedding load_embedding(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot read embedding file: " + path.string());
  return load_embedding(in);
}

void save_embedding_text(const Embedding& emb, std::ostream& out) {
  out << emb.size() << ' ' << emb.dim() << '\n';
  out << std::setprecision(9);
  for (std::size_t i = 0; i < emb.size(); ++i) {
    out << emb.vocabulary().word(i);
    for (double v : emb.vector(i)) out << ' ' << static_cast<float>(v);
    out << '\n';
  }
}

Embedding load_embedding_text(std::istream& in, std::string model_tag) {
  std::string line;
  std::vector<std::string> words;
  std::vector<std::vector<double>> rows;
  std::size_t dim = 0;
  std::size_t line_no = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string word;
    ls >> word;
    std::vector<double> vals;
    double v = 0.0;
    while (ls >> v) vals.push_back(v);
    if (first) {
      first = false;
      // Optional "count dim" header.
      if (vals.size() == 1 && word.find_first_not_of("0123456789") == std::string::npos) {
        dim = static_cast<std::size_t>(vals[0]);
        continue;
      }
    }
    if (dim == 0) dim = vals.size();
    if (vals.size() != dim || dim == 0) {
      throw InvalidInput("text embedding line " + std::to_string(line_no) + " has " + std::to_string(vals.size()) +
                         " values, expected " + std::to_string(dim));
    }
    words.push_back(std::move(word));
    rows.push_back(std::move(vals));
  }
  Matrix m(words.size(), dim);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < dim; ++j) m(i, j) = rows[i][j];
  const std::size_t n = words.size();
  return Embedding(Vocabulary(std::move(words), std::vector<std::uint64_t>(n, 0), std::vector<std::uint64_t>(n, 0), 0),
                   std::move(m), std::move(model_tag), nlohmann::json::object());
}

}  // namespace scembed
