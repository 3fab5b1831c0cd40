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

#include <fstream>
#include <set>
#include <sstream>

#include "scembed/corpus.hpp"
#include "scratch_dir.hpp"

using namespace scembed;

namespace {

std::vector<std::string> clean(const std::string& text, const StopwordSet& stop = default_stopwords()) {
  return clean_document({"d", text}, stop).tokens;
}

std::string join(const std::vector<std::string>& tokens) {
  std::string out;
  for (const auto& t : tokens) out += (out.empty() ? "" : " ") + t;
  return out;
}

Corpus numbered_corpus(std::size_t n) {
  std::vector<TokenDocument> docs;
  for (std::size_t i = 0; i < n; ++i) {
    TokenDocument d{"doc" + std::to_string(i), {"common"}};
    if (i % 97 == 5) d.tokens.push_back("rare");
    if (i == 13) d.tokens.push_back("unique");
    docs.push_back(std::move(d));
  }
  return Corpus(std::move(docs), "numbered");
}

}  // namespace

TEST_CASE("cleaning lowercases, drops stopwords and separators") {
  CHECK(clean("The Cat sat on the MAT!") == std::vector<std::string>{"cat", "sat", "mat"});
  CHECK(clean("well-known, re-use") == std::vector<std::string>{"well", "known", "re", "use"});
  CHECK(clean("   ").empty());
}

TEST_CASE("digit runs become a single NUM token") {
  CHECK(clean("room 101 and 7 dwarfs") == std::vector<std::string>{"room", "NUM", "NUM", "dwarfs"});
  CHECK(clean("abc123def") == std::vector<std::string>{"abc", "NUM", "def"});
  CHECK(clean("3.14") == std::vector<std::string>{"NUM", "NUM"});
}

TEST_CASE("NUM survives stopword filtering and re-cleaning") {
  StopwordSet stop = default_stopwords();
  stop.insert("num");
  CHECK(clean("42", stop) == std::vector<std::string>{"NUM"});
  CHECK(clean("NUM", stop) == std::vector<std::string>{"NUM"});
  CHECK(clean("num", stop).empty());
}

TEST_CASE("cleaning is idempotent on random text") {
  std::mt19937_64 rng(7);
  const std::string alphabet = "abcXYZ the and 0123 .,;!-\tNUM\xc3\xa9\xc3\x89";
  for (int trial = 0; trial < 300; ++trial) {
    std::string text;
    const std::size_t len = rng() % 60;
    for (std::size_t i = 0; i < len; ++i) {
      const std::size_t p = rng() % alphabet.size();
      // keep two-byte sequences intact
      if (static_cast<unsigned char>(alphabet[p]) >= 0x80) {
        const std::size_t start = (static_cast<unsigned char>(alphabet[p]) & 0x40) ? p : p - 1;
        text += alphabet.substr(start, 2);
      } else {
        text += alphabet[p];
      }
    }
    const auto once = clean(text);
    CHECK(clean(join(once)) == once);
  }
}

TEST_CASE("non-ASCII letters are kept and lowercased") {
  const auto tokens = clean("Caf\xc3\xa9 \xc3\x89T\xc3\x89");
  REQUIRE(tokens.size() == 2);
  CHECK(tokens[0] == "caf\xc3\xa9");
}

TEST_CASE("invalid UTF-8 is rejected with the document id") {
  try {
    clean_document({"bad-doc", "ok \xff\xfe"}, default_stopwords());
    FAIL("expected InvalidInput");
  } catch (const InvalidInput& e) {
    CHECK(std::string(e.what()).find("bad-doc") != std::string::npos);
  }
  CHECK_THROWS_AS(clean("\xc3"), InvalidInput);
}

TEST_CASE("default stoplist") {
  const StopwordSet s = default_stopwords();
  CHECK(s.size() == 127);
  CHECK(s.contains("the"));
  CHECK_FALSE(s.contains("run"));
}

TEST_CASE("corpus loading in both formats") {
  testing_support::ScratchDir dir("corpus");
  {
    std::ofstream f(dir / "lines.txt");
    f << "First line here\r\n\nThird 2 lines\n";
  }
  const Corpus lines = load_corpus(dir / "lines.txt", CorpusFormat::kLines, default_stopwords());
  REQUIRE(lines.size() == 3);
  CHECK(lines[0].doc_id == "lines.txt:1");
  CHECK(lines[0].tokens == std::vector<std::string>{"first", "line"});
  CHECK(lines[1].tokens.empty());
  CHECK(lines[2].tokens == std::vector<std::string>{"third", "NUM", "lines"});
  CHECK(lines.token_count() == 5);

  std::filesystem::create_directories(dir / "docs");
  std::ofstream(dir / "docs" / "b.txt") << "beta\ngamma";
  std::ofstream(dir / "docs" / "a.txt") << "alpha";
  std::ofstream(dir / "docs" / "skip.md") << "ignored";
  const Corpus docs = load_corpus(dir / "docs", CorpusFormat::kDirectory, default_stopwords());
  REQUIRE(docs.size() == 2);
  CHECK(docs[0].doc_id == "a.txt");
  CHECK(docs[1].tokens == std::vector<std::string>{"beta", "gamma"});

  CHECK_THROWS_AS(load_corpus(dir / "missing.txt", CorpusFormat::kLines, {}), InvalidInput);
  CHECK_THROWS_AS(load_corpus(dir / "lines.txt", CorpusFormat::kDirectory, {}), InvalidInput);
  CHECK_THROWS_AS(parse_corpus_format("xml"), InvalidInput);
}

TEST_CASE("write_cleaned round-trips through the lines format") {
  testing_support::ScratchDir dir("cleaned");
  const Corpus c({{"a", {"x", "y"}}, {"b", {}}, {"c", {"NUM", "z"}}}, "mem");
  {
    std::ofstream f(dir / "out.txt");
    write_cleaned(c, f);
  }
  const Corpus back = load_corpus(dir / "out.txt", CorpusFormat::kLines, {});
  REQUIRE(back.size() == c.size());
  for (std::size_t i = 0; i < c.size(); ++i) CHECK(back[i].tokens == c[i].tokens);
}

TEST_CASE("subsample sizes follow a geometric schedule") {
  CHECK(subsample_sizes(20000, 2, 600) == std::vector<std::size_t>{20000, 600});
  const auto s = subsample_sizes(10000, 5, 100);
  CHECK(s == std::vector<std::size_t>{10000, 3162, 1000, 316, 100});
  CHECK(subsample_sizes(10, 1, 3) == std::vector<std::size_t>{10});
  CHECK_THROWS_AS(subsample_sizes(10, 2, 11), InvalidInput);
  CHECK_THROWS_AS(subsample_sizes(10, 0, 1), InvalidInput);
}

TEST_CASE("subsample chains are nested, sized and cover required words") {
  const Corpus corpus = numbered_corpus(1000);
  const std::set<std::string> required{"rare", "unique"};
  for (std::uint64_t seed : {1u, 2u, 3u, 99u}) {
    const SubsampleChain chain = nested_subsamples(corpus, 4, 20, required, seed);
    const auto sizes = subsample_sizes(1000, 4, 20);
    REQUIRE(chain.levels.size() == 4);
    for (std::size_t l = 0; l < chain.levels.size(); ++l) {
      CHECK(chain.levels[l].size() == sizes[l]);
      std::set<std::string> words;
      for (const auto& d : chain.levels[l].documents()) words.insert(d.tokens.begin(), d.tokens.end());
      for (const auto& w : required) CHECK(words.contains(w));
      if (l > 0) {
        std::set<std::string> parent;
        for (const auto& d : chain.levels[l - 1].documents()) parent.insert(d.doc_id);
        for (const auto& d : chain.levels[l].documents()) CHECK(parent.contains(d.doc_id));
      }
    }
    const auto again = nested_subsamples(corpus, 4, 20, required, seed);
    CHECK(chain_manifest(again) == chain_manifest(chain));
  }
}

TEST_CASE("subsample repairs are recorded and shared storage is reused") {
  const Corpus corpus = numbered_corpus(1000);
  const SubsampleChain chain = nested_subsamples(corpus, 2, 5, {"unique"}, 11);
  const auto manifest = chain_manifest(chain);
  CHECK(manifest["levels"].size() == 2);
  CHECK(manifest["levels"][1]["doc_count"] == 5);
  std::size_t repairs = 0;
  for (const auto& r : chain.repairs) repairs += r.size();
  // With 5 of 1000 documents kept, "unique" (one document) almost surely needs a swap.
  CHECK(repairs == manifest["levels"][1]["repairs"].size());
  bool shares = false;
  for (std::size_t i = 0; i < chain.levels[1].size(); ++i)
    for (std::size_t j = 0; j < corpus.size(); ++j) shares |= chain.levels[1].shared(i) == corpus.shared(j);
  CHECK(shares);
}

TEST_CASE("subsampling rejects unsatisfiable requirements") {
  const Corpus corpus = numbered_corpus(50);
  CHECK_THROWS_AS(nested_subsamples(corpus, 2, 5, {"absent"}, 1), InvalidInput);
  std::vector<TokenDocument> docs{{"a", {"x"}}, {"b", {"y"}}, {"c", {"z"}}};
  CHECK_THROWS_AS(nested_subsamples(Corpus(docs, "t"), 2, 1, {"x", "y"}, 1), InvalidInput);
}

TEST_CASE("select keeps requested order") {
  const Corpus c = numbered_corpus(10);
  const Corpus s = c.select({7, 2}, "sub");
  REQUIRE(s.size() == 2);
  CHECK(s[0].doc_id == "doc7");
  CHECK(s[1].doc_id == "doc2");
  CHECK(s.provenance() == "sub");
}
