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

#include "scembed/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <unordered_set>

#include "textio.hpp"

namespace scembed::synth {

namespace fs = std::filesystem;

std::vector<std::string> make_words(std::size_t n, std::uint64_t seed, const std::vector<std::string>& reserved) {
  static constexpr std::string_view kConsonants = "bdfgklmnprstvz";
  static constexpr std::string_view kVowels = "aeiou";
  std::vector<std::string> syllables;
  for (char c : kConsonants) {
    for (char v : kVowels) syllables.push_back(std::string{c, v});
  }

  StopwordSet banned = default_stopwords();
  banned.insert("num");
  banned.insert(reserved.begin(), reserved.end());

  std::vector<std::string> out;
  Rng rng(derive_seed(seed, {0x776f726473}));
  // Two-syllable words first, then three-syllable ones if more are needed.
  for (std::size_t length = 2; out.size() < n; ++length) {
    std::vector<std::string> pool{""};
    for (std::size_t k = 0; k < length; ++k) {
      std::vector<std::string> next;
      next.reserve(pool.size() * syllables.size());
      for (const auto& p : pool) {
        for (const auto& s : syllables) next.push_back(p + s);
      }
      pool = std::move(next);
    }
    for (std::size_t i = pool.size(); i > 1; --i) std::swap(pool[i - 1], pool[uniform_index(rng, i)]);
    for (auto& w : pool) {
      if (out.size() == n) break;
      if (!banned.count(w)) out.push_back(std::move(w));
    }
  }
  return out;
}

Zipf::Zipf(std::size_t n, double s) {
  if (n == 0) throw InvalidInput("zipf: empty support");
  cdf_.resize(n);
  double total = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    total += 1.0 / std::pow(static_cast<double>(r + 1), s);
    cdf_[r] = total;
  }
  for (double& c : cdf_) c /= total;
}

std::size_t Zipf::operator()(Rng& rng) const {
  const double u = uniform01(rng);
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  return std::min<std::size_t>(static_cast<std::size_t>(it - cdf_.begin()), cdf_.size() - 1);
}

nlohmann::json PlantedCategoryParams::to_json() const {
  return {{"generator", "planted-categories"},
          {"n_docs", n_docs},
          {"n_categories", n_categories},
          {"words_per_category", words_per_category},
          {"background_vocab", background_vocab},
          {"doc_length", doc_length},
          {"topic_share", topic_share},
          {"zipf_exponent", zipf_exponent},
          {"seed", seed}};
}

namespace {

std::string doc_name(const char* prefix, std::size_t i) {
  std::string digits = std::to_string(i);
  if (digits.size() < 6) digits.insert(0, 6 - digits.size(), '0');
  return prefix + digits;
}

}  // namespace

PlantedCorpus planted_category_corpus(const PlantedCategoryParams& p) {
  if (p.n_categories < 2 || p.words_per_category < 2) {
    throw InvalidInput("planted corpus: needs at least 2 categories of 2 words");
  }
  if (!(p.topic_share >= 0.0 && p.topic_share <= 1.0)) throw InvalidInput("planted corpus: topic_share outside [0, 1]");
  const std::size_t n_cat_words = p.n_categories * p.words_per_category;
  const auto words = make_words(n_cat_words + p.background_vocab, p.seed);

  PlantedCorpus out;
  for (std::size_t c = 0; c < p.n_categories; ++c) {
    Category cat;
    cat.name = "category" + std::to_string(c + 1);
    for (std::size_t w = 0; w < p.words_per_category; ++w) cat.words.push_back(words[c * p.words_per_category + w]);
    out.categories.categories.push_back(std::move(cat));
  }

  const Zipf background(std::max<std::size_t>(p.background_vocab, 1), p.zipf_exponent);
  Rng rng(derive_seed(p.seed, {1}));
  std::vector<TokenDocument> docs;
  docs.reserve(p.n_docs);
  for (std::size_t d = 0; d < p.n_docs; ++d) {
    const std::size_t c = uniform_index(rng, p.n_categories);
    TokenDocument doc{doc_name("doc", d), {}};
    doc.tokens.reserve(p.doc_length);
    for (std::size_t t = 0; t < p.doc_length; ++t) {
      if (p.background_vocab == 0 || uniform01(rng) < p.topic_share) {
        doc.tokens.push_back(words[c * p.words_per_category + uniform_index(rng, p.words_per_category)]);
      } else {
        doc.tokens.push_back(words[n_cat_words + background(rng)]);
      }
    }
    docs.push_back(std::move(doc));
  }
  out.corpus = Corpus(std::move(docs), "synthetic:planted-categories:seed=" + std::to_string(p.seed));
  return out;
}

TwoTopicCorpus two_topic_corpus(std::size_t n_docs, std::size_t doc_length, std::uint64_t seed) {
  constexpr std::size_t kTopicWords = 20;
  constexpr std::size_t kBackground = 200;
  const auto words = make_words(2 * kTopicWords + kBackground, seed);
  TwoTopicCorpus out;
  out.topic_a.assign(words.begin(), words.begin() + kTopicWords);
  out.topic_b.assign(words.begin() + kTopicWords, words.begin() + 2 * kTopicWords);
  const Zipf background(kBackground, 1.0);
  Rng rng(derive_seed(seed, {2}));
  std::vector<TokenDocument> docs;
  for (std::size_t d = 0; d < n_docs; ++d) {
    const auto& topic = (d % 2 == 0) ? out.topic_a : out.topic_b;
    TokenDocument doc{doc_name("doc", d), {}};
    for (std::size_t t = 0; t < doc_length; ++t) {
      if (uniform01(rng) < 0.5) {
        doc.tokens.push_back(topic[uniform_index(rng, topic.size())]);
      } else {
        doc.tokens.push_back(words[2 * kTopicWords + background(rng)]);
      }
    }
    docs.push_back(std::move(doc));
  }
  out.corpus = Corpus(std::move(docs), "synthetic:two-topic:seed=" + std::to_string(seed));
  return out;
}

nlohmann::json DreamSynthParams::to_json() const {
  return {{"generator", "dream-series"},
          {"n_series", n_series},
          {"reports_min", reports_min},
          {"reports_max", reports_max},
          {"target_reports_min", target_reports_min},
          {"target_reports_max", target_reports_max},
          {"chase_only_reports", chase_only_reports},
          {"report_length", report_length},
          {"background_vocab", background_vocab},
          {"seed", seed}};
}

SeriesCollection dream_collection(const DreamSynthParams& p, const ProbeSet& probes) {
  probes.validate();
  if (p.n_series < 1) throw InvalidInput("dream generator: n_series must be >= 1");
  if (p.reports_min > p.reports_max || p.target_reports_min > p.target_reports_max) {
    throw InvalidInput("dream generator: min exceeds max");
  }
  if (p.target_reports_max + p.chase_only_reports > p.reports_min) {
    throw InvalidInput("dream generator: reports_min too small for the planted reports");
  }
  const std::vector<std::string> chase_context = {"monster", "dark",   "hide",   "scream",
                                                  "afraid",  "shadow", "stranger", "hallway"};
  const std::vector<std::string> sports_context = {"race",  "track",   "marathon", "coach",
                                                   "sprint", "stadium", "finish",   "jog"};
  std::vector<std::string> reserved(chase_context);
  reserved.insert(reserved.end(), sports_context.begin(), sports_context.end());
  reserved.push_back(probes.target);
  reserved.insert(reserved.end(), probes.probes.begin(), probes.probes.end());
  const auto background_words = make_words(p.background_vocab, p.seed, reserved);
  const std::vector<std::string> probe_forms(probes.probes.begin(), probes.probes.end());
  const Zipf background(background_words.size(), 1.0);
  const StopwordSet stop = default_stopwords();

  // Evenly spaced fractions, assigned to series in shuffled order.
  Rng assign(derive_seed(p.seed, {3}));
  std::vector<std::size_t> order(p.n_series);
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[uniform_index(assign, i)]);

  SeriesCollection out;
  for (std::size_t s = 0; s < p.n_series; ++s) {
    const std::string name = "series" + std::string(s + 1 < 10 ? "0" : "") + std::to_string(s + 1);
    const double fraction =
        p.n_series == 1 ? 0.5 : static_cast<double>(order[s]) / static_cast<double>(p.n_series - 1);
    out.truth.fraction[name] = fraction;

    Rng rng(derive_seed(p.seed, {4, s}));
    const std::size_t n_reports = p.reports_min + uniform_index(rng, p.reports_max - p.reports_min + 1);
    const std::size_t n_target =
        p.target_reports_min + uniform_index(rng, p.target_reports_max - p.target_reports_min + 1);
    // Chase scenes among target reports: exactly round(f * n_target).
    const auto n_chase = static_cast<std::size_t>(std::lround(fraction * static_cast<double>(n_target)));

    enum Kind { kPlain, kChaseTarget, kSportsTarget, kChaseOnly };
    std::vector<Kind> kinds(n_reports, kPlain);
    for (std::size_t i = 0; i < n_target; ++i) kinds[i] = i < n_chase ? kChaseTarget : kSportsTarget;
    for (std::size_t i = 0; i < p.chase_only_reports; ++i) kinds[n_target + i] = kChaseOnly;
    for (std::size_t i = kinds.size(); i > 1; --i) std::swap(kinds[i - 1], kinds[uniform_index(rng, i)]);

    std::vector<TokenDocument> docs;
    for (std::size_t r = 0; r < n_reports; ++r) {
      std::vector<std::string> tokens;
      for (std::size_t t = 0; t < p.report_length; ++t) tokens.push_back(background_words[background(rng)]);
      auto pick = [&](const std::vector<std::string>& from) { tokens.push_back(from[uniform_index(rng, from.size())]); };
      switch (kinds[r]) {
        case kChaseTarget:
          tokens.push_back(probes.target);
          pick(probe_forms);
          pick(chase_context);
          pick(chase_context);
          break;
        case kSportsTarget:
          tokens.push_back(probes.target);
          pick(sports_context);
          pick(sports_context);
          break;
        case kChaseOnly:
          pick(probe_forms);
          pick(chase_context);
          pick(chase_context);
          break;
        case kPlain:
          break;
      }
      for (std::size_t i = tokens.size(); i > 1; --i) std::swap(tokens[i - 1], tokens[uniform_index(rng, i)]);

      std::string text;
      for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i) text += ' ';
        text += tokens[i];
      }
      if (!text.empty()) text[0] = static_cast<char>(text[0] - 'a' + 'A');
      text += '.';
      docs.push_back(clean_document({name + ":" + std::to_string(r + 1), text}, stop));
    }
    DreamSeries series;
    series.name = name;
    series.reports = Corpus(std::move(docs), "synthetic:dreams:" + name);
    series.target_count = count_target(series.reports, probes.target);
    out.series.push_back(std::move(series));
  }
  return out;
}

namespace {

std::ofstream open_output(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + path.string());
  return out;
}

}  // namespace

void write_corpus(const Corpus& corpus, const fs::path& path) {
  auto out = open_output(path);
  write_cleaned(corpus, out);
}

void write_series_collection(const SeriesCollection& collection, const fs::path& dir, const fs::path& ground_truth_path) {
  fs::create_directories(dir);
  for (const auto& s : collection.series) write_corpus(s.reports, dir / (s.name + ".txt"));
  auto gt = open_output(ground_truth_path);
  gt << "series,fraction\n";
  for (const auto& [name, f] : collection.truth.fraction) gt << detail::csv_field(name) << ',' << detail::format_double(f) << '\n';
}

void write_category_set(const CategorySet& cats, const fs::path& path) {
  auto out = open_output(path);
  for (const auto& c : cats.categories) {
    for (const auto& w : c.words) out << c.name << '\t' << w << '\n';
  }
}

}  // namespace scembed::synth
