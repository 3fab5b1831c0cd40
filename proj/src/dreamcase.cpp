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

#include "scembed/dreamcase.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>

#include "scembed/workers.hpp"
#include "textio.hpp"

namespace scembed {

namespace fs = std::filesystem;
using detail::csv_field;
using detail::format_double;

std::size_t count_target(const Corpus& corpus, const std::string& target) {
  std::size_t n = 0;
  for (const auto& doc : corpus.documents()) n += static_cast<std::size_t>(std::count(doc.tokens.begin(), doc.tokens.end(), target));
  return n;
}

GroundTruth parse_ground_truth(std::istream& in, const std::string& source) {
  GroundTruth gt;
  std::string line;
  std::vector<std::string> fields;
  std::size_t line_no = 0;
  std::size_t row = 0;
  bool header = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    ++row;
    const std::string where = source + ":" + std::to_string(line_no) + " (row " + std::to_string(row) + ")";
    if (!detail::split_csv(line, fields) || fields.size() != 2) {
      throw InvalidInput(where + ": expected 'series,fraction'");
    }
    const std::string name(detail::trim(fields[0]));
    if (name.empty()) throw InvalidInput(where + ": empty series name");
    const double f = detail::parse_double(fields[1], where + ": fraction");
    if (!(f >= 0.0 && f <= 1.0)) {
      throw InvalidInput(where + ": fraction " + std::string(detail::trim(fields[1])) + " for series '" + name +
                         "' outside [0, 1]");
    }
    if (!gt.fraction.emplace(name, f).second) throw InvalidInput(where + ": duplicate series '" + name + "'");
  }
  return gt;
}

GroundTruth load_ground_truth(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot read ground-truth file: " + path.string());
  return parse_ground_truth(in, path.string());
}

void ProbeSet::validate() const {
  if (target.empty()) throw InvalidInput("probe set: empty target");
  if (probes.empty()) throw InvalidInput("probe set: no probe forms");
  if (probes.count(target)) throw InvalidInput("probe set: target '" + target + "' is also a probe");
}

nlohmann::json ProbeSet::to_json() const { return {{"target", target}, {"probes", probes}}; }

SeriesCollection load_series_collection(const fs::path& series_dir, const fs::path& ground_truth_path,
                                        const StopwordSet& stopwords, const std::string& target) {
  if (!fs::is_directory(series_dir)) throw InvalidInput("series directory not found: " + series_dir.string());
  SeriesCollection out;
  out.truth = load_ground_truth(ground_truth_path);

  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(series_dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".txt") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  std::set<std::string> seen;
  for (const auto& file : files) {
    const std::string name = file.stem().string();
    if (!out.truth.fraction.count(name)) {
      throw InvalidInput("series '" + name + "' has no row in " + ground_truth_path.string());
    }
    DreamSeries s;
    s.name = name;
    s.reports = load_corpus(file, CorpusFormat::kLines, stopwords);
    s.target_count = count_target(s.reports, target);
    seen.insert(name);
    out.series.push_back(std::move(s));
  }
  for (const auto& [name, f] : out.truth.fraction) {
    if (!seen.count(name)) out.unmatched.push_back(name);
  }
  return out;
}

std::optional<std::size_t> series_rank(const DreamSeries& series, const ModelConfig& model, std::size_t dim,
                                       const ProbeSet& probes, std::uint64_t seed) {
  probes.validate();
  const Embedding emb = train_model(series.reports, model, dim, seed);
  return min_rank_distance(emb, probes.target, probes.probes);
}

NeighborList series_neighborhood(const DreamSeries& series, const ModelConfig& model, std::size_t dim,
                                 const std::string& target, std::size_t k, std::uint64_t min_count,
                                 std::uint64_t seed) {
  const Embedding emb = train_model(series.reports, model, dim, seed);
  return neighbors(emb, target, k, min_count);
}

void write_neighbors_csv(const NeighborList& list, std::ostream& out) {
  out << "rank,word,similarity\n";
  for (std::size_t i = 0; i < list.entries.size(); ++i) {
    out << (i + 1) << ',' << csv_field(list.entries[i].word) << ',' << format_double(list.entries[i].similarity)
        << '\n';
  }
}

nlohmann::json DreamOptions::to_json() const {
  return {{"dim", dim},
          {"min_target_count", min_target_count},
          {"repetitions", repetitions},
          {"base_seed", base_seed},
          {"sample_repetition", sample_repetition},
          {"whole_corpus", whole_corpus}};
}

std::vector<double> DreamExperimentReport::slopes() const {
  std::vector<double> out;
  for (const auto& r : repetitions) {
    if (r.fit) out.push_back(r.fit->slope);
  }
  return out;
}

std::size_t DreamExperimentReport::successful() const { return slopes().size(); }

namespace {

struct RankOutcome {
  std::optional<std::size_t> rank;
  std::string error;
};

// Series-specific spelling of the target for whole-collection training.
// Cleaned tokens never contain '_', so the tag cannot collide with a word.
bool has_probe(const Corpus& corpus, const std::set<std::string>& probes) {
  for (const TokenDocument& d : corpus.documents()) {
    for (const std::string& t : d.tokens) {
      if (probes.contains(t)) return true;
    }
  }
  return false;
}

std::string tagged_target(const std::string& target, const std::string& series) { return target + "__" + series; }

// min_rank_distance with the rows flagged in `hidden` left out of the
// ordering (the other series' tagged targets).
std::optional<std::size_t> min_rank_hiding(const Embedding& emb, const std::string& target,
                                           const std::set<std::string>& probes, const std::vector<bool>& hidden) {
  const std::uint32_t t = emb.live_index(target);
  const Vocabulary& vocab = emb.vocabulary();
  const auto sims = emb.similarities_to(t);
  std::optional<std::size_t> best;
  for (const auto& w : probes) {
    const auto p = vocab.find(w);
    if (!p || *p == t || emb.is_dead(*p)) continue;
    std::size_t rank = 1;
    for (std::uint32_t j = 0; j < emb.size(); ++j) {
      if (j == t || j == *p || emb.is_dead(j) || hidden[j]) continue;
      if (sims[j] > sims[*p] || (sims[j] == sims[*p] && vocab.word(j) < w)) ++rank;
    }
    if (!best || rank < *best) best = rank;
  }
  return best;
}

}  // namespace

DreamExperimentReport dreams_experiment(const SeriesCollection& collection, const ModelConfig& model,
                                        const ProbeSet& probes, const DreamOptions& options) {
  probes.validate();
  if (options.repetitions < 1) throw InvalidInput("dreams experiment: repetitions must be >= 1");
  if (options.sample_repetition >= options.repetitions) {
    throw InvalidInput("dreams experiment: sample repetition " + std::to_string(options.sample_repetition) +
                       " outside [0, " + std::to_string(options.repetitions) + ")");
  }

  DreamExperimentReport report;
  report.model = to_string(model.kind);
  report.params = model.to_json();
  report.options = options;
  report.probes = probes;

  std::vector<const DreamSeries*> eligible;
  for (const auto& s : collection.series) {
    const std::size_t count = count_target(s.reports, probes.target);
    if (count < options.min_target_count) {
      report.excluded.push_back({s.name, "target '" + probes.target + "' occurs " + std::to_string(count) +
                                             " times (< " + std::to_string(options.min_target_count) + ")"});
    } else if (!has_probe(s.reports, probes.probes)) {
      report.excluded.push_back({s.name, "no probe form in the vocabulary"});
    } else {
      eligible.push_back(&s);
    }
  }

  const std::size_t n_series = eligible.size();
  const std::size_t n_reps = options.repetitions;
  std::vector<RankOutcome> outcomes(n_reps * n_series);

  if (options.whole_corpus) {
    std::vector<TokenDocument> docs;
    std::vector<std::string> tags;
    for (const auto* s : eligible) {
      tags.push_back(tagged_target(probes.target, s->name));
      for (const TokenDocument& d : s->reports.documents()) {
        TokenDocument copy = d;
        std::replace(copy.tokens.begin(), copy.tokens.end(), probes.target, tags.back());
        docs.push_back(std::move(copy));
      }
    }
    const Corpus whole(std::move(docs), "whole-collection");
    parallel_for(n_reps, options.jobs, [&](std::size_t r) {
      try {
        if (whole.empty()) throw InvalidInput("no eligible series");
        const Embedding emb = train_model(whole, model, options.dim, derive_seed(options.base_seed, {r}));
        std::vector<bool> hidden(emb.size(), false);
        for (const auto& tag : tags) {
          if (auto i = emb.vocabulary().find(tag)) hidden[*i] = true;
        }
        for (std::size_t s = 0; s < n_series; ++s) {
          RankOutcome& o = outcomes[r * n_series + s];
          try {
            o.rank = min_rank_hiding(emb, tags[s], probes.probes, hidden);
          } catch (const std::exception& e) {
            o.error = e.what();
          }
        }
      } catch (const std::exception& e) {
        for (std::size_t s = 0; s < n_series; ++s) outcomes[r * n_series + s].error = e.what();
      }
    });
  } else {
    parallel_for(n_reps * n_series, options.jobs, [&](std::size_t job) {
      const std::size_t r = job / n_series;
      const DreamSeries& s = *eligible[job % n_series];
      RankOutcome& o = outcomes[job];
      try {
        o.rank = series_rank(s, model, options.dim, probes, derive_seed(options.base_seed, {r, hash_string(s.name)}));
      } catch (const std::exception& e) {
        o.error = e.what();
      }
    });
  }

  // A series contributes only if it produced a rank in every repetition, so
  // all fits share one point set.
  std::vector<bool> usable(n_series, true);
  for (std::size_t s = 0; s < n_series; ++s) {
    for (std::size_t r = 0; r < n_reps; ++r) {
      const RankOutcome& o = outcomes[r * n_series + s];
      std::string reason;
      if (!o.error.empty()) {
        reason = "training or query failed in repetition " + std::to_string(r) + ": " + o.error;
      } else if (!o.rank) {
        reason = "no probe form in the vocabulary";
      }
      if (!reason.empty()) {
        report.excluded.push_back({eligible[s]->name, reason});
        usable[s] = false;
        break;
      }
    }
    if (usable[s]) report.analyzed.push_back(eligible[s]->name);
  }
  std::sort(report.excluded.begin(), report.excluded.end(),
            [](const Exclusion& a, const Exclusion& b) { return a.series < b.series; });

  if (report.analyzed.size() < 3) {
    throw InvalidInput("dreams experiment needs at least 3 eligible series with a probe rank, found " +
                       std::to_string(report.analyzed.size()) + " (" + std::to_string(report.excluded.size()) +
                       " excluded)");
  }

  double slope_sum = 0.0;
  std::size_t n_ok = 0;
  for (std::size_t r = 0; r < n_reps; ++r) {
    RepetitionResult rep;
    rep.repetition = r;
    std::vector<double> x, y;
    for (std::size_t s = 0; s < n_series; ++s) {
      if (!usable[s]) continue;
      const auto& name = eligible[s]->name;
      const double f = collection.truth.fraction.at(name);
      const std::size_t rank = *outcomes[r * n_series + s].rank;
      rep.points.push_back({name, f, rank});
      x.push_back(f);
      y.push_back(static_cast<double>(rank));
    }
    try {
      rep.fit = stats::loglinear_fit(x, y);
      slope_sum += rep.fit->slope;
      ++n_ok;
    } catch (const std::exception& e) {
      rep.error = e.what();
    }
    report.repetitions.push_back(std::move(rep));
  }
  report.mean_slope = n_ok ? slope_sum / static_cast<double>(n_ok) : std::numeric_limits<double>::quiet_NaN();
  if (const auto& fit = report.repetitions[options.sample_repetition].fit) {
    report.sample_correlation = stats::Correlation{fit->pearson_r, fit->p_value, fit->n};
  }
  return report;
}

stats::KsResult compare_models(const DreamExperimentReport& a, const DreamExperimentReport& b) {
  const auto sa = a.slopes();
  const auto sb = b.slopes();
  if (sa.size() < 2 || sb.size() < 2) {
    throw InvalidInput("compare_models needs at least 2 successful repetitions per report (got " +
                       std::to_string(sa.size()) + " and " + std::to_string(sb.size()) + ")");
  }
  return stats::ks_two_sample(sa, sb);
}

namespace {

nlohmann::json number_or_null(double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr); }

}  // namespace

nlohmann::json DreamExperimentReport::to_json() const {
  nlohmann::json reps = nlohmann::json::array();
  for (const auto& r : repetitions) {
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& p : r.points) pts.push_back({{"series", p.series}, {"fraction", p.fraction}, {"rank", *p.rank}});
    nlohmann::json j = {{"repetition", r.repetition}, {"points", pts}};
    if (r.fit) {
      j["fit"] = {{"slope", r.fit->slope},
                  {"intercept", r.fit->intercept},
                  {"r", r.fit->pearson_r},
                  {"p", r.fit->p_value},
                  {"n", r.fit->n}};
    } else {
      j["error"] = r.error;
    }
    reps.push_back(std::move(j));
  }
  nlohmann::json excl = nlohmann::json::array();
  for (const auto& e : excluded) excl.push_back({{"series", e.series}, {"reason", e.reason}});
  nlohmann::json j = {{"model", model},
                      {"params", params},
                      {"options", options.to_json()},
                      {"probes", probes.to_json()},
                      {"analyzed", analyzed},
                      {"excluded", excl},
                      {"repetitions", reps},
                      {"successful_repetitions", successful()},
                      {"mean_slope", number_or_null(mean_slope)}};
  if (sample_correlation) {
    j["sample_correlation"] = {{"repetition", options.sample_repetition},
                               {"r", sample_correlation->r},
                               {"p", sample_correlation->p_value},
                               {"n", sample_correlation->n}};
  }
  return j;
}

void DreamExperimentReport::write_points_csv(std::ostream& out) const {
  out << "series,fraction,rank\n";
  for (const auto& p : repetitions.at(options.sample_repetition).points) {
    out << csv_field(p.series) << ',' << format_double(p.fraction) << ',' << *p.rank << '\n';
  }
}

void DreamExperimentReport::write_all_points_csv(std::ostream& out) const {
  out << "repetition,series,fraction,rank\n";
  for (const auto& r : repetitions) {
    for (const auto& p : r.points) {
      out << r.repetition << ',' << csv_field(p.series) << ',' << format_double(p.fraction) << ',' << *p.rank << '\n';
    }
  }
}

void DreamExperimentReport::write_fits_csv(std::ostream& out) const {
  out << "repetition,slope,intercept,r,p\n";
  for (const auto& r : repetitions) {
    out << r.repetition << ',';
    if (r.fit) {
      out << format_double(r.fit->slope) << ',' << format_double(r.fit->intercept) << ','
          << format_double(r.fit->pearson_r) << ',' << format_double(r.fit->p_value);
    } else {
      out << ",,,";
    }
    out << '\n';
  }
}

}  // namespace scembed
