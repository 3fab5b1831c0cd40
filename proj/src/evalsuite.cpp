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

#include "scembed/evalsuite.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <tuple>
#include <unordered_map>

#include "scembed/simd.hpp"
#include "scembed/stats.hpp"
#include "scembed/workers.hpp"
#include "textio.hpp"

namespace scembed {

using detail::csv_field;
using detail::format_double;

namespace {

std::ifstream open_input(const std::filesystem::path& path, const char* what) {
  std::ifstream in(path);
  if (!in) throw InvalidInput(std::string("cannot read ") + what + " file: " + path.string());
  return in;
}

}  // namespace

std::set<std::string> CategorySet::all_words() const {
  std::set<std::string> out;
  for (const auto& c : categories) out.insert(c.words.begin(), c.words.end());
  return out;
}

std::set<std::string> WordPairSet::all_words() const {
  std::set<std::string> out;
  for (const auto& p : pairs) {
    out.insert(p.w1);
    out.insert(p.w2);
  }
  return out;
}

CategorySet parse_category_set(std::istream& in, const std::string& source) {
  CategorySet set;
  std::unordered_map<std::string, std::size_t> index;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto content = detail::trim(line);
    if (content.empty()) continue;
    const auto tab = content.find('\t');
    if (tab == std::string_view::npos) {
      throw InvalidInput(source + ":" + std::to_string(line_no) + ": expected 'category<TAB>word'");
    }
    const std::string name(detail::trim(content.substr(0, tab)));
    const std::string word(detail::trim(content.substr(tab + 1)));
    if (name.empty() || word.empty()) {
      throw InvalidInput(source + ":" + std::to_string(line_no) + ": empty category or word");
    }
    auto [it, inserted] = index.emplace(name, set.categories.size());
    if (inserted) set.categories.push_back({name, {}});
    auto& words = set.categories[it->second].words;
    if (std::find(words.begin(), words.end(), word) != words.end()) {
      throw InvalidInput(source + ":" + std::to_string(line_no) + ": word '" + word +
                         "' repeated in category '" + name + "'");
    }
    words.push_back(word);
  }
  return set;
}

CategorySet load_category_set(const std::filesystem::path& path) {
  auto in = open_input(path, "category");
  return parse_category_set(in, path.string());
}

WordPairSet parse_word_pair_set(std::istream& in, const std::string& source) {
  WordPairSet set;
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> fields;
  bool header = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    const std::string where = source + ":" + std::to_string(line_no);
    if (!detail::split_csv(line, fields) || fields.size() != 3) {
      throw InvalidInput(where + ": expected 'word1,word2,score'");
    }
    WordPair p{std::string(detail::trim(fields[0])), std::string(detail::trim(fields[1])),
               detail::parse_double(fields[2], where + ": score")};
    if (p.w1.empty() || p.w2.empty()) throw InvalidInput(where + ": empty word");
    if (!(p.score >= 0.0 && p.score <= 10.0)) {
      throw InvalidInput(where + ": score " + format_double(p.score) + " outside [0, 10]");
    }
    set.pairs.push_back(std::move(p));
  }
  return set;
}

WordPairSet load_word_pair_set(const std::filesystem::path& path) {
  auto in = open_input(path, "word-pair");
  return parse_word_pair_set(in, path.string());
}

namespace {

struct SilhouetteParts {
  double a, b, s;
};

SilhouetteParts silhouette_parts(std::size_t i, std::span<const std::size_t> labels, const DistanceFn& dist) {
  if (i >= labels.size()) throw InvalidInput("silhouette: item index out of range");
  const std::size_t n_labels = labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
  std::vector<double> sum(n_labels, 0.0);
  std::vector<std::size_t> count(n_labels, 0);
  for (std::size_t j = 0; j < labels.size(); ++j) {
    ++count[labels[j]];
    if (j != i) sum[labels[j]] += dist(i, j);
  }
  const std::size_t own = labels[i];
  if (count[own] < 2) throw InvalidInput("silhouette: item " + std::to_string(i) + " is alone in its category");

  double b = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < n_labels; ++c) {
    if (c == own || count[c] == 0) continue;
    b = std::min(b, sum[c] / static_cast<double>(count[c]));
  }
  if (std::isinf(b)) throw InvalidInput("silhouette: needs at least two categories");
  const double a = sum[own] / static_cast<double>(count[own] - 1);
  const double m = std::max(a, b);
  return {a, b, m == 0.0 ? 0.0 : (b - a) / m};
}

}  // namespace

double silhouette_coefficient(std::size_t i, std::span<const std::size_t> labels, const DistanceFn& dist) {
  return silhouette_parts(i, labels, dist).s;
}

SilhouetteReport categorization_test(const Embedding& emb, const CategorySet& cats) {
  SilhouetteReport report;
  const Vocabulary& vocab = emb.vocabulary();

  struct Item {
    std::uint32_t row;
    std::size_t label;
    const std::string* word;
    const std::string* category;
  };
  std::vector<Item> items;
  std::vector<std::string> coverage;
  std::size_t label = 0;
  for (const auto& cat : cats.categories) {
    std::vector<Item> usable;
    for (const auto& w : cat.words) {
      const auto idx = vocab.find(w);
      if (!idx) {
        report.skipped.push_back({w, cat.name, "out of vocabulary"});
      } else if (emb.is_dead(*idx)) {
        report.skipped.push_back({w, cat.name, "zero vector"});
      } else {
        usable.push_back({*idx, label, &w, &cat.name});
      }
    }
    coverage.push_back(cat.name + "=" + std::to_string(usable.size()) + "/" + std::to_string(cat.words.size()));
    if (usable.size() < 2) {
      for (const auto& it : usable) report.skipped.push_back({*it.word, cat.name, "category has fewer than 2 usable words"});
      continue;
    }
    items.insert(items.end(), usable.begin(), usable.end());
    ++label;
  }
  if (label < 2) {
    std::string msg = "categorization test needs at least 2 categories with 2 usable words each; coverage:";
    for (const auto& c : coverage) msg += " " + c;
    throw InvalidInput(msg);
  }

  const std::size_t n = items.size();
  const auto& k = simd::active();
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::uint32_t ri = items[i].row;
      const std::uint32_t rj = items[j].row;
      double sim = 1.0;
      if (ri != rj) {
        sim = std::clamp(k.dot_f64(emb.vector(ri).data(), emb.vector(rj).data(), emb.dim()) /
                             (emb.norm(ri) * emb.norm(rj)),
                         -1.0, 1.0);
      }
      d[i * n + j] = d[j * n + i] = 1.0 - sim;
    }
  }
  std::vector<std::size_t> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = items[i].label;
  const DistanceFn dist = [&](std::size_t i, std::size_t j) { return d[i * n + j]; };

  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto p = silhouette_parts(i, labels, dist);
    report.per_word.push_back({*items[i].word, *items[i].category, p.a, p.b, p.s});
    total += p.s;
  }
  report.score = total / static_cast<double>(n);
  return report;
}

nlohmann::json SilhouetteReport::to_json() const {
  nlohmann::json words = nlohmann::json::array();
  for (const auto& e : per_word) {
    words.push_back({{"word", e.word}, {"category", e.category}, {"a", e.a}, {"b", e.b}, {"s", e.s}});
  }
  nlohmann::json skip = nlohmann::json::array();
  for (const auto& s : skipped) skip.push_back({{"word", s.word}, {"category", s.category}, {"reason", s.reason}});
  return {{"test", "categories"}, {"score", score}, {"n_words", per_word.size()}, {"per_word", words},
          {"skipped", skip}};
}

WordPairReport wordpair_test(const Embedding& emb, const WordPairSet& pairs) {
  WordPairReport report;
  std::vector<double> human;
  std::vector<double> model;
  const Vocabulary& vocab = emb.vocabulary();
  for (const auto& p : pairs.pairs) {
    const auto a = vocab.find(p.w1);
    const auto b = vocab.find(p.w2);
    if (!a || !b || emb.is_dead(*a) || emb.is_dead(*b)) {
      report.skipped.push_back(p);
      continue;
    }
    human.push_back(p.score);
    model.push_back(similarity(emb, p.w1, p.w2));
  }
  report.n_used = human.size();
  if (report.n_used < 2) {
    throw InvalidInput("word-pair test needs at least 2 usable pairs, found " + std::to_string(report.n_used) +
                       " of " + std::to_string(pairs.pairs.size()));
  }
  report.rho = stats::spearman(human, model);
  return report;
}

nlohmann::json WordPairReport::to_json() const {
  nlohmann::json skip = nlohmann::json::array();
  for (const auto& p : skipped) skip.push_back({{"word1", p.w1}, {"word2", p.w2}, {"score", p.score}});
  return {{"test", "wordsim"}, {"rho", rho}, {"n_used", n_used}, {"skipped", skip}};
}

EvalTask EvalTask::categorization(CategorySet cats) {
  EvalTask t;
  t.kind = Kind::kCategories;
  t.categories = std::move(cats);
  return t;
}

EvalTask EvalTask::word_pairs(WordPairSet pairs) {
  EvalTask t;
  t.kind = Kind::kWordPairs;
  t.pairs = std::move(pairs);
  return t;
}

std::string EvalTask::name() const { return kind == Kind::kCategories ? "categories" : "wordsim"; }

double EvalTask::score(const Embedding& emb) const {
  return kind == Kind::kCategories ? categorization_test(emb, categories).score : wordpair_test(emb, pairs).rho;
}

std::set<std::string> EvalTask::words() const {
  return kind == Kind::kCategories ? categories.all_words() : pairs.all_words();
}

// ---------------------------------------------------------------------------
// Sweeps

std::string SweepCell::coordinates() const {
  return "level=" + std::to_string(level) + " model=" + model + " dim=" + std::to_string(dim) +
         " window=" + std::to_string(window) + " negatives=" + std::to_string(negatives) +
         " repetition=" + std::to_string(repetition);
}

bool SweepReport::ok() const {
  return std::all_of(cells.begin(), cells.end(), [](const SweepCell& c) { return c.error.empty(); });
}

std::vector<std::string> SweepReport::errors() const {
  std::vector<std::string> out;
  for (const auto& c : cells) {
    if (!c.error.empty()) out.push_back(c.coordinates() + ": " + c.error);
  }
  return out;
}

const SweepCell* SweepReport::best(std::size_t level, const std::string& model, std::size_t repetition) const {
  for (const auto& c : cells) {
    if (c.best && c.level == level && c.model == model && c.repetition == repetition) return &c;
  }
  return nullptr;
}

namespace {

nlohmann::json number_or_null(double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr); }

}  // namespace

nlohmann::json SweepReport::to_json() const {
  nlohmann::json jc = nlohmann::json::array();
  for (const auto& c : cells) {
    nlohmann::json j = {{"level", c.level},
                        {"model", c.model},
                        {"dim", c.dim},
                        {"effective_dim", c.effective_dim},
                        {"window", c.window},
                        {"negatives", c.negatives},
                        {"repetition", c.repetition},
                        {"seed", c.seed},
                        {"doc_count", c.doc_count},
                        {"token_count", c.token_count},
                        {"score", number_or_null(c.score)},
                        {"best", c.best}};
    if (!c.error.empty()) j["error"] = c.error;
    jc.push_back(std::move(j));
  }
  nlohmann::json js = nlohmann::json::array();
  for (const auto& s : summary) {
    js.push_back({{"level", s.level},
                  {"model", s.model},
                  {"doc_count", s.doc_count},
                  {"token_count", s.token_count},
                  {"repetitions", s.repetitions},
                  {"mean", number_or_null(s.mean)},
                  {"stddev", number_or_null(s.stddev)},
                  {"min", number_or_null(s.min)},
                  {"max", number_or_null(s.max)}});
  }
  return {{"task", task}, {"ok", ok()}, {"cells", jc}, {"summary", js}, {"errors", errors()}};
}

void SweepReport::write_csv(std::ostream& out) const {
  out << "level,model,dim,effective_dim,window,negatives,repetition,seed,doc_count,token_count,score,best,error\n";
  for (const auto& c : cells) {
    out << c.level << ',' << c.model << ',' << c.dim << ',' << c.effective_dim << ',' << c.window << ','
        << c.negatives << ',' << c.repetition << ',' << c.seed << ',' << c.doc_count << ',' << c.token_count << ','
        << format_double(c.score) << ',' << (c.best ? 1 : 0) << ',' << csv_field(c.error) << '\n';
  }
}

void SweepReport::write_summary_csv(std::ostream& out) const {
  out << "level,model,doc_count,token_count,repetitions,mean,stddev,min,max\n";
  for (const auto& s : summary) {
    out << s.level << ',' << s.model << ',' << s.doc_count << ',' << s.token_count << ',' << s.repetitions << ','
        << format_double(s.mean) << ',' << format_double(s.stddev) << ',' << format_double(s.min) << ','
        << format_double(s.max) << '\n';
  }
}

namespace {

struct CellJob {
  const Corpus* corpus;
  const ModelConfig* config;
};

void validate_dims(const std::vector<std::size_t>& dims) {
  if (dims.empty()) throw InvalidInput("sweep: dims list is empty");
  std::set<std::size_t> seen;
  for (std::size_t d : dims) {
    if (d < 1) throw InvalidInput("sweep: dims must be >= 1");
    if (!seen.insert(d).second) throw InvalidInput("sweep: duplicate dim " + std::to_string(d));
  }
}

std::vector<std::size_t> distinct_or(const std::vector<std::size_t>& values, std::size_t fallback, const char* what) {
  if (values.empty()) return {fallback};
  std::set<std::size_t> seen;
  for (std::size_t v : values) {
    if (!seen.insert(v).second) throw InvalidInput(std::string("sweep: duplicate ") + what + " " + std::to_string(v));
  }
  return values;
}

// Appends the cells of one model grid at one level and repetition.
void add_grid_cells(const ModelGrid& grid, const std::vector<std::size_t>& dims, const Corpus& corpus,
                    std::size_t level, std::size_t repetition, std::uint64_t seed, std::vector<SweepCell>& cells,
                    std::vector<CellJob>& jobs) {
  const bool sgns = grid.config.kind == ModelKind::kSgns;
  const auto windows = sgns ? distinct_or(grid.windows, grid.config.sgns.window, "window") : std::vector<std::size_t>{0};
  const auto negs =
      sgns ? distinct_or(grid.negatives, grid.config.sgns.negatives, "negatives") : std::vector<std::size_t>{0};
  const std::string model = to_string(grid.config.kind);
  for (std::size_t d : dims) {
    for (std::size_t w : windows) {
      for (std::size_t g : negs) {
        SweepCell c;
        c.level = level;
        c.model = model;
        c.dim = d;
        c.window = w;
        c.negatives = g;
        c.repetition = repetition;
        c.seed = derive_seed(seed, {level, hash_string(model), d, w, g, repetition});
        c.doc_count = corpus.size();
        c.token_count = corpus.token_count();
        cells.push_back(c);
        jobs.push_back({&corpus, &grid.config});
      }
    }
  }
}

void run_cells(std::vector<SweepCell>& cells, const std::vector<CellJob>& jobs, const EvalTask& task,
               std::size_t n_jobs) {
  parallel_for(cells.size(), n_jobs, [&](std::size_t i) {
    SweepCell& c = cells[i];
    ModelConfig cfg = *jobs[i].config;
    if (cfg.kind == ModelKind::kSgns) {
      cfg.sgns.window = c.window;
      cfg.sgns.negatives = c.negatives;
    }
    try {
      const Embedding emb = train_model(*jobs[i].corpus, cfg, c.dim, c.seed);
      c.effective_dim = emb.dim();
      c.score = task.score(emb);
    } catch (const std::exception& e) {
      c.score = std::numeric_limits<double>::quiet_NaN();
      c.error = e.what();
    }
  });
}

bool matches(const SweepCell& c, const BestOverride& o) {
  return (!o.model || *o.model == c.model) && (!o.dim || *o.dim == c.dim) && (!o.window || *o.window == c.window) &&
         (!o.negatives || *o.negatives == c.negatives);
}

// Higher score wins; ties go to the smaller (dim, window, negatives).
bool better(const SweepCell& a, const SweepCell& b) {
  if (a.score != b.score) return a.score > b.score;
  return std::tie(a.dim, a.window, a.negatives) < std::tie(b.dim, b.window, b.negatives);
}

void mark_best(std::vector<SweepCell>& cells, const std::optional<BestOverride>& override_) {
  std::map<std::tuple<std::size_t, std::string, std::size_t>, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    groups[{cells[i].level, cells[i].model, cells[i].repetition}].push_back(i);
  }
  for (auto& [key, members] : groups) {
    std::vector<std::size_t> pool;
    if (override_) {
      for (std::size_t i : members) {
        if (cells[i].error.empty() && matches(cells[i], *override_)) pool.push_back(i);
      }
    }
    if (pool.empty()) {
      for (std::size_t i : members) {
        if (cells[i].error.empty()) pool.push_back(i);
      }
    }
    if (pool.empty()) continue;
    std::size_t best = pool.front();
    for (std::size_t i : pool) {
      if (better(cells[i], cells[best])) best = i;
    }
    cells[best].best = true;
  }
}

void summarize(SweepReport& report) {
  std::map<std::pair<std::size_t, std::string>, std::vector<const SweepCell*>> groups;
  std::map<std::pair<std::size_t, std::string>, const SweepCell*> any;
  for (const auto& c : report.cells) {
    any.emplace(std::make_pair(c.level, c.model), &c);
    if (c.best) groups[{c.level, c.model}].push_back(&c);
  }
  for (const auto& [key, first] : any) {
    SweepSummary s;
    s.level = key.first;
    s.model = key.second;
    s.doc_count = first->doc_count;
    s.token_count = first->token_count;
    const auto& best = groups[key];
    s.repetitions = best.size();
    if (best.empty()) {
      s.mean = s.stddev = s.min = s.max = std::numeric_limits<double>::quiet_NaN();
    } else {
      double sum = 0.0;
      s.min = s.max = best.front()->score;
      for (const auto* c : best) {
        sum += c->score;
        s.min = std::min(s.min, c->score);
        s.max = std::max(s.max, c->score);
      }
      s.mean = sum / static_cast<double>(best.size());
      double ss = 0.0;
      for (const auto* c : best) ss += (c->score - s.mean) * (c->score - s.mean);
      s.stddev = best.size() > 1 ? std::sqrt(ss / static_cast<double>(best.size() - 1)) : 0.0;
    }
    report.summary.push_back(s);
  }
}

}  // namespace

SweepReport grid_search(const Corpus& corpus, const ModelGrid& grid, const std::vector<std::size_t>& dims,
                        const EvalTask& task, std::uint64_t seed, const SweepOptions& options) {
  validate_dims(dims);
  SweepReport report;
  report.task = task.name();
  std::vector<CellJob> jobs;
  add_grid_cells(grid, dims, corpus, 0, 0, seed, report.cells, jobs);
  run_cells(report.cells, jobs, task, options.jobs);
  mark_best(report.cells, options.best_override);
  summarize(report);
  return report;
}

SweepReport dimension_sweep(const Corpus& corpus, const ModelConfig& model, const std::vector<std::size_t>& dims,
                            const EvalTask& task, std::uint64_t seed, const SweepOptions& options) {
  return grid_search(corpus, ModelGrid{model, {}, {}}, dims, task, seed, options);
}

SweepReport corpus_size_experiment(const SubsampleChain& chain, const std::vector<ModelGrid>& models,
                                   const std::vector<std::size_t>& dims, const EvalTask& task,
                                   std::size_t repetitions, std::uint64_t seed, const SweepOptions& options) {
  validate_dims(dims);
  if (repetitions < 1) throw InvalidInput("corpus size experiment: repetitions must be >= 1");
  if (chain.levels.empty()) throw InvalidInput("corpus size experiment: chain has no levels");
  if (models.empty()) throw InvalidInput("corpus size experiment: no models");
  std::set<ModelKind> kinds;
  for (const auto& m : models) {
    if (!kinds.insert(m.config.kind).second) {
      throw InvalidInput("corpus size experiment: model '" + to_string(m.config.kind) + "' listed twice");
    }
  }

  SweepReport report;
  report.task = task.name();
  std::vector<CellJob> jobs;
  for (std::size_t level = 0; level < chain.levels.size(); ++level) {
    for (const auto& grid : models) {
      for (std::size_t r = 0; r < repetitions; ++r) {
        add_grid_cells(grid, dims, chain.levels[level], level, r, seed, report.cells, jobs);
      }
    }
  }
  run_cells(report.cells, jobs, task, options.jobs);
  mark_best(report.cells, options.best_override);
  summarize(report);
  return report;
}

}  // namespace scembed
