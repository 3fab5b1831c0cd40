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

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>

#include "scembed/cli.hpp"
#include "scembed/corpus.hpp"
#include "scembed/dreamcase.hpp"
#include "scembed/evalsuite.hpp"
#include "scembed/models.hpp"
#include "scembed/semspace.hpp"
#include "scembed/synth.hpp"
#include "scembed/version.hpp"
#include "scembed/workers.hpp"
#include "textio.hpp"

namespace scembed::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// ---------------------------------------------------------------------------
// Reading the effective configuration

const json& at(const json& cfg, const char* pointer) { return cfg.at(json::json_pointer(pointer)); }

std::string require_string(const json& cfg, const char* pointer, const char* flag) {
  const json& v = at(cfg, pointer);
  if (!v.is_string() || v.get<std::string>().empty()) {
    throw ConfigError(std::string("missing required ") + flag + " (config " + pointer + ")");
  }
  return v.get<std::string>();
}

std::optional<std::string> optional_string(const json& cfg, const char* pointer) {
  const json& v = at(cfg, pointer);
  if (v.is_null()) return std::nullopt;
  return v.get<std::string>();
}

std::size_t get_size(const json& cfg, const char* pointer) { return at(cfg, pointer).get<std::size_t>(); }

std::vector<std::size_t> get_sizes(const json& cfg, const char* pointer) {
  return at(cfg, pointer).get<std::vector<std::size_t>>();
}

fs::path output_path(const json& cfg, const std::string& name) {
  const fs::path p(name);
  if (p.is_absolute()) return p;
  return fs::path(cfg.at("output_dir").get<std::string>()) / p;
}

std::ofstream open_output(const fs::path& path, bool binary = false) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

json provenance(const std::string& command, const json& cfg) {
  return {{"tool", "scembed"}, {"version", kVersion}, {"command", command}, {"config", cfg}};
}

void write_json(const fs::path& path, const json& j) { open_output(path) << j.dump(2) << '\n'; }

// CSV artifacts start with one comment line carrying the provenance.
std::ofstream open_csv(const fs::path& path, const json& prov) {
  auto out = open_output(path);
  out << "# " << prov.dump() << '\n';
  return out;
}

StopwordSet stopwords_from(const json& cfg) {
  if (auto p = optional_string(cfg, "/corpus/stopwords")) return load_stopwords(*p);
  return default_stopwords();
}

Corpus corpus_from(const json& cfg) {
  const std::string path = require_string(cfg, "/corpus/path", "corpus path");
  return load_corpus(path, parse_corpus_format(at(cfg, "/corpus/format").get<std::string>()), stopwords_from(cfg));
}

std::size_t jobs_from(const json& cfg) {
  const json& j = cfg.at("jobs");
  const std::size_t n = j.is_null() ? default_jobs() : j.get<std::size_t>();
  if (n < 1) throw ConfigError("--jobs must be >= 1");
  return n;
}

ModelConfig model_from(const json& cfg, const std::string& name, std::size_t sgns_workers) {
  const json& m = cfg.at("model");
  ModelConfig mc;
  mc.kind = parse_model_kind(name);
  mc.lsa.oversampling = m.at("oversampling").get<std::size_t>();
  mc.lsa.power_iterations = m.at("power_iterations").get<std::size_t>();
  mc.lsa.scale_by_singular_values = m.at("scale_by_singular_values").get<bool>();
  mc.sgns.window = m.at("window").get<std::size_t>();
  mc.sgns.negatives = m.at("negatives").get<std::size_t>();
  mc.sgns.epochs = m.at("epochs").get<std::size_t>();
  mc.sgns.lr_initial = m.at("lr_initial").get<double>();
  mc.sgns.lr_final = m.at("lr_final").get<double>();
  mc.sgns.subsample_t = m.at("subsample_t").get<double>();
  mc.sgns.workers = sgns_workers;
  return mc;
}

// SGNS threads for a single training run.
std::size_t train_workers(const json& cfg) {
  if (cfg.at("deterministic").get<bool>()) return 1;
  const json& w = at(cfg, "/model/workers");
  return w.is_null() ? jobs_from(cfg) : std::max<std::size_t>(1, w.get<std::size_t>());
}

void print_warnings(const Embedding& emb, std::ostream& err) {
  for (const auto& w : emb.warnings()) err << "warning: " << w << '\n';
}

EvalTask task_from(const std::string& test, const std::string& fixture) {
  if (test == "categories") return EvalTask::categorization(load_category_set(fixture));
  if (test == "wordsim" || test == "wordpairs") return EvalTask::word_pairs(load_word_pair_set(fixture));
  throw ConfigError("unknown test '" + test + "' (expected categories|wordsim)");
}

// ---------------------------------------------------------------------------
// Commands

int cmd_clean(const json& cfg, std::ostream& out, std::ostream&) {
  const std::string input = require_string(cfg, "/clean/input", "input");
  const Corpus corpus =
      load_corpus(input, parse_corpus_format(at(cfg, "/corpus/format").get<std::string>()), stopwords_from(cfg));
  const fs::path path = output_path(cfg, at(cfg, "/clean/output").get<std::string>());
  {
    auto f = open_output(path);
    write_cleaned(corpus, f);
  }
  json manifest = provenance("clean", cfg);
  manifest["documents"] = corpus.size();
  manifest["tokens"] = corpus.token_count();
  write_json(path.string() + ".json", manifest);
  out << "cleaned " << corpus.size() << " documents (" << corpus.token_count() << " tokens) -> " << path.string()
      << '\n';
  return kExitOk;
}

int cmd_train(const json& cfg, std::ostream& out, std::ostream& err) {
  const Corpus corpus = corpus_from(cfg);
  const ModelConfig mc = model_from(cfg, at(cfg, "/model/name").get<std::string>(), train_workers(cfg));
  const std::size_t dim = get_size(cfg, "/model/dim");
  const Embedding trained = train_model(corpus, mc, dim, cfg.at("seed").get<std::uint64_t>());
  print_warnings(trained, err);

  json params = {{"training", trained.params()}, {"provenance", provenance("train", cfg)}};
  Embedding emb(trained.vocabulary(), trained.vectors(), trained.model_tag(), params);
  for (const auto& w : trained.warnings()) emb.add_warning(w);

  const fs::path path = output_path(cfg, at(cfg, "/train/output").get<std::string>());
  {
    auto f = open_output(path, true);
    save_embedding(emb, f);
  }
  if (auto text = optional_string(cfg, "/train/text_output")) {
    auto f = open_output(output_path(cfg, *text));
    save_embedding_text(emb, f);
  }
  json echo = {{"model", emb.model_tag()},
               {"requested_dim", dim},
               {"effective_dim", emb.dim()},
               {"vocabulary", emb.size()},
               {"dead_words", emb.dead_words().size()},
               {"warnings", emb.warnings()},
               {"output", path.string()}};
  out << echo.dump() << '\n';
  return kExitOk;
}

int cmd_eval(const json& cfg, std::ostream& out, std::ostream&) {
  const Embedding emb = load_embedding(fs::path(require_string(cfg, "/eval/embedding", "embedding")));
  const std::string test = at(cfg, "/eval/test").get<std::string>();
  const std::string fixture = require_string(cfg, "/eval/fixture", "--fixture");
  const std::string prefix = at(cfg, "/eval/prefix").get<std::string>();
  const json prov = provenance("eval", cfg);

  json result;
  const EvalTask task = task_from(test, fixture);
  if (task.kind == EvalTask::Kind::kCategories) {
    const SilhouetteReport r = categorization_test(emb, task.categories);
    result = r.to_json();
    auto csv = open_csv(output_path(cfg, prefix + ".csv"), prov);
    csv << "word,category,a,b,s\n";
    for (const auto& e : r.per_word) {
      csv << detail::csv_field(e.word) << ',' << detail::csv_field(e.category) << ',' << detail::format_double(e.a)
          << ',' << detail::format_double(e.b) << ',' << detail::format_double(e.s) << '\n';
    }
    out << "silhouette score " << detail::format_double(r.score) << " over " << r.per_word.size() << " words ("
        << r.skipped.size() << " skipped)\n";
  } else {
    const WordPairReport r = wordpair_test(emb, task.pairs);
    result = r.to_json();
    auto csv = open_csv(output_path(cfg, prefix + ".csv"), prov);
    csv << "word1,word2,human,model\n";
    for (const auto& p : task.pairs.pairs) {
      const auto a = emb.vocabulary().find(p.w1);
      const auto b = emb.vocabulary().find(p.w2);
      csv << detail::csv_field(p.w1) << ',' << detail::csv_field(p.w2) << ',' << detail::format_double(p.score) << ',';
      if (a && b && !emb.is_dead(*a) && !emb.is_dead(*b)) csv << detail::format_double(similarity(emb, p.w1, p.w2));
      csv << '\n';
    }
    out << "spearman rho " << detail::format_double(r.rho) << " over " << r.n_used << " pairs ("
        << r.skipped.size() << " skipped)\n";
  }
  json doc = prov;
  doc["embedding"] = {{"model", emb.model_tag()}, {"dim", emb.dim()}, {"params", emb.params()}};
  doc["result"] = result;
  write_json(output_path(cfg, prefix + ".json"), doc);
  return kExitOk;
}

int cmd_sweep(const json& cfg, std::ostream& out, std::ostream& err) {
  const Corpus corpus = corpus_from(cfg);
  const json& s = cfg.at("sweep");
  const EvalTask task =
      task_from(s.at("test").get<std::string>(), require_string(cfg, "/sweep/fixture", "--fixture"));
  const auto dims = get_sizes(cfg, "/sweep/dims");
  const std::size_t jobs = jobs_from(cfg);
  const auto seed = cfg.at("seed").get<std::uint64_t>();

  std::vector<ModelGrid> grids;
  for (const auto& name : s.at("models").get<std::vector<std::string>>()) {
    grids.push_back({model_from(cfg, name, 1), get_sizes(cfg, "/sweep/windows"), get_sizes(cfg, "/sweep/negatives")});
  }
  if (grids.empty()) throw ConfigError("sweep: no models given");

  SweepOptions opts;
  opts.jobs = jobs;
  const json& bo = s.at("best_override");
  if (std::any_of(bo.begin(), bo.end(), [](const json& v) { return !v.is_null(); })) {
    BestOverride o;
    if (!bo.at("model").is_null()) o.model = bo.at("model").get<std::string>();
    if (!bo.at("dim").is_null()) o.dim = bo.at("dim").get<std::size_t>();
    if (!bo.at("window").is_null()) o.window = bo.at("window").get<std::size_t>();
    if (!bo.at("negatives").is_null()) o.negatives = bo.at("negatives").get<std::size_t>();
    opts.best_override = o;
  }

  // Required words: the fixture words that occur in the full corpus.
  std::set<std::string> present;
  {
    const Vocabulary vocab = build_vocabulary(corpus);
    for (const auto& w : task.words()) {
      if (vocab.contains(w)) present.insert(w);
    }
  }
  const std::size_t levels = get_size(cfg, "/sweep/levels");
  const json& min_docs_j = s.at("min_docs");
  const std::size_t min_docs = min_docs_j.is_null() ? corpus.size() : min_docs_j.get<std::size_t>();
  const SubsampleChain chain = nested_subsamples(corpus, levels, min_docs, present, seed);
  const SweepReport report =
      corpus_size_experiment(chain, grids, dims, task, get_size(cfg, "/sweep/repetitions"), seed, opts);

  const std::string prefix = s.at("prefix").get<std::string>();
  const json prov = provenance("sweep", cfg);
  {
    auto csv = open_csv(output_path(cfg, prefix + ".csv"), prov);
    report.write_csv(csv);
  }
  {
    auto csv = open_csv(output_path(cfg, prefix + "_summary.csv"), prov);
    report.write_summary_csv(csv);
  }
  json doc = prov;
  doc["report"] = report.to_json();
  doc["chain"] = chain_manifest(chain);
  write_json(output_path(cfg, prefix + ".json"), doc);

  for (const auto& sm : report.summary) {
    out << "level " << sm.level << " (" << sm.doc_count << " docs, " << sm.token_count << " tokens) " << sm.model
        << ": best " << detail::format_double(sm.mean);
    if (sm.repetitions > 1) out << " +/- " << detail::format_double(sm.stddev);
    out << '\n';
  }
  for (const auto& e : report.errors()) err << "error: " << e << '\n';
  return report.ok() ? kExitOk : kExitFailure;
}

DreamOptions dream_options_from(const json& cfg) {
  const json& d = cfg.at("dreams");
  DreamOptions o;
  o.dim = d.at("dim").get<std::size_t>();
  o.min_target_count = d.at("min_target_count").get<std::size_t>();
  o.repetitions = d.at("repetitions").get<std::size_t>();
  o.sample_repetition = d.at("sample_repetition").get<std::size_t>();
  o.whole_corpus = d.at("whole_corpus").get<bool>();
  o.base_seed = cfg.at("seed").get<std::uint64_t>();
  o.jobs = jobs_from(cfg);
  return o;
}

ProbeSet probes_from(const json& cfg) {
  ProbeSet p;
  p.target = at(cfg, "/dreams/target").get<std::string>();
  const auto list = at(cfg, "/dreams/probes").get<std::vector<std::string>>();
  p.probes = std::set<std::string>(list.begin(), list.end());
  p.validate();
  return p;
}

void write_dream_outputs(const DreamExperimentReport& r, const json& cfg, const std::string& prefix, const json& prov) {
  {
    auto csv = open_csv(output_path(cfg, prefix + "_points.csv"), prov);
    r.write_points_csv(csv);
  }
  {
    auto csv = open_csv(output_path(cfg, prefix + "_points_all.csv"), prov);
    r.write_all_points_csv(csv);
  }
  {
    auto csv = open_csv(output_path(cfg, prefix + "_fits.csv"), prov);
    r.write_fits_csv(csv);
  }
}

void print_dream_summary(const DreamExperimentReport& r, std::ostream& out) {
  out << r.model << ": " << r.analyzed.size() << " series analyzed, " << r.excluded.size() << " excluded, "
      << r.successful() << "/" << r.repetitions.size() << " repetitions fitted, mean slope "
      << detail::format_double(r.mean_slope);
  if (r.sample_correlation) {
    out << ", sample r " << detail::format_double(r.sample_correlation->r) << " (p "
        << detail::format_double(r.sample_correlation->p_value) << ")";
  }
  out << '\n';
}

int cmd_dreams(const json& cfg, std::ostream& out, std::ostream& err) {
  const ProbeSet probes = probes_from(cfg);
  const SeriesCollection collection =
      load_series_collection(require_string(cfg, "/dreams/series_dir", "--series-dir"),
                             require_string(cfg, "/dreams/ground_truth", "--ground-truth"), stopwords_from(cfg),
                             probes.target);
  for (const auto& name : collection.unmatched) err << "warning: ground truth row '" << name << "' has no series file\n";
  const DreamOptions opts = dream_options_from(cfg);
  const ModelConfig mc = model_from(cfg, at(cfg, "/model/name").get<std::string>(), 1);
  const DreamExperimentReport report = dreams_experiment(collection, mc, probes, opts);

  const std::string prefix = at(cfg, "/dreams/prefix").get<std::string>();
  const json prov = provenance("dreams", cfg);
  json doc = prov;
  doc["report"] = report.to_json();
  doc["unmatched_ground_truth"] = collection.unmatched;
  write_dream_outputs(report, cfg, prefix, prov);
  print_dream_summary(report, out);

  if (auto other = optional_string(cfg, "/dreams/compare_with")) {
    const DreamExperimentReport baseline = dreams_experiment(collection, model_from(cfg, *other, 1), probes, opts);
    write_dream_outputs(baseline, cfg, prefix + "_" + *other, prov);
    print_dream_summary(baseline, out);
    const stats::KsResult ks = compare_models(report, baseline);
    doc["comparison"] = {{"baseline", baseline.to_json()},
                         {"ks", {{"statistic", ks.statistic}, {"p_value", ks.p_value}, {"n1", ks.n1}, {"n2", ks.n2}}}};
    out << "KS " << report.model << " vs " << baseline.model << ": D " << detail::format_double(ks.statistic)
        << ", p " << detail::format_double(ks.p_value) << '\n';
  }
  write_json(output_path(cfg, prefix + ".json"), doc);
  return report.successful() == report.repetitions.size() ? kExitOk : kExitFailure;
}

int cmd_neighbors(const json& cfg, std::ostream& out, std::ostream& err) {
  const std::string word = require_string(cfg, "/neighbors/word", "word");
  const std::size_t k = get_size(cfg, "/neighbors/k");
  const auto min_count = at(cfg, "/neighbors/min_count").get<std::uint64_t>();
  NeighborList list;
  if (auto series = optional_string(cfg, "/neighbors/series")) {
    DreamSeries s;
    s.name = fs::path(*series).stem().string();
    s.reports = load_corpus(*series, CorpusFormat::kLines, stopwords_from(cfg));
    const ModelConfig mc = model_from(cfg, at(cfg, "/model/name").get<std::string>(), train_workers(cfg));
    list = series_neighborhood(s, mc, get_size(cfg, "/model/dim"), word, k, min_count, cfg.at("seed").get<std::uint64_t>());
  } else {
    const Embedding emb = load_embedding(fs::path(require_string(cfg, "/neighbors/embedding", "embedding or --series")));
    list = neighbors(emb, word, k, min_count);
  }
  if (list.entries.size() < k) err << "note: only " << list.entries.size() << " candidates passed the filter\n";
  const json prov = provenance("neighbors", cfg);
  if (auto path = optional_string(cfg, "/neighbors/output")) {
    auto csv = open_csv(output_path(cfg, *path), prov);
    write_neighbors_csv(list, csv);
  } else {
    out << "# " << prov.dump() << '\n';
    write_neighbors_csv(list, out);
  }
  return kExitOk;
}

int cmd_synth(const json& cfg, std::ostream& out, std::ostream&) {
  const json& s = cfg.at("synth");
  const std::string kind = s.at("kind").get<std::string>();
  const auto seed = cfg.at("seed").get<std::uint64_t>();
  const json prov = provenance("synth", cfg);
  if (kind == "categories") {
    synth::PlantedCategoryParams p;
    p.n_docs = s.at("docs").get<std::size_t>();
    p.doc_length = s.at("doc_length").get<std::size_t>();
    p.topic_share = s.at("topic_share").get<double>();
    p.background_vocab = s.at("background_vocab").get<std::size_t>();
    p.seed = seed;
    const auto planted = synth::planted_category_corpus(p);
    synth::write_corpus(planted.corpus, output_path(cfg, "corpus.txt"));
    synth::write_category_set(planted.categories, output_path(cfg, "categories.tsv"));
    json m = prov;
    m["generator"] = p.to_json();
    write_json(output_path(cfg, "synth.json"), m);
    out << "wrote " << planted.corpus.size() << " documents and " << planted.categories.categories.size()
        << " categories\n";
  } else if (kind == "two-topic") {
    const auto t = synth::two_topic_corpus(s.at("docs").get<std::size_t>(), s.at("doc_length").get<std::size_t>(), seed);
    synth::write_corpus(t.corpus, output_path(cfg, "corpus.txt"));
    json m = prov;
    m["topic_a"] = t.topic_a;
    m["topic_b"] = t.topic_b;
    write_json(output_path(cfg, "synth.json"), m);
    out << "wrote " << t.corpus.size() << " documents\n";
  } else if (kind == "dreams") {
    synth::DreamSynthParams p;
    p.n_series = s.at("series").get<std::size_t>();
    p.seed = seed;
    const auto c = synth::dream_collection(p, probes_from(cfg));
    synth::write_series_collection(c, output_path(cfg, "series"), output_path(cfg, "ground_truth.csv"));
    json m = prov;
    m["generator"] = p.to_json();
    write_json(output_path(cfg, "synth.json"), m);
    out << "wrote " << c.series.size() << " series\n";
  } else {
    throw ConfigError("unknown synth kind '" + kind + "' (expected categories|two-topic|dreams)");
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// Flag wiring

// A command-line option that, when given, overwrites one config value.
struct Override {
  CLI::Option* option;
  std::string pointer;
  std::function<json()> value;
};

class FlagSet {
 public:
  template <class T>
  CLI::Option* option(CLI::App* app, const std::string& flags, const std::string& pointer, const std::string& help) {
    auto value = std::make_shared<T>();
    CLI::Option* o = app->add_option(flags, *value, help);
    if constexpr (requires { value->push_back(value->front()); }) o->delimiter(',');
    overrides_.push_back({o, pointer, [value] { return json(*value); }});
    return o;
  }

  CLI::Option* flag(CLI::App* app, const std::string& flags, const std::string& pointer, const std::string& help,
                    bool value = true) {
    CLI::Option* o = app->add_flag(flags, help);
    overrides_.push_back({o, pointer, [value] { return json(value); }});
    return o;
  }

  void apply(json& cfg) const {
    for (const auto& ov : overrides_) {
      if (ov.option->count() == 0) continue;
      json patch;
      patch[json::json_pointer(ov.pointer)] = ov.value();
      merge_config(cfg, patch);
    }
  }

 private:
  std::vector<Override> overrides_;
};

void add_corpus_flags(CLI::App* app, FlagSet& f) {
  f.option<std::string>(app, "--format", "/corpus/format", "lines (one document per line) or dir (one .txt per document)");
  f.option<std::string>(app, "--stopwords", "/corpus/stopwords", "Replacement stopword list, one word per line");
}

void add_model_flags(CLI::App* app, FlagSet& f, bool with_name, bool with_dim) {
  if (with_name) f.option<std::string>(app, "-m,--model", "/model/name", "lsa, sgns or random");
  if (with_dim) f.option<std::size_t>(app, "-d,--dim", "/model/dim", "Embedding dimension");
  f.option<std::size_t>(app, "--window", "/model/window", "SGNS maximum context offset");
  f.option<std::size_t>(app, "--negatives", "/model/negatives", "SGNS noise samples per pair");
  f.option<std::size_t>(app, "--epochs", "/model/epochs", "SGNS passes over the corpus");
  f.option<double>(app, "--lr-initial", "/model/lr_initial", "SGNS starting learning rate");
  f.option<double>(app, "--lr-final", "/model/lr_final", "SGNS final learning rate");
  f.option<double>(app, "--subsample", "/model/subsample_t", "SGNS frequent-word threshold");
  f.option<std::size_t>(app, "--workers", "/model/workers", "SGNS threads for train (ignored with --deterministic)");
  f.option<std::size_t>(app, "--oversampling", "/model/oversampling", "LSA extra projection columns");
  f.option<std::size_t>(app, "--power-iterations", "/model/power_iterations", "LSA minimum subspace iterations");
  f.flag(app, "--unscaled", "/model/scale_by_singular_values", "LSA: use rows of U instead of U*S", false);
}

std::string help_epilog() {
  return "Exit status: 0 success, 1 command failure (including partial sweep or dream failures), 2 usage or "
         "configuration error.";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"scembed " + std::string(kVersion) + ": word embeddings and their evaluation for small corpora",
               "scembed"};
  app.footer(help_epilog());
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  FlagSet flags;
  std::string config_path;
  app.add_option("--config", config_path, "JSON configuration file; flags override its values");
  flags.option<std::uint64_t>(&app, "--seed", "/seed", "Base random seed");
  flags.option<std::size_t>(&app, "-j,--jobs", "/jobs", "Worker threads (default: available parallelism)");
  flags.flag(&app, "--deterministic", "/deterministic", "Single-threaded SGNS; bitwise reproducible output");
  flags.option<std::string>(&app, "-o,--output-dir", "/output_dir", "Directory for output files");

  CLI::App* clean = app.add_subcommand("clean", "Tokenize and clean a corpus");
  clean->fallthrough();
  flags.option<std::string>(clean, "input", "/clean/input", "Corpus file or directory")->required();
  flags.option<std::string>(clean, "--output", "/clean/output", "Output file name (default cleaned.txt)");
  add_corpus_flags(clean, flags);

  CLI::App* train = app.add_subcommand("train", "Train an embedding and save it");
  train->fallthrough();
  flags.option<std::string>(train, "corpus", "/corpus/path", "Corpus file or directory");
  flags.option<std::string>(train, "--output", "/train/output", "Embedding file name (default embedding.scem)");
  flags.option<std::string>(train, "--text-output", "/train/text_output", "Also write the text format here");
  add_corpus_flags(train, flags);
  add_model_flags(train, flags, true, true);

  CLI::App* eval = app.add_subcommand("eval", "Score an embedding with a semantic test");
  eval->fallthrough();
  flags.option<std::string>(eval, "embedding", "/eval/embedding", "Embedding file");
  flags.option<std::string>(eval, "--test", "/eval/test", "categories or wordsim");
  flags.option<std::string>(eval, "--fixture", "/eval/fixture", "Category TSV or word-pair CSV");
  flags.option<std::string>(eval, "--prefix", "/eval/prefix", "Output file prefix (default eval)");

  CLI::App* sweep = app.add_subcommand("sweep", "Grid search over dimensions and corpus sizes");
  sweep->fallthrough();
  flags.option<std::string>(sweep, "--corpus", "/corpus/path", "Corpus file or directory");
  add_corpus_flags(sweep, flags);
  add_model_flags(sweep, flags, false, false);
  flags.option<std::vector<std::string>>(sweep, "--models", "/sweep/models", "Comma-separated models (lsa,sgns,random)");
  flags.option<std::vector<std::size_t>>(sweep, "--dims", "/sweep/dims", "Comma-separated dimensions");
  flags.option<std::vector<std::size_t>>(sweep, "--windows", "/sweep/windows", "SGNS windows to search");
  flags.option<std::vector<std::size_t>>(sweep, "--negatives-grid", "/sweep/negatives", "SGNS negatives to search");
  flags.option<std::string>(sweep, "--test", "/sweep/test", "categories or wordsim");
  flags.option<std::string>(sweep, "--fixture", "/sweep/fixture", "Category TSV or word-pair CSV");
  flags.option<std::size_t>(sweep, "--levels", "/sweep/levels", "Nested subsample levels (1 = full corpus only)");
  flags.option<std::size_t>(sweep, "--min-docs", "/sweep/min_docs", "Documents in the smallest level");
  flags.option<std::size_t>(sweep, "--repetitions", "/sweep/repetitions", "Repetitions per level and model");
  flags.option<std::string>(sweep, "--best-model", "/sweep/best_override/model", "Force the best cell: model");
  flags.option<std::size_t>(sweep, "--best-dim", "/sweep/best_override/dim", "Force the best cell: dim");
  flags.option<std::size_t>(sweep, "--best-window", "/sweep/best_override/window", "Force the best cell: window");
  flags.option<std::size_t>(sweep, "--best-negatives", "/sweep/best_override/negatives", "Force the best cell: negatives");
  flags.option<std::string>(sweep, "--prefix", "/sweep/prefix", "Output file prefix (default sweep)");

  CLI::App* dreams = app.add_subcommand("dreams", "Escape/chase rank-distance experiment over dream series");
  dreams->fallthrough();
  flags.option<std::string>(dreams, "--series-dir", "/dreams/series_dir", "Directory of <series>.txt files");
  flags.option<std::string>(dreams, "--ground-truth", "/dreams/ground_truth", "CSV series,fraction");
  add_model_flags(dreams, flags, true, false);
  flags.option<std::string>(dreams, "--stopwords", "/corpus/stopwords", "Replacement stopword list");
  flags.option<std::size_t>(dreams, "-d,--dim", "/dreams/dim", "Embedding dimension (default 200)");
  flags.option<std::string>(dreams, "--target", "/dreams/target", "Target word (default run)");
  flags.option<std::vector<std::string>>(dreams, "--probes", "/dreams/probes", "Comma-separated probe forms");
  flags.option<std::size_t>(dreams, "--min-target-count", "/dreams/min_target_count", "Eligibility threshold");
  flags.option<std::size_t>(dreams, "--repetitions", "/dreams/repetitions", "Repetitions (default 10)");
  flags.option<std::size_t>(dreams, "--sample-repetition", "/dreams/sample_repetition", "Repetition for points.csv");
  flags.flag(dreams, "--whole-corpus", "/dreams/whole_corpus", "Train once on all eligible series");
  flags.option<std::string>(dreams, "--compare-with", "/dreams/compare_with", "Second model for a KS slope test");
  flags.option<std::string>(dreams, "--prefix", "/dreams/prefix", "Output file prefix (default dreams)");

  CLI::App* nb = app.add_subcommand("neighbors", "Nearest neighbors of a word");
  nb->fallthrough();
  std::vector<std::string> nb_inputs;
  nb->add_option("inputs", nb_inputs, "EMBEDDING WORD, or WORD alone with --series")->expected(1, 2);
  flags.option<std::string>(nb, "--word", "/neighbors/word", "Target word");
  flags.option<std::string>(nb, "--series", "/neighbors/series", "Train on this series file instead of loading");
  flags.option<std::size_t>(nb, "-k", "/neighbors/k", "Number of neighbors (default 25)");
  flags.option<std::size_t>(nb, "--min-count", "/neighbors/min_count", "Minimum corpus count (default 0)");
  flags.option<std::string>(nb, "--output", "/neighbors/output", "CSV file (default: standard output)");
  add_model_flags(nb, flags, true, true);
  flags.option<std::string>(nb, "--stopwords", "/corpus/stopwords", "Replacement stopword list");

  CLI::App* syn = app.add_subcommand("synth", "Write synthetic fixtures");
  syn->fallthrough();
  flags.option<std::string>(syn, "kind", "/synth/kind", "categories, two-topic or dreams");
  flags.option<std::size_t>(syn, "--docs", "/synth/docs", "Documents (categories, two-topic)");
  flags.option<std::size_t>(syn, "--doc-length", "/synth/doc_length", "Tokens per document");
  flags.option<double>(syn, "--topic-share", "/synth/topic_share", "Share of category tokens");
  flags.option<std::size_t>(syn, "--background-vocab", "/synth/background_vocab", "Background vocabulary size");
  flags.option<std::size_t>(syn, "--series", "/synth/series", "Dream series (dreams)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  CLI::App* cmd = app.get_subcommands().front();
  json cfg = default_config();
  try {
    if (!config_path.empty()) merge_config(cfg, load_config_file(config_path));
    flags.apply(cfg);
    if (cmd == nb && !nb_inputs.empty()) {
      json patch = {{"word", nb_inputs.back()}};
      if (nb_inputs.size() == 2) patch["embedding"] = nb_inputs.front();
      merge_config(cfg, {{"neighbors", patch}});
    }
    if (cfg.at("jobs").is_null()) cfg["jobs"] = default_jobs();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  const std::string name = cmd->get_name();
  try {
    if (name == "clean") return cmd_clean(cfg, out, err);
    if (name == "train") return cmd_train(cfg, out, err);
    if (name == "eval") return cmd_eval(cfg, out, err);
    if (name == "sweep") return cmd_sweep(cfg, out, err);
    if (name == "dreams") return cmd_dreams(cfg, out, err);
    if (name == "neighbors") return cmd_neighbors(cfg, out, err);
    if (name == "synth") return cmd_synth(cfg, out, err);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  err << "error: unknown command '" << name << "'\n";
  return kExitUsage;
}

}  // namespace scembed::cli
