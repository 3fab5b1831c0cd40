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
#include <iterator>
#include <sstream>

#include "scembed/cli.hpp"
#include "scratch_dir.hpp"

using namespace scembed;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string first_line(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  return line;
}

}  // namespace

TEST_CASE("default config round-trips through merge") {
  json cfg = cli::default_config();
  CHECK(cfg.at("model").at("name") == "lsa");
  CHECK(cfg.at("dreams").at("dim") == 200);
  json copy = cfg;
  cli::merge_config(copy, cli::default_config());
  CHECK(copy == cfg);
}

TEST_CASE("merge rejects unknown keys and wrong types") {
  json cfg = cli::default_config();
  CHECK_THROWS_AS(cli::merge_config(cfg, {{"modle", {{"dim", 3}}}}), cli::ConfigError);
  CHECK_THROWS_AS(cli::merge_config(cfg, {{"model", {{"dim", "ten"}}}}), cli::ConfigError);
  CHECK_THROWS_AS(cli::merge_config(cfg, {{"model", {{"dim", -4}}}}), cli::ConfigError);
  CHECK_THROWS_AS(cli::merge_config(cfg, {{"sweep", {{"dims", {1, "x"}}}}}), cli::ConfigError);
  CHECK_THROWS_AS(cli::merge_config(cfg, json::array()), cli::ConfigError);
  try {
    cli::merge_config(cfg, {{"model", {{"nope", 1}}}});
  } catch (const cli::ConfigError& e) {
    CHECK(std::string(e.what()).find("model.nope") != std::string::npos);
  }
  cli::merge_config(cfg, {{"model", {{"lr_initial", 1}}}, {"corpus", {{"path", "x.txt"}}}});
  CHECK(cfg.at("model").at("lr_initial") == 1);
  CHECK(cfg.at("corpus").at("path") == "x.txt");
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run_cli({}).code == cli::kExitUsage);
  CHECK(run_cli({"frobnicate"}).code == cli::kExitUsage);
  CHECK(run_cli({"train", "--dim", "abc"}).code == cli::kExitUsage);
  CHECK(run_cli({"--help"}).code == cli::kExitOk);
  CHECK(run_cli({"--version"}).code == cli::kExitOk);

  const Result missing = run_cli({"train"});
  CHECK(missing.code == cli::kExitUsage);
  CHECK(missing.err.find("corpus") != std::string::npos);

  const Result bad_cfg = run_cli({"--config", "/nonexistent/cfg.json", "train", "x"});
  CHECK(bad_cfg.code == cli::kExitUsage);

  testing_support::ScratchDir dir("cli-cfg");
  std::ofstream(dir / "cfg.json") << R"({"model": {"dimm": 3}})";
  CHECK(run_cli({"--config", (dir / "cfg.json").string(), "train", "x"}).code == cli::kExitUsage);
  std::ofstream(dir / "broken.json") << "{";
  CHECK(run_cli({"--config", (dir / "broken.json").string(), "train", "x"}).code == cli::kExitUsage);
  CHECK(run_cli({"synth", "weird"}).code == cli::kExitUsage);
}

TEST_CASE("command failures exit with 1") {
  const Result r = run_cli({"train", "/nonexistent/corpus.txt"});
  CHECK(r.code == cli::kExitFailure);
  CHECK(r.err.rfind("error: ", 0) == 0);
}

TEST_CASE("clean writes the cleaned corpus and a manifest") {
  testing_support::ScratchDir dir("cli-clean");
  std::ofstream(dir / "raw.txt") << "The Cat sat 42 times\nA dog\n";
  const Result r = run_cli({"-o", dir.path().string(), "clean", (dir / "raw.txt").string(), "--output", "c.txt"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("cleaned 2 documents (5 tokens)") != std::string::npos);
  CHECK(slurp(dir / "c.txt") == "cat sat NUM times\ndog\n");
  const json manifest = json::parse(slurp(dir / "c.txt.json"));
  CHECK(manifest.at("tool") == "scembed");
  CHECK(manifest.at("command") == "clean");
  CHECK(manifest.at("tokens") == 5);
}

TEST_CASE("config file values are overridden by flags") {
  testing_support::ScratchDir dir("cli-override");
  std::ofstream(dir / "raw.txt") << "alpha beta\n";
  std::ofstream(dir / "cfg.json") << R"({"clean": {"output": "from_config.txt"}, "seed": 9})";
  REQUIRE(run_cli({"--config", (dir / "cfg.json").string(), "-o", dir.path().string(), "clean",
                   (dir / "raw.txt").string()})
              .code == 0);
  CHECK(std::filesystem::exists(dir / "from_config.txt"));
  REQUIRE(run_cli({"--config", (dir / "cfg.json").string(), "-o", dir.path().string(), "clean",
                   (dir / "raw.txt").string(), "--output", "from_flag.txt"})
              .code == 0);
  const json manifest = json::parse(slurp(dir / "from_flag.txt.json"));
  CHECK(manifest.at("config").at("seed") == 9);
  CHECK(manifest.at("config").at("clean").at("output") == "from_flag.txt");
}

TEST_CASE("synth, train, eval and neighbors work end to end") {
  testing_support::ScratchDir dir("cli-e2e");
  const std::string o = dir.path().string();
  REQUIRE(run_cli({"-o", o, "--seed", "3", "synth", "categories", "--docs", "400", "--background-vocab", "300"}).code ==
          0);
  REQUIRE(std::filesystem::exists(dir / "corpus.txt"));
  REQUIRE(std::filesystem::exists(dir / "categories.tsv"));

  const Result train = run_cli({"-o", o, "train", (dir / "corpus.txt").string(), "-m", "lsa", "-d", "12",
                                "--text-output", "emb.txt"});
  REQUIRE(train.code == 0);
  const json echo = json::parse(train.out);
  CHECK(echo.at("model") == "lsa");
  CHECK(echo.at("effective_dim") == 12);
  CHECK(std::filesystem::exists(dir / "embedding.scem"));
  CHECK(std::filesystem::exists(dir / "emb.txt"));

  const Result ev = run_cli({"-o", o, "eval", (dir / "embedding.scem").string(), "--fixture",
                             (dir / "categories.tsv").string(), "--prefix", "ev"});
  REQUIRE(ev.code == 0);
  CHECK(ev.out.rfind("silhouette score ", 0) == 0);
  CHECK(first_line(dir / "ev.csv").rfind("# {", 0) == 0);
  const json evj = json::parse(slurp(dir / "ev.json"));
  CHECK(evj.at("result").contains("score"));
  CHECK(evj.at("embedding").at("dim") == 12);

  std::ifstream cats(dir / "categories.tsv");
  std::string category, word;
  cats >> category >> word;
  const Result nb = run_cli({"neighbors", (dir / "embedding.scem").string(), word, "-k", "5"});
  REQUIRE(nb.code == 0);
  CHECK(nb.out.rfind("# {", 0) == 0);
  std::istringstream lines(nb.out);
  std::string line;
  std::size_t count = 0;
  while (std::getline(lines, line)) ++count;
  CHECK(count == 7);  // provenance, header, five neighbors

  CHECK(run_cli({"neighbors", (dir / "embedding.scem").string(), "zzznotaword"}).code == cli::kExitFailure);
}

TEST_CASE("small sweep writes its artifacts") {
  testing_support::ScratchDir dir("cli-sweep");
  const std::string o = dir.path().string();
  REQUIRE(run_cli({"-o", o, "synth", "categories", "--docs", "300", "--background-vocab", "200"}).code == 0);
  const Result r = run_cli({"-o", o, "--jobs", "2", "sweep", "--corpus", (dir / "corpus.txt").string(), "--fixture",
                            (dir / "categories.tsv").string(), "--models", "lsa,random", "--dims", "4,8",
                            "--levels", "2", "--min-docs", "100"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("level 1 (100 docs") != std::string::npos);
  for (const char* f : {"sweep.csv", "sweep_summary.csv", "sweep.json"}) CHECK(std::filesystem::exists(dir / f));
  const json doc = json::parse(slurp(dir / "sweep.json"));
  CHECK(doc.at("chain").at("levels").size() == 2);
  CHECK(doc.at("config").at("jobs") == 2);
}

TEST_CASE("sgns training is bitwise reproducible with --deterministic") {
  testing_support::ScratchDir dir("cli-det");
  const std::string o = dir.path().string();
  REQUIRE(run_cli({"-o", o, "synth", "two-topic", "--docs", "200", "--doc-length", "20"}).code == 0);
  std::vector<std::string> bytes;
  for (int i = 0; i < 2; ++i) {
    REQUIRE(run_cli({"-o", o, "--seed", "5", "--deterministic", "train", (dir / "corpus.txt").string(), "-m", "sgns",
                     "-d", "8", "--epochs", "2"})
                .code == 0);
    bytes.push_back(slurp(dir / "embedding.scem"));
  }
  CHECK(!bytes[0].empty());
  CHECK(bytes[0] == bytes[1]);

  REQUIRE(run_cli({"-o", o, "--seed", "6", "--deterministic", "train", (dir / "corpus.txt").string(), "-m", "sgns",
                   "-d", "8", "--epochs", "2"})
              .code == 0);
  CHECK(slurp(dir / "embedding.scem") != bytes[0]);
}

TEST_CASE("dreams runs on a synthetic collection and compares with a baseline") {
  testing_support::ScratchDir dir("cli-dreams");
  const std::string o = dir.path().string();
  REQUIRE(run_cli({"-o", o, "synth", "dreams", "--series", "6"}).code == 0);
  const std::vector<std::string> args{"-o", o, "--deterministic", "dreams", "--series-dir", (dir / "series").string(),
                                      "--ground-truth", (dir / "ground_truth.csv").string(), "-d", "10",
                                      "--repetitions", "2", "--compare-with", "random"};
  const Result r = run_cli(args);
  REQUIRE(r.code == 0);
  CHECK(r.out.find("KS lsa vs random: D ") != std::string::npos);
  for (const char* f : {"dreams_points.csv", "dreams_points_all.csv", "dreams_fits.csv", "dreams.json",
                        "dreams_random_points.csv", "dreams_random_fits.csv"})
    CHECK(std::filesystem::exists(dir / f));
  const std::string first = slurp(dir / "dreams_points_all.csv") + slurp(dir / "dreams.json");
  REQUIRE(run_cli(args).code == 0);
  CHECK(slurp(dir / "dreams_points_all.csv") + slurp(dir / "dreams.json") == first);

  const json doc = json::parse(slurp(dir / "dreams.json"));
  CHECK(doc.at("report").at("analyzed").size() == 6);
  CHECK(doc.at("comparison").at("ks").at("n1") == 2);
}
