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

#include <fstream>

#include "scembed/cli.hpp"
#include "scembed/evalsuite.hpp"

namespace scembed::cli {

using nlohmann::json;

json default_config() {
  return json{
      {"seed", 1},
      {"jobs", nullptr},  // null: available parallelism
      {"deterministic", false},
      {"output_dir", "."},
      {"corpus", {{"path", nullptr}, {"format", "lines"}, {"stopwords", nullptr}}},
      {"model",
       {{"name", "lsa"},
        {"dim", 100},
        {"window", 5},
        {"negatives", 5},
        {"epochs", 5},
        {"lr_initial", 0.025},
        {"lr_final", 0.0001},
        {"subsample_t", 0.001},
        {"workers", nullptr},  // null: --jobs, or 1 with --deterministic
        {"oversampling", 10},
        {"power_iterations", 2},
        {"scale_by_singular_values", true}}},
      {"clean", {{"input", nullptr}, {"output", "cleaned.txt"}}},
      {"train", {{"output", "embedding.scem"}, {"text_output", nullptr}}},
      {"eval", {{"embedding", nullptr}, {"test", "categories"}, {"fixture", nullptr}, {"prefix", "eval"}}},
      {"sweep",
       {{"models", {"lsa"}},
        {"dims", kDefaultDims},
        {"windows", json::array()},
        {"negatives", json::array()},
        {"test", "categories"},
        {"fixture", nullptr},
        {"levels", 1},
        {"min_docs", nullptr},
        {"repetitions", 1},
        {"best_override", {{"model", nullptr}, {"dim", nullptr}, {"window", nullptr}, {"negatives", nullptr}}},
        {"prefix", "sweep"}}},
      {"dreams",
       {{"series_dir", nullptr},
        {"ground_truth", nullptr},
        {"target", "run"},
        {"probes", {"chase", "chased", "chases", "chasing", "escape", "escaped", "escapes", "escaping"}},
        {"dim", 200},
        {"min_target_count", 5},
        {"repetitions", 10},
        {"sample_repetition", 0},
        {"whole_corpus", false},
        {"compare_with", nullptr},
        {"prefix", "dreams"}}},
      {"neighbors",
       {{"embedding", nullptr},
        {"series", nullptr},
        {"word", nullptr},
        {"k", 25},
        {"min_count", 0},
        {"output", nullptr}}},
      {"synth",
       {{"kind", "categories"},
        {"docs", 20000},
        {"doc_length", 40},
        {"topic_share", 0.2},
        {"background_vocab", 3000},
        {"series", 30}}},
  };
}

namespace {

bool is_scalar(const json& v) { return v.is_null() || v.is_primitive(); }

bool compatible(const json& def, const json& v) {
  if (def.is_null()) return is_scalar(v);
  if (def.is_boolean()) return v.is_boolean();
  if (def.is_string()) return v.is_string();
  if (def.is_number_float()) return v.is_number();
  if (def.is_number_integer()) return v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0);
  if (def.is_array()) {
    if (!v.is_array()) return false;
    for (const auto& e : v) {
      if (def.empty() ? !e.is_primitive() : !compatible(def.front(), e)) return false;
    }
    return true;
  }
  return false;
}

}  // namespace

void merge_config(json& base, const json& patch, const std::string& where) {
  if (!patch.is_object()) throw ConfigError("config" + (where.empty() ? "" : " '" + where + "'") + " must be an object");
  for (const auto& [key, value] : patch.items()) {
    const std::string path = where.empty() ? key : where + "." + key;
    if (!base.contains(key)) throw ConfigError("unknown config key '" + path + "'");
    json& slot = base[key];
    if (slot.is_object()) {
      merge_config(slot, value, path);
    } else if (compatible(slot, value)) {
      slot = value;
    } else {
      throw ConfigError("config key '" + path + "' has the wrong type (got " + std::string(value.type_name()) +
                        ", expected " + (slot.is_null() ? std::string("scalar") : std::string(slot.type_name())) + ")");
    }
  }
}

json load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file: " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config file " + path.string() + " is not valid JSON: " + e.what());
  }
}

}  // namespace scembed::cli
