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

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "scembed/common.hpp"

namespace scembed::cli {

/// Bad flags or configuration; maps to exit code 2.
class ConfigError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // the command ran and something failed
inline constexpr int kExitUsage = 2;    // invalid flags or configuration

/// The full configuration tree with every default filled in. Its shape is
/// the schema: config files may only contain keys that appear here.
nlohmann::json default_config();

/// Overlay `patch` onto `base`. Throws ConfigError for keys not present in
/// `base` and for values whose type does not match.
void merge_config(nlohmann::json& base, const nlohmann::json& patch, const std::string& where = "");

nlohmann::json load_config_file(const std::filesystem::path& path);

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace scembed::cli
