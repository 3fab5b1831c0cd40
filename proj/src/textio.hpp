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

// Small CSV/TSV helpers shared by the fixture loaders and report writers.

#include <string>
#include <string_view>
#include <vector>

namespace scembed::detail {

/// Quote a field if it contains a comma, quote, or line break.
std::string csv_field(std::string_view s);

/// Split one CSV record (RFC 4180 quoting, no embedded newlines).
/// Returns false on an unterminated quote.
bool split_csv(std::string_view line, std::vector<std::string>& fields);

std::string_view trim(std::string_view s);

/// Shortest decimal form that round-trips a double ("nan" for NaN).
std::string format_double(double x);

/// Strict full-string parse; throws InvalidInput mentioning `what`.
double parse_double(std::string_view s, const std::string& what);

}  // namespace scembed::detail
