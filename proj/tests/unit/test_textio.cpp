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

#include <cmath>
#include <limits>

#include "scembed/common.hpp"
#include "textio.hpp"

using namespace scembed;
using namespace scembed::detail;

TEST_CASE("csv quoting round-trips through the splitter") {
  const std::vector<std::string> fields{"plain", "with,comma", "with \"quote\"", "", " spaced "};
  std::string line;
  for (std::size_t i = 0; i < fields.size(); ++i) line += (i ? "," : "") + csv_field(fields[i]);
  std::vector<std::string> back;
  REQUIRE(split_csv(line, back));
  CHECK(back == fields);
  CHECK(csv_field("plain") == "plain");
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK_FALSE(split_csv("\"open,field", back));
}

TEST_CASE("double formatting is shortest round-trip") {
  for (double x : {0.1, 1.0 / 3.0, -2.5e-300, 1e21, 0.0, 123456789.125}) {
    CHECK(parse_double(format_double(x), "x") == x);
  }
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
}

TEST_CASE("strict double parsing") {
  CHECK(parse_double(" 2.5", "v") == 2.5);
  CHECK_THROWS_AS(parse_double("2.5x", "v"), InvalidInput);
  CHECK_THROWS_AS(parse_double("", "v"), InvalidInput);
  try {
    parse_double("abc", "score");
    FAIL("expected throw");
  } catch (const InvalidInput& e) {
    CHECK(std::string(e.what()).find("score") != std::string::npos);
  }
  CHECK(trim("  a b \t") == "a b");
}
