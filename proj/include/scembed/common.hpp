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

#include <cstdint>
#include <initializer_list>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

namespace scembed {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad files, invalid parameters, violated preconditions.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// Query for a word that is not in the embedding's vocabulary.
class OutOfVocabulary : public Error {
 public:
  explicit OutOfVocabulary(const std::string& word)
      : Error("word not in vocabulary: '" + word + "'"), word_(word) {}
  const std::string& word() const noexcept { return word_; }

 private:
  std::string word_;
};

/// Query involving a word whose vector is all zeros (cosine undefined).
class DeadWord : public Error {
 public:
  explicit DeadWord(const std::string& word)
      : Error("word has an all-zero vector: '" + word + "'"), word_(word) {}
  const std::string& word() const noexcept { return word_; }

 private:
  std::string word_;
};

/// Random engine used everywhere a seed is accepted.
using Rng = std::mt19937_64;

/// Uniform double in [0, 1) built from the top 53 bits of one draw, so the
/// stream is identical across standard library implementations.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, n). n must be positive.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t n) {
  // Lemire's multiply-shift without the rejection step; the bias is below
  // 2^-64 * n and irrelevant at our sizes.
  const unsigned __int128 product = static_cast<unsigned __int128>(rng()) * n;
  return static_cast<std::uint64_t>(product >> 64);
}

/// Standard normal draw (Box-Muller), portable across standard libraries.
double standard_normal(Rng& rng);

/// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Stable hash of a string (FNV-1a 64), independent of std::hash.
std::uint64_t hash_string(std::string_view s);

/// Seed derived from a base seed and job coordinates. Independent of
/// scheduling order, so parallel jobs reproduce serial results.
std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> coords);

}  // namespace scembed
