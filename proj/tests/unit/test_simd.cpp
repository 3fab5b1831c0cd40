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
#include <random>
#include <vector>

#include "scembed/simd.hpp"

using namespace scembed::simd;

namespace {

template <typename T>
std::vector<T> random_vector(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> dist;
  std::vector<T> v(n);
  for (auto& x : v) x = static_cast<T>(dist(rng));
  return v;
}

// Lengths straddling every vector width and remainder path.
const std::size_t kLengths[] = {0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 31, 32, 33, 63, 64, 65, 100, 257, 1000};

}  // namespace

TEST_CASE("scalar table is always available") {
  CHECK(std::string(scalar_table().name) == "scalar");
  CHECK(scalar_table().isa == Isa::kScalar);
  CHECK(active().dot_f32 != nullptr);
}

TEST_CASE("every vector table agrees with the scalar reference") {
  const KernelTable& ref = scalar_table();
  std::mt19937_64 rng(42);
  const auto tables = available_tables();
  MESSAGE("vector tables on this CPU: " << tables.size());
  for (const KernelTable* t : tables) {
    CAPTURE(t->name);
    for (std::size_t n : kLengths) {
      CAPTURE(n);
      const auto af = random_vector<float>(rng, n), bf = random_vector<float>(rng, n);
      double mag = 0.0;
      for (std::size_t i = 0; i < n; ++i) mag += std::abs(double(af[i]) * bf[i]);
      CHECK(std::abs(t->dot_f32(af.data(), bf.data(), n) - ref.dot_f32(af.data(), bf.data(), n)) <=
            1e-5 * (mag + 1.0));

      auto yf1 = random_vector<float>(rng, n);
      auto yf2 = yf1;
      t->axpy_f32(0.37f, af.data(), yf1.data(), n);
      ref.axpy_f32(0.37f, af.data(), yf2.data(), n);
      for (std::size_t i = 0; i < n; ++i) CHECK(yf1[i] == doctest::Approx(yf2[i]).epsilon(1e-6));

      const auto ad = random_vector<double>(rng, n), bd = random_vector<double>(rng, n);
      double magd = 0.0;
      for (std::size_t i = 0; i < n; ++i) magd += std::abs(ad[i] * bd[i]);
      CHECK(std::abs(t->dot_f64(ad.data(), bd.data(), n) - ref.dot_f64(ad.data(), bd.data(), n)) <=
            1e-13 * (magd + 1.0));

      auto yd1 = random_vector<double>(rng, n);
      auto yd2 = yd1;
      t->axpy_f64(-1.25, ad.data(), yd1.data(), n);
      ref.axpy_f64(-1.25, ad.data(), yd2.data(), n);
      for (std::size_t i = 0; i < n; ++i) CHECK(yd1[i] == doctest::Approx(yd2[i]).epsilon(1e-14));
    }
  }
}

TEST_CASE("kernels handle unaligned pointers") {
  std::mt19937_64 rng(3);
  auto a = random_vector<float>(rng, 70), b = random_vector<float>(rng, 70);
  for (const KernelTable* t : available_tables()) {
    for (std::size_t off = 1; off < 4; ++off) {
      const float got = t->dot_f32(a.data() + off, b.data() + off, 60);
      const float want = scalar_table().dot_f32(a.data() + off, b.data() + off, 60);
      CHECK(got == doctest::Approx(want).epsilon(1e-5));
    }
  }
}

TEST_CASE("select switches tables and rejects unknown names") {
  const KernelTable* before = &active();
  CHECK(select("scalar"));
  CHECK(&active() == &scalar_table());
  CHECK_FALSE(select("sse9"));
  CHECK(select("auto"));
  CHECK(&active() == before);
}

TEST_CASE("span helpers dispatch to the active table") {
  std::vector<double> x{1, 2, 3}, y{4, 5, 6};
  CHECK(dot(std::span<const double>(x), std::span<const double>(y)) == 32.0);
  axpy(2.0, std::span<const double>(x), std::span<double>(y));
  CHECK(y == std::vector<double>{6, 9, 12});
  std::vector<float> xf{1, 2}, yf{3, 4};
  CHECK(dot(std::span<const float>(xf), std::span<const float>(yf)) == 11.0f);
}
