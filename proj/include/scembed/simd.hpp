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

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

// Inner-loop arithmetic kernels. Every kernel has a scalar reference version;
// vector variants are compiled per ISA and picked once at runtime after a CPU
// feature check. Set SCEMBED_SIMD=scalar (or avx2/neon) to force a table.
//
// Variants may differ from the reference in summation order, so results agree
// to rounding but not bitwise. A given process always uses one table, so runs
// on one machine stay reproducible.

namespace scembed::simd {

enum class Isa { kScalar, kAvx2, kNeon };

struct KernelTable {
  Isa isa;
  const char* name;
  float (*dot_f32)(const float* a, const float* b, std::size_t n);
  // y += alpha * x
  void (*axpy_f32)(float alpha, const float* x, float* y, std::size_t n);
  double (*dot_f64)(const double* a, const double* b, std::size_t n);
  void (*axpy_f64)(double alpha, const double* x, double* y, std::size_t n);
};

const KernelTable& scalar_table();

/// Vector tables compiled into this build and supported by the running CPU.
std::vector<const KernelTable*> available_tables();

/// The table selected for this process.
const KernelTable& active();

/// Force a specific table by name ("scalar", "avx2", "neon", "auto").
/// Returns false when the name is unknown or unsupported here.
bool select(std::string_view name);

inline float dot(std::span<const float> a, std::span<const float> b) {
  return active().dot_f32(a.data(), b.data(), a.size());
}
inline double dot(std::span<const double> a, std::span<const double> b) {
  return active().dot_f64(a.data(), b.data(), a.size());
}
inline void axpy(float alpha, std::span<const float> x, std::span<float> y) {
  active().axpy_f32(alpha, x.data(), y.data(), x.size());
}
inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  active().axpy_f64(alpha, x.data(), y.data(), x.size());
}

namespace detail {
const KernelTable* avx2_table();
const KernelTable* neon_table();
}  // namespace detail

}  // namespace scembed::simd
