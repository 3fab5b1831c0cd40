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

#include <atomic>
#include <cstdlib>
#include <string>

#include "scembed/simd.hpp"

namespace scembed::simd {

#if !defined(SCEMBED_HAVE_AVX2_TU)
namespace detail {
const KernelTable* avx2_table() { return nullptr; }
}  // namespace detail
#endif

#if !defined(SCEMBED_HAVE_NEON_TU)
namespace detail {
const KernelTable* neon_table() { return nullptr; }
}  // namespace detail
#endif

namespace {

bool cpu_has_avx2_fma() {
#if defined(SCEMBED_HAVE_AVX2_TU) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable* table_by_name(std::string_view name) {
  if (name == "scalar") return &scalar_table();
  for (const KernelTable* t : available_tables()) {
    if (name == t->name) return t;
  }
  return nullptr;
}

const KernelTable* best_table() {
  const auto tables = available_tables();
  return tables.empty() ? &scalar_table() : tables.front();
}

const KernelTable* initial_table() {
  if (const char* env = std::getenv("SCEMBED_SIMD")) {
    const std::string_view name(env);
    if (name != "auto") {
      if (const KernelTable* t = table_by_name(name)) return t;
    }
  }
  return best_table();
}

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> table{initial_table()};
  return table;
}

}  // namespace

std::vector<const KernelTable*> available_tables() {
  std::vector<const KernelTable*> out;
  if (const KernelTable* t = detail::avx2_table(); t != nullptr && cpu_has_avx2_fma()) out.push_back(t);
  if (const KernelTable* t = detail::neon_table(); t != nullptr) out.push_back(t);
  return out;
}

const KernelTable& active() { return *current().load(std::memory_order_relaxed); }

bool select(std::string_view name) {
  const KernelTable* t = name == "auto" ? best_table() : table_by_name(name);
  if (t == nullptr) return false;
  current().store(t, std::memory_order_relaxed);
  return true;
}

}  // namespace scembed::simd
