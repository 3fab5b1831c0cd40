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
#include <cstdint>
#include <vector>

#include <json.hpp>

#include "scembed/corpus.hpp"
#include "scembed/lexicon.hpp"
#include "scembed/linalg.hpp"
#include "scembed/semspace.hpp"

namespace scembed {

struct LsaParams {
  std::size_t dim = 100;
  std::uint64_t seed = 1;
  std::size_t oversampling = 10;
  /// Krylov steps taken before the first convergence check.
  std::size_t power_iterations = 2;
  /// Iteration stops once every kept triplet has residual
  /// ||A v_i - s_i u_i|| <= tolerance * s_1, or at max_iterations.
  std::size_t max_iterations = 100;
  double tolerance = 1e-10;
  /// Word vectors are rows of U * diag(S) when true, rows of U otherwise.
  bool scale_by_singular_values = true;

  nlohmann::json to_json() const;
};

struct SvdFactors {
  Matrix u;               // |V| x k
  std::vector<double> s;  // k, non-increasing, >= 0
  Matrix vt;              // k x N
  std::size_t iterations = 0;
  bool converged = true;
  double max_residual = 0.0;
};

/// Rank-k truncated SVD of the weighted matrix. Grows a randomized block
/// Krylov basis from a Gaussian start block of k + oversampling columns until
/// the residual tolerance holds. When the basis would span the whole smaller
/// dimension it switches to an exact dense SVD instead. k is clamped to
/// min(|V|, N). Signs follow canonicalize_signs. Deterministic given seed.
///
/// Throws InvalidInput for an all-zero matrix or k < 1.
SvdFactors truncated_svd(const WeightedTermDocMatrix& m, const LsaParams& params);

/// tf-idf + truncated SVD. Words whose weighted row is empty (they occur in
/// every document) get an all-zero vector. A clamped dimension is recorded
/// as a warning on the embedding.
Embedding train_lsa(const Corpus& corpus, const LsaParams& params);

}  // namespace scembed
