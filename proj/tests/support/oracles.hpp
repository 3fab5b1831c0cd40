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

// Reference implementations the library results are checked against. They
// share no code with the library: the SVD comes from LAPACK, statistics are
// recomputed in 50-digit arithmetic, and the silhouette is a direct double
// loop over the definition.

#include <cstddef>
#include <vector>

namespace oracle {

struct Svd {
  std::vector<double> s;   // descending
  std::vector<double> u;   // m x r, row-major
  std::vector<double> vt;  // r x n, row-major
  std::size_t m = 0, n = 0, r = 0;
};

/// LAPACK dgesvd on a row-major m x n matrix.
Svd lapack_svd(const std::vector<double>& a, std::size_t m, std::size_t n);

/// Frobenius norm of A - A_k for the best rank-k approximation.
double best_rank_k_error(const Svd& svd, std::size_t k);

/// Mean silhouette under cosine distance. points[i] is a vector; labels[i]
/// its category. Every label must have at least two members.
double silhouette_mean(const std::vector<std::vector<double>>& points, const std::vector<std::size_t>& labels);

double spearman(const std::vector<double>& x, const std::vector<double>& y);

struct Pearson {
  double r;
  double p;
};
Pearson pearson(const std::vector<double>& x, const std::vector<double>& y);

struct LogLinear {
  double slope, intercept, r, p;
};
LogLinear loglinear(const std::vector<double>& x, const std::vector<double>& y);

struct Ks {
  double d, p;
};
Ks ks(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace oracle
