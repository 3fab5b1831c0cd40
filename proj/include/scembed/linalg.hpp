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
#include <vector>

#include "scembed/common.hpp"
#include "scembed/lexicon.hpp"

namespace scembed {

/// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }

  Matrix transposed() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// C = A * B.
Matrix multiply(const Matrix& a, const Matrix& b);

/// A (sparse, m x n) * X (n x l) -> m x l.
Matrix multiply(const SparseMatrix& a, const Matrix& x);

/// A^T (n x m) * Y (m x l) -> n x l.
Matrix multiply_transposed(const SparseMatrix& a, const Matrix& y);

/// Dense copy of a sparse matrix.
Matrix to_dense(const SparseMatrix& a);

struct DenseSvd {
  Matrix u;                 // m x r, orthonormal columns
  std::vector<double> s;    // r values, non-increasing
  Matrix vt;                // r x n, orthonormal rows
};

/// Thin SVD, r = min(m, n), with canonical signs. Dense divide-and-conquer;
/// meant for matrices that fit comfortably in memory.
DenseSvd dense_svd(const Matrix& a);

/// Flip singular-vector pairs so the largest-magnitude entry of each column
/// of u is positive (first such entry on ties).
void canonicalize_signs(Matrix& u, Matrix& vt);

}  // namespace scembed
