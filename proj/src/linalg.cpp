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

#include "scembed/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/SVD>

#include "scembed/simd.hpp"

namespace scembed {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw InvalidInput("matrix shapes do not conform");
  Matrix c(a.rows(), b.cols());
  const auto& k = simd::active();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto out = c.row(i);
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const double v = a(i, j);
      if (v != 0.0) k.axpy_f64(v, b.row(j).data(), out.data(), out.size());
    }
  }
  return c;
}

Matrix multiply(const SparseMatrix& a, const Matrix& x) {
  if (a.cols() != x.rows()) throw InvalidInput("sparse product shapes do not conform");
  Matrix y(a.rows(), x.cols());
  const auto& k = simd::active();
  for (std::size_t d = 0; d < a.cols(); ++d) {
    const double* xrow = x.row(d).data();
    for (const auto& e : a.column(d)) k.axpy_f64(e.value, xrow, y.row(e.row).data(), x.cols());
  }
  return y;
}

Matrix multiply_transposed(const SparseMatrix& a, const Matrix& y) {
  if (a.rows() != y.rows()) throw InvalidInput("sparse product shapes do not conform");
  Matrix z(a.cols(), y.cols());
  const auto& k = simd::active();
  for (std::size_t d = 0; d < a.cols(); ++d) {
    double* zrow = z.row(d).data();
    for (const auto& e : a.column(d)) k.axpy_f64(e.value, y.row(e.row).data(), zrow, y.cols());
  }
  return z;
}

Matrix to_dense(const SparseMatrix& a) {
  Matrix m(a.rows(), a.cols());
  for (std::size_t d = 0; d < a.cols(); ++d)
    for (const auto& e : a.column(d)) m(e.row, d) = e.value;
  return m;
}

DenseSvd dense_svd(const Matrix& a) {
  using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const Eigen::Map<const RowMajor> view(a.data().data(), static_cast<Eigen::Index>(a.rows()),
                                        static_cast<Eigen::Index>(a.cols()));
  Eigen::BDCSVD<Eigen::MatrixXd> svd(Eigen::MatrixXd(view), Eigen::ComputeThinU | Eigen::ComputeThinV);

  const auto r = static_cast<std::size_t>(svd.singularValues().size());
  DenseSvd out;
  out.u = Matrix(a.rows(), r);
  out.vt = Matrix(r, a.cols());
  out.s.assign(svd.singularValues().data(), svd.singularValues().data() + r);
  const Eigen::MatrixXd& u = svd.matrixU();
  const Eigen::MatrixXd& v = svd.matrixV();
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t c = 0; c < r; ++c) out.u(i, c) = u(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c));
  for (std::size_t c = 0; c < r; ++c)
    for (std::size_t j = 0; j < a.cols(); ++j) out.vt(c, j) = v(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(c));
  canonicalize_signs(out.u, out.vt);
  return out;
}

void canonicalize_signs(Matrix& u, Matrix& vt) {
  for (std::size_t c = 0; c < u.cols(); ++c) {
    std::size_t best = 0;
    double best_abs = -1.0;
    for (std::size_t r = 0; r < u.rows(); ++r) {
      const double v = std::abs(u(r, c));
      if (v > best_abs) {
        best_abs = v;
        best = r;
      }
    }
    if (u.rows() > 0 && u(best, c) < 0.0) {
      for (std::size_t r = 0; r < u.rows(); ++r) u(r, c) = -u(r, c);
      if (c < vt.rows()) {
        for (double& x : vt.row(c)) x = -x;
      }
    }
  }
}

}  // namespace scembed
