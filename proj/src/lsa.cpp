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

#include "scembed/lsa.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace scembed {

nlohmann::json LsaParams::to_json() const {
  return {{"dim", dim},
          {"seed", seed},
          {"oversampling", oversampling},
          {"power_iterations", power_iterations},
          {"max_iterations", max_iterations},
          {"tolerance", tolerance},
          {"scale_by_singular_values", scale_by_singular_values}};
}

namespace {

SvdFactors truncate(DenseSvd svd, std::size_t k) {
  SvdFactors out;
  out.u = Matrix(svd.u.rows(), k);
  for (std::size_t r = 0; r < svd.u.rows(); ++r)
    for (std::size_t c = 0; c < k; ++c) out.u(r, c) = svd.u(r, c);
  out.s.assign(svd.s.begin(), svd.s.begin() + static_cast<std::ptrdiff_t>(k));
  out.vt = Matrix(k, svd.vt.cols());
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t c = 0; c < svd.vt.cols(); ++c) out.vt(r, c) = svd.vt(r, c);
  canonicalize_signs(out.u, out.vt);
  return out;
}

using EMatrix = Eigen::MatrixXd;
using ESparse = Eigen::SparseMatrix<double>;

ESparse to_eigen(const SparseMatrix& a) {
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(a.entries().size());
  for (std::size_t d = 0; d < a.cols(); ++d)
    for (const auto& e : a.column(d))
      triplets.emplace_back(static_cast<Eigen::Index>(e.row), static_cast<Eigen::Index>(d), e.value);
  ESparse out(static_cast<Eigen::Index>(a.rows()), static_cast<Eigen::Index>(a.cols()));
  out.setFromTriplets(triplets.begin(), triplets.end());
  return out;
}

EMatrix gaussian(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  EMatrix out(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c)
    for (Eigen::Index r = 0; r < rows; ++r) out(r, c) = standard_normal(rng);
  return out;
}

// Orthonormalizes `block` against the first `used` columns of `basis` and
// appends it. Columns that vanish under projection are redrawn at random.
void extend_basis(EMatrix& basis, Eigen::Index& used, EMatrix block, Rng& rng) {
  const Eigen::Index width = block.cols();
  for (int attempt = 0;; ++attempt) {
    const Eigen::VectorXd before = block.colwise().norm();
    for (int pass = 0; pass < 2 && used > 0; ++pass) {
      const auto q = basis.leftCols(used);
      block.noalias() -= q * (q.transpose() * block);
    }
    Eigen::HouseholderQR<EMatrix> qr(block);
    const EMatrix& r = qr.matrixQR();
    bool redraw = false;
    for (Eigen::Index c = 0; c < width; ++c) {
      if (!(std::abs(r(c, c)) > 1e-10 * before(c))) {
        block.col(c) = gaussian(block.rows(), 1, rng);
        redraw = true;
      }
    }
    if (!redraw) {
      basis.middleCols(used, width) = qr.householderQ() * EMatrix::Identity(block.rows(), width);
      // A second projection keeps the new block orthogonal to the old basis
      // to working precision after QR has mixed its columns.
      if (used > 0) {
        auto fresh = basis.middleCols(used, width);
        const auto q = basis.leftCols(used);
        fresh -= q * (q.transpose() * fresh);
        Eigen::HouseholderQR<EMatrix> again{EMatrix(fresh)};
        fresh = again.householderQ() * EMatrix::Identity(block.rows(), width);
      }
      used += width;
      return;
    }
    if (attempt == 3) throw Error("truncated SVD: failed to extend the Krylov basis");
  }
}

SvdFactors from_eigen(const EMatrix& u, const Eigen::VectorXd& s, const EMatrix& v, std::size_t k) {
  SvdFactors out;
  out.u = Matrix(static_cast<std::size_t>(u.rows()), k);
  out.vt = Matrix(k, static_cast<std::size_t>(v.rows()));
  out.s.assign(s.data(), s.data() + k);
  for (std::size_t r = 0; r < out.u.rows(); ++r)
    for (std::size_t c = 0; c < k; ++c) out.u(r, c) = u(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t j = 0; j < out.vt.cols(); ++j)
      out.vt(c, j) = v(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(c));
  canonicalize_signs(out.u, out.vt);
  return out;
}

}  // namespace

SvdFactors truncated_svd(const WeightedTermDocMatrix& weighted, const LsaParams& params) {
  const SparseMatrix& a = weighted.weights;
  const std::size_t shorter = std::min(a.rows(), a.cols());
  const std::size_t k = std::min(params.dim, shorter);
  if (k < 1) throw InvalidInput("truncated SVD needs rank >= 1 (requested " + std::to_string(params.dim) + ")");
  if (std::none_of(a.entries().begin(), a.entries().end(), [](const auto& e) { return e.value != 0.0; })) {
    throw InvalidInput("truncated SVD of an all-zero matrix");
  }

  Rng rng(params.seed);
  const std::size_t block = std::min(k + params.oversampling, shorter);
  auto exact = [&](std::size_t iterations) {
    SvdFactors out = truncate(dense_svd(to_dense(a)), k);
    out.iterations = iterations;
    return out;
  };
  if (block >= shorter) return exact(0);

  const ESparse sa = to_eigen(a);
  const auto eblock = static_cast<Eigen::Index>(block);
  const auto ek = static_cast<Eigen::Index>(k);

  // Krylov basis span{A W, (A A^T) A W, ...} held as orthonormal columns.
  EMatrix basis(sa.rows(), static_cast<Eigen::Index>(shorter));
  Eigen::Index used = 0;
  extend_basis(basis, used, sa * gaussian(sa.cols(), eblock, rng), rng);

  for (std::size_t it = 0;; ++it) {
    if (it >= params.power_iterations) {
      const auto q = basis.leftCols(used);
      const EMatrix b = (sa.transpose() * q).transpose();  // Q^T A
      Eigen::BDCSVD<EMatrix> small(b, Eigen::ComputeThinU | Eigen::ComputeThinV);
      const EMatrix u = q * small.matrixU().leftCols(ek);
      const EMatrix v = small.matrixV().leftCols(ek);
      const Eigen::VectorXd s = small.singularValues().head(ek);
      const EMatrix resid = sa * v - u * s.asDiagonal();
      const double residual = resid.colwise().norm().maxCoeff();
      const bool converged = residual <= params.tolerance * s(0);
      if (converged || it >= params.max_iterations) {
        SvdFactors out = from_eigen(u, s, v, k);
        out.iterations = it;
        out.converged = converged;
        out.max_residual = residual;
        return out;
      }
    }
    if (static_cast<std::size_t>(used) + block > shorter) return exact(it);
    const EMatrix last = basis.middleCols(used - eblock, eblock);
    extend_basis(basis, used, sa * (sa.transpose() * last), rng);
  }
}

Embedding train_lsa(const Corpus& corpus, const LsaParams& params) {
  if (corpus.empty()) throw InvalidInput("cannot train LSA on an empty corpus");
  Vocabulary vocab = build_vocabulary(corpus);
  if (vocab.empty()) throw InvalidInput("cannot train LSA: corpus has no tokens");
  const WeightedTermDocMatrix weighted = tfidf(count_matrix(corpus, vocab));

  std::vector<std::string> warnings;
  const std::size_t limit = std::min(vocab.size(), corpus.size());
  if (params.dim > limit) {
    warnings.push_back("lsa: requested dim " + std::to_string(params.dim) + " clamped to " + std::to_string(limit) +
                       " (min of vocabulary size " + std::to_string(vocab.size()) + " and document count " +
                       std::to_string(corpus.size()) + ")");
  }
  const SvdFactors svd = truncated_svd(weighted, params);
  if (!svd.converged) {
    warnings.push_back("lsa: Krylov iteration stopped at " + std::to_string(svd.iterations) +
                       " iterations with residual " + std::to_string(svd.max_residual));
  }

  std::vector<bool> has_weight(vocab.size(), false);
  for (const auto& e : weighted.weights.entries()) has_weight[e.row] = true;

  const std::size_t k = svd.s.size();
  Matrix vectors(vocab.size(), k);
  for (std::size_t w = 0; w < vocab.size(); ++w) {
    if (!has_weight[w]) continue;
    for (std::size_t c = 0; c < k; ++c) {
      vectors(w, c) = params.scale_by_singular_values ? svd.u(w, c) * svd.s[c] : svd.u(w, c);
    }
  }

  LsaParams effective = params;
  effective.dim = k;
  nlohmann::json fp = effective.to_json();
  fp["requested_dim"] = params.dim;
  fp["model"] = "lsa";
  Embedding emb(std::move(vocab), std::move(vectors), "lsa", std::move(fp));
  for (auto& w : warnings) emb.add_warning(std::move(w));
  return emb;
}

}  // namespace scembed
