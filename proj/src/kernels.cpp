// Copyright 2026 The pst Authors.
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

#include "pst/kernels.hpp"

#include <utility>

#include "pst/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace pst::kernels {
namespace {

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

int thread_index() {
#ifdef _OPENMP
  return omp_get_thread_num();
#else
  return 0;
#endif
}

void check_sensing(const std::vector<Matrix>& sensing) {
  if (sensing.empty()) throw InvalidInput("kernels: empty sensing sequence");
  const Index n = sensing.front().rows(), m = sensing.front().cols();
  if (n == 0 || m == 0) throw InvalidDimension("kernels: empty sensing matrix");
  for (const Matrix& a : sensing)
    if (a.rows() != n || a.cols() != m)
      throw InvalidDimension("kernels: ragged sensing sequence");
}

void check_col_weights(const Vector& w, Index q, bool require_nonnegative) {
  if (w.size() != q) throw InvalidDimension("kernels: weight length != q");
  if (require_nonnegative && w.size() > 0 && w.minCoeff() < 0.0)
    throw InvalidInput("kernels: negative weight");
}

}  // namespace

Matrix weighted_second_moment(const std::vector<Matrix>& sensing,
                              const Matrix& weights, double scale) {
  check_sensing(sensing);
  const Index q = static_cast<Index>(sensing.size());
  const Index n = sensing.front().rows(), m = sensing.front().cols();
  if (weights.rows() != m || weights.cols() != q)
    throw InvalidDimension("weighted_second_moment: weights must be m x q");
  if (weights.minCoeff() < 0.0)
    throw InvalidInput("weighted_second_moment: negative weight");

  std::vector<Matrix> partials(max_threads(), Matrix::Zero(n, n));
#pragma omp parallel for schedule(static)
  for (Index t = 0; t < q; ++t) {
    Matrix& local = partials[thread_index()];
    Matrix scaled = sensing[t] * weights.col(t).cwiseSqrt().asDiagonal();
    local.selfadjointView<Eigen::Lower>().rankUpdate(scaled);
  }
  Matrix acc = Matrix::Zero(n, n);
  for (const Matrix& p : partials) acc += p;
  Matrix out = acc.selfadjointView<Eigen::Lower>();
  out *= scale;
  return out;
}

Matrix weighted_gram_sum(const std::vector<Matrix>& sensing,
                         const Vector& col_weights) {
  check_sensing(sensing);
  const Index q = static_cast<Index>(sensing.size());
  const Index n = sensing.front().rows();
  check_col_weights(col_weights, q, /*require_nonnegative=*/true);

  std::vector<Matrix> partials(max_threads(), Matrix::Zero(n, n));
#pragma omp parallel for schedule(static)
  for (Index t = 0; t < q; ++t) {
    if (col_weights(t) == 0.0) continue;
    partials[thread_index()].selfadjointView<Eigen::Lower>().rankUpdate(
        sensing[t], col_weights(t));
  }
  Matrix acc = Matrix::Zero(n, n);
  for (const Matrix& p : partials) acc += p;
  return acc.selfadjointView<Eigen::Lower>();
}

Matrix weighted_gram_sum_cached(const std::vector<Matrix>& grams,
                                const Vector& col_weights) {
  if (grams.empty()) throw InvalidInput("weighted_gram_sum_cached: empty cache");
  const Index q = static_cast<Index>(grams.size());
  const Index n = grams.front().rows();
  check_col_weights(col_weights, q, /*require_nonnegative=*/true);

  std::vector<Matrix> partials(max_threads(), Matrix::Zero(n, n));
#pragma omp parallel for schedule(static)
  for (Index t = 0; t < q; ++t) {
    if (col_weights(t) == 0.0) continue;
    partials[thread_index()] += col_weights(t) * grams[t];
  }
  Matrix acc = Matrix::Zero(n, n);
  for (const Matrix& p : partials) acc += p;
  return acc;
}

Vector weighted_matvec_sum(const std::vector<Matrix>& sensing,
                           const Matrix& rhs, const Vector& col_weights) {
  check_sensing(sensing);
  const Index q = static_cast<Index>(sensing.size());
  const Index n = sensing.front().rows(), m = sensing.front().cols();
  if (rhs.rows() != m || rhs.cols() != q)
    throw InvalidDimension("weighted_matvec_sum: rhs must be m x q");
  check_col_weights(col_weights, q, /*require_nonnegative=*/false);

  std::vector<Vector> partials(max_threads(), Vector::Zero(n));
#pragma omp parallel for schedule(static)
  for (Index t = 0; t < q; ++t) {
    if (col_weights(t) == 0.0) continue;
    partials[thread_index()].noalias() +=
        col_weights(t) * (sensing[t] * rhs.col(t));
  }
  Vector acc = Vector::Zero(n);
  for (const Vector& p : partials) acc += p;
  return acc;
}

Matrix kron_normal_matrix(const std::vector<Matrix>& sensing,
                          const Matrix& coeffs,
                          const std::vector<Matrix>* gram_cache) {
  check_sensing(sensing);
  const Index q = static_cast<Index>(sensing.size());
  const Index n = sensing.front().rows();
  const Index r = coeffs.rows();
  if (coeffs.cols() != q)
    throw InvalidDimension("kron_normal_matrix: coeffs must be r x q");
  if (r == 0) throw InvalidDimension("kron_normal_matrix: empty coefficients");
  if (gram_cache != nullptr &&
      static_cast<Index>(gram_cache->size()) != q)
    throw InvalidDimension("kron_normal_matrix: cache length != q");

  // Lower block triangle (l1 >= l2), flattened for the parallel loop.
  std::vector<std::pair<Index, Index>> pairs;
  pairs.reserve(static_cast<std::size_t>(r * (r + 1) / 2));
  for (Index l2 = 0; l2 < r; ++l2)
    for (Index l1 = l2; l1 < r; ++l1) pairs.emplace_back(l1, l2);
  const Index npairs = static_cast<Index>(pairs.size());

  Matrix out = Matrix::Zero(n * r, n * r);
  Matrix gram(n, n);
  for (Index t = 0; t < q; ++t) {
    const Matrix* g;
    if (gram_cache != nullptr) {
      g = &(*gram_cache)[t];
    } else {
      gram.noalias() = sensing[t] * sensing[t].transpose();
      g = &gram;
    }
    // Disjoint blocks: deterministic for any thread count.
#pragma omp parallel for schedule(static)
    for (Index p = 0; p < npairs; ++p) {
      const auto [l1, l2] = pairs[p];
      out.block(l1 * n, l2 * n, n, n).noalias() +=
          (coeffs(l1, t) * coeffs(l2, t)) * (*g);
    }
  }
  for (Index l2 = 0; l2 < r; ++l2)
    for (Index l1 = l2 + 1; l1 < r; ++l1)
      out.block(l2 * n, l1 * n, n, n) = out.block(l1 * n, l2 * n, n, n).transpose();
  return out;
}

std::vector<Matrix> build_gram_cache(const std::vector<Matrix>& sensing,
                                     std::size_t max_bytes) {
  check_sensing(sensing);
  const std::size_t q = sensing.size();
  const std::size_t n = static_cast<std::size_t>(sensing.front().rows());
  if (q * n * n * sizeof(double) > max_bytes) return {};
  std::vector<Matrix> grams(q);
#pragma omp parallel for schedule(static)
  for (Index t = 0; t < static_cast<Index>(q); ++t) {
    Matrix g = Matrix::Zero(n, n);
    g.selfadjointView<Eigen::Lower>().rankUpdate(sensing[t]);
    grams[t] = g.selfadjointView<Eigen::Lower>();
  }
  return grams;
}

namespace serial {

Matrix weighted_second_moment(const std::vector<Matrix>& sensing,
                              const Matrix& weights, double scale) {
  check_sensing(sensing);
  const Index q = static_cast<Index>(sensing.size());
  const Index n = sensing.front().rows(), m = sensing.front().cols();
  if (weights.rows() != m || weights.cols() != q)
    throw InvalidDimension("weighted_second_moment: weights must be m x q");
  if (weights.minCoeff() < 0.0)
    throw InvalidInput("weighted_second_moment: negative weight");
  Matrix out = Matrix::Zero(n, n);
  for (Index t = 0; t < q; ++t)
    for (Index i = 0; i < m; ++i) {
      const auto a = sensing[t].col(i);
      out.noalias() += weights(i, t) * (a * a.transpose());
    }
  return scale * out;
}

Matrix weighted_gram_sum(const std::vector<Matrix>& sensing,
                         const Vector& col_weights) {
  check_sensing(sensing);
  const Index q = static_cast<Index>(sensing.size());
  const Index n = sensing.front().rows(), m = sensing.front().cols();
  check_col_weights(col_weights, q, /*require_nonnegative=*/true);
  Matrix out = Matrix::Zero(n, n);
  for (Index t = 0; t < q; ++t)
    for (Index i = 0; i < m; ++i) {
      const auto a = sensing[t].col(i);
      out.noalias() += col_weights(t) * (a * a.transpose());
    }
  return out;
}

Vector weighted_matvec_sum(const std::vector<Matrix>& sensing,
                           const Matrix& rhs, const Vector& col_weights) {
  check_sensing(sensing);
  const Index q = static_cast<Index>(sensing.size());
  const Index n = sensing.front().rows(), m = sensing.front().cols();
  if (rhs.rows() != m || rhs.cols() != q)
    throw InvalidDimension("weighted_matvec_sum: rhs must be m x q");
  check_col_weights(col_weights, q, /*require_nonnegative=*/false);
  Vector out = Vector::Zero(n);
  for (Index t = 0; t < q; ++t)
    for (Index i = 0; i < m; ++i)
      out += col_weights(t) * rhs(i, t) * sensing[t].col(i);
  return out;
}

Matrix kron_normal_matrix(const std::vector<Matrix>& sensing,
                          const Matrix& coeffs) {
  check_sensing(sensing);
  const Index q = static_cast<Index>(sensing.size());
  const Index n = sensing.front().rows(), m = sensing.front().cols();
  const Index r = coeffs.rows();
  if (coeffs.cols() != q)
    throw InvalidDimension("kron_normal_matrix: coeffs must be r x q");
  if (r == 0) throw InvalidDimension("kron_normal_matrix: empty coefficients");
  Matrix out = Matrix::Zero(n * r, n * r);
  for (Index t = 0; t < q; ++t) {
    Matrix gram = Matrix::Zero(n, n);
    for (Index i = 0; i < m; ++i) {
      const auto a = sensing[t].col(i);
      gram.noalias() += a * a.transpose();
    }
    for (Index l2 = 0; l2 < r; ++l2)
      for (Index l1 = 0; l1 < r; ++l1)
        out.block(l1 * n, l2 * n, n, n) +=
            (coeffs(l1, t) * coeffs(l2, t)) * gram;
  }
  return out;
}

}  // namespace serial

}  // namespace pst::kernels
