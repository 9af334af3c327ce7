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

#ifndef PST_KERNELS_HPP_
#define PST_KERNELS_HPP_

#include <cstddef>
#include <vector>

#include "pst/types.hpp"

// Accumulation kernels shared by the spectral and alternating-minimization
// code paths.  The functions in pst::kernels are OpenMP-parallel over the
// time index; per-thread partials are combined in thread order so results
// are reproducible for a fixed thread count.  pst::kernels::serial holds
// deliberately naive single-threaded references used by the tests and the
// benchmarks; both variants must agree to ~1e-9 relative error.
namespace pst::kernels {

// sum_t sensing[t] * diag(weights.col(t)) * sensing[t]', times `scale`.
// weights must be elementwise nonnegative (they are squared magnitudes
// everywhere in this library).
Matrix weighted_second_moment(const std::vector<Matrix>& sensing,
                              const Matrix& weights, double scale);

// sum_t col_weights(t) * sensing[t] * sensing[t]'.  col_weights >= 0.
Matrix weighted_gram_sum(const std::vector<Matrix>& sensing,
                         const Vector& col_weights);

// Same sum evaluated from a precomputed Gram cache (grams[t] = A_t A_t').
Matrix weighted_gram_sum_cached(const std::vector<Matrix>& grams,
                                const Vector& col_weights);

// sum_t col_weights(t) * sensing[t] * rhs.col(t).
Vector weighted_matvec_sum(const std::vector<Matrix>& sensing,
                           const Matrix& rhs, const Vector& col_weights);

// sum_t (coeffs.col(t) coeffs.col(t)') kron (A_t A_t'), the (n*r) x (n*r)
// normal matrix for the subspace update in column-major vec(U) ordering.
// Pass a Gram cache to skip recomputing A_t A_t'; pass nullptr otherwise.
Matrix kron_normal_matrix(const std::vector<Matrix>& sensing,
                          const Matrix& coeffs,
                          const std::vector<Matrix>* gram_cache);

// A_t A_t' for every t when the total fits in max_bytes; empty otherwise.
std::vector<Matrix> build_gram_cache(const std::vector<Matrix>& sensing,
                                     std::size_t max_bytes);

namespace serial {

// Rank-one accumulation references.  Kept simple on purpose: different
// loop structure and summation order from the parallel kernels.
Matrix weighted_second_moment(const std::vector<Matrix>& sensing,
                              const Matrix& weights, double scale);
Matrix weighted_gram_sum(const std::vector<Matrix>& sensing,
                         const Vector& col_weights);
Vector weighted_matvec_sum(const std::vector<Matrix>& sensing,
                           const Matrix& rhs, const Vector& col_weights);
Matrix kron_normal_matrix(const std::vector<Matrix>& sensing,
                          const Matrix& coeffs);

}  // namespace serial

}  // namespace pst::kernels

#endif  // PST_KERNELS_HPP_
