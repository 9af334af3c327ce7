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

#ifndef PST_BASELINES_HPP_
#define PST_BASELINES_HPP_

#include <vector>

#include "pst/model.hpp"
#include "pst/pstpca.hpp"
#include "pst/types.hpp"

namespace pst {

// Low-rank phase retrieval by alternating minimization, recovering the full
// rank-r factorization from scratch (no tracking prior).
enum class InitMode { kSpectral, kWarmStart };

struct LrprOptions {
  int max_iters = 15;
  InitMode init_mode = InitMode::kSpectral;
  // Warm start (used when init_mode == kWarmStart).
  BasisMatrix u0;
  Matrix b0;
  std::size_t gram_cache_bytes = std::size_t{1} << 30;
};

// Spectral init (top-r eigenvectors of Y_U) followed by max_iters rounds of
//   phases -> subspace (one n*r x n*r normal-equations solve) -> coeffs.
// The subspace iterate is re-orthonormalized each round.  Trace point k
// reports the estimate after k rounds (k = 0 is the initialization).
RecoveryResult lrpr_altmin(const Episode& episode, Index r,
                           const LrprOptions& options = {});

// One exact subspace update at fixed phases and coefficients: solves the
// stacked least-squares problem in vec(U) through its blockwise-assembled
// normal equations and re-orthonormalizes the result.  This is the U step
// of lrpr_altmin, exposed so the block descent property can be checked.
BasisMatrix lrpr_u_update(const Episode& episode, const Matrix& phases,
                          const Matrix& b,
                          const std::vector<Matrix>* gram_cache = nullptr);

// Wirtinger-flow style phase retrieval of a single column: spectral init
// scaled to the measurement energy, then gradient descent on the
// amplitude-squared loss (1/(4m)) sum_i ((a_i'x)^2 - y_i^2)^2 with step
// step_size/||x_0||^2.  If a step would increase the loss it is halved up
// to 5 times, then skipped; the loss never increases.
struct WfOptions {
  int max_iters = 200;
  double step_size = 0.2;
};

Vector wf_single(const Matrix& sensing_t, const Vector& magnitudes_t,
                 const WfOptions& options = {});

// Column-by-column recovery of a whole episode.  Traces report the mean
// progress by iteration index across columns; subspace_err is NaN because
// the per-column method maintains no subspace iterate (u_hat in the result
// is read off the final estimates' top singular directions).
RecoveryResult wf_recover(const Episode& episode, const WfOptions& options = {});

}  // namespace pst

#endif  // PST_BASELINES_HPP_
