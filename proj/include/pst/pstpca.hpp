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

#ifndef PST_PSTPCA_HPP_
#define PST_PSTPCA_HPP_

#include <vector>

#include "pst/model.hpp"
#include "pst/types.hpp"

namespace pst {

// Subspace-change recovery from phaseless measurements.
//
// After a change is detected, the new subspace is estimated by augmenting
// the previous estimate u_prev_hat with one extra direction and alternating
// between three least-squares style updates:
//
//   phases  c_t   = sign of the predicted measurements,
//   u_add         = direction explaining the residual the previous estimate
//                   cannot (a single n-dim least-squares problem),
//   coeffs  b_t   = per-instant least squares against [u_prev_hat, u_add].
//
// The final rank-r estimate is read off the top left singular vectors of
// the reconstructed low-rank matrix [u_prev_hat, u_add] * b_tilde.

// Estimate over the augmented (r+1)-dimensional space.
struct AugmentedEstimate {
  BasisMatrix u_tilde;  // n x (r+1)
  Matrix b_tilde;       // (r+1) x q
  Matrix phases;        // m x q, entries in {-1, +1}
};

struct TracePoint {
  int iteration = 0;          // 0 is the spectral initialization
  double seconds = 0.0;       // cumulative algorithm time (metrics excluded)
  double subspace_err = 0.0;  // against the episode's true subspace
  double signal_err = 0.0;    // normalized signal error
};

struct RecoveryResult {
  BasisMatrix u_hat;  // n x r
  Matrix b_hat;       // r x q
  Matrix x_hat;       // n x q
  std::vector<TracePoint> trace;
};

struct PstPcaOptions {
  int t_max = 12;
  // Early exit when ||u_tilde_new - u_tilde||_F drops below this; 0 disables.
  double delta_u_tol = 1e-9;
  // Early exit when the subspace error drops to this level; 0 disables.
  double se_break = 0.0;
  // Budget for caching A_t A_t' across iterations.
  std::size_t gram_cache_bytes = std::size_t{1} << 30;
};

// Spectral initialization of the added direction: top eigenvector of Y_U
// projected off u_prev_hat.
Vector init_u_add(const std::vector<Matrix>& sensing, const Matrix& magnitudes,
                  const BasisMatrix& u_prev_hat);

// Spectral initialization of one instant's augmented coefficients: top
// eigenvector of build_yb scaled to the root mean square measurement energy
// sqrt(sum_i y_i^2 / m).
Vector init_coeffs(const BasisMatrix& u_tilde, const Matrix& sensing_t,
                   const Vector& magnitudes_t);

// sign(A_t' u_tilde b_tilde_t), with sign(0) := +1.
Vector update_phase(const BasisMatrix& u_tilde, const Vector& b_tilde_t,
                    const Matrix& sensing_t);
Matrix update_phases(const BasisMatrix& u_tilde, const Matrix& b_tilde,
                     const std::vector<Matrix>& sensing);

// Least-squares update of the added direction from the residuals
// d_t = c_t . y_t - A_t' u_prev_hat b_tilde(0:r-1, t), solving
// (sum_t beta_t^2 A_t A_t') u = sum_t beta_t A_t d_t with beta_t the last
// coefficient row, then projecting off u_prev_hat and normalizing.  Throws
// DegenerateDirection when the beta energy is (numerically) zero.
Vector update_u_add(const std::vector<Matrix>& sensing, const Matrix& magnitudes,
                    const Matrix& phases, const BasisMatrix& u_prev_hat,
                    const Matrix& b_tilde,
                    const std::vector<Matrix>* gram_cache = nullptr);

// Per-instant coefficient least squares against the augmented basis.
Vector update_coeffs(const BasisMatrix& u_tilde, const Matrix& sensing_t,
                     const Vector& magnitudes_t, const Vector& phases_t);

// Rank-r truncation: u_hat spans the top-r left singular directions of
// u_tilde * b_tilde, b_hat the matching coefficients, x_hat = u_hat * b_hat.
RecoveryResult finalize(const BasisMatrix& u_tilde, const Matrix& b_tilde,
                        Index r);

// Phase-retrieval residual sum_t ||c_t . y_t - A_t' u_tilde b_tilde_t||^2.
// The alternating updates never increase it.
double residual_loss(const BasisMatrix& u_tilde, const Matrix& b_tilde,
                     const Matrix& phases, const std::vector<Matrix>& sensing,
                     const Matrix& magnitudes);

// Full pipeline (init + t_max alternating rounds + finalize).  The trace
// has one point per completed round plus the initialization.
RecoveryResult run_pst_pca(const Episode& episode,
                           const BasisMatrix& u_prev_hat,
                           const PstPcaOptions& options = {});

// Polish a recovery by a few warm-started alternating-minimization passes
// over the full rank-r factorization (see baselines.hpp).
RecoveryResult refine_with_lrpr(const RecoveryResult& start,
                                const Episode& episode, int iterations);

}  // namespace pst

#endif  // PST_PSTPCA_HPP_
