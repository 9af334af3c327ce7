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

#ifndef PST_SPECTRAL_HPP_
#define PST_SPECTRAL_HPP_

#include <utility>
#include <vector>

#include "pst/types.hpp"

namespace pst {

// Sample second-moment matrix of the measurements,
//
//   Y_U = (1/(m q)) sum_t sum_i y_{i,t}^2 a_{i,t} a_{i,t}',
//
// whose expectation is 2 U LambdaHat U' + tr(LambdaHat) I with LambdaHat the
// empirical covariance of the subspace coefficients.  Squaring the
// magnitudes is what makes that identity hold.
Matrix build_yu(const std::vector<Matrix>& sensing, const Matrix& magnitudes);

// (I - u u') y (I - u u') without forming the n x n projector.
Matrix project_out(const Matrix& y, const BasisMatrix& u);

// Per-instant reduced matrix Y_b = u_tilde' [ (1/m) sum_i y_i^2 a_i a_i' ]
// u_tilde used for the coefficient initialization.
Matrix build_yb(const BasisMatrix& u_tilde, const Matrix& sensing_t,
                const Vector& magnitudes_t);

// Largest eigenpair of a symmetric matrix.  The eigenvector sign is fixed by
// making its first coordinate of magnitude > 1e-10 positive, so results are
// reproducible across runs and solvers.
std::pair<double, Vector> top_eigenpair(const Matrix& sym);

double min_eigenvalue(const Matrix& sym);

// The spectral quantities consumed by detection and by the recovery
// initialization, computed from one episode's measurements and the previous
// subspace estimate.
struct SpectralSummary {
  Matrix y_u;              // n x n
  Matrix y_u_projected;    // n x n, projected off u_prev_hat
  double top_projected;    // lambda_1 of the projected matrix
  Vector top_direction;    // its eigenvector
  double min_yu;           // lambda_n of y_u
};

SpectralSummary summarize(const std::vector<Matrix>& sensing,
                          const Matrix& magnitudes,
                          const BasisMatrix& u_prev_hat);

}  // namespace pst

#endif  // PST_SPECTRAL_HPP_
