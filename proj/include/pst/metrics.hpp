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

#ifndef PST_METRICS_HPP_
#define PST_METRICS_HPP_

#include "pst/types.hpp"

namespace pst {

// Principal-angle subspace error ||(I - U1 U1') U2||_2 for orthonormal
// inputs, evaluated as the largest singular value of U2 - U1 (U1' U2).
// Symmetric in its arguments when both are orthonormal with equal width.
double subspace_error(const BasisMatrix& u1, const BasisMatrix& u2);

// min(||z1 - z2||, ||z1 + z2||): distance modulo the global sign that
// magnitude-only measurements cannot determine.
double phase_invariant_dist(const Vector& z1, const Vector& z2);

// sum_t phase_invariant_dist(x.col(t), x_hat.col(t))^2 / ||x||_F^2.
// Throws UndefinedDenominator when x is identically zero.
double normalized_signal_error(const Matrix& x, const Matrix& x_hat);

struct ErrorReport {
  double subspace_err;
  double signal_err;
  Vector per_column_dist;  // phase-invariant distance per time instant
};

ErrorReport make_error_report(const BasisMatrix& u, const BasisMatrix& u_hat,
                              const Matrix& x, const Matrix& x_hat);

}  // namespace pst

#endif  // PST_METRICS_HPP_
