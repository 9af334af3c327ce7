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

#include "pst/metrics.hpp"

#include <algorithm>

#include "pst/errors.hpp"

namespace pst {

double subspace_error(const BasisMatrix& u1, const BasisMatrix& u2) {
  if (u1.rows() != u2.rows())
    throw InvalidDimension("subspace_error: row mismatch");
  if (u2.cols() == 0) return 0.0;
  Matrix resid = u2 - u1 * (u1.transpose() * u2);
  Eigen::JacobiSVD<Matrix> svd(resid);
  return svd.singularValues()(0);
}

double phase_invariant_dist(const Vector& z1, const Vector& z2) {
  if (z1.size() != z2.size())
    throw InvalidDimension("phase_invariant_dist: size mismatch");
  return std::min((z1 - z2).norm(), (z1 + z2).norm());
}

double normalized_signal_error(const Matrix& x, const Matrix& x_hat) {
  if (x.rows() != x_hat.rows() || x.cols() != x_hat.cols())
    throw InvalidDimension("normalized_signal_error: shape mismatch");
  const double den = x.squaredNorm();
  if (den == 0.0)
    throw UndefinedDenominator("normalized_signal_error: zero reference");
  double num = 0.0;
  for (Index t = 0; t < x.cols(); ++t) {
    const double d = phase_invariant_dist(x.col(t), x_hat.col(t));
    num += d * d;
  }
  return num / den;
}

ErrorReport make_error_report(const BasisMatrix& u, const BasisMatrix& u_hat,
                              const Matrix& x, const Matrix& x_hat) {
  ErrorReport report;
  report.subspace_err = subspace_error(u_hat, u);
  report.signal_err = normalized_signal_error(x, x_hat);
  report.per_column_dist.resize(x.cols());
  for (Index t = 0; t < x.cols(); ++t)
    report.per_column_dist(t) = phase_invariant_dist(x.col(t), x_hat.col(t));
  return report;
}

}  // namespace pst
