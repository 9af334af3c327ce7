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

#include "pst/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "pst/errors.hpp"

namespace pst {

bool is_orthonormal(const Matrix& m, double tol) {
  if (m.cols() == 0) return true;
  if (m.rows() < m.cols()) return false;
  Matrix gram = m.transpose() * m;
  gram.diagonal().array() -= 1.0;
  return gram.cwiseAbs().maxCoeff() <= tol;
}

BasisMatrix orthonormalize(const Matrix& m) {
  const Index rows = m.rows(), cols = m.cols();
  if (cols > rows) throw RankDeficient("orthonormalize: more columns than rows");
  if (cols == 0) return Matrix(rows, 0);
  Eigen::HouseholderQR<Matrix> qr(m);
  Matrix q = qr.householderQ() * Matrix::Identity(rows, cols);
  const Matrix& packed = qr.matrixQR();
  double dmax = 0.0;
  for (Index j = 0; j < cols; ++j) dmax = std::max(dmax, std::abs(packed(j, j)));
  for (Index j = 0; j < cols; ++j) {
    const double rjj = packed(j, j);
    if (std::abs(rjj) <= 1e-13 * std::max(1.0, dmax))
      throw RankDeficient("orthonormalize: input is rank deficient");
    if (rjj < 0.0) q.col(j) = -q.col(j);
  }
  return q;
}

namespace {

// One LDLT pass; returns false when the factor is not usably positive.
bool ldlt_spectrum(const Eigen::LDLT<Matrix>& ldlt, double* dmin, double* dmax) {
  if (ldlt.info() != Eigen::Success) return false;
  Vector d = ldlt.vectorD();
  *dmin = d.minCoeff();
  *dmax = d.maxCoeff();
  return *dmax > 0.0;
}

}  // namespace

Vector solve_spd_ridge(const Matrix& w, const Vector& rhs) {
  const Index n = w.rows();
  if (w.cols() != n) throw InvalidDimension("solve_spd_ridge: matrix not square");
  if (rhs.size() != n) throw InvalidDimension("solve_spd_ridge: rhs size mismatch");
  if (n == 0) return Vector(0);

  Eigen::LDLT<Matrix> ldlt(w);
  double dmin = 0.0, dmax = 0.0;
  if (!ldlt_spectrum(ldlt, &dmin, &dmax) || dmin <= 0.0)
    throw RankDeficient("solve_spd_ridge: matrix is singular or indefinite");
  if (dmax / dmin <= 1e12) return ldlt.solve(rhs);

  Matrix ridged = w;
  ridged.diagonal().array() += 1e-10 * w.trace() / static_cast<double>(n);
  Eigen::LDLT<Matrix> ldlt2(ridged);
  if (!ldlt_spectrum(ldlt2, &dmin, &dmax) || dmin <= 0.0 || dmax / dmin > 1e15)
    throw RankDeficient("solve_spd_ridge: matrix is singular after ridge");
  return ldlt2.solve(rhs);
}

}  // namespace pst
