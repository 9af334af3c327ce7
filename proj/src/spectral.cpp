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

#include "pst/spectral.hpp"

#include <cmath>

#include "pst/errors.hpp"
#include "pst/kernels.hpp"
#include "pst/linalg.hpp"

namespace pst {
namespace {

void check_symmetric(const Matrix& s, const char* what) {
  if (s.rows() != s.cols()) throw InvalidDimension(std::string(what) + ": not square");
  if (s.size() == 0) throw InvalidDimension(std::string(what) + ": empty matrix");
  const double scale = std::max(1.0, s.cwiseAbs().maxCoeff());
  if ((s - s.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale)
    throw InvalidInput(std::string(what) + ": matrix not symmetric");
}

}  // namespace

Matrix build_yu(const std::vector<Matrix>& sensing, const Matrix& magnitudes) {
  if (sensing.empty()) throw InvalidInput("build_yu: empty sensing sequence");
  const Index m = sensing.front().cols();
  const Index q = static_cast<Index>(sensing.size());
  if (magnitudes.rows() != m || magnitudes.cols() != q)
    throw InvalidDimension("build_yu: magnitudes must be m x q");
  if (magnitudes.minCoeff() < 0.0)
    throw InvalidInput("build_yu: negative magnitude");
  const Matrix weights = magnitudes.array().square();
  return kernels::weighted_second_moment(sensing, weights,
                                         1.0 / static_cast<double>(m * q));
}

Matrix project_out(const Matrix& y, const BasisMatrix& u) {
  if (y.rows() != y.cols()) throw InvalidDimension("project_out: matrix not square");
  if (u.rows() != y.rows()) throw InvalidDimension("project_out: basis row mismatch");
  if (!is_orthonormal(u, 1e-8)) throw InvalidInput("project_out: basis not orthonormal");
  Matrix uty = u.transpose() * y;          // r x n
  Matrix utyu = uty * u;                   // r x r
  Matrix out = y;
  out.noalias() -= u * uty;
  out.noalias() -= uty.transpose() * u.transpose();
  out.noalias() += u * utyu * u.transpose();
  return out;
}

Matrix build_yb(const BasisMatrix& u_tilde, const Matrix& sensing_t,
                const Vector& magnitudes_t) {
  if (sensing_t.rows() != u_tilde.rows())
    throw InvalidDimension("build_yb: sensing row mismatch");
  const Index m = sensing_t.cols();
  if (magnitudes_t.size() != m)
    throw InvalidDimension("build_yb: magnitudes length != m");
  if (m == 0) throw InvalidDimension("build_yb: no measurements");
  if (magnitudes_t.minCoeff() < 0.0)
    throw InvalidInput("build_yb: negative magnitude");
  const Index k = u_tilde.cols();
  Matrix reduced = u_tilde.transpose() * sensing_t;  // k x m
  reduced = reduced * magnitudes_t.asDiagonal();
  Matrix yb = Matrix::Zero(k, k);
  yb.selfadjointView<Eigen::Lower>().rankUpdate(reduced,
                                                1.0 / static_cast<double>(m));
  return yb.selfadjointView<Eigen::Lower>();
}

std::pair<double, Vector> top_eigenpair(const Matrix& sym) {
  check_symmetric(sym, "top_eigenpair");
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
  if (es.info() != Eigen::Success)
    throw Error("top_eigenpair: eigensolver failed");
  const Index n = sym.rows();
  Vector v = es.eigenvectors().col(n - 1);
  // Sign convention: first coordinate of magnitude > 1e-10 is positive;
  // fall back to the largest-magnitude coordinate for near-zero vectors.
  Index pivot = 0;
  double best = -1.0;
  for (Index i = 0; i < n; ++i) {
    const double mag = std::abs(v(i));
    if (mag > 1e-10) {
      pivot = i;
      break;
    }
    if (mag > best) {
      best = mag;
      pivot = i;
    }
  }
  if (v(pivot) < 0.0) v = -v;
  return {es.eigenvalues()(n - 1), v};
}

double min_eigenvalue(const Matrix& sym) {
  check_symmetric(sym, "min_eigenvalue");
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw Error("min_eigenvalue: eigensolver failed");
  return es.eigenvalues()(0);
}

SpectralSummary summarize(const std::vector<Matrix>& sensing,
                          const Matrix& magnitudes,
                          const BasisMatrix& u_prev_hat) {
  SpectralSummary s;
  s.y_u = build_yu(sensing, magnitudes);
  s.y_u_projected = project_out(s.y_u, u_prev_hat);
  auto [lam, vec] = top_eigenpair(s.y_u_projected);
  s.top_projected = lam;
  s.top_direction = std::move(vec);
  s.min_yu = min_eigenvalue(s.y_u);
  return s;
}

}  // namespace pst
