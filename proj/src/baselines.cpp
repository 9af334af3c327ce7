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

#include "pst/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "pst/errors.hpp"
#include "pst/kernels.hpp"
#include "pst/linalg.hpp"
#include "pst/metrics.hpp"
#include "pst/spectral.hpp"
#include "stopwatch.hpp"

namespace pst {
namespace {

TracePoint lrpr_snapshot(int iteration, double seconds, const Episode& episode,
                         const BasisMatrix& u, const Matrix& b) {
  TracePoint p;
  p.iteration = iteration;
  p.seconds = seconds;
  p.subspace_err = subspace_error(u, episode.u_true);
  p.signal_err = normalized_signal_error(episode.signals, u * b);
  return p;
}

}  // namespace

RecoveryResult lrpr_altmin(const Episode& episode, Index r,
                           const LrprOptions& options) {
  const Index n = episode.n(), m = episode.m(), q = episode.q();
  if (r < 1 || r > n) throw InvalidDimension("lrpr_altmin: need 1 <= r <= n");
  if (m < r) throw InvalidDimension("lrpr_altmin: need m >= r");
  if (options.max_iters < 0)
    throw InvalidConfig("lrpr_altmin: negative iteration count");

  Stopwatch watch;
  watch.start();
  BasisMatrix u;
  Matrix b(r, q);
  if (options.init_mode == InitMode::kWarmStart) {
    if (options.u0.rows() != n || options.u0.cols() != r)
      throw InvalidDimension("lrpr_altmin: warm-start basis must be n x r");
    if (options.b0.rows() != r || options.b0.cols() != q)
      throw InvalidDimension("lrpr_altmin: warm-start coeffs must be r x q");
    if (!is_orthonormal(options.u0, 1e-8))
      throw InvalidInput("lrpr_altmin: warm-start basis not orthonormal");
    u = options.u0;
    b = options.b0;
  } else {
    Matrix y_u = build_yu(episode.sensing, episode.magnitudes);
    Eigen::SelfAdjointEigenSolver<Matrix> es(y_u);
    if (es.info() != Eigen::Success)
      throw Error("lrpr_altmin: spectral initialization failed");
    u = es.eigenvectors().rightCols(r);
#pragma omp parallel for schedule(static)
    for (Index t = 0; t < q; ++t)
      b.col(t) =
          init_coeffs(u, episode.sensing[t], episode.magnitudes.col(t));
  }
  const std::vector<Matrix> grams =
      kernels::build_gram_cache(episode.sensing, options.gram_cache_bytes);
  watch.stop();

  std::vector<TracePoint> trace;
  trace.push_back(lrpr_snapshot(0, watch.seconds(), episode, u, b));

  for (int iter = 1; iter <= options.max_iters; ++iter) {
    watch.start();
    Matrix phases = update_phases(u, b, episode.sensing);
    u = lrpr_u_update(episode, phases, b, grams.empty() ? nullptr : &grams);

#pragma omp parallel for schedule(static)
    for (Index t = 0; t < q; ++t)
      b.col(t) = update_coeffs(u, episode.sensing[t],
                               episode.magnitudes.col(t), phases.col(t));
    watch.stop();
    trace.push_back(lrpr_snapshot(iter, watch.seconds(), episode, u, b));
  }

  RecoveryResult out;
  out.u_hat = std::move(u);
  out.b_hat = std::move(b);
  out.x_hat = out.u_hat * out.b_hat;
  out.trace = std::move(trace);
  return out;
}

BasisMatrix lrpr_u_update(const Episode& episode, const Matrix& phases,
                          const Matrix& b,
                          const std::vector<Matrix>* gram_cache) {
  const Index n = episode.n(), m = episode.m(), q = episode.q();
  const Index r = b.rows();
  if (b.cols() != q || phases.rows() != m || phases.cols() != q)
    throw InvalidDimension("lrpr_u_update: inconsistent shapes");

  // Normal equations of the stacked least-squares problem in vec(U):
  // sum_t (b_t b_t' kron A_t A_t') vec(U) = vec(sum_t A_t (c_t . y_t) b_t').
  Matrix normal = kernels::kron_normal_matrix(episode.sensing, b, gram_cache);
  Matrix corrected(n, q);
#pragma omp parallel for schedule(static)
  for (Index t = 0; t < q; ++t)
    corrected.col(t) = episode.sensing[t] *
                       phases.col(t).cwiseProduct(episode.magnitudes.col(t));
  Matrix rhs_mat = corrected * b.transpose();  // n x r
  Vector vec_u = solve_spd_ridge(
      normal, Eigen::Map<const Vector>(rhs_mat.data(), n * r));
  return orthonormalize(Eigen::Map<const Matrix>(vec_u.data(), n, r));
}

namespace {

double wf_loss(const Matrix& at, const Vector& y_sq, const Vector& x,
               Index m) {
  Vector p = at * x;
  return (p.array().square() - y_sq.array()).square().sum() /
         (4.0 * static_cast<double>(m));
}

// One descent step with halving; returns the new loss (x updated in place).
double wf_step(const Matrix& a, const Matrix& at, const Vector& y_sq,
               double base_step, Vector& x, double loss, Index m) {
  Vector p = at * x;
  Vector err = p.array().square() - y_sq.array();
  Vector grad = a * err.cwiseProduct(p) / static_cast<double>(m);
  double eta = base_step;
  for (int halving = 0; halving <= 5; ++halving) {
    Vector cand = x - eta * grad;
    const double cand_loss = wf_loss(at, y_sq, cand, m);
    if (cand_loss <= loss) {
      x = std::move(cand);
      return cand_loss;
    }
    eta *= 0.5;
  }
  return loss;  // no acceptable step; keep the iterate
}

}  // namespace

Vector wf_single(const Matrix& sensing_t, const Vector& magnitudes_t,
                 const WfOptions& options) {
  const Index n = sensing_t.rows(), m = sensing_t.cols();
  if (m < 1) throw InvalidDimension("wf_single: no measurements");
  if (magnitudes_t.size() != m)
    throw InvalidDimension("wf_single: magnitudes length != m");
  if (magnitudes_t.minCoeff() < 0.0)
    throw InvalidInput("wf_single: negative magnitude");
  if (options.max_iters < 0 || options.step_size <= 0.0)
    throw InvalidConfig("wf_single: bad options");

  const double scale =
      std::sqrt(magnitudes_t.squaredNorm() / static_cast<double>(m));
  if (scale == 0.0) return Vector::Zero(n);

  Matrix s = Matrix::Zero(n, n);
  s.selfadjointView<Eigen::Lower>().rankUpdate(
      sensing_t * magnitudes_t.asDiagonal(), 1.0 / static_cast<double>(m));
  Matrix s_full = s.selfadjointView<Eigen::Lower>();
  Vector x = scale * top_eigenpair(s_full).second;

  const Matrix at = sensing_t.transpose();
  const Vector y_sq = magnitudes_t.array().square();
  const double base_step = options.step_size / (scale * scale);
  double loss = wf_loss(at, y_sq, x, m);
  for (int iter = 1; iter <= options.max_iters; ++iter)
    loss = wf_step(sensing_t, at, y_sq, base_step, x, loss, m);
  return x;
}

RecoveryResult wf_recover(const Episode& episode, const WfOptions& options) {
  const Index n = episode.n(), m = episode.m(), q = episode.q(),
              r = episode.r();
  if (q < 1) throw InvalidInput("wf_recover: empty episode");
  if (options.max_iters < 0 || options.step_size <= 0.0)
    throw InvalidConfig("wf_recover: bad options");

  const int iters = options.max_iters;
  Matrix x_hat(n, q);
  Matrix dist_sq(iters + 1, q);
  Matrix secs(iters + 1, q);

#pragma omp parallel for schedule(dynamic)
  for (Index t = 0; t < q; ++t) {
    const Matrix& a = episode.sensing[t];
    const Vector y = episode.magnitudes.col(t);
    const Vector x_true = episode.signals.col(t);
    Stopwatch watch;
    watch.start();
    const double scale = std::sqrt(y.squaredNorm() / static_cast<double>(m));
    Vector x;
    if (scale == 0.0) {
      x = Vector::Zero(n);
    } else {
      Matrix s = Matrix::Zero(n, n);
      s.selfadjointView<Eigen::Lower>().rankUpdate(
          a * y.asDiagonal(), 1.0 / static_cast<double>(m));
      Matrix s_full = s.selfadjointView<Eigen::Lower>();
      x = scale * top_eigenpair(s_full).second;
    }
    watch.stop();
    const double d0 = phase_invariant_dist(x_true, x);
    dist_sq(0, t) = d0 * d0;
    secs(0, t) = watch.seconds();

    const Matrix at = a.transpose();
    const Vector y_sq = y.array().square();
    const double base_step =
        scale > 0.0 ? options.step_size / (scale * scale) : 0.0;
    double loss = scale > 0.0 ? wf_loss(at, y_sq, x, m) : 0.0;
    for (int iter = 1; iter <= iters; ++iter) {
      watch.start();
      if (scale > 0.0) loss = wf_step(a, at, y_sq, base_step, x, loss, m);
      watch.stop();
      const double d = phase_invariant_dist(x_true, x);
      dist_sq(iter, t) = d * d;
      secs(iter, t) = watch.seconds();
    }
    x_hat.col(t) = x;
  }

  const double signal_energy = episode.signals.squaredNorm();
  std::vector<TracePoint> trace;
  trace.reserve(iters + 1);
  for (int k = 0; k <= iters; ++k) {
    TracePoint p;
    p.iteration = k;
    p.seconds = secs.row(k).sum();  // total work across columns
    p.signal_err = signal_energy > 0.0
                       ? dist_sq.row(k).sum() / signal_energy
                       : std::numeric_limits<double>::quiet_NaN();
    p.subspace_err = std::numeric_limits<double>::quiet_NaN();
    trace.push_back(p);
  }

  RecoveryResult out;
  Eigen::BDCSVD<Matrix> svd(x_hat, Eigen::ComputeThinU);
  out.u_hat = svd.matrixU().leftCols(std::min(r, svd.matrixU().cols()));
  out.b_hat = out.u_hat.transpose() * x_hat;
  out.x_hat = std::move(x_hat);
  out.trace = std::move(trace);
  return out;
}

}  // namespace pst
