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

#include "pst/pstpca.hpp"

#include <cmath>
#include <utility>

#include "pst/baselines.hpp"
#include "pst/errors.hpp"
#include "pst/kernels.hpp"
#include "pst/linalg.hpp"
#include "pst/metrics.hpp"
#include "pst/spectral.hpp"
#include "stopwatch.hpp"

namespace pst {

Vector init_u_add(const std::vector<Matrix>& sensing, const Matrix& magnitudes,
                  const BasisMatrix& u_prev_hat) {
  Matrix y_u = build_yu(sensing, magnitudes);
  Matrix projected = project_out(y_u, u_prev_hat);
  return top_eigenpair(projected).second;
}

Vector init_coeffs(const BasisMatrix& u_tilde, const Matrix& sensing_t,
                   const Vector& magnitudes_t) {
  Matrix yb = build_yb(u_tilde, sensing_t, magnitudes_t);
  Vector v = top_eigenpair(yb).second;
  const double scale = std::sqrt(magnitudes_t.squaredNorm() /
                                 static_cast<double>(magnitudes_t.size()));
  return scale * v;
}

Vector update_phase(const BasisMatrix& u_tilde, const Vector& b_tilde_t,
                    const Matrix& sensing_t) {
  if (u_tilde.cols() != b_tilde_t.size())
    throw InvalidDimension("update_phase: coefficient length mismatch");
  if (sensing_t.rows() != u_tilde.rows())
    throw InvalidDimension("update_phase: sensing row mismatch");
  Vector predicted = sensing_t.transpose() * (u_tilde * b_tilde_t);
  Vector phases(predicted.size());
  for (Index i = 0; i < predicted.size(); ++i)
    phases(i) = predicted(i) >= 0.0 ? 1.0 : -1.0;  // sign(0) := +1
  return phases;
}

Matrix update_phases(const BasisMatrix& u_tilde, const Matrix& b_tilde,
                     const std::vector<Matrix>& sensing) {
  const Index q = static_cast<Index>(sensing.size());
  if (b_tilde.cols() != q)
    throw InvalidDimension("update_phases: b_tilde columns != q");
  if (q == 0) throw InvalidInput("update_phases: empty sensing sequence");
  Matrix phases(sensing.front().cols(), q);
#pragma omp parallel for schedule(static)
  for (Index t = 0; t < q; ++t)
    phases.col(t) = update_phase(u_tilde, b_tilde.col(t), sensing[t]);
  return phases;
}

Vector update_u_add(const std::vector<Matrix>& sensing, const Matrix& magnitudes,
                    const Matrix& phases, const BasisMatrix& u_prev_hat,
                    const Matrix& b_tilde,
                    const std::vector<Matrix>* gram_cache) {
  if (sensing.empty()) throw InvalidInput("update_u_add: empty sensing sequence");
  const Index q = static_cast<Index>(sensing.size());
  const Index n = sensing.front().rows(), m = sensing.front().cols();
  const Index r = u_prev_hat.cols();
  if (b_tilde.rows() != r + 1 || b_tilde.cols() != q)
    throw InvalidDimension("update_u_add: b_tilde must be (r+1) x q");
  if (magnitudes.rows() != m || magnitudes.cols() != q)
    throw InvalidDimension("update_u_add: magnitudes must be m x q");
  if (phases.rows() != m || phases.cols() != q)
    throw InvalidDimension("update_u_add: phases must be m x q");

  const Vector beta = b_tilde.row(r).transpose();
  const double beta_energy = beta.squaredNorm();
  if (beta_energy <= 1e-24 * b_tilde.squaredNorm() || beta_energy == 0.0)
    throw DegenerateDirection("update_u_add: no energy in the added coordinate");

  // Residuals the previous estimate cannot explain.
  Matrix projected = u_prev_hat * b_tilde.topRows(r);  // n x q
  Matrix resid(m, q);
#pragma omp parallel for schedule(static)
  for (Index t = 0; t < q; ++t)
    resid.col(t) = phases.col(t).cwiseProduct(magnitudes.col(t)) -
                   sensing[t].transpose() * projected.col(t);

  const Vector beta_sq = beta.cwiseProduct(beta);
  Matrix w = (gram_cache != nullptr && !gram_cache->empty())
                 ? kernels::weighted_gram_sum_cached(*gram_cache, beta_sq)
                 : kernels::weighted_gram_sum(sensing, beta_sq);
  Vector rhs = kernels::weighted_matvec_sum(sensing, resid, beta);

  Vector u = solve_spd_ridge(w, rhs);
  u -= u_prev_hat * (u_prev_hat.transpose() * u);
  u -= u_prev_hat * (u_prev_hat.transpose() * u);
  const double nrm = u.norm();
  if (nrm <= 1e-14)
    throw DegenerateDirection("update_u_add: direction collapsed into the prior");
  return u / nrm;
}

Vector update_coeffs(const BasisMatrix& u_tilde, const Matrix& sensing_t,
                     const Vector& magnitudes_t, const Vector& phases_t) {
  const Index m = sensing_t.cols(), k = u_tilde.cols();
  if (sensing_t.rows() != u_tilde.rows())
    throw InvalidDimension("update_coeffs: sensing row mismatch");
  if (magnitudes_t.size() != m || phases_t.size() != m)
    throw InvalidDimension("update_coeffs: measurement length mismatch");
  if (m < k) throw RankDeficient("update_coeffs: fewer measurements than unknowns");
  Matrix design = sensing_t.transpose() * u_tilde;  // m x k
  Eigen::ColPivHouseholderQR<Matrix> qr(design);
  if (qr.rank() < k)
    throw RankDeficient("update_coeffs: rank-deficient design matrix");
  return qr.solve(phases_t.cwiseProduct(magnitudes_t));
}

RecoveryResult finalize(const BasisMatrix& u_tilde, const Matrix& b_tilde,
                        Index r) {
  if (b_tilde.rows() != u_tilde.cols())
    throw InvalidDimension("finalize: factor shapes disagree");
  if (r < 1 || r > u_tilde.cols())
    throw InvalidDimension("finalize: rank outside [1, cols(u_tilde)]");
  if (b_tilde.cols() < r)
    throw RankDeficient("finalize: fewer instants than the target rank");
  if (!is_orthonormal(u_tilde, 1e-8))
    throw InvalidInput("finalize: basis not orthonormal");
  // u_tilde has orthonormal columns, so the left singular vectors of
  // u_tilde * b_tilde are u_tilde times those of b_tilde.
  Eigen::JacobiSVD<Matrix> svd(b_tilde, Eigen::ComputeThinU);
  RecoveryResult out;
  out.u_hat = u_tilde * svd.matrixU().leftCols(r);
  out.b_hat = out.u_hat.transpose() * (u_tilde * b_tilde);
  out.x_hat = out.u_hat * out.b_hat;
  return out;
}

double residual_loss(const BasisMatrix& u_tilde, const Matrix& b_tilde,
                     const Matrix& phases, const std::vector<Matrix>& sensing,
                     const Matrix& magnitudes) {
  const Index q = static_cast<Index>(sensing.size());
  if (b_tilde.cols() != q || magnitudes.cols() != q || phases.cols() != q)
    throw InvalidDimension("residual_loss: column counts disagree");
  Matrix predicted = u_tilde * b_tilde;  // n x q
  double loss = 0.0;
  for (Index t = 0; t < q; ++t)
    loss += (phases.col(t).cwiseProduct(magnitudes.col(t)) -
             sensing[t].transpose() * predicted.col(t))
                .squaredNorm();
  return loss;
}

namespace {

TracePoint snapshot(int iteration, double seconds, const Episode& episode,
                    const RecoveryResult& estimate) {
  TracePoint p;
  p.iteration = iteration;
  p.seconds = seconds;
  p.subspace_err = subspace_error(estimate.u_hat, episode.u_true);
  p.signal_err = normalized_signal_error(episode.signals, estimate.x_hat);
  return p;
}

}  // namespace

RecoveryResult run_pst_pca(const Episode& episode,
                           const BasisMatrix& u_prev_hat,
                           const PstPcaOptions& options) {
  const Index n = episode.n(), r = episode.r(), m = episode.m(),
              q = episode.q();
  if (u_prev_hat.rows() != n || u_prev_hat.cols() != r)
    throw InvalidDimension("run_pst_pca: prior estimate must be n x r");
  if (m < r + 1)
    throw InvalidDimension("run_pst_pca: need m >= r + 1 measurements");
  if (!is_orthonormal(u_prev_hat, 1e-8))
    throw InvalidInput("run_pst_pca: prior estimate not orthonormal");
  if (options.t_max < 0 || options.delta_u_tol < 0.0 || options.se_break < 0.0)
    throw InvalidConfig("run_pst_pca: negative option");

  Stopwatch watch;
  watch.start();
  Vector u_add = init_u_add(episode.sensing, episode.magnitudes, u_prev_hat);
  u_add -= u_prev_hat * (u_prev_hat.transpose() * u_add);
  u_add.normalize();
  BasisMatrix u_tilde(n, r + 1);
  u_tilde.leftCols(r) = u_prev_hat;
  u_tilde.col(r) = u_add;

  Matrix b_tilde(r + 1, q);
#pragma omp parallel for schedule(static)
  for (Index t = 0; t < q; ++t)
    b_tilde.col(t) =
        init_coeffs(u_tilde, episode.sensing[t], episode.magnitudes.col(t));

  const std::vector<Matrix> grams =
      kernels::build_gram_cache(episode.sensing, options.gram_cache_bytes);
  const std::vector<Matrix>* cache = grams.empty() ? nullptr : &grams;
  watch.stop();

  std::vector<TracePoint> trace;
  trace.push_back(
      snapshot(0, watch.seconds(), episode, finalize(u_tilde, b_tilde, r)));

  for (int iter = 1; iter <= options.t_max; ++iter) {
    watch.start();
    Matrix phases = update_phases(u_tilde, b_tilde, episode.sensing);
    u_add = update_u_add(episode.sensing, episode.magnitudes, phases,
                         u_prev_hat, b_tilde, cache);
    BasisMatrix u_next = u_tilde;
    u_next.col(r) = u_add;
#pragma omp parallel for schedule(static)
    for (Index t = 0; t < q; ++t)
      b_tilde.col(t) = update_coeffs(u_next, episode.sensing[t],
                                     episode.magnitudes.col(t), phases.col(t));
    const double delta = (u_next - u_tilde).norm();
    u_tilde = std::move(u_next);
    watch.stop();

    trace.push_back(
        snapshot(iter, watch.seconds(), episode, finalize(u_tilde, b_tilde, r)));
    if (options.se_break > 0.0 &&
        trace.back().subspace_err <= options.se_break)
      break;
    if (options.delta_u_tol > 0.0 && delta < options.delta_u_tol) break;
  }

  RecoveryResult out = finalize(u_tilde, b_tilde, r);
  out.trace = std::move(trace);
  return out;
}

RecoveryResult refine_with_lrpr(const RecoveryResult& start,
                                const Episode& episode, int iterations) {
  if (iterations < 1)
    throw InvalidConfig("refine_with_lrpr: iterations must be >= 1");
  LrprOptions options;
  options.max_iters = iterations;
  options.init_mode = InitMode::kWarmStart;
  options.u0 = start.u_hat;
  options.b0 = start.b_hat;
  return lrpr_altmin(episode, start.u_hat.cols(), options);
}

}  // namespace pst
