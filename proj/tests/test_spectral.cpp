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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <vector>

#include "pst/metrics.hpp"
#include "pst/model.hpp"
#include "pst/random.hpp"
#include "pst/spectral.hpp"
#include "testutil.hpp"

using namespace pst;
using testutil::jacobi_eig;
using testutil::random_symmetric;
using testutil::rel_err;

namespace {

// Plain-loop oracle for the y^2-weighted second moment (Eq. 1 shape).
Matrix build_yu_oracle(const std::vector<Matrix>& sensing,
                       const Matrix& magnitudes) {
  const Index n = sensing.front().rows();
  const Index m = magnitudes.rows();
  const Index q = magnitudes.cols();
  Matrix out = Matrix::Zero(n, n);
  for (Index t = 0; t < q; ++t)
    for (Index i = 0; i < m; ++i) {
      const Vector a = sensing[t].col(i);
      out += magnitudes(i, t) * magnitudes(i, t) * a * a.transpose();
    }
  return out / static_cast<double>(m * q);
}

}  // namespace

TEST_CASE("build_yu matches a plain-loop recomputation") {
  Rng rng(401);
  BasisMatrix u = generate_subspace(9, 2, rng);
  Episode ep = make_episode(u, Vector::Ones(2), 6, 8, rng);
  Matrix fast = build_yu(ep.sensing, ep.magnitudes);
  Matrix oracle = build_yu_oracle(ep.sensing, ep.magnitudes);
  CHECK(rel_err(fast, oracle) < 1e-12);
  CHECK(rel_err(fast, fast.transpose()) == 0.0);
}

TEST_CASE("build_yu concentrates around 2 U Lh U' + tr(Lh) I") {
  // Conditional on the signals, E[y^2 a a'] = 2 x x' + ||x||^2 I; with
  // enough measurements the empirical average lands within a few percent.
  Rng rng(402);
  const Index n = 24, r = 3, q = 200, m = 500;
  BasisMatrix u = generate_subspace(n, r, rng);
  Episode ep = make_episode(u, Vector::Ones(r), q, m, rng);
  Matrix y_u = build_yu(ep.sensing, ep.magnitudes);

  Matrix lambda_hat = ep.coeffs * ep.coeffs.transpose() /
                      static_cast<double>(q);  // empirical covariance
  Matrix analytic = 2.0 * u * lambda_hat * u.transpose() +
                    lambda_hat.trace() * Matrix::Identity(n, n);
  const double rel = (y_u - analytic).operatorNorm() / analytic.operatorNorm();
  CHECK(rel < 0.05);
}

TEST_CASE("project_out matches the dense projector formula") {
  Rng rng(403);
  BasisMatrix u = generate_subspace(11, 3, rng);
  Matrix s = random_symmetric(11, rng);
  Matrix p = Matrix::Identity(11, 11) - u * u.transpose();
  Matrix oracle = p * s * p;
  Matrix got = project_out(s, u);
  CHECK(rel_err(got, oracle) < 1e-12);
  // Projecting twice changes nothing.
  CHECK(rel_err(project_out(got, u), got) < 1e-12);
  // The result annihilates the projected-out subspace.
  CHECK((got * u).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("build_yb is the (r+1) x (r+1) compression of the column moment") {
  Rng rng(404);
  const Index n = 10, r = 2, m = 40;
  BasisMatrix u_tilde = generate_subspace(n, r + 1, rng);
  Matrix sensing_t = gaussian_matrix(n, m, rng);
  Vector x = gaussian_vector(n, rng);
  Vector y = (sensing_t.transpose() * x).cwiseAbs();

  Matrix got = build_yb(u_tilde, sensing_t, y);
  REQUIRE(got.rows() == r + 1);
  REQUIRE(got.cols() == r + 1);
  Matrix proj = u_tilde.transpose() * sensing_t;  // (r+1) x m
  Matrix oracle = Matrix::Zero(r + 1, r + 1);
  for (Index i = 0; i < m; ++i)
    oracle += y(i) * y(i) * proj.col(i) * proj.col(i).transpose();
  oracle /= static_cast<double>(m);
  CHECK(rel_err(got, oracle) < 1e-12);
}

TEST_CASE("top_eigenpair and min_eigenvalue agree with the Jacobi oracle") {
  Rng rng(405);
  for (int round = 0; round < 20; ++round) {
    const Index n = 3 + (round % 8);
    Matrix s = random_symmetric(n, rng);
    auto [evals, evecs] = jacobi_eig(s);
    auto [top_val, top_vec] = top_eigenpair(s);
    CHECK(top_val == doctest::Approx(evals(0)).epsilon(1e-10));
    // Compare directions modulo sign.
    const double align = std::abs(top_vec.dot(evecs.col(0)));
    CHECK(align == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(min_eigenvalue(s) == doctest::Approx(evals(n - 1)).epsilon(1e-10));
  }
}

TEST_CASE("top_eigenpair returns a deterministic sign") {
  Matrix s(3, 3);
  s << 5.0, 0.0, 0.0, 0.0, 2.0, 0.0, 0.0, 0.0, 1.0;
  auto [val, vec] = top_eigenpair(s);
  CHECK(val == doctest::Approx(5.0));
  CHECK(vec(0) > 0.0);  // first significant coordinate made positive
  auto [val2, vec2] = top_eigenpair(s);
  CHECK((vec - vec2).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("analytic projected moment exposes u_add with the predicted gap") {
  // With an exact prior, the projected analytic moment has top eigenvector
  // u_add and eigen-gap 2 sin(theta)^2 lambda_min.
  Rng rng(406);
  const Index n = 20, r = 4;
  const double theta = 40.0 * std::numbers::pi / 180.0;
  BasisMatrix u_prev = generate_subspace(n, r, rng);
  RotationResult res = rotate_one_direction(u_prev, theta, 1, rng);
  Vector lambda_bar = Vector::Ones(r);

  Matrix analytic =
      2.0 * res.basis * lambda_bar.asDiagonal() * res.basis.transpose() +
      lambda_bar.sum() * Matrix::Identity(n, n);
  Matrix projected = project_out(analytic, u_prev);
  auto [evals, evecs] = jacobi_eig(projected);

  const double expected_gap = 2.0 * std::sin(theta) * std::sin(theta) *
                              lambda_bar.minCoeff();
  CHECK(evals(0) - evals(1) == doctest::Approx(expected_gap).epsilon(1e-10));
  CHECK(std::abs(evecs.col(0).dot(res.event.u_add)) ==
        doctest::Approx(1.0).epsilon(1e-10));

  auto [top_val, top_vec] = top_eigenpair(projected);
  CHECK(std::abs(top_vec.dot(res.event.u_add)) ==
        doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("summarize bundles the spectral pieces consistently") {
  Rng rng(407);
  BasisMatrix u = generate_subspace(12, 3, rng);
  Episode ep = make_episode(u, Vector::Ones(3), 10, 20, rng);
  BasisMatrix u_hat = perturb_subspace(u, 1e-3, rng);

  SpectralSummary sum = summarize(ep.sensing, ep.magnitudes, u_hat);
  Matrix y_u = build_yu(ep.sensing, ep.magnitudes);
  CHECK(rel_err(sum.y_u, y_u) == 0.0);
  CHECK(rel_err(sum.y_u_projected, project_out(y_u, u_hat)) == 0.0);
  auto [top_val, top_vec] = top_eigenpair(sum.y_u_projected);
  CHECK(sum.top_projected == doctest::Approx(top_val).epsilon(1e-14));
  CHECK((sum.top_direction - top_vec).cwiseAbs().maxCoeff() == 0.0);
  CHECK(sum.min_yu == doctest::Approx(min_eigenvalue(y_u)).epsilon(1e-14));
}
