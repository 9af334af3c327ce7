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

#ifndef PST_MODEL_HPP_
#define PST_MODEL_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "pst/types.hpp"

namespace pst {

// One planted subspace change U_prev -> U_new.  The changed column rotates
// by theta (radians) towards a direction u_add orthogonal to U_prev:
//
//   u_chd = sin(theta) * u_add + cos(theta) * u_chg
//   u_del = sin(theta) * u_chg - cos(theta) * u_add
//
// u_chg is the column that rotated away, u_chd its replacement, u_add the
// direction added to the span and u_del the direction that left it.
struct ChangeEvent {
  Vector u_chg;
  Vector u_chd;
  Vector u_add;
  Vector u_del;
  double theta = 0.0;
  int chg_index = -1;
};

// A stretch of time instants sharing one true subspace, together with the
// phaseless measurements taken over it.  magnitudes(i, t) =
// |sensing[t].col(i) . signals.col(t)|.
struct Episode {
  BasisMatrix u_true;            // n x r
  Matrix coeffs;                 // r x q
  Matrix signals;                // n x q, equals u_true * coeffs
  std::vector<Matrix> sensing;   // q matrices, each n x m
  Matrix magnitudes;             // m x q
  Vector lambda_bar;             // diagonal of the coefficient covariance

  Index n() const { return u_true.rows(); }
  Index r() const { return u_true.cols(); }
  Index m() const { return sensing.empty() ? 0 : sensing.front().cols(); }
  Index q() const { return static_cast<Index>(sensing.size()); }
};

struct ScenarioConfig {
  int n = 0;
  int r = 0;
  int m = 0;
  int q = 0;  // length of the final (or every) episode
  std::vector<double> theta_degrees;  // one entry per change
  std::vector<int> change_times;      // absolute; empty = changes at j*q
  std::vector<double> lambda_bar;     // empty = all ones
  std::uint64_t seed = 0;
};

struct TrackingScenario {
  std::vector<Episode> episodes;
  std::vector<ChangeEvent> change_events;  // episodes.size() - 1 entries
  std::vector<int> change_times;           // resolved absolute change times
  double delta_bound = 0.0;                // max sin(theta) over the changes
};

// Haar-distributed n x r orthonormal basis (QR of a Gaussian matrix).
BasisMatrix generate_subspace(Index n, Index r, Rng& rng);

struct RotationResult {
  BasisMatrix basis;
  ChangeEvent event;
};

// Rotates column chg_index of u_prev by theta (radians) towards a fresh
// random direction orthogonal to span(u_prev).  Requires n > r and
// 0 <= theta <= pi/2.
RotationResult rotate_one_direction(const BasisMatrix& u_prev, double theta,
                                    Index chg_index, Rng& rng);

// r x q coefficients with independent rows, row k ~ N(0, lambda_bar(k)).
Matrix generate_coefficients(Index r, Index q, const Vector& lambda_bar,
                             Rng& rng);

struct Measurements {
  std::vector<Matrix> sensing;  // q matrices, n x m, i.i.d. standard normal
  Matrix magnitudes;            // m x q
};

// Draws one fresh sensing matrix per column of signals and records the
// measurement magnitudes |A_t' x_t|.
Measurements measure(const Matrix& signals, Index m, Rng& rng);

// Orthonormal basis at subspace error ~= target_se from u_true (within 10%
// relative, exact for target_se = 0).  Requires 0 <= target_se < 1.
BasisMatrix perturb_subspace(const BasisMatrix& u_true, double target_se,
                             Rng& rng);

Episode make_episode(const BasisMatrix& u_true, const Vector& lambda_bar,
                     Index q, Index m, Rng& rng);

// Full generative pipeline: initial subspace, one rotation per theta, one
// episode per subspace.  Episode j < J spans up to change_times[j]; the last
// episode has length cfg.q.  Everything is a deterministic function of
// cfg.seed.
TrackingScenario generate_scenario(const ScenarioConfig& cfg);

// JSON round-trip for scenario configs.  Sensing matrices and coefficients
// are never serialized; they are regenerated from the seed.  Unknown keys
// are rejected.
ScenarioConfig load_scenario_config(const std::string& path);
void save_scenario_config(const ScenarioConfig& cfg, const std::string& path);
ScenarioConfig scenario_config_from_json_text(const std::string& text);
std::string scenario_config_to_json_text(const ScenarioConfig& cfg);

}  // namespace pst

#endif  // PST_MODEL_HPP_
