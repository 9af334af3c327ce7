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

#ifndef PST_DETECTION_HPP_
#define PST_DETECTION_HPP_

#include <cstdint>
#include <vector>

#include "pst/spectral.hpp"
#include "pst/types.hpp"

namespace pst {

// Default detection threshold.
inline constexpr double kDefaultThreshold = 1.15;

// lambda_1((I - u u') Y_U (I - u u')) / lambda_n(Y_U).  Large when energy
// appears outside the tracked subspace.  Throws IndeterminateStatistic when
// the denominator eigenvalue is (numerically) zero.
double detection_statistic(const SpectralSummary& summary);

struct DetectionOutcome {
  bool changed = false;
  double statistic = 0.0;
  double threshold = 0.0;
};

// Declares a change when the statistic is >= c (ties count as detections).
DetectionOutcome detect_change(const std::vector<Matrix>& sensing,
                               const Matrix& magnitudes,
                               const BasisMatrix& u_prev_hat,
                               double c = kDefaultThreshold);

// Synthetic single-episode detection problem: a subspace estimate at error
// se0 from the pre-change truth, and measurements taken after a rotation by
// theta_radians (theta_radians == 0 means no change happened).
struct DetectionScenario {
  int n = 0;
  int r = 0;
  int m = 0;
  int q = 0;
  double theta_radians = 0.0;
  double se0 = 0.0;
  Vector lambda_bar;  // empty = all ones
};

// Statistic of one Monte Carlo draw of the scenario.
double detection_run_statistic(const DetectionScenario& scenario,
                               std::uint64_t seed);

// `runs` independent statistics, seeded derive_seed(base_seed, i).
std::vector<double> detection_statistics(const DetectionScenario& scenario,
                                         int runs, std::uint64_t base_seed);

struct RocPoint {
  double c = 0.0;
  double false_positive_rate = 0.0;
  double true_positive_rate = 0.0;
};

// Uniform threshold grid (count points from min to max inclusive).
std::vector<double> threshold_grid(double min, double max, int count);

// Shared-statistics ROC: each run's statistic is computed once and swept
// over the whole grid.  Changed runs use seeds base..base+runs-1, unchanged
// runs base+runs..base+2*runs-1.
std::vector<RocPoint> roc_curve(const DetectionScenario& changed,
                                const DetectionScenario& unchanged,
                                const std::vector<double>& c_grid, int runs,
                                std::uint64_t base_seed);

// Trapezoidal area under the (fpr, tpr) curve, with (0,0) and (1,1)
// endpoints appended if missing.
double roc_auc(const std::vector<RocPoint>& points);

}  // namespace pst

#endif  // PST_DETECTION_HPP_
