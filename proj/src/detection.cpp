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

#include "pst/detection.hpp"

#include <algorithm>
#include <cmath>

#include "pst/errors.hpp"
#include "pst/model.hpp"

namespace pst {

double detection_statistic(const SpectralSummary& summary) {
  const double num = summary.top_projected;
  const double den = summary.min_yu;
  if (den <= 1e-12 * std::max(1.0, std::abs(num)))
    throw IndeterminateStatistic("detection_statistic: zero denominator eigenvalue");
  return num / den;
}

DetectionOutcome detect_change(const std::vector<Matrix>& sensing,
                               const Matrix& magnitudes,
                               const BasisMatrix& u_prev_hat, double c) {
  SpectralSummary summary = summarize(sensing, magnitudes, u_prev_hat);
  DetectionOutcome out;
  out.statistic = detection_statistic(summary);
  out.threshold = c;
  out.changed = out.statistic >= c;
  return out;
}

namespace {

void check_detection_scenario(const DetectionScenario& sc) {
  if (sc.n < 1 || sc.r < 1 || sc.m < 1 || sc.q < 1)
    throw InvalidConfig("detection scenario: n, r, m, q must be >= 1");
  if (sc.r >= sc.n)
    throw InvalidConfig("detection scenario: need r < n");
  if (!(sc.se0 >= 0.0 && sc.se0 < 1.0))
    throw InvalidConfig("detection scenario: se0 outside [0, 1)");
  if (sc.lambda_bar.size() != 0 && sc.lambda_bar.size() != sc.r)
    throw InvalidConfig("detection scenario: lambda_bar length != r");
}

}  // namespace

double detection_run_statistic(const DetectionScenario& scenario,
                               std::uint64_t seed) {
  check_detection_scenario(scenario);
  Rng rng(seed);
  const Vector lambda_bar = scenario.lambda_bar.size() > 0
                                ? scenario.lambda_bar
                                : Vector::Ones(scenario.r);
  BasisMatrix u_prev = generate_subspace(scenario.n, scenario.r, rng);
  BasisMatrix u_hat = perturb_subspace(u_prev, scenario.se0, rng);
  BasisMatrix u_cur = u_prev;
  if (scenario.theta_radians > 0.0)
    u_cur = rotate_one_direction(u_prev, scenario.theta_radians,
                                 scenario.r - 1, rng)
                .basis;
  Episode ep = make_episode(u_cur, lambda_bar, scenario.q, scenario.m, rng);
  return detection_statistic(summarize(ep.sensing, ep.magnitudes, u_hat));
}

std::vector<double> detection_statistics(const DetectionScenario& scenario,
                                         int runs, std::uint64_t base_seed) {
  if (runs < 1) throw InvalidConfig("detection_statistics: runs must be >= 1");
  check_detection_scenario(scenario);
  std::vector<double> stats(runs);
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < runs; ++i)
    stats[i] = detection_run_statistic(scenario, derive_seed(base_seed, i));
  return stats;
}

std::vector<double> threshold_grid(double min, double max, int count) {
  if (count < 1) throw InvalidConfig("threshold_grid: count must be >= 1");
  if (max < min) throw InvalidConfig("threshold_grid: max < min");
  std::vector<double> grid(count);
  if (count == 1) {
    grid[0] = min;
    return grid;
  }
  for (int i = 0; i < count; ++i)
    grid[i] = min + (max - min) * static_cast<double>(i) /
                        static_cast<double>(count - 1);
  return grid;
}

std::vector<RocPoint> roc_curve(const DetectionScenario& changed,
                                const DetectionScenario& unchanged,
                                const std::vector<double>& c_grid, int runs,
                                std::uint64_t base_seed) {
  if (c_grid.empty()) throw InvalidConfig("roc_curve: empty threshold grid");
  if (unchanged.theta_radians != 0.0)
    throw InvalidConfig("roc_curve: the null scenario must have theta == 0");
  const std::vector<double> pos = detection_statistics(changed, runs, base_seed);
  const std::vector<double> neg =
      detection_statistics(unchanged, runs, base_seed + static_cast<std::uint64_t>(runs));

  std::vector<RocPoint> points;
  points.reserve(c_grid.size());
  for (double c : c_grid) {
    const auto above = [c](double s) { return s >= c; };
    RocPoint p;
    p.c = c;
    p.true_positive_rate =
        static_cast<double>(std::count_if(pos.begin(), pos.end(), above)) / runs;
    p.false_positive_rate =
        static_cast<double>(std::count_if(neg.begin(), neg.end(), above)) / runs;
    points.push_back(p);
  }
  return points;
}

double roc_auc(const std::vector<RocPoint>& points) {
  if (points.empty()) throw InvalidConfig("roc_auc: no points");
  std::vector<std::pair<double, double>> xy;
  xy.reserve(points.size() + 2);
  for (const RocPoint& p : points)
    xy.emplace_back(p.false_positive_rate, p.true_positive_rate);
  xy.emplace_back(0.0, 0.0);
  xy.emplace_back(1.0, 1.0);
  std::sort(xy.begin(), xy.end());
  double auc = 0.0;
  for (std::size_t i = 1; i < xy.size(); ++i)
    auc += 0.5 * (xy[i].first - xy[i - 1].first) *
           (xy[i].second + xy[i - 1].second);
  return auc;
}

}  // namespace pst
