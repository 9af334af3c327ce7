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

#ifndef PST_EXPERIMENTS_HPP_
#define PST_EXPERIMENTS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "pst/baselines.hpp"
#include "pst/detection.hpp"
#include "pst/pstpca.hpp"
#include "pst/types.hpp"

namespace pst {

struct ThresholdGridConfig {
  double min = 0.0;
  double max = 3.0;
  int count = 301;
};

// One config drives all experiment runners; unused fields are ignored by a
// given runner.  JSON parsing is strict: unknown keys are an error.
struct ExperimentConfig {
  int n = 200;
  int r = 5;
  int m = 300;
  int q = 300;
  std::vector<double> theta_degrees = {30.0, 45.0, 75.0};
  double se0 = 1e-4;          // subspace error of the tracking prior
  int runs = 50;
  std::uint64_t seed = 1;
  ThresholdGridConfig c_grid;
  int t_max = 12;             // alternating rounds of the recovery loop
  int refine_iters = 3;       // warm-started polish iterations
  int lrpr_iters = 15;        // cold-start baseline iterations
  int wf_iters = 200;
  double wf_step = 0.2;
  double success_factor = 1.5;  // success when SE_final <= factor * SE_0
  std::vector<int> m_list;      // success-table sweeps; empty = {m}
  std::vector<int> q_list;      // empty = {q}
  std::vector<double> se0_list;   // empty = {se0}
  std::vector<double> lambda_bar;  // empty = all ones
  std::string output_dir = "out";
};

ExperimentConfig experiment_config_from_json_text(const std::string& text);
ExperimentConfig load_experiment_config(const std::string& path);
std::string experiment_config_to_json_text(const ExperimentConfig& cfg);
void validate_experiment_config(const ExperimentConfig& cfg);

// Shortest decimal form that round-trips to the same double ("%.17g").
std::string format_float(double v);

// --- ROC ------------------------------------------------------------------

struct RocResult {
  double theta_degrees = 0.0;
  std::vector<RocPoint> points;
  double auc = 0.0;
};

// One ROC per theta in cfg.theta_degrees; per-run statistics are computed
// once and swept over the threshold grid.  Theta k uses the seed block
// cfg.seed + k * 2 * runs.
std::vector<RocResult> run_roc_experiment(const ExperimentConfig& cfg);

// --- Recovery success table ------------------------------------------------

struct SuccessCell {
  int m = 0;
  int q = 0;
  double se0 = 0.0;
  double success_prob = 0.0;
  int runs = 0;
};

// Monte Carlo success probability of the recovery pipeline over the grid
// se0_list x q_list x m_list at theta_degrees.front().  Runs that raise a
// library error count as failures.
std::vector<SuccessCell> run_success_table(const ExperimentConfig& cfg);

// --- Algorithm comparison ---------------------------------------------------

struct AlgorithmTrace {
  std::string algorithm;
  std::vector<TracePoint> mean;  // pointwise mean over runs
};

// Tracked recovery (+ warm-started polish), cold-start alternating
// minimization, and per-column gradient descent on the same episodes.
// Early exits are disabled so every run has the same trace length.
std::vector<AlgorithmTrace> run_comparison(const ExperimentConfig& cfg);

// --- CSV export -------------------------------------------------------------

// Header "c,fpr,tpr".
void write_roc_csv(const std::string& path, const std::vector<RocPoint>& points);
// Header "m,q,se0,success_prob,runs".
void write_success_csv(const std::string& path,
                       const std::vector<SuccessCell>& cells);
// Header "algorithm,iteration,seconds_mean,norm_err_mean,se_mean".
void write_comparison_csv(const std::string& path,
                          const std::vector<AlgorithmTrace>& traces);
// Single-run trace, header "iteration,se,norm_err,cumulative_seconds".
void write_run_trace_csv(const std::string& path,
                         const std::vector<TracePoint>& trace);

// --- Command line -----------------------------------------------------------

// Subcommands: roc, success-table, compare, demo.  Returns 0 on success,
// 1 on runtime failure, 2 on usage/config errors.
int cli_main(int argc, const char* const* argv);

}  // namespace pst

#endif  // PST_EXPERIMENTS_HPP_
