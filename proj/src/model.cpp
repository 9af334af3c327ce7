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

#include "pst/model.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "json.hpp"
#include "pst/errors.hpp"
#include "pst/linalg.hpp"
#include "pst/metrics.hpp"
#include "pst/random.hpp"

namespace pst {

BasisMatrix generate_subspace(Index n, Index r, Rng& rng) {
  if (r < 1 || r > n) throw InvalidDimension("generate_subspace: need 1 <= r <= n");
  return orthonormalize(gaussian_matrix(n, r, rng));
}

namespace {

// Unit vector orthogonal to span(u), with two projection passes so the
// residual overlap is at roundoff level.
Vector draw_orthogonal_direction(const BasisMatrix& u, Rng& rng) {
  const Index n = u.rows();
  for (int attempt = 0; attempt < 100; ++attempt) {
    Vector g = gaussian_vector(n, rng);
    g -= u * (u.transpose() * g);
    g -= u * (u.transpose() * g);
    const double nrm = g.norm();
    if (nrm > 1e-12) return g / nrm;
  }
  throw DegenerateDirection("rotate_one_direction: could not draw a direction");
}

}  // namespace

RotationResult rotate_one_direction(const BasisMatrix& u_prev, double theta,
                                    Index chg_index, Rng& rng) {
  const Index n = u_prev.rows(), r = u_prev.cols();
  if (n == r) throw InvalidDimension("rotate_one_direction: no orthogonal direction available");
  if (!(theta >= 0.0 && theta <= std::numbers::pi / 2))
    throw InvalidConfig("rotate_one_direction: theta outside [0, pi/2]");
  if (chg_index < 0 || chg_index >= r)
    throw InvalidDimension("rotate_one_direction: chg_index out of range");
  if (!is_orthonormal(u_prev, 1e-8))
    throw InvalidInput("rotate_one_direction: basis not orthonormal");

  ChangeEvent ev;
  ev.theta = theta;
  ev.chg_index = static_cast<int>(chg_index);
  ev.u_chg = u_prev.col(chg_index);
  ev.u_add = draw_orthogonal_direction(u_prev, rng);
  const double s = std::sin(theta), c = std::cos(theta);
  ev.u_chd = s * ev.u_add + c * ev.u_chg;
  ev.u_del = s * ev.u_chg - c * ev.u_add;

  RotationResult out;
  out.basis = u_prev;
  out.basis.col(chg_index) = ev.u_chd;
  out.event = std::move(ev);
  return out;
}

Matrix generate_coefficients(Index r, Index q, const Vector& lambda_bar,
                             Rng& rng) {
  if (r < 1 || q < 1) throw InvalidDimension("generate_coefficients: need r, q >= 1");
  if (lambda_bar.size() != r)
    throw InvalidDimension("generate_coefficients: lambda_bar length != r");
  if (lambda_bar.minCoeff() <= 0.0)
    throw InvalidConfig("generate_coefficients: lambda_bar entries must be positive");
  Matrix b = gaussian_matrix(r, q, rng);
  return lambda_bar.cwiseSqrt().asDiagonal() * b;
}

Measurements measure(const Matrix& signals, Index m, Rng& rng) {
  if (m < 1) throw InvalidDimension("measure: need m >= 1");
  if (signals.rows() < 1 || signals.cols() < 1)
    throw InvalidDimension("measure: empty signals");
  const Index n = signals.rows(), q = signals.cols();
  Measurements out;
  out.sensing.reserve(q);
  out.magnitudes.resize(m, q);
  for (Index t = 0; t < q; ++t) {
    out.sensing.push_back(gaussian_matrix(n, m, rng));
    out.magnitudes.col(t) =
        (out.sensing.back().transpose() * signals.col(t)).cwiseAbs();
  }
  return out;
}

BasisMatrix perturb_subspace(const BasisMatrix& u_true, double target_se,
                             Rng& rng) {
  if (!(target_se >= 0.0 && target_se < 1.0))
    throw InvalidConfig("perturb_subspace: target_se outside [0, 1)");
  if (!is_orthonormal(u_true, 1e-8))
    throw InvalidInput("perturb_subspace: basis not orthonormal");
  if (target_se == 0.0) return u_true;

  const Index n = u_true.rows();
  const Matrix noise = gaussian_matrix(n, u_true.cols(), rng);
  // SE is nearly linear in eps for small perturbations, so rescaling by the
  // measured ratio converges in a few steps.
  double eps = target_se / std::sqrt(static_cast<double>(n));
  for (int iter = 0; iter < 100; ++iter) {
    BasisMatrix u_hat = orthonormalize(u_true + eps * noise);
    const double se = subspace_error(u_hat, u_true);
    if (std::abs(se - target_se) <= 0.1 * target_se) return u_hat;
    if (se <= 0.0) {
      eps *= 2.0;
      continue;
    }
    eps *= target_se / se;
  }
  throw Error("perturb_subspace: did not reach the target error");
}

Episode make_episode(const BasisMatrix& u_true, const Vector& lambda_bar,
                     Index q, Index m, Rng& rng) {
  Episode ep;
  ep.u_true = u_true;
  ep.lambda_bar = lambda_bar;
  ep.coeffs = generate_coefficients(u_true.cols(), q, lambda_bar, rng);
  ep.signals = u_true * ep.coeffs;
  Measurements meas = measure(ep.signals, m, rng);
  ep.sensing = std::move(meas.sensing);
  ep.magnitudes = std::move(meas.magnitudes);
  return ep;
}

namespace {

void validate_scenario_config(const ScenarioConfig& cfg) {
  if (cfg.n < 1 || cfg.r < 1 || cfg.m < 1 || cfg.q < 1)
    throw InvalidConfig("scenario: n, r, m, q must be >= 1");
  if (cfg.r > cfg.n) throw InvalidConfig("scenario: r > n");
  if (!cfg.theta_degrees.empty() && cfg.r == cfg.n)
    throw InvalidConfig("scenario: changes need r < n");
  for (double deg : cfg.theta_degrees)
    if (!(deg >= 0.0 && deg <= 90.0))
      throw InvalidConfig("scenario: theta_degrees outside [0, 90]");
  if (!cfg.change_times.empty()) {
    if (cfg.change_times.size() != cfg.theta_degrees.size())
      throw InvalidConfig("scenario: change_times length != theta_degrees length");
    int prev = 0;
    for (int t : cfg.change_times) {
      if (t <= prev) throw InvalidConfig("scenario: change_times must be positive and increasing");
      prev = t;
    }
  }
  if (!cfg.lambda_bar.empty()) {
    if (static_cast<Index>(cfg.lambda_bar.size()) != cfg.r)
      throw InvalidConfig("scenario: lambda_bar length != r");
    for (double v : cfg.lambda_bar)
      if (!(v > 0.0)) throw InvalidConfig("scenario: lambda_bar entries must be positive");
  }
}

}  // namespace

TrackingScenario generate_scenario(const ScenarioConfig& cfg) {
  validate_scenario_config(cfg);
  const std::size_t changes = cfg.theta_degrees.size();

  std::vector<int> change_times = cfg.change_times;
  if (change_times.empty())
    for (std::size_t j = 0; j < changes; ++j)
      change_times.push_back(static_cast<int>((j + 1) * cfg.q));

  std::vector<Index> lengths;
  int prev = 0;
  for (int t : change_times) {
    lengths.push_back(t - prev);
    prev = t;
  }
  lengths.push_back(cfg.q);

  Vector lambda_bar;
  if (cfg.lambda_bar.empty()) {
    lambda_bar = Vector::Ones(cfg.r);
  } else {
    lambda_bar = Eigen::Map<const Vector>(cfg.lambda_bar.data(), cfg.r);
  }

  Rng rng(cfg.seed);
  TrackingScenario scen;
  scen.change_times = change_times;

  BasisMatrix u = generate_subspace(cfg.n, cfg.r, rng);
  scen.episodes.push_back(make_episode(u, lambda_bar, lengths[0], cfg.m, rng));
  for (std::size_t j = 0; j < changes; ++j) {
    const double theta = cfg.theta_degrees[j] * std::numbers::pi / 180.0;
    RotationResult rot = rotate_one_direction(u, theta, cfg.r - 1, rng);
    u = rot.basis;
    scen.delta_bound = std::max(scen.delta_bound, std::sin(theta));
    scen.change_events.push_back(std::move(rot.event));
    scen.episodes.push_back(
        make_episode(u, lambda_bar, lengths[j + 1], cfg.m, rng));
  }
  return scen;
}

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& j, const std::set<std::string>& known,
                         const std::string& what) {
  if (!j.is_object()) throw InvalidConfig(what + ": expected a JSON object");
  for (const auto& item : j.items())
    if (known.find(item.key()) == known.end())
      throw InvalidConfig(what + ": unknown key '" + item.key() + "'");
}

}  // namespace

ScenarioConfig scenario_config_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidConfig(std::string("scenario config: ") + e.what());
  }
  reject_unknown_keys(j,
                      {"n", "r", "m", "q", "theta_degrees", "change_times",
                       "lambda_bar", "seed"},
                      "scenario config");
  ScenarioConfig cfg;
  try {
    cfg.n = j.at("n").get<int>();
    cfg.r = j.at("r").get<int>();
    cfg.m = j.at("m").get<int>();
    cfg.q = j.at("q").get<int>();
    cfg.seed = j.at("seed").get<std::uint64_t>();
    cfg.theta_degrees = j.value("theta_degrees", std::vector<double>{});
    cfg.change_times = j.value("change_times", std::vector<int>{});
    cfg.lambda_bar = j.value("lambda_bar", std::vector<double>{});
  } catch (const json::exception& e) {
    throw InvalidConfig(std::string("scenario config: ") + e.what());
  }
  validate_scenario_config(cfg);
  return cfg;
}

std::string scenario_config_to_json_text(const ScenarioConfig& cfg) {
  json j;
  j["n"] = cfg.n;
  j["r"] = cfg.r;
  j["m"] = cfg.m;
  j["q"] = cfg.q;
  j["theta_degrees"] = cfg.theta_degrees;
  j["change_times"] = cfg.change_times;
  j["lambda_bar"] = cfg.lambda_bar;
  j["seed"] = cfg.seed;
  return j.dump(2) + "\n";
}

ScenarioConfig load_scenario_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidConfig("scenario config: cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return scenario_config_from_json_text(buf.str());
}

void save_scenario_config(const ScenarioConfig& cfg, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InvalidConfig("scenario config: cannot write " + path);
  out << scenario_config_to_json_text(cfg);
}

}  // namespace pst
