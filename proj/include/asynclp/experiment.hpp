// Copyright 2026 The asynclp Authors
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

// Monte Carlo experiment runner: per trial, generate an instance, obtain a
// reference solution, solve under each requested schedule, then aggregate
// objective, log10 residual and log10 distance-to-reference per equivalent
// iteration across trials.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "asynclp/solve.hpp"

namespace asynclp {

struct ExperimentConfig {
  std::string problem = "chebyshev";  // chebyshev | bp | lp
  int n = 10;
  int m = 20;
  int sparsity = 4;
  SolveMode mode = SolveMode::kBernoulli;
  std::vector<double> p_values{0.2, 0.4, 0.6, 0.8};
  int workers = 1;
  int trials = 10;
  std::uint64_t seed = 0;
  double max_equivalent_iterations = 5000.0;
  double tolerance = 1e-9;
  HomotopySchedule homotopy = HomotopySchedule::none();
  int threads = 1;
  std::string out_dir;  // empty: nothing is written
};

// "cheb-desk", "bp-desk", "cheb-paper", "bp-paper".
ExperimentConfig experiment_preset(const std::string& name);

struct SeriesSummary {
  std::string label;  // "p0.2", "sync", ...
  double p = 1.0;
  int trials = 0;
  int converged = 0;
  std::vector<int> failed_trials;
  double median_final_residual = 0.0;
};

struct AggregateRow {
  long equiv_iter = 0;
  double objective_mean = 0.0;
  double objective_median = 0.0;
  double log_residual_mean = 0.0;
  double log_residual_median = 0.0;
  double log_dist_mean = 0.0;
  double log_dist_median = 0.0;
};

struct ExperimentResult {
  std::vector<SeriesSummary> series;
  std::vector<std::vector<AggregateRow>> aggregates;  // parallel to series
};

// Writes trajectory_<label>.csv per series, trajectory_all.csv and
// summary.json into out_dir when it is set.
ExperimentResult run_experiment(const ExperimentConfig& config);

// Instance and per-run seeds derived from the experiment seed.
std::uint64_t trial_seed(std::uint64_t seed, int trial, int stream);

// Trial-averaged rows for a set of trajectories; shorter trajectories hold
// their last value.
std::vector<AggregateRow> aggregate(const std::vector<Trajectory>& runs);

std::string summary_json(const ExperimentConfig& config,
                         const ExperimentResult& result);

}  // namespace asynclp
