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

// One-call solve over every schedule, including the distributed simulation,
// plus the solution document written by the CLI.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "asynclp/distributed.hpp"
#include "asynclp/engine.hpp"
#include "asynclp/oracle.hpp"
#include "asynclp/problem_io.hpp"

namespace asynclp {

enum class SolveMode { kSync, kSweep, kBernoulli, kRandomK, kDistributed };

const char* to_string(SolveMode m);
// "sync", "sweep", "bernoulli", "randomk", "distributed".
SolveMode parse_solve_mode(const std::string& s);

struct SolveOptions {
  SolveMode mode = SolveMode::kBernoulli;
  double p = 0.5;
  int workers = 1;
  std::uint64_t seed = 0;
  double max_equivalent_iterations = 10000.0;
  double tolerance = 1e-9;
  HomotopySchedule homotopy = HomotopySchedule::none();
};

struct SolveOutcome {
  Vector c2;
  Vector d2;
  Trajectory trajectory;
  bool converged = false;
  double residual = 0.0;
  double equivalent_iterations = 0.0;
  double objective = 0.0;
  std::vector<std::pair<std::string, Vector>> variables;
  std::vector<WorkerReport> worker_reports;  // distributed mode only
};

SolveOutcome solve(const StationaritySystem& sys, const SolveOptions& options,
                   const Vector* reference = nullptr,
                   const SolverState* start = nullptr);

// Solution JSON: converged, residual, objective, equivalent_iterations,
// variables, plus "x" (standard form and basis pursuit) or "center" and
// "radius" (Chebyshev).
std::string solution_json(const ProblemFile& problem,
                          const StationaritySystem& sys,
                          const SolveOutcome& outcome);

// Oracle solution JSON for small standard, Chebyshev and basis pursuit
// problems. Throws Error(kInvalidArgument) for async problems.
std::string oracle_json(const ProblemFile& problem);

// Oracle for the problem's own solution vector, laid out like
// input_values(); nullopt when there is no oracle for the kind or the
// instance is too large.
std::optional<Vector> oracle_reference(const ProblemFile& problem);

}  // namespace asynclp
