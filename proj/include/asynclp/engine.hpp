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

// Fixed-point iteration of the reduced system d2 = G' m(d2) + e.
//
// Schedules: the synchronous recurrence (c2 <- m(d2), d2 <- G' c2 + e), the
// incremental column-update form (one coordinate at a time, d2 += g_k delta),
// independent Bernoulli sample-and-hold firing per coordinate, and uniformly
// random single-coordinate updates. Work is counted in equivalent iterations:
// fired coordinate updates divided by the number of nonlinear coordinates K.

#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "asynclp/stationarity.hpp"

namespace asynclp {

using Rng = std::mt19937_64;

// Uniform index in [0, n). Shared by the engine and the distributed workers
// so that equal seeds give equal coordinate sequences.
Eigen::Index draw_coordinate(Rng& rng, Eigen::Index n);

// Uniform double in [0, 1) from the top 53 bits.
double draw_unit(Rng& rng);

// 1 - 0.95^(k^2) for k = 1..10, then 1.
double power_ramp_gamma(long k);

// gamma as a function of the current (1-based) equivalent iteration.
class HomotopySchedule {
 public:
  enum class Kind { kNone, kPowerRamp, kLinearRamp, kConstant };

  static HomotopySchedule none() { return {Kind::kNone, 1.0, 0}; }
  static HomotopySchedule power_ramp() { return {Kind::kPowerRamp, 0.0, 10}; }
  // gamma goes linearly from `start` at k = 1 to 1 at k = steps + 1.
  static HomotopySchedule linear_ramp(double start, long steps);
  static HomotopySchedule constant(double gamma);

  // "none", "bp", "ramp:<start>:<steps>" or "const:<gamma>".
  static HomotopySchedule parse(const std::string& text);

  double gamma(long k) const;
  Kind kind() const { return kind_; }
  // Last equivalent iteration at which gamma may still be below 1.
  long ramp_length() const;
  std::string describe() const;

 private:
  HomotopySchedule(Kind kind, double value, long steps)
      : kind_(kind), value_(value), steps_(steps) {}

  Kind kind_;
  double value_;
  long steps_;
};

enum class ScheduleMode {
  kSynchronous,
  kIncrementalSweep,
  kBernoulli,
  kRandomCoordinate,
};

const char* to_string(ScheduleMode m);

struct ScheduleConfig {
  ScheduleMode mode = ScheduleMode::kSynchronous;
  double p = 1.0;  // firing probability, Bernoulli mode only
  std::uint64_t seed = 0;
  HomotopySchedule homotopy = HomotopySchedule::none();
};

struct SolverState {
  Vector c2;
  Vector d2;
  long tick = 0;
  long fired_updates = 0;

  double equivalent_iterations() const {
    return c2.size() ? static_cast<double>(fired_updates) /
                           static_cast<double>(c2.size())
                     : 0.0;
  }
};

// c2 = 0, d2 = e.
SolverState initial_state(const StationaritySystem& sys);

void sync_step(SolverState& s, const StationaritySystem& sys,
               double gamma = 1.0);

// One coordinate of the column-update form: delta = m_k(d2_k) - c2_k,
// d2 += g_k delta, c2_k += delta. Throws on k out of range.
void incremental_step(SolverState& s, const StationaritySystem& sys,
                      Eigen::Index k, double gamma = 1.0);

// All K column updates computed from the same d2[n-1] and applied together.
// Matches sync_step up to rounding.
void simultaneous_sweep(SolverState& s, const StationaritySystem& sys,
                        double gamma = 1.0);

// incremental_step for k = 0..K-1 in order, each seeing earlier updates.
void sequential_sweep(SolverState& s, const StationaritySystem& sys,
                      double gamma = 1.0);

// Every coordinate fires independently with probability p; fired ones sample
// m(d2), the rest hold. Then d2 = G' c2 + e.
void async_tick(SolverState& s, const StationaritySystem& sys, double p,
                Rng& rng, double gamma = 1.0);

// || d2 - (gamma G' m(d2) + e) ||_2. With gamma = 1 this is the fixed-point
// residual of the true operator.
double fixed_point_residual(const StationaritySystem& sys, const Vector& d2,
                            double gamma = 1.0);

// Concatenated input-variable values represented by d2.
Vector input_values(const StationaritySystem& sys, const Vector& d2);

struct TrajectoryPoint {
  double equiv_iter = 0.0;
  double objective = 0.0;
  double residual = 0.0;
  std::optional<double> dist_to_ref;
};

using Trajectory = std::vector<TrajectoryPoint>;

// Metrics of the iterate d2; `reference` is compared against input_values.
TrajectoryPoint observe(const StationaritySystem& sys, const Vector& d2,
                        double equiv_iter, const Vector* reference = nullptr);

// equiv_iter,objective,residual,dist_to_ref
void write_trajectory_csv(std::ostream& os, const Trajectory& t);

struct StopCriteria {
  double max_equivalent_iterations = 10000.0;
  double tolerance = 1e-9;
};

struct RunResult {
  SolverState state;
  Trajectory trajectory;
  bool converged = false;
  double residual = 0.0;
};

// Iterates until the gamma = 1 residual is at most `stop.tolerance` (checked
// once per equivalent iteration) or the budget runs out. Non-convergence is
// reported through RunResult::converged.
RunResult run(const StationaritySystem& sys, const ScheduleConfig& schedule,
              const StopCriteria& stop, const Vector* reference = nullptr,
              const SolverState* start = nullptr);

using Operator = std::function<Vector(const Vector&)>;

// d2 -> G' m(d2) + e.
Operator fixed_point_operator(const StationaritySystem& sys);

// alpha T + (1 - alpha) T0 with T0 the constant map to e, i.e.
// d2 -> alpha G' m(d2) + e. Throws for alpha outside [0, 1].
Operator homotopy_operator(const StationaritySystem& sys, double alpha);

// max ||T x - T y|| / ||x - y|| over `samples` random pairs around `center`.
double empirical_lipschitz(const Operator& op, const Vector& center,
                           int samples, Rng& rng);

}  // namespace asynclp
