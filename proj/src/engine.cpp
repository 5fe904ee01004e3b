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

#include "asynclp/engine.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "asynclp/error.hpp"

namespace asynclp {

Eigen::Index draw_coordinate(Rng& rng, Eigen::Index n) {
  // Lemire's multiply-shift; the bias is below 2^-32 for any realistic K.
  const auto x = static_cast<unsigned __int128>(rng());
  return static_cast<Eigen::Index>((x * static_cast<std::uint64_t>(n)) >> 64);
}

double draw_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double power_ramp_gamma(long k) {
  if (k > 10) return 1.0;
  const double kk = static_cast<double>(k) * static_cast<double>(k);
  return 1.0 - std::pow(0.95, kk);
}

HomotopySchedule HomotopySchedule::linear_ramp(double start, long steps) {
  if (!(start >= 0.0 && start <= 1.0) || steps < 0)
    throw Error(ErrorCode::kInvalidArgument,
                "ramp needs start in [0, 1] and steps >= 0");
  return {Kind::kLinearRamp, start, steps};
}

HomotopySchedule HomotopySchedule::constant(double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0))
    throw Error(ErrorCode::kInvalidArgument, "gamma must lie in [0, 1]");
  return {Kind::kConstant, gamma, 0};
}

HomotopySchedule HomotopySchedule::parse(const std::string& text) {
  if (text.empty() || text == "none") return none();
  if (text == "bp") return power_ramp();
  auto fail = [&]() -> HomotopySchedule {
    throw Error(ErrorCode::kInvalidArgument,
                "bad homotopy '" + text +
                    "' (expected none, bp, ramp:<start>:<steps> or "
                    "const:<gamma>)");
  };
  try {
    if (text.rfind("ramp:", 0) == 0) {
      const auto colon = text.find(':', 5);
      if (colon == std::string::npos) return fail();
      return linear_ramp(std::stod(text.substr(5, colon - 5)),
                         std::stol(text.substr(colon + 1)));
    }
    if (text.rfind("const:", 0) == 0) return constant(std::stod(text.substr(6)));
  } catch (const std::logic_error&) {
    return fail();
  }
  return fail();
}

double HomotopySchedule::gamma(long k) const {
  switch (kind_) {
    case Kind::kNone: return 1.0;
    case Kind::kPowerRamp: return power_ramp_gamma(k);
    case Kind::kConstant: return value_;
    case Kind::kLinearRamp:
      if (steps_ == 0 || k > steps_) return 1.0;
      return value_ + (1.0 - value_) * static_cast<double>(k - 1) /
                          static_cast<double>(steps_);
  }
  return 1.0;
}

long HomotopySchedule::ramp_length() const {
  switch (kind_) {
    case Kind::kNone: return 0;
    case Kind::kConstant: return value_ < 1.0 ? -1 : 0;
    default: return steps_;
  }
}

std::string HomotopySchedule::describe() const {
  char buf[64];
  switch (kind_) {
    case Kind::kNone: return "none";
    case Kind::kPowerRamp: return "bp";
    case Kind::kConstant:
      std::snprintf(buf, sizeof buf, "const:%g", value_);
      return buf;
    case Kind::kLinearRamp:
      std::snprintf(buf, sizeof buf, "ramp:%g:%ld", value_, steps_);
      return buf;
  }
  return "?";
}

const char* to_string(ScheduleMode m) {
  switch (m) {
    case ScheduleMode::kSynchronous: return "sync";
    case ScheduleMode::kIncrementalSweep: return "sweep";
    case ScheduleMode::kBernoulli: return "bernoulli";
    case ScheduleMode::kRandomCoordinate: return "randomk";
  }
  return "?";
}

SolverState initial_state(const StationaritySystem& sys) {
  SolverState s;
  s.c2 = Vector::Zero(sys.num_nonlinear());
  s.d2 = sys.e;
  return s;
}

void sync_step(SolverState& s, const StationaritySystem& sys, double gamma) {
  s.c2 = apply_nonlinear(sys, s.d2, gamma);
  s.d2 = sys.Gprime * s.c2 + sys.e;
  s.fired_updates += s.c2.size();
  ++s.tick;
}

void incremental_step(SolverState& s, const StationaritySystem& sys,
                      Eigen::Index k, double gamma) {
  const auto K = sys.num_nonlinear();
  if (k < 0 || k >= K)
    throw Error(ErrorCode::kInvalidArgument,
                "coordinate " + std::to_string(k) + " out of range [0, " +
                    std::to_string(K) + ")");
  const double delta =
      apply_nonlinearity(sys.nonlinear_maps[k], s.d2[k], gamma) - s.c2[k];
  if (delta != 0.0) {
    const double* g = sys.Gprime.col(k).data();
    for (Eigen::Index j = 0; j < K; ++j) s.d2[j] += g[j] * delta;
    s.c2[k] += delta;
  }
  ++s.fired_updates;
  ++s.tick;
}

void simultaneous_sweep(SolverState& s, const StationaritySystem& sys,
                        double gamma) {
  const Vector sampled = apply_nonlinear(sys, s.d2, gamma);
  s.d2 += sys.Gprime * (sampled - s.c2);
  s.c2 = sampled;
  s.fired_updates += s.c2.size();
  ++s.tick;
}

void sequential_sweep(SolverState& s, const StationaritySystem& sys,
                      double gamma) {
  for (Eigen::Index k = 0; k < sys.num_nonlinear(); ++k)
    incremental_step(s, sys, k, gamma);
}

void async_tick(SolverState& s, const StationaritySystem& sys, double p,
                Rng& rng, double gamma) {
  long fired = 0;
  for (Eigen::Index k = 0; k < s.c2.size(); ++k) {
    if (draw_unit(rng) < p) {
      s.c2[k] = apply_nonlinearity(sys.nonlinear_maps[k], s.d2[k], gamma);
      ++fired;
    }
  }
  s.d2 = sys.Gprime * s.c2 + sys.e;
  s.fired_updates += fired;
  ++s.tick;
}

double fixed_point_residual(const StationaritySystem& sys, const Vector& d2,
                            double gamma) {
  return (d2 - (sys.Gprime * apply_nonlinear(sys, d2, gamma) + sys.e)).norm();
}

Vector input_values(const StationaritySystem& sys, const Vector& d2) {
  const FullPoint pt = expand(sys, d2);
  const auto n_in = sys.problem.input_length();
  return 0.5 * (pt.d.head(n_in) + pt.c.head(n_in));
}

TrajectoryPoint observe(const StationaritySystem& sys, const Vector& d2,
                        double equiv_iter, const Vector* reference) {
  const FullPoint pt = expand(sys, d2);
  const auto values = recover_solution(pt.d, pt.c, sys.layout);
  TrajectoryPoint tp;
  tp.equiv_iter = equiv_iter;
  tp.objective = objective_value(sys.problem, values);
  tp.residual = fixed_point_residual(sys, d2);
  if (reference) {
    const auto n_in = sys.problem.input_length();
    const Vector z1 = 0.5 * (pt.d.head(n_in) + pt.c.head(n_in));
    tp.dist_to_ref = (z1 - *reference).norm();
  }
  return tp;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& t) {
  os << "equiv_iter,objective,residual,dist_to_ref\n";
  char buf[128];
  for (const auto& p : t) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,", p.equiv_iter,
                  p.objective, p.residual);
    os << buf;
    if (p.dist_to_ref) {
      std::snprintf(buf, sizeof buf, "%.17g", *p.dist_to_ref);
      os << buf;
    }
    os << '\n';
  }
}

RunResult run(const StationaritySystem& sys, const ScheduleConfig& schedule,
              const StopCriteria& stop, const Vector* reference,
              const SolverState* start) {
  if (schedule.mode == ScheduleMode::kBernoulli &&
      !(schedule.p > 0.0 && schedule.p <= 1.0))
    throw Error(ErrorCode::kInvalidArgument,
                "firing probability must lie in (0, 1]");
  const auto K = sys.num_nonlinear();
  if (reference && reference->size() != sys.problem.input_length())
    throw Error(ErrorCode::kDimensionMismatch,
                "reference has the wrong length");

  RunResult out;
  out.state = start ? *start : initial_state(sys);
  if (out.state.d2.size() != K || out.state.c2.size() != K)
    throw Error(ErrorCode::kDimensionMismatch,
                "start state does not match the system");
  Rng rng(schedule.seed);

  const long budget = static_cast<long>(
      std::floor(stop.max_equivalent_iterations * static_cast<double>(K)));
  const long origin = out.state.fired_updates;
  auto done_units = [&] { return (out.state.fired_updates - origin) / K; };
  auto equiv = [&] {
    return static_cast<double>(out.state.fired_updates - origin) /
           static_cast<double>(K);
  };

  out.trajectory.push_back(observe(sys, out.state.d2, 0.0, reference));
  double residual = out.trajectory.back().residual;
  bool converged = residual <= stop.tolerance;
  long recorded_units = 0;

  while (!converged && out.state.fired_updates - origin < budget) {
    const double gamma = schedule.homotopy.gamma(done_units() + 1);
    switch (schedule.mode) {
      case ScheduleMode::kSynchronous:
        sync_step(out.state, sys, gamma);
        break;
      case ScheduleMode::kIncrementalSweep:
        sequential_sweep(out.state, sys, gamma);
        break;
      case ScheduleMode::kBernoulli:
        async_tick(out.state, sys, schedule.p, rng, gamma);
        break;
      case ScheduleMode::kRandomCoordinate:
        incremental_step(out.state, sys, draw_coordinate(rng, K), gamma);
        break;
    }
    if (done_units() > recorded_units) {
      recorded_units = done_units();
      out.trajectory.push_back(observe(sys, out.state.d2, equiv(), reference));
      residual = out.trajectory.back().residual;
      converged = residual <= stop.tolerance;
    }
  }

  if (out.trajectory.back().equiv_iter != equiv()) {
    out.trajectory.push_back(observe(sys, out.state.d2, equiv(), reference));
    residual = out.trajectory.back().residual;
    converged = residual <= stop.tolerance;
  }
  out.converged = converged;
  out.residual = residual;
  return out;
}

Operator fixed_point_operator(const StationaritySystem& sys) {
  return [&sys](const Vector& d2) -> Vector {
    return sys.Gprime * apply_nonlinear(sys, d2) + sys.e;
  };
}

Operator homotopy_operator(const StationaritySystem& sys, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw Error(ErrorCode::kInvalidArgument,
                "homotopy parameter must lie in [0, 1]");
  return [&sys, alpha](const Vector& d2) -> Vector {
    return sys.Gprime * apply_nonlinear(sys, d2, alpha) + sys.e;
  };
}

double empirical_lipschitz(const Operator& op, const Vector& center,
                           int samples, Rng& rng) {
  if (samples < 1)
    throw Error(ErrorCode::kInvalidArgument, "samples must be at least 1");
  std::normal_distribution<double> normal;
  static constexpr double kScales[] = {1e-3, 0.1, 1.0, 10.0};
  const auto n = center.size();
  double best = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double spread = kScales[draw_coordinate(rng, 4)];
    const double gap = kScales[draw_coordinate(rng, 4)];
    Vector x(n), y(n);
    for (Eigen::Index j = 0; j < n; ++j) x[j] = center[j] + spread * normal(rng);
    for (Eigen::Index j = 0; j < n; ++j) y[j] = x[j] + gap * normal(rng);
    const double dx = (x - y).norm();
    if (dx == 0.0) continue;
    best = std::max(best, (op(x) - op(y)).norm() / dx);
  }
  return best;
}

}  // namespace asynclp
