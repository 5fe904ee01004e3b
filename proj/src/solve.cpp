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

#include "asynclp/solve.hpp"

#include "asynclp/error.hpp"
#include "json.hpp"

namespace asynclp {

namespace {

using nlohmann::json;

json to_json(const Vector& v) {
  return json(std::vector<double>(v.data(), v.data() + v.size()));
}

const Vector* find_variable(const SolveOutcome& o, const std::string& name) {
  for (const auto& [n, v] : o.variables)
    if (n == name) return &v;
  return nullptr;
}

}  // namespace

const char* to_string(SolveMode m) {
  switch (m) {
    case SolveMode::kSync: return "sync";
    case SolveMode::kSweep: return "sweep";
    case SolveMode::kBernoulli: return "bernoulli";
    case SolveMode::kRandomK: return "randomk";
    case SolveMode::kDistributed: return "distributed";
  }
  return "?";
}

SolveMode parse_solve_mode(const std::string& s) {
  if (s == "sync") return SolveMode::kSync;
  if (s == "sweep") return SolveMode::kSweep;
  if (s == "bernoulli") return SolveMode::kBernoulli;
  if (s == "randomk") return SolveMode::kRandomK;
  if (s == "distributed") return SolveMode::kDistributed;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown mode '" + s +
                  "' (expected sync, sweep, bernoulli, randomk, distributed)");
}

SolveOutcome solve(const StationaritySystem& sys, const SolveOptions& options,
                   const Vector* reference, const SolverState* start) {
  SolveOutcome out;
  if (options.mode == SolveMode::kDistributed) {
    if (start)
      throw Error(ErrorCode::kInvalidArgument,
                  "distributed mode always starts from the initial state");
    DistributedConfig cfg;
    cfg.workers = options.workers;
    cfg.max_equivalent_iterations = options.max_equivalent_iterations;
    cfg.tolerance = options.tolerance;
    cfg.seed = options.seed;
    cfg.homotopy = options.homotopy;
    auto r = run_distributed(sys, cfg, reference);
    out.c2 = std::move(r.c2);
    out.d2 = std::move(r.d2);
    out.trajectory = std::move(r.trajectory);
    out.converged = r.converged;
    out.residual = r.residual;
    out.worker_reports = std::move(r.reports);
  } else {
    ScheduleConfig sc;
    sc.seed = options.seed;
    sc.homotopy = options.homotopy;
    sc.p = options.p;
    switch (options.mode) {
      case SolveMode::kSync: sc.mode = ScheduleMode::kSynchronous; break;
      case SolveMode::kSweep: sc.mode = ScheduleMode::kIncrementalSweep; break;
      case SolveMode::kBernoulli: sc.mode = ScheduleMode::kBernoulli; break;
      default: sc.mode = ScheduleMode::kRandomCoordinate; break;
    }
    StopCriteria stop{options.max_equivalent_iterations, options.tolerance};
    auto r = run(sys, sc, stop, reference, start);
    out.c2 = std::move(r.state.c2);
    out.d2 = std::move(r.state.d2);
    out.trajectory = std::move(r.trajectory);
    out.converged = r.converged;
    out.residual = r.residual;
  }
  out.equivalent_iterations = out.trajectory.back().equiv_iter;
  out.objective = out.trajectory.back().objective;

  const FullPoint pt = expand(sys, out.d2);
  const auto values = recover_solution(pt.d, pt.c, sys.layout);
  for (std::size_t i = 0; i < values.size(); ++i)
    out.variables.emplace_back(sys.layout[i].name, values[i]);
  return out;
}

std::string solution_json(const ProblemFile& problem,
                          const StationaritySystem& sys,
                          const SolveOutcome& outcome) {
  json doc;
  doc["problem_kind"] = to_string(problem.kind);
  doc["converged"] = outcome.converged;
  doc["residual"] = outcome.residual;
  doc["objective"] = outcome.objective;
  doc["equivalent_iterations"] = outcome.equivalent_iterations;
  json vars = json::object();
  for (const auto& [name, v] : outcome.variables) vars[name] = to_json(v);
  doc["variables"] = std::move(vars);
  switch (problem.kind) {
    case ProblemKind::kStandard:
      if (const Vector* x = find_variable(outcome, "x2")) doc["x"] = to_json(*x);
      break;
    case ProblemKind::kChebyshev: {
      const auto cs = chebyshev_recover(sys, apply_nonlinear(sys, outcome.d2));
      doc["center"] = to_json(cs.center);
      doc["radius"] = cs.radius;
      break;
    }
    case ProblemKind::kBasisPursuit:
      doc["x"] = to_json(basis_pursuit_recover(sys, outcome.d2));
      break;
    case ProblemKind::kAsync:
      break;
  }
  return doc.dump(2);
}

std::string oracle_json(const ProblemFile& problem) {
  OracleSolution sol;
  json doc;
  switch (problem.kind) {
    case ProblemKind::kStandard:
      sol = solve_vertex_enum(*problem.standard);
      if (sol.x_star.size()) doc["x"] = to_json(sol.x_star);
      break;
    case ProblemKind::kChebyshev: {
      sol = solve_vertex_enum(chebyshev_lp(*problem.chebyshev));
      if (sol.x_star.size()) {
        const auto n = sol.x_star.size() - 1;
        doc["center"] = to_json(sol.x_star.head(n));
        doc["radius"] = sol.x_star[n];
      }
      break;
    }
    case ProblemKind::kBasisPursuit:
      sol = solve_basis_pursuit(*problem.basis_pursuit);
      if (sol.x_star.size()) doc["x"] = to_json(sol.x_star);
      break;
    case ProblemKind::kAsync:
      throw Error(ErrorCode::kInvalidArgument,
                  "the oracle handles standard, chebyshev and basis_pursuit "
                  "problems only");
  }
  doc["status"] = to_string(sol.status);
  if (sol.status == OracleStatus::kOptimal ||
      sol.status == OracleStatus::kDegenerate)
    doc["objective"] = problem.kind == ProblemKind::kBasisPursuit
                           ? sol.x_star.lpNorm<1>()
                           : sol.objective;
  return doc.dump(2);
}

std::optional<Vector> oracle_reference(const ProblemFile& problem) {
  try {
    switch (problem.kind) {
      case ProblemKind::kStandard: {
        const auto sol = solve_vertex_enum(*problem.standard);
        if (sol.status != OracleStatus::kOptimal) return std::nullopt;
        const auto& lp = *problem.standard;
        Vector z1(lp.b.size() + sol.x_star.size());
        z1 << lp.b, sol.x_star;
        return z1;
      }
      case ProblemKind::kChebyshev: {
        // Enumeration stays cheap up to 8 LP variables.
        if (problem.chebyshev->A.cols() + 1 > 8) return std::nullopt;
        const auto sol = solve_vertex_enum(chebyshev_lp(*problem.chebyshev));
        if (sol.status != OracleStatus::kOptimal) return std::nullopt;
        const auto n = sol.x_star.size() - 1;
        Vector z1(n + 2);
        z1 << sol.x_star[n], sol.x_star.head(n), 1.0;
        return z1;
      }
      case ProblemKind::kBasisPursuit: {
        const auto& inst = *problem.basis_pursuit;
        if (inst.A.cols() > 4 || inst.A.rows() > 6) return std::nullopt;
        const auto sol = solve_basis_pursuit(inst);
        if (sol.status != OracleStatus::kOptimal) return std::nullopt;
        return sol.x_star;
      }
      case ProblemKind::kAsync:
        return std::nullopt;
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kTooLarge) return std::nullopt;
    throw;
  }
  return std::nullopt;
}

}  // namespace asynclp
