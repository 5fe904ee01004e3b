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

#include "asynclp/asynclp.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <string>

#include "asynclp/error.hpp"
#include "asynclp/experiment.hpp"
#include "asynclp/solve.hpp"
#include "json.hpp"

struct alp_problem {
  asynclp::ProblemFile file;
};

struct alp_system {
  std::shared_ptr<const asynclp::ProblemFile> problem;
  std::shared_ptr<const asynclp::StationaritySystem> sys;
};

struct alp_result {
  std::shared_ptr<const asynclp::ProblemFile> problem;
  std::shared_ptr<const asynclp::StationaritySystem> sys;
  asynclp::SolveOutcome outcome;
};

namespace {

thread_local std::string g_last_error;

alp_status fail(alp_status s, std::string msg) {
  g_last_error = std::move(msg);
  return s;
}

alp_status from_code(asynclp::ErrorCode c) {
  using asynclp::ErrorCode;
  switch (c) {
    case ErrorCode::kInvalidArgument: return ALP_ERR_INVALID_ARGUMENT;
    case ErrorCode::kDimensionMismatch: return ALP_ERR_DIMENSION;
    case ErrorCode::kParse: return ALP_ERR_PARSE;
    case ErrorCode::kSingular: return ALP_ERR_SINGULAR;
    case ErrorCode::kTooLarge: return ALP_ERR_TOO_LARGE;
    case ErrorCode::kIo: return ALP_ERR_IO;
  }
  return ALP_ERR_INTERNAL;
}

template <typename Fn>
alp_status guarded(Fn&& fn) {
  try {
    fn();
    return ALP_OK;
  } catch (const asynclp::Error& e) {
    return fail(from_code(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(ALP_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(ALP_ERR_INTERNAL, e.what());
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

asynclp::SolveMode to_mode(alp_mode m) {
  switch (m) {
    case ALP_MODE_SYNC: return asynclp::SolveMode::kSync;
    case ALP_MODE_SWEEP: return asynclp::SolveMode::kSweep;
    case ALP_MODE_BERNOULLI: return asynclp::SolveMode::kBernoulli;
    case ALP_MODE_RANDOMK: return asynclp::SolveMode::kRandomK;
    case ALP_MODE_DISTRIBUTED: return asynclp::SolveMode::kDistributed;
  }
  throw asynclp::Error(asynclp::ErrorCode::kInvalidArgument, "unknown mode");
}

alp_mode from_mode(asynclp::SolveMode m) {
  return static_cast<alp_mode>(static_cast<int>(m));
}

void write_file(const char* path, const std::string& text) {
  std::ofstream out(path);
  if (!out)
    throw asynclp::Error(asynclp::ErrorCode::kIo,
                         std::string("cannot write '") + path + "'");
  out << text;
}

std::ofstream open_out(const char* path) {
  std::ofstream out(path);
  if (!out)
    throw asynclp::Error(asynclp::ErrorCode::kIo,
                         std::string("cannot write '") + path + "'");
  return out;
}

#define ALP_REQUIRE(cond, what)                              \
  do {                                                       \
    if (!(cond)) return fail(ALP_ERR_INVALID_ARGUMENT, what); \
  } while (0)

}  // namespace

extern "C" {

const char* alp_version(void) { return "1.0.0"; }

const char* alp_last_error(void) { return g_last_error.c_str(); }

const char* alp_status_name(alp_status status) {
  switch (status) {
    case ALP_OK: return "ok";
    case ALP_ERR_INVALID_ARGUMENT: return "invalid argument";
    case ALP_ERR_DIMENSION: return "dimension mismatch";
    case ALP_ERR_PARSE: return "parse error";
    case ALP_ERR_SINGULAR: return "singular matrix";
    case ALP_ERR_TOO_LARGE: return "instance too large";
    case ALP_ERR_IO: return "i/o error";
    case ALP_ERR_INTERNAL: return "internal error";
  }
  return "unknown";
}

void alp_string_free(char* s) { std::free(s); }

alp_status alp_mode_parse(const char* name, alp_mode* out) {
  ALP_REQUIRE(name && out, "null argument");
  return guarded([&] { *out = from_mode(asynclp::parse_solve_mode(name)); });
}

alp_status alp_problem_load(const char* path, alp_problem** out) {
  ALP_REQUIRE(path && out, "null argument");
  return guarded([&] {
    *out = new alp_problem{asynclp::load_problem(path)};
  });
}

alp_status alp_problem_parse(const char* json_text, alp_problem** out) {
  ALP_REQUIRE(json_text && out, "null argument");
  return guarded([&] {
    *out = new alp_problem{asynclp::parse_problem(json_text)};
  });
}

alp_status alp_problem_standard(size_t m, size_t n, const double* A,
                                const double* b, const double* f,
                                alp_problem** out) {
  ALP_REQUIRE(A && b && f && out, "null argument");
  return guarded([&] {
    asynclp::StandardLP lp;
    const auto rows = static_cast<Eigen::Index>(m);
    const auto cols = static_cast<Eigen::Index>(n);
    lp.A = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic,
                                          Eigen::Dynamic, Eigen::RowMajor>>(
        A, rows, cols);
    lp.b = Eigen::Map<const asynclp::Vector>(b, rows);
    lp.f = Eigen::Map<const asynclp::Vector>(f, cols);
    *out = new alp_problem{asynclp::make_problem(std::move(lp))};
  });
}

alp_status alp_problem_generate(const char* kind, int n, int m, int sparsity,
                                uint64_t seed, alp_problem** out) {
  ALP_REQUIRE(kind && out, "null argument");
  return guarded([&] {
    const std::string k = kind;
    if (k == "chebyshev")
      *out = new alp_problem{
          asynclp::make_problem(asynclp::gen_chebyshev(n, m, seed))};
    else if (k == "bp")
      *out = new alp_problem{asynclp::make_problem(
          asynclp::gen_basis_pursuit(n, m, sparsity, seed))};
    else if (k == "lp")
      *out = new alp_problem{
          asynclp::make_problem(asynclp::gen_feasible_lp(n, m, seed))};
    else
      throw asynclp::Error(asynclp::ErrorCode::kInvalidArgument,
                           "unknown instance kind '" + k +
                               "' (expected chebyshev, bp, lp)");
  });
}

alp_status alp_problem_to_json(const alp_problem* p, char** out) {
  ALP_REQUIRE(p && out, "null argument");
  return guarded([&] { *out = dup_string(asynclp::problem_to_json(p->file)); });
}

alp_status alp_problem_validate(const alp_problem* p, char** out) {
  ALP_REQUIRE(p && out, "null argument");
  return guarded([&] {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& v : asynclp::validate_async_form(p->file.async))
      arr.push_back(v.message);
    *out = dup_string(arr.dump(2));
  });
}

alp_status alp_problem_oracle(const alp_problem* p, char** out) {
  ALP_REQUIRE(p && out, "null argument");
  return guarded([&] { *out = dup_string(asynclp::oracle_json(p->file)); });
}

void alp_problem_free(alp_problem* p) { delete p; }

alp_status alp_system_build(const alp_problem* p, alp_system** out) {
  ALP_REQUIRE(p && out, "null argument");
  return guarded([&] {
    auto problem = std::make_shared<const asynclp::ProblemFile>(p->file);
    auto sys = std::make_shared<const asynclp::StationaritySystem>(
        asynclp::build_system(problem->async));
    *out = new alp_system{std::move(problem), std::move(sys)};
  });
}

size_t alp_system_nonlinear_count(const alp_system* s) {
  return s ? static_cast<size_t>(s->sys->num_nonlinear()) : 0;
}

size_t alp_system_coordinate_count(const alp_system* s) {
  return s ? static_cast<size_t>(s->sys->num_coordinates()) : 0;
}

alp_status alp_system_dump(const alp_system* s, const char* path) {
  ALP_REQUIRE(s && path, "null argument");
  return guarded([&] {
    auto out = open_out(path);
    asynclp::dump_system(*s->sys, out);
  });
}

void alp_system_free(alp_system* s) { delete s; }

void alp_solve_options_init(alp_solve_options* o) {
  if (!o) return;
  const asynclp::SolveOptions d;
  o->mode = from_mode(d.mode);
  o->p = d.p;
  o->workers = d.workers;
  o->seed = d.seed;
  o->max_equiv_iters = d.max_equivalent_iterations;
  o->tol = d.tolerance;
  o->homotopy = "none";
}

alp_status alp_solve(const alp_system* s, const alp_solve_options* o,
                     alp_result** out) {
  ALP_REQUIRE(s && o && out, "null argument");
  return guarded([&] {
    asynclp::SolveOptions opt;
    opt.mode = to_mode(o->mode);
    opt.p = o->p;
    opt.workers = o->workers;
    opt.seed = o->seed;
    opt.max_equivalent_iterations = o->max_equiv_iters;
    opt.tolerance = o->tol;
    opt.homotopy =
        asynclp::HomotopySchedule::parse(o->homotopy ? o->homotopy : "none");
    if (opt.mode == asynclp::SolveMode::kBernoulli &&
        !(opt.p > 0.0 && opt.p <= 1.0))
      throw asynclp::Error(asynclp::ErrorCode::kInvalidArgument,
                           "p must lie in (0, 1]");
    if (!(opt.max_equivalent_iterations >= 0.0) || !(opt.tolerance >= 0.0))
      throw asynclp::Error(asynclp::ErrorCode::kInvalidArgument,
                           "budget and tolerance must be non-negative");
    const auto ref = asynclp::oracle_reference(*s->problem);
    auto outcome = asynclp::solve(*s->sys, opt, ref ? &*ref : nullptr);
    *out = new alp_result{s->problem, s->sys, std::move(outcome)};
  });
}

int alp_result_converged(const alp_result* r) {
  return r && r->outcome.converged ? 1 : 0;
}

double alp_result_residual(const alp_result* r) {
  return r ? r->outcome.residual : 0.0;
}

double alp_result_objective(const alp_result* r) {
  return r ? r->outcome.objective : 0.0;
}

double alp_result_equivalent_iterations(const alp_result* r) {
  return r ? r->outcome.equivalent_iterations : 0.0;
}

size_t alp_result_trajectory_length(const alp_result* r) {
  return r ? r->outcome.trajectory.size() : 0;
}

alp_status alp_result_variable(const alp_result* r, const char* name,
                               double* values, size_t len, size_t* out_len) {
  ALP_REQUIRE(r && name, "null argument");
  for (const auto& [n, v] : r->outcome.variables) {
    if (n != name) continue;
    const auto size = static_cast<size_t>(v.size());
    if (out_len) *out_len = size;
    if (values)
      for (size_t i = 0; i < std::min(size, len); ++i)
        values[i] = v[static_cast<Eigen::Index>(i)];
    return ALP_OK;
  }
  return fail(ALP_ERR_INVALID_ARGUMENT,
              std::string("no variable named '") + name + "'");
}

alp_status alp_result_solution_json(const alp_result* r, char** out) {
  ALP_REQUIRE(r && out, "null argument");
  return guarded([&] {
    *out = dup_string(asynclp::solution_json(*r->problem, *r->sys, r->outcome));
  });
}

alp_status alp_result_write_solution(const alp_result* r, const char* path) {
  ALP_REQUIRE(r && path, "null argument");
  return guarded([&] {
    write_file(path,
               asynclp::solution_json(*r->problem, *r->sys, r->outcome) + "\n");
  });
}

alp_status alp_result_write_trajectory(const alp_result* r, const char* path) {
  ALP_REQUIRE(r && path, "null argument");
  return guarded([&] {
    auto out = open_out(path);
    asynclp::write_trajectory_csv(out, r->outcome.trajectory);
  });
}

alp_status alp_result_write_worker_reports(const alp_result* r,
                                           const char* path) {
  ALP_REQUIRE(r && path, "null argument");
  return guarded([&] {
    auto out = open_out(path);
    asynclp::write_worker_reports_json(out, r->outcome.worker_reports);
  });
}

void alp_result_free(alp_result* r) { delete r; }

void alp_experiment_options_init(alp_experiment_options* o) {
  if (!o) return;
  static const double kDefaultP[] = {0.2, 0.4, 0.6, 0.8};
  const asynclp::ExperimentConfig d;
  o->problem = "chebyshev";
  o->n = d.n;
  o->m = d.m;
  o->sparsity = d.sparsity;
  o->mode = from_mode(d.mode);
  o->p_values = kDefaultP;
  o->p_count = 4;
  o->workers = d.workers;
  o->trials = d.trials;
  o->seed = d.seed;
  o->max_equiv_iters = d.max_equivalent_iterations;
  o->tol = d.tolerance;
  o->homotopy = "none";
  o->threads = d.threads;
  o->out_dir = nullptr;
}

alp_status alp_experiment_preset(const char* name,
                                 alp_experiment_options* out) {
  ALP_REQUIRE(name && out, "null argument");
  static const double kTwo[] = {0.2, 0.8};
  static const double kFour[] = {0.2, 0.4, 0.6, 0.8};
  return guarded([&] {
    const auto c = asynclp::experiment_preset(name);
    alp_experiment_options_init(out);
    out->problem = c.problem == "bp" ? "bp" : "chebyshev";
    out->n = c.n;
    out->m = c.m;
    out->sparsity = c.sparsity;
    out->trials = c.trials;
    out->max_equiv_iters = c.max_equivalent_iterations;
    out->tol = c.tolerance;
    out->homotopy =
        c.homotopy.kind() == asynclp::HomotopySchedule::Kind::kPowerRamp
            ? "bp"
            : "none";
    out->p_values = c.p_values.size() == 2 ? kTwo : kFour;
    out->p_count = c.p_values.size();
  });
}

alp_status alp_experiment_run(const alp_experiment_options* o,
                              char** summary) {
  ALP_REQUIRE(o && o->problem, "null argument");
  ALP_REQUIRE(o->p_count == 0 || o->p_values, "null p_values");
  return guarded([&] {
    asynclp::ExperimentConfig c;
    c.problem = o->problem;
    c.n = o->n;
    c.m = o->m;
    c.sparsity = o->sparsity;
    c.mode = to_mode(o->mode);
    c.p_values.assign(o->p_values, o->p_values + o->p_count);
    c.workers = o->workers;
    c.trials = o->trials;
    c.seed = o->seed;
    c.max_equivalent_iterations = o->max_equiv_iters;
    c.tolerance = o->tol;
    c.homotopy =
        asynclp::HomotopySchedule::parse(o->homotopy ? o->homotopy : "none");
    c.threads = o->threads;
    if (o->out_dir) c.out_dir = o->out_dir;
    const auto result = asynclp::run_experiment(c);
    if (summary) *summary = dup_string(asynclp::summary_json(c, result));
  });
}

}  // extern "C"
