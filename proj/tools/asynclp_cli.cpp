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

// Command-line front end. Talks to the library only through asynclp.h.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "asynclp/asynclp.h"

namespace fs = std::filesystem;

namespace {

struct CliError {
  int exit_code;
};

void check(alp_status s, const std::string& context) {
  if (s == ALP_OK) return;
  std::cerr << "asynclp: " << context << ": " << alp_last_error() << " ("
            << alp_status_name(s) << ")\n";
  throw CliError{s == ALP_ERR_PARSE ? 3 : 1};
}

struct StringDeleter {
  void operator()(char* s) const { alp_string_free(s); }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;

struct ProblemDeleter {
  void operator()(alp_problem* p) const { alp_problem_free(p); }
};
struct SystemDeleter {
  void operator()(alp_system* s) const { alp_system_free(s); }
};
struct ResultDeleter {
  void operator()(alp_result* r) const { alp_result_free(r); }
};
using ProblemPtr = std::unique_ptr<alp_problem, ProblemDeleter>;
using SystemPtr = std::unique_ptr<alp_system, SystemDeleter>;
using ResultPtr = std::unique_ptr<alp_result, ResultDeleter>;

ProblemPtr load(const std::string& path) {
  alp_problem* p = nullptr;
  check(alp_problem_load(path.c_str(), &p), "loading problem");
  return ProblemPtr(p);
}

SystemPtr build(const alp_problem* p) {
  alp_system* s = nullptr;
  check(alp_system_build(p, &s), "building fixed-point system");
  return SystemPtr(s);
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    std::cerr << "asynclp: cannot create output directory '" << dir
              << "'\n";
    throw CliError{1};
  }
}

alp_mode parse_mode(const std::string& name) {
  alp_mode m{};
  check(alp_mode_parse(name.c_str(), &m), "--mode");
  return m;
}

struct ScheduleFlags {
  std::string mode = "bernoulli";
  double p = 0.5;
  int workers = 1;
  uint64_t seed = 0;
  double max_equiv_iters = 10000.0;
  double tol = 1e-9;
  std::string homotopy = "none";
};

void add_schedule_flags(CLI::App* cmd, ScheduleFlags& f) {
  cmd->add_option("--mode", f.mode, "sync|sweep|bernoulli|randomk|distributed")
      ->capture_default_str();
  cmd->add_option("--workers", f.workers, "worker threads (distributed mode)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--seed", f.seed, "random seed")->capture_default_str();
  cmd->add_option("--max-equiv-iters", f.max_equiv_iters,
                  "budget in equivalent iterations")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd->add_option("--tol", f.tol, "fixed-point residual tolerance")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd->add_option("--homotopy", f.homotopy, "none|bp|ramp:a0:steps|const:g")
      ->capture_default_str();
}

int cmd_solve(const std::string& problem_path, const ScheduleFlags& f,
              const std::string& out_dir, const std::string& dump) {
  auto problem = load(problem_path);
  auto system = build(problem.get());
  if (!dump.empty())
    check(alp_system_dump(system.get(), dump.c_str()), "writing dump");

  alp_solve_options o;
  alp_solve_options_init(&o);
  o.mode = parse_mode(f.mode);
  o.p = f.p;
  o.workers = f.workers;
  o.seed = f.seed;
  o.max_equiv_iters = f.max_equiv_iters;
  o.tol = f.tol;
  o.homotopy = f.homotopy.c_str();

  alp_result* raw = nullptr;
  check(alp_solve(system.get(), &o, &raw), "solving");
  ResultPtr result(raw);

  char* json = nullptr;
  check(alp_result_solution_json(result.get(), &json), "formatting solution");
  OwnedString owned(json);

  if (!out_dir.empty()) {
    ensure_dir(out_dir);
    const auto base = fs::path(out_dir);
    check(alp_result_write_solution(result.get(),
                                    (base / "solution.json").c_str()),
          "writing solution");
    check(alp_result_write_trajectory(result.get(),
                                      (base / "trajectory.csv").c_str()),
          "writing trajectory");
    if (o.mode == ALP_MODE_DISTRIBUTED)
      check(alp_result_write_worker_reports(result.get(),
                                            (base / "workers.json").c_str()),
            "writing worker reports");
  }
  std::cout << json << "\n";
  if (!alp_result_converged(result.get()))
    std::cerr << "asynclp: not converged (residual "
              << alp_result_residual(result.get()) << ")\n";
  return 0;
}

struct ExperimentFlags {
  std::string preset;
  std::string problem = "chebyshev";
  int n = 10, m = 20, sparsity = 4;
  std::vector<double> p_values;
  int trials = 10;
  int threads = 1;
};

int cmd_experiment(CLI::App* cmd, const ExperimentFlags& e,
                   const ScheduleFlags& f, const std::string& out_dir) {
  alp_experiment_options o;
  if (!e.preset.empty())
    check(alp_experiment_preset(e.preset.c_str(), &o), "--preset");
  else
    alp_experiment_options_init(&o);

  // Explicit flags override the preset.
  auto given = [&](const char* name) { return cmd->count(name) > 0; };
  if (e.preset.empty() || given("--problem")) o.problem = e.problem.c_str();
  if (e.preset.empty() || given("--n")) o.n = e.n;
  if (e.preset.empty() || given("--m")) o.m = e.m;
  if (e.preset.empty() || given("--sparsity")) o.sparsity = e.sparsity;
  if (e.preset.empty() || given("--trials")) o.trials = e.trials;
  if (!e.p_values.empty()) {
    o.p_values = e.p_values.data();
    o.p_count = e.p_values.size();
  }
  if (e.preset.empty() || given("--max-equiv-iters"))
    o.max_equiv_iters = f.max_equiv_iters;
  if (e.preset.empty() || given("--tol")) o.tol = f.tol;
  if (e.preset.empty() || given("--homotopy")) o.homotopy = f.homotopy.c_str();
  o.mode = parse_mode(f.mode);
  o.workers = f.workers;
  o.seed = f.seed;
  o.threads = e.threads;
  if (!out_dir.empty()) {
    ensure_dir(out_dir);
    o.out_dir = out_dir.c_str();
  }

  char* summary = nullptr;
  check(alp_experiment_run(&o, &summary), "running experiment");
  OwnedString owned(summary);
  std::cout << summary << "\n";
  return 0;
}

int cmd_oracle(const std::string& problem_path) {
  auto problem = load(problem_path);
  char* json = nullptr;
  check(alp_problem_oracle(problem.get(), &json), "oracle");
  OwnedString owned(json);
  std::cout << json << "\n";
  return 0;
}

int cmd_generate(const std::string& kind, int n, int m, int sparsity,
                 uint64_t seed, const std::string& out) {
  alp_problem* raw = nullptr;
  check(alp_problem_generate(kind.c_str(), n, m, sparsity, seed, &raw),
        "generating instance");
  ProblemPtr problem(raw);
  char* json = nullptr;
  check(alp_problem_to_json(problem.get(), &json), "serializing");
  OwnedString owned(json);
  if (out.empty() || out == "-") {
    std::cout << json << "\n";
    return 0;
  }
  std::FILE* fp = std::fopen(out.c_str(), "w");
  if (!fp) {
    std::cerr << "asynclp: cannot write '" << out << "'\n";
    return 1;
  }
  std::fputs(json, fp);
  std::fputc('\n', fp);
  std::fclose(fp);
  return 0;
}

int cmd_validate(const std::string& problem_path) {
  auto problem = load(problem_path);
  char* json = nullptr;
  check(alp_problem_validate(problem.get(), &json), "validating");
  OwnedString owned(json);
  std::cout << json << "\n";
  return std::string(json) == "[]" ? 0 : 2;
}

int cmd_inspect(const std::string& problem_path, const std::string& dump) {
  auto problem = load(problem_path);
  auto system = build(problem.get());
  std::cout << "coordinates " << alp_system_coordinate_count(system.get())
            << "\nnonlinear " << alp_system_nonlinear_count(system.get())
            << "\n";
  if (!dump.empty())
    check(alp_system_dump(system.get(), dump.c_str()), "writing dump");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"asynclp: linear programs by asynchronous fixed-point iteration"};
  app.set_config("--config", "", "TOML/INI file mirroring the flags");
  app.set_version_flag("--version", std::string(alp_version()));
  app.require_subcommand(1);

  ScheduleFlags sched;
  std::string problem_path, out_dir, dump;

  auto* solve = app.add_subcommand("solve", "solve one problem file");
  solve->add_option("--problem", problem_path, "problem JSON file")
      ->required();
  add_schedule_flags(solve, sched);
  solve->add_option("--p", sched.p, "firing probability (bernoulli)")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  solve->add_option("--out", out_dir, "directory for solution/trajectory");
  solve->add_option("--dump", dump, "write G, G' and e to this file");

  ExperimentFlags ex;
  auto* experiment =
      app.add_subcommand("experiment", "Monte Carlo convergence study");
  experiment->add_option("--preset", ex.preset,
                         "cheb-desk|bp-desk|cheb-paper|bp-paper");
  experiment->add_option("--problem", ex.problem, "chebyshev|bp|lp")
      ->capture_default_str();
  experiment->add_option("--n", ex.n, "variables")->check(CLI::PositiveNumber);
  experiment->add_option("--m", ex.m, "constraints / measurements")
      ->check(CLI::PositiveNumber);
  experiment->add_option("--sparsity", ex.sparsity, "nonzeros (bp)")
      ->check(CLI::PositiveNumber);
  experiment->add_option("--p", ex.p_values, "firing probabilities")
      ->delimiter(',')
      ->check(CLI::Range(0.0, 1.0));
  experiment->add_option("--trials", ex.trials)->check(CLI::PositiveNumber);
  experiment->add_option("--threads", ex.threads, "concurrent trials")
      ->check(CLI::PositiveNumber);
  add_schedule_flags(experiment, sched);
  experiment->add_option("--out", out_dir, "output directory for CSVs");

  auto* oracle = app.add_subcommand("oracle", "vertex-enumeration reference");
  oracle->add_option("--problem", problem_path)->required();

  std::string kind = "chebyshev", gen_out;
  int gn = 10, gm = 20, gs = 4;
  uint64_t gseed = 0;
  auto* generate = app.add_subcommand("generate", "write a random instance");
  generate->add_option("--kind", kind, "chebyshev|bp|lp")
      ->capture_default_str();
  generate->add_option("--n", gn)->check(CLI::PositiveNumber);
  generate->add_option("--m", gm)->check(CLI::PositiveNumber);
  generate->add_option("--sparsity", gs)->check(CLI::PositiveNumber);
  generate->add_option("--seed", gseed);
  generate->add_option("--out", gen_out, "output file (default stdout)");

  auto* validate =
      app.add_subcommand("validate", "check asynchronous-form conventions");
  validate->add_option("--problem", problem_path)->required();

  auto* inspect = app.add_subcommand("inspect", "build and dump G, G', e");
  inspect->add_option("--problem", problem_path)->required();
  inspect->add_option("--dump", dump, "dump file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve) {
      if (solve->count("--p") && sched.p <= 0.0) {
        std::cerr << "asynclp: --p must lie in (0, 1]\n";
        return 1;
      }
      return cmd_solve(problem_path, sched, out_dir, dump);
    }
    if (*experiment) {
      for (double p : ex.p_values)
        if (p <= 0.0) {
          std::cerr << "asynclp: --p values must lie in (0, 1]\n";
          return 1;
        }
      return cmd_experiment(experiment, ex, sched, out_dir);
    }
    if (*oracle) return cmd_oracle(problem_path);
    if (*generate) return cmd_generate(kind, gn, gm, gs, gseed, gen_out);
    if (*validate) return cmd_validate(problem_path);
    if (*inspect) return cmd_inspect(problem_path, dump);
  } catch (const CliError& e) {
    return e.exit_code;
  }
  return 0;
}
