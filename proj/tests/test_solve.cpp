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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "asynclp/error.hpp"
#include "asynclp/experiment.hpp"
#include "asynclp/solve.hpp"
#include "json.hpp"

using namespace asynclp;
using nlohmann::json;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("mode names") {
  for (auto m : {SolveMode::kSync, SolveMode::kSweep, SolveMode::kBernoulli,
                 SolveMode::kRandomK, SolveMode::kDistributed})
    CHECK(parse_solve_mode(to_string(m)) == m);
  CHECK_THROWS_AS(parse_solve_mode("eventual"), Error);
}

TEST_CASE("tiny LP solution matches the oracle") {
  const auto problem = make_problem(gen_feasible_lp(3, 4, 1));
  const auto sys = build_system(problem.async);
  SolveOptions opt;
  opt.homotopy = HomotopySchedule::parse("ramp:0.5:200");
  opt.max_equivalent_iterations = 20000;
  const auto ref = oracle_reference(problem);
  REQUIRE(ref.has_value());
  const auto out = solve(sys, opt, &*ref);
  REQUIRE(out.converged);
  CHECK(*out.trajectory.back().dist_to_ref <= 1e-6);

  const auto sol = json::parse(solution_json(problem, sys, out));
  const auto orc = json::parse(oracle_json(problem));
  CHECK(sol["problem_kind"] == "standard");
  CHECK(sol["converged"] == true);
  CHECK(orc["status"] == "optimal");
  CHECK(sol["objective"].get<double>() ==
        doctest::Approx(orc["objective"].get<double>()).epsilon(1e-6));
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(sol["x"][i].get<double>() ==
          doctest::Approx(orc["x"][i].get<double>()).epsilon(1e-6));
  CHECK(sol["variables"].contains("y"));
  CHECK(sol["variables"]["x1"].size() == 3);
}

TEST_CASE("sync and bernoulli p = 1 give identical outputs") {
  const auto problem = make_problem(gen_chebyshev(4, 8, 3));
  const auto sys = build_system(problem.async);
  SolveOptions a, b;
  a.mode = SolveMode::kSync;
  b.mode = SolveMode::kBernoulli;
  b.p = 1.0;
  a.seed = b.seed = 17;
  a.max_equivalent_iterations = b.max_equivalent_iterations = 300;
  const auto ra = solve(sys, a), rb = solve(sys, b);
  CHECK(solution_json(problem, sys, ra) == solution_json(problem, sys, rb));
  std::ostringstream ta, tb;
  write_trajectory_csv(ta, ra.trajectory);
  write_trajectory_csv(tb, rb.trajectory);
  CHECK(ta.str() == tb.str());
}

TEST_CASE("every mode produces a usable outcome") {
  const auto problem = make_problem(gen_chebyshev(3, 6, 5));
  const auto sys = build_system(problem.async);
  for (auto m : {SolveMode::kSync, SolveMode::kSweep, SolveMode::kBernoulli,
                 SolveMode::kRandomK, SolveMode::kDistributed}) {
    SolveOptions o;
    o.mode = m;
    o.workers = 2;
    o.max_equivalent_iterations = 50;
    const auto r = solve(sys, o);
    CHECK(r.trajectory.size() >= 2);
    CHECK(r.equivalent_iterations >= 50.0);
    CHECK(r.variables.size() == sys.layout.size());
    CHECK(r.worker_reports.size() == (m == SolveMode::kDistributed ? 2u : 0u));
    const auto j = json::parse(solution_json(problem, sys, r));
    CHECK(j.contains("center"));
    CHECK(j.contains("radius"));
  }
}

TEST_CASE("oracle output for each problem kind") {
  Matrix A(4, 2);
  A << 1, 0, -1, 0, 0, 1, 0, -1;
  const auto cheb = json::parse(
      oracle_json(make_problem(ChebyshevInstance{A, Vector::Ones(4)})));
  CHECK(cheb["status"] == "optimal");
  CHECK(cheb["radius"].get<double>() == doctest::Approx(1.0));

  Matrix B(1, 2);
  B << 1, 2;
  const auto bp = json::parse(oracle_json(
      make_problem(BasisPursuitInstance{B, Vector::Constant(1, 2.0), {}})));
  CHECK(bp["objective"].get<double>() == doctest::Approx(1.0));

  AsyncFormProblem p;
  p.B = Matrix::Ones(1, 1);
  p.inputs = {VariableSpec::linear_cost("x", Role::kInput, Vector::Ones(1))};
  p.outputs = {VariableSpec::nonnegative("y", Role::kOutput, 1)};
  CHECK_THROWS_AS(oracle_json(make_problem(p)), Error);
  CHECK_FALSE(oracle_reference(make_problem(p)).has_value());
  CHECK_FALSE(
      oracle_reference(make_problem(gen_chebyshev(10, 20, 1))).has_value());
}

TEST_CASE("presets") {
  const auto cd = experiment_preset("cheb-desk");
  CHECK(cd.n == 10);
  CHECK(cd.m == 20);
  CHECK(cd.trials == 50);
  const auto bd = experiment_preset("bp-desk");
  CHECK(bd.n == 64);
  CHECK(bd.m == 32);
  CHECK(bd.sparsity == 4);
  CHECK(bd.homotopy.kind() == HomotopySchedule::Kind::kPowerRamp);
  const auto cp = experiment_preset("cheb-paper");
  CHECK(cp.n == 100);
  CHECK(cp.m == 200);
  CHECK(cp.trials == 500);
  const auto bpp = experiment_preset("bp-paper");
  CHECK(bpp.n == 512);
  CHECK(bpp.m == 200);
  CHECK(bpp.sparsity == 16);
  CHECK(bpp.trials == 1000);
  CHECK(bpp.p_values == std::vector<double>{0.2, 0.4, 0.6, 0.8});
  CHECK_THROWS_AS(experiment_preset("huge"), Error);
}

TEST_CASE("aggregation carries values forward on the unit grid") {
  Trajectory a{{0.0, 1.0, 1.0, std::nullopt}, {1.5, 3.0, 0.01, std::nullopt}};
  Trajectory b{{0.0, 2.0, 10.0, std::nullopt},
               {1.0, 4.0, 1.0, std::nullopt},
               {2.0, 6.0, 0.1, std::nullopt}};
  const auto rows = aggregate({a, b});
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].objective_mean == doctest::Approx(1.5));
  CHECK(rows[0].log_residual_mean == doctest::Approx(0.5));
  CHECK(rows[1].objective_mean == doctest::Approx(3.5));
  CHECK(rows[2].objective_mean == doctest::Approx(4.5));
  CHECK(rows[2].log_residual_median == doctest::Approx(-1.5));
}

TEST_CASE("experiment output files and determinism") {
  namespace fs = std::filesystem;
  const auto base = fs::temp_directory_path() / "asynclp_experiment_test";
  fs::remove_all(base);
  ExperimentConfig c;
  c.problem = "chebyshev";
  c.n = 4;
  c.m = 8;
  c.trials = 4;
  c.p_values = {0.3, 0.9};
  c.max_equivalent_iterations = 200;
  c.out_dir = (base / "one").string();
  const auto r1 = run_experiment(c);
  c.out_dir = (base / "two").string();
  c.threads = 3;
  const auto r2 = run_experiment(c);

  for (const char* f : {"trajectory_p0.3.csv", "trajectory_p0.9.csv",
                        "trajectory_all.csv", "summary.json"}) {
    CHECK(fs::exists(base / "one" / f));
    CHECK(slurp(base / "one" / f) == slurp(base / "two" / f));
  }
  const auto header = slurp(base / "one" / "trajectory_p0.3.csv");
  CHECK(header.rfind("equiv_iter,objective_mean,", 0) == 0);
  CHECK(slurp(base / "one" / "trajectory_all.csv").rfind("series,p,", 0) == 0);

  const auto s = json::parse(slurp(base / "one" / "summary.json"));
  CHECK(s["series"].size() == 2);
  CHECK(s["config"]["trials"] == 4);
  CHECK(r1.series[0].converged == r2.series[0].converged);
  fs::remove_all(base);
}

TEST_CASE("partial failure is reported") {
  ExperimentConfig c;
  c.n = 4;
  c.m = 8;
  c.trials = 3;
  c.p_values = {0.5};
  c.max_equivalent_iterations = 2;
  const auto r = run_experiment(c);
  CHECK(r.series[0].converged < 3);
  CHECK(r.series[0].failed_trials.size() ==
        static_cast<std::size_t>(3 - r.series[0].converged));
  const auto s = json::parse(summary_json(c, r));
  CHECK(s["partial_failure"] == true);
}

TEST_CASE("experiment configuration errors") {
  ExperimentConfig c;
  c.trials = 0;
  CHECK_THROWS_AS(run_experiment(c), Error);
  c.trials = 1;
  c.p_values = {0.0};
  CHECK_THROWS_AS(run_experiment(c), Error);
  c.p_values = {1.2};
  CHECK_THROWS_AS(run_experiment(c), Error);
  c.p_values = {0.5};
  c.problem = "sdp";
  CHECK_THROWS_AS(run_experiment(c), Error);
}
