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

#include <cmath>
#include <random>
#include <sstream>

#include "asynclp/engine.hpp"
#include "asynclp/error.hpp"
#include "asynclp/oracle.hpp"
#include "asynclp/problems.hpp"
#include "test_util.hpp"

using namespace asynclp;
using testing::max_abs;

namespace {

StationaritySystem random_lp_system(std::mt19937_64& rng, Eigen::Index n,
                                    Eigen::Index m) {
  StandardLP lp{testing::random_vector(rng, n),
                testing::random_matrix(rng, m, n),
                testing::random_vector(rng, m)};
  return build_system(to_asynchronous_form(lp));
}

StationaritySystem scalar_lp_system() {
  StandardLP lp{Vector::Constant(1, 3.0), Matrix::Constant(1, 1, 2.0),
                Vector::Constant(1, 1.0)};
  return build_system(to_asynchronous_form(lp));
}

bool same_trajectory(const Trajectory& a, const Trajectory& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].equiv_iter != b[i].equiv_iter ||
        a[i].objective != b[i].objective || a[i].residual != b[i].residual)
      return false;
  return true;
}

}  // namespace

TEST_CASE("initial state") {
  const auto sys = scalar_lp_system();
  const auto s = initial_state(sys);
  CHECK(s.c2.isZero(0.0));
  CHECK(s.d2 == sys.e);
  CHECK(s.fired_updates == 0);
  CHECK(s.equivalent_iterations() == 0.0);
}

TEST_CASE("first synchronous step") {
  std::mt19937_64 rng(1);
  const auto sys = random_lp_system(rng, 3, 4);
  auto s = initial_state(sys);
  sync_step(s, sys);
  const Vector me = apply_nonlinear(sys, sys.e);
  CHECK(s.c2 == me);
  CHECK(max_abs(s.d2 - (sys.Gprime * me + sys.e)) == 0.0);
  CHECK(s.fired_updates == sys.num_nonlinear());
  CHECK(s.equivalent_iterations() == 1.0);
}

TEST_CASE("a fixed point is left in place") {
  std::mt19937_64 rng(2);
  const auto sys = random_lp_system(rng, 2, 3);
  // gamma = 0 makes e an exact fixed point.
  auto s = initial_state(sys);
  sync_step(s, sys, 0.0);
  CHECK(s.c2.isZero(0.0));
  CHECK(s.d2 == sys.e);

  const auto sys2 = scalar_lp_system();
  ScheduleConfig cfg{ScheduleMode::kBernoulli, 0.5, 4,
                     HomotopySchedule::none()};
  auto r = run(sys2, cfg, {100000.0, 1e-15});
  REQUIRE(r.residual <= 1e-13);
  const Vector before = r.state.d2;
  sync_step(r.state, sys2);
  CHECK(max_abs(r.state.d2 - before) <= 1e-13);
}

TEST_CASE("scalar LP under gamma 0.9 contracts") {
  const auto sys = scalar_lp_system();
  auto s = initial_state(sys);
  for (int i = 0; i < 500; ++i) sync_step(s, sys, 0.9);
  CHECK(fixed_point_residual(sys, s.d2, 0.9) < 1e-6);
}

TEST_CASE("incremental step mechanics") {
  std::mt19937_64 rng(3);
  const auto sys = random_lp_system(rng, 3, 3);
  auto s = initial_state(sys);
  incremental_step(s, sys, 2);
  CHECK(s.fired_updates == 1);
  const auto copy = s;
  // Coordinate 2 is now consistent unless its own column moved d2(2).
  if (apply_nonlinearity(sys.nonlinear_maps[2], s.d2[2]) == s.c2[2]) {
    incremental_step(s, sys, 2);
    CHECK(s.d2 == copy.d2);
    CHECK(s.c2 == copy.c2);
  }
  CHECK_THROWS_AS(incremental_step(s, sys, -1), Error);
  CHECK_THROWS_AS(incremental_step(s, sys, sys.num_nonlinear()), Error);
}

TEST_CASE("delta zero leaves the state unchanged") {
  std::mt19937_64 rng(4);
  const auto sys = random_lp_system(rng, 2, 2);
  auto s = initial_state(sys);
  s.c2 = apply_nonlinear(sys, s.d2);
  const auto copy = s;
  incremental_step(s, sys, 0);
  CHECK(s.d2 == copy.d2);
  CHECK(s.c2 == copy.c2);
  CHECK(s.fired_updates == 1);
}

TEST_CASE("single coordinate: incremental equals synchronous") {
  BasisPursuitInstance inst{Matrix::Constant(1, 1, 0.7),
                            Vector::Constant(1, 1.3), std::nullopt};
  const auto sys = build_system(basis_pursuit_encode(inst));
  REQUIRE(sys.num_nonlinear() == 1);
  auto a = initial_state(sys);
  auto b = a;
  for (int i = 0; i < 50; ++i) {
    sync_step(a, sys);
    incremental_step(b, sys, 0);
    CHECK(max_abs(a.d2 - b.d2) <= 1e-14);
    CHECK(max_abs(a.c2 - b.c2) <= 1e-14);
  }
}

TEST_CASE("simultaneous sweep equals the recurrence") {
  for (int t = 0; t < 20; ++t) {
    const auto sys = build_system(to_asynchronous_form(
        gen_feasible_lp(2 + t % 4, 2 + t % 5, static_cast<std::uint64_t>(t))));
    auto a = initial_state(sys);
    auto b = a;
    for (int n = 0; n < 100; ++n) {
      sync_step(a, sys);
      simultaneous_sweep(b, sys);
    }
    CHECK(max_abs(a.d2 - b.d2) <= 1e-12);
    CHECK(a.fired_updates == b.fired_updates);
  }
}

TEST_CASE("bernoulli with p = 1 is synchronous") {
  std::mt19937_64 rng(6);
  const auto sys = random_lp_system(rng, 3, 5);
  auto a = initial_state(sys);
  auto b = a;
  Rng r(42);
  for (int n = 0; n < 200; ++n) {
    sync_step(a, sys);
    async_tick(b, sys, 1.0, r);
    REQUIRE(a.d2 == b.d2);
    REQUIRE(a.c2 == b.c2);
  }
  CHECK(a.fired_updates == b.fired_updates);

  ScheduleConfig sync{ScheduleMode::kSynchronous, 1.0, 1,
                      HomotopySchedule::power_ramp()};
  ScheduleConfig bern{ScheduleMode::kBernoulli, 1.0, 99,
                      HomotopySchedule::power_ramp()};
  CHECK(same_trajectory(run(sys, sync, {300.0, 0.0}).trajectory,
                        run(sys, bern, {300.0, 0.0}).trajectory));
}

TEST_CASE("a tick with nothing firing only recomputes d2") {
  std::mt19937_64 rng(7);
  const auto sys = random_lp_system(rng, 2, 3);
  auto s = initial_state(sys);
  Rng r(1);
  async_tick(s, sys, 0.5, r);
  const auto copy = s;
  async_tick(s, sys, 1e-300, r);
  CHECK(s.c2 == copy.c2);
  CHECK(max_abs(s.d2 - copy.d2) <= 1e-15);
  CHECK(s.fired_updates == copy.fired_updates);
  CHECK(s.tick == copy.tick + 1);
}

TEST_CASE("zero budget returns the initial state") {
  std::mt19937_64 rng(8);
  const auto sys = random_lp_system(rng, 2, 2);
  for (auto mode : {ScheduleMode::kSynchronous, ScheduleMode::kBernoulli,
                    ScheduleMode::kRandomCoordinate}) {
    ScheduleConfig cfg{mode, 0.5, 3, HomotopySchedule::none()};
    const auto r = run(sys, cfg, {0.0, 0.0});
    CHECK(r.state.fired_updates == 0);
    CHECK(r.state.d2 == sys.e);
    CHECK(r.trajectory.size() == 1);
    CHECK(r.trajectory[0].equiv_iter == 0.0);
  }
}

TEST_CASE("basis pursuit identity instance") {
  Vector b = Vector::Zero(4);
  b[0] = 3.0;
  BasisPursuitInstance inst{Matrix::Identity(4, 4), b, std::nullopt};
  const auto sys = build_system(basis_pursuit_encode(inst));
  // Square orthogonal A gives G' = -I, so T reflects about its fixed point.
  CHECK(max_abs(sys.Gprime + Matrix::Identity(4, 4)) <= 1e-15);
  Vector d_star = Vector::Zero(4);
  d_star[0] = 4.0;
  CHECK(fixed_point_residual(sys, d_star) == 0.0);
  CHECK(basis_pursuit_recover(sys, d_star) == b);

  SolverState start = initial_state(sys);
  start.d2 = d_star;
  start.c2 = apply_nonlinear(sys, d_star);
  ScheduleConfig cfg{ScheduleMode::kBernoulli, 0.5, 1,
                     HomotopySchedule::none()};
  const auto at = run(sys, cfg, {10.0, 1e-12}, nullptr, &start);
  CHECK(at.converged);
  CHECK(at.state.fired_updates == 0);

  // From d2 = e the first coordinate alternates 6, 2, 6, ...
  auto s = initial_state(sys);
  CHECK(s.d2[0] == 6.0);
  sync_step(s, sys);
  CHECK(s.d2[0] == 2.0);
  sync_step(s, sys);
  CHECK(s.d2[0] == 6.0);
}

TEST_CASE("homotopy-ramped tiny LPs match the oracle") {
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto lp = gen_feasible_lp(3, 4, seed);
    const auto ref = solve_vertex_enum(lp);
    if (ref.status != OracleStatus::kOptimal) continue;
    const auto sys = build_system(to_asynchronous_form(lp));
    ScheduleConfig ramp{ScheduleMode::kSynchronous, 1.0, seed,
                        HomotopySchedule::linear_ramp(0.5, 200)};
    const auto warm = run(sys, ramp, {200.0, 0.0});
    ScheduleConfig refine{ScheduleMode::kBernoulli, 0.5, seed,
                          HomotopySchedule::none()};
    const auto r = run(sys, refine, {20000.0, 1e-10}, nullptr, &warm.state);
    REQUIRE(r.converged);
    const auto pt = expand(sys, r.state.d2);
    const auto values = recover_solution(pt.d, pt.c, sys.layout);
    CHECK(max_abs(values[2] - ref.x_star) <= 1e-6);
    CHECK(lp.f.dot(values[2]) == doctest::Approx(ref.objective).epsilon(1e-6));
    // Embedding property: primal feasibility of the recovered point.
    CHECK((lp.A * values[1] - lp.b).maxCoeff() <= 1e-8);
    CHECK(values[1].minCoeff() >= -1e-8);
    // Reduced fixed point expands to a full one.
    CHECK(full_residual(sys, pt) <= 1e-8);
    ++checked;
  }
  CHECK(checked >= 8);
}

TEST_CASE("determinism per seed") {
  std::mt19937_64 rng(9);
  const auto sys = random_lp_system(rng, 3, 4);
  for (auto mode : {ScheduleMode::kBernoulli, ScheduleMode::kRandomCoordinate,
                    ScheduleMode::kIncrementalSweep}) {
    ScheduleConfig cfg{mode, 0.3, 1234, HomotopySchedule::none()};
    const auto a = run(sys, cfg, {50.0, 0.0});
    const auto b = run(sys, cfg, {50.0, 0.0});
    CHECK(same_trajectory(a.trajectory, b.trajectory));
    CHECK(a.state.d2 == b.state.d2);
  }
}

TEST_CASE("trajectory is sampled once per equivalent iteration") {
  std::mt19937_64 rng(10);
  const auto sys = random_lp_system(rng, 3, 3);
  ScheduleConfig cfg{ScheduleMode::kBernoulli, 0.3, 5,
                     HomotopySchedule::none()};
  const auto r = run(sys, cfg, {40.0, 0.0});
  CHECK(r.trajectory.front().equiv_iter == 0.0);
  for (std::size_t i = 1; i < r.trajectory.size(); ++i) {
    CHECK(r.trajectory[i].equiv_iter > r.trajectory[i - 1].equiv_iter);
    CHECK(std::floor(r.trajectory[i].equiv_iter) >
          std::floor(r.trajectory[i - 1].equiv_iter));
  }
  CHECK(r.state.equivalent_iterations() >= 40.0);

  std::ostringstream os;
  write_trajectory_csv(os, r.trajectory);
  std::istringstream is(os.str());
  std::string header;
  std::getline(is, header);
  CHECK(header == "equiv_iter,objective,residual,dist_to_ref");
}

TEST_CASE("run validates its inputs") {
  std::mt19937_64 rng(11);
  const auto sys = random_lp_system(rng, 2, 2);
  ScheduleConfig bad{ScheduleMode::kBernoulli, 0.0, 0,
                     HomotopySchedule::none()};
  CHECK_THROWS_AS(run(sys, bad, {}), Error);
  bad.p = 1.5;
  CHECK_THROWS_AS(run(sys, bad, {}), Error);
  const Vector wrong = Vector::Zero(1);
  CHECK_THROWS_AS(run(sys, ScheduleConfig{}, {}, &wrong), Error);
}

TEST_CASE("homotopy schedules") {
  const auto bp = HomotopySchedule::parse("bp");
  CHECK(bp.gamma(1) == doctest::Approx(0.05));
  CHECK(bp.gamma(10) == doctest::Approx(0.994079470779666).epsilon(1e-12));
  CHECK(bp.gamma(11) == 1.0);
  CHECK(HomotopySchedule::parse("none").gamma(1) == 1.0);
  const auto ramp = HomotopySchedule::parse("ramp:0.5:10");
  CHECK(ramp.gamma(1) == 0.5);
  CHECK(ramp.gamma(6) == doctest::Approx(0.75));
  CHECK(ramp.gamma(11) == 1.0);
  CHECK(ramp.describe() == "ramp:0.5:10");
  CHECK(HomotopySchedule::parse("const:0.9").gamma(1000) == 0.9);
  for (const char* bad : {"ramp", "ramp:2:3", "const:-1", "fast", "ramp:x:1"})
    CHECK_THROWS_AS(HomotopySchedule::parse(bad), Error);
}

TEST_CASE("homotopy operator endpoints") {
  std::mt19937_64 rng(12);
  const auto sys = random_lp_system(rng, 3, 4);
  const auto t0 = homotopy_operator(sys, 0.0);
  const auto t1 = homotopy_operator(sys, 1.0);
  const auto t = fixed_point_operator(sys);
  for (int i = 0; i < 10; ++i) {
    const Vector x = testing::random_vector(rng, sys.num_nonlinear(), 3.0);
    CHECK(t0(x) == sys.e);
    CHECK(t1(x) == t(x));
  }
  CHECK(t0(sys.e) == sys.e);
  CHECK_THROWS_AS(homotopy_operator(sys, -0.1), Error);
  CHECK_THROWS_AS(homotopy_operator(sys, 1.1), Error);
}

TEST_CASE("empirical Lipschitz estimates") {
  std::mt19937_64 rng(13);
  Rng r(7);
  const Operator constant = [](const Vector& x) {
    return Vector::Ones(x.size()).eval();
  };
  CHECK(empirical_lipschitz(constant, Vector::Zero(3), 100, r) == 0.0);
  for (int t = 0; t < 5; ++t) {
    const auto sys = random_lp_system(rng, 3, 4);
    CHECK(empirical_lipschitz(fixed_point_operator(sys), sys.e, 300, r) <=
          1.0 + 1e-9);
    CHECK(empirical_lipschitz(homotopy_operator(sys, 0.9), sys.e, 300, r) <=
          0.9 + 1e-9);
    CHECK(empirical_lipschitz(homotopy_operator(sys, 0.5), sys.e, 300, r) <=
          0.5 + 1e-9);
  }
  CHECK_THROWS_AS(empirical_lipschitz(constant, Vector::Zero(2), 0, r), Error);
}

TEST_CASE("fixed homotopy contracts geometrically") {
  std::mt19937_64 rng(14);
  for (double alpha : {0.5, 0.8, 0.95}) {
    for (int t = 0; t < 5; ++t) {
      const auto sys = random_lp_system(rng, 3, 4);
      auto s = initial_state(sys);
      std::vector<double> res;
      for (int n = 0; n < 200; ++n) {
        res.push_back(fixed_point_residual(sys, s.d2, alpha));
        sync_step(s, sys, alpha);
      }
      for (std::size_t n = 0; n + 10 < res.size(); ++n) {
        if (res[n] >= 1.0 || res[n] < 1e-12) continue;
        CHECK(res[n + 10] / res[n] <= std::pow(alpha, 10) + 0.05);
      }
    }
  }
}

TEST_CASE("coordinate draws") {
  Rng r(3);
  std::vector<int> hits(5, 0);
  for (int i = 0; i < 50000; ++i) {
    const auto k = draw_coordinate(r, 5);
    REQUIRE(k >= 0);
    REQUIRE(k < 5);
    ++hits[static_cast<std::size_t>(k)];
  }
  for (int h : hits) CHECK(std::abs(h - 10000) < 500);
  for (int i = 0; i < 1000; ++i) {
    const double u = draw_unit(r);
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
  }
}
