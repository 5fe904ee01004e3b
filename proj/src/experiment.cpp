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

#include "asynclp/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <thread>

#include "asynclp/error.hpp"
#include "json.hpp"

namespace asynclp {

namespace {

struct TrialOutcome {
  std::vector<Trajectory> runs;  // one per series
  std::vector<bool> converged;
  std::vector<double> residual;
};

double median(std::vector<double> v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  const auto mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<long>(mid), v.end());
  const double hi = v[mid];
  if (v.size() % 2) return hi;
  const double lo =
      *std::max_element(v.begin(), v.begin() + static_cast<long>(mid));
  return 0.5 * (lo + hi);
}

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? std::numeric_limits<double>::quiet_NaN()
                   : s / static_cast<double>(v.size());
}

double safe_log10(double x) { return std::log10(std::max(x, 1e-300)); }

ProblemFile make_instance(const ExperimentConfig& c, std::uint64_t seed) {
  if (c.problem == "chebyshev")
    return make_problem(gen_chebyshev(c.n, c.m, seed));
  if (c.problem == "bp")
    return make_problem(gen_basis_pursuit(c.n, c.m, c.sparsity, seed));
  if (c.problem == "lp") return make_problem(gen_feasible_lp(c.n, c.m, seed));
  throw Error(ErrorCode::kInvalidArgument,
              "unknown experiment problem '" + c.problem +
                  "' (expected chebyshev, bp, lp)");
}

std::string series_label(SolveMode mode, double p) {
  if (mode != SolveMode::kBernoulli) return to_string(mode);
  char buf[32];
  std::snprintf(buf, sizeof buf, "p%g", p);
  return buf;
}

void write_rows(std::ostream& os, const std::vector<AggregateRow>& rows,
                const std::string& prefix) {
  char buf[256];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%ld,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                  r.equiv_iter, r.objective_mean, r.objective_median,
                  r.log_residual_mean, r.log_residual_median, r.log_dist_mean,
                  r.log_dist_median);
    os << prefix << buf;
  }
}

constexpr const char* kRowHeader =
    "equiv_iter,objective_mean,objective_median,log10_residual_mean,"
    "log10_residual_median,log10_dist_mean,log10_dist_median";

}  // namespace

ExperimentConfig experiment_preset(const std::string& name) {
  ExperimentConfig c;
  if (name == "cheb-desk") {
    c.problem = "chebyshev";
    c.n = 10;
    c.m = 20;
    c.p_values = {0.2, 0.8};
    c.trials = 50;
  } else if (name == "bp-desk") {
    c.problem = "bp";
    c.n = 64;
    c.m = 32;
    c.sparsity = 4;
    c.trials = 50;
    c.homotopy = HomotopySchedule::power_ramp();
  } else if (name == "cheb-paper") {
    c.problem = "chebyshev";
    c.n = 100;
    c.m = 200;
    c.trials = 500;
  } else if (name == "bp-paper") {
    c.problem = "bp";
    c.n = 512;
    c.m = 200;
    c.sparsity = 16;
    c.trials = 1000;
    c.homotopy = HomotopySchedule::power_ramp();
  } else {
    throw Error(ErrorCode::kInvalidArgument,
                "unknown preset '" + name +
                    "' (expected cheb-desk, bp-desk, cheb-paper, bp-paper)");
  }
  return c;
}

std::uint64_t trial_seed(std::uint64_t seed, int trial, int stream) {
  // splitmix64 finalizer over a combined key.
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (static_cast<std::uint64_t>(trial) + 1) +
                    0xD1B54A32D192ED03ull * static_cast<std::uint64_t>(stream);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::vector<AggregateRow> aggregate(const std::vector<Trajectory>& runs) {
  // Resample every run onto whole equivalent iterations.
  std::vector<std::vector<const TrajectoryPoint*>> grids;
  std::size_t length = 0;
  for (const auto& t : runs) {
    std::vector<const TrajectoryPoint*> g;
    for (const auto& p : t) {
      const auto unit = static_cast<std::size_t>(std::floor(p.equiv_iter));
      if (g.size() <= unit) g.resize(unit + 1, nullptr);
      g[unit] = &p;
    }
    for (std::size_t i = 1; i < g.size(); ++i)
      if (!g[i]) g[i] = g[i - 1];
    length = std::max(length, g.size());
    grids.push_back(std::move(g));
  }

  std::vector<AggregateRow> rows;
  for (std::size_t i = 0; i < length; ++i) {
    std::vector<double> obj, res, dist;
    for (const auto& g : grids) {
      if (g.empty()) continue;
      const TrajectoryPoint* p = i < g.size() ? g[i] : g.back();
      obj.push_back(p->objective);
      res.push_back(safe_log10(p->residual));
      if (p->dist_to_ref) dist.push_back(safe_log10(*p->dist_to_ref));
    }
    AggregateRow r;
    r.equiv_iter = static_cast<long>(i);
    r.objective_mean = mean(obj);
    r.objective_median = median(obj);
    r.log_residual_mean = mean(res);
    r.log_residual_median = median(res);
    r.log_dist_mean = mean(dist);
    r.log_dist_median = median(dist);
    rows.push_back(r);
  }
  return rows;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  if (config.trials < 1)
    throw Error(ErrorCode::kInvalidArgument, "need at least one trial");
  std::vector<double> ps = config.p_values;
  if (config.mode != SolveMode::kBernoulli) ps = {1.0};
  if (ps.empty())
    throw Error(ErrorCode::kInvalidArgument, "no firing probabilities given");
  for (double p : ps)
    if (!(p > 0.0 && p <= 1.0))
      throw Error(ErrorCode::kInvalidArgument,
                  "firing probabilities must lie in (0, 1]");

  std::vector<TrialOutcome> trials(static_cast<std::size_t>(config.trials));
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    while (true) {
      const int t = next.fetch_add(1);
      if (t >= config.trials) return;
      try {
        const ProblemFile problem =
            make_instance(config, trial_seed(config.seed, t, 0));
        const StationaritySystem sys = build_system(problem.async);

        std::optional<Vector> reference = oracle_reference(problem);
        if (!reference) {
          SolveOptions ref;
          ref.mode = SolveMode::kBernoulli;
          ref.p = 0.5;
          ref.seed = trial_seed(config.seed, t, 1000);
          ref.max_equivalent_iterations = 50000.0;
          ref.tolerance = 1e-12;
          ref.homotopy = config.homotopy;
          reference = input_values(sys, solve(sys, ref).d2);
        }

        auto& out = trials[static_cast<std::size_t>(t)];
        for (std::size_t s = 0; s < ps.size(); ++s) {
          SolveOptions opt;
          opt.mode = config.mode;
          opt.p = ps[s];
          opt.workers = config.workers;
          opt.seed = trial_seed(config.seed, t, static_cast<int>(s) + 1);
          opt.max_equivalent_iterations = config.max_equivalent_iterations;
          opt.tolerance = config.tolerance;
          opt.homotopy = config.homotopy;
          auto r = solve(sys, opt, &*reference);
          out.runs.push_back(std::move(r.trajectory));
          out.converged.push_back(r.converged);
          out.residual.push_back(r.residual);
        }
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(config.trials);
      }
    }
  };

  const int threads = std::max(1, std::min(config.threads, config.trials));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  ExperimentResult result;
  for (std::size_t s = 0; s < ps.size(); ++s) {
    SeriesSummary sum;
    sum.label = series_label(config.mode, ps[s]);
    sum.p = ps[s];
    sum.trials = config.trials;
    std::vector<Trajectory> runs;
    std::vector<double> finals;
    for (int t = 0; t < config.trials; ++t) {
      const auto& tr = trials[static_cast<std::size_t>(t)];
      runs.push_back(tr.runs[s]);
      finals.push_back(tr.residual[s]);
      if (tr.converged[s]) ++sum.converged;
      else sum.failed_trials.push_back(t);
    }
    sum.median_final_residual = median(finals);
    result.series.push_back(std::move(sum));
    result.aggregates.push_back(aggregate(runs));
  }

  if (!config.out_dir.empty()) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(config.out_dir, ec);
    const fs::path dir(config.out_dir);
    std::ofstream all(dir / "trajectory_all.csv");
    if (!all)
      throw Error(ErrorCode::kIo,
                  "cannot write into '" + config.out_dir + "'");
    all << "series,p," << kRowHeader << '\n';
    for (std::size_t s = 0; s < result.series.size(); ++s) {
      const auto& sum = result.series[s];
      std::ofstream one(dir / ("trajectory_" + sum.label + ".csv"));
      one << kRowHeader << '\n';
      write_rows(one, result.aggregates[s], "");
      char prefix[64];
      std::snprintf(prefix, sizeof prefix, "%s,%g,", sum.label.c_str(), sum.p);
      write_rows(all, result.aggregates[s], prefix);
    }
    std::ofstream summary(dir / "summary.json");
    summary << summary_json(config, result) << '\n';
  }
  return result;
}

std::string summary_json(const ExperimentConfig& config,
                         const ExperimentResult& result) {
  using nlohmann::json;
  json doc;
  doc["config"] = {{"problem", config.problem},
                   {"n", config.n},
                   {"m", config.m},
                   {"sparsity", config.sparsity},
                   {"mode", to_string(config.mode)},
                   {"p", config.p_values},
                   {"workers", config.workers},
                   {"trials", config.trials},
                   {"seed", config.seed},
                   {"max_equiv_iters", config.max_equivalent_iterations},
                   {"tol", config.tolerance},
                   {"homotopy", config.homotopy.describe()}};
  json series = json::array();
  bool partial = false;
  for (const auto& s : result.series) {
    partial = partial || !s.failed_trials.empty();
    series.push_back({{"label", s.label},
                      {"p", s.p},
                      {"trials", s.trials},
                      {"converged", s.converged},
                      {"failed_trials", s.failed_trials},
                      {"median_final_residual", s.median_final_residual}});
  }
  doc["series"] = std::move(series);
  doc["partial_failure"] = partial;
  return doc.dump(2);
}

}  // namespace asynclp
