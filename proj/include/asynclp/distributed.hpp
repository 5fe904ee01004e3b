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

// In-process simulation of the associative-array execution model: read-only
// keys g(k) (columns of G') and e, scalar cells c2(k) and d2(k), and workers
// that repeatedly pick a coordinate at random and run a lookup / compute /
// increment cycle against the shared cells. Cells only ever change through
// atomic increments, so concurrent updates interleave additively.

#pragma once

#include <atomic>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "asynclp/engine.hpp"
#include "asynclp/stationarity.hpp"

namespace asynclp {

class AssocArray {
 public:
  // d2 cells start at e, c2 cells at zero.
  explicit AssocArray(const StationaritySystem& sys);

  Eigen::Index size() const { return columns_.cols(); }

  const double* g(Eigen::Index k) const { return columns_.col(k).data(); }
  const Vector& e() const { return e_; }
  const Nonlinearity& map(Eigen::Index k) const { return maps_[k]; }

  double read_c2(Eigen::Index k) const {
    return c2_[k].load(std::memory_order_relaxed);
  }
  double read_d2(Eigen::Index k) const {
    return d2_[k].load(std::memory_order_relaxed);
  }
  void increment_c2(Eigen::Index k, double v) {
    c2_[k].fetch_add(v, std::memory_order_relaxed);
  }
  void increment_d2(Eigen::Index k, double v) {
    d2_[k].fetch_add(v, std::memory_order_relaxed);
  }

  // Cell-by-cell reads; not a consistent cut while workers are running.
  Vector snapshot_c2() const;
  Vector snapshot_d2() const;

  // "e", "g(k)", "c2(k)", "d2(k)".
  std::vector<std::string> keys() const;
  std::vector<double> lookup(std::string_view key) const;

 private:
  Matrix columns_;
  Vector e_;
  std::vector<Nonlinearity> maps_;
  std::unique_ptr<std::atomic<double>[]> c2_;
  std::unique_ptr<std::atomic<double>[]> d2_;
};

// Lookup d2(k), c2(k) and g(k); compute delta = gamma m_k(d2(k)) - c2(k);
// increment d2 by g(k) delta and c2(k) by delta. Returns delta.
double worker_update(AssocArray& arr, Eigen::Index k, double gamma = 1.0);

struct WorkerReport {
  int worker_id = 0;
  long updates = 0;
  std::vector<long> histogram;  // updates per coordinate
};

struct UpdateRecord {
  Eigen::Index k = 0;
  double delta = 0.0;
};

struct DistributedConfig {
  int workers = 1;
  double max_equivalent_iterations = 10000.0;
  double tolerance = 1e-9;
  std::uint64_t seed = 0;
  HomotopySchedule homotopy = HomotopySchedule::none();
  bool log_updates = false;
};

struct DistributedResult {
  Vector c2;
  Vector d2;
  Trajectory trajectory;
  std::vector<WorkerReport> reports;
  std::vector<std::vector<UpdateRecord>> logs;  // per worker, if requested
  long fired_updates = 0;
  bool converged = false;
  double residual = 0.0;
};

// Seed of worker w; worker 0 uses `seed` itself, matching the engine's
// random-coordinate schedule.
std::uint64_t worker_seed(std::uint64_t seed, int worker);

// Workers run on their own threads. Whichever update completes a multiple of
// K global updates records a trajectory point from a snapshot and checks the
// tolerance. With one worker the run is deterministic.
DistributedResult run_distributed(const StationaritySystem& sys,
                                  const DistributedConfig& config,
                                  const Vector* reference = nullptr);

void write_worker_reports_json(std::ostream& os,
                               const std::vector<WorkerReport>& reports);

}  // namespace asynclp
