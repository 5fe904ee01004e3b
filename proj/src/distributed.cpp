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

#include "asynclp/distributed.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <ostream>
#include <thread>

#include "json.hpp"

#include "asynclp/error.hpp"

namespace asynclp {

namespace {

// Parses "name(k)"; returns -1 on mismatch.
Eigen::Index parse_indexed(std::string_view key, std::string_view name) {
  if (key.size() < name.size() + 3 || key.substr(0, name.size()) != name ||
      key[name.size()] != '(' || key.back() != ')')
    return -1;
  Eigen::Index k = 0;
  for (char ch : key.substr(name.size() + 1, key.size() - name.size() - 2)) {
    if (ch < '0' || ch > '9') return -1;
    k = k * 10 + (ch - '0');
  }
  return k;
}

}  // namespace

AssocArray::AssocArray(const StationaritySystem& sys)
    : columns_(sys.Gprime),
      e_(sys.e),
      maps_(sys.nonlinear_maps),
      c2_(new std::atomic<double>[static_cast<std::size_t>(sys.e.size())]),
      d2_(new std::atomic<double>[static_cast<std::size_t>(sys.e.size())]) {
  for (Eigen::Index k = 0; k < e_.size(); ++k) {
    c2_[k].store(0.0);
    d2_[k].store(e_[k]);
  }
}

Vector AssocArray::snapshot_c2() const {
  Vector v(size());
  for (Eigen::Index k = 0; k < size(); ++k) v[k] = read_c2(k);
  return v;
}

Vector AssocArray::snapshot_d2() const {
  Vector v(size());
  for (Eigen::Index k = 0; k < size(); ++k) v[k] = read_d2(k);
  return v;
}

std::vector<std::string> AssocArray::keys() const {
  std::vector<std::string> out{"e"};
  for (const char* name : {"g", "c2", "d2"})
    for (Eigen::Index k = 0; k < size(); ++k)
      out.push_back(std::string(name) + "(" + std::to_string(k) + ")");
  return out;
}

std::vector<double> AssocArray::lookup(std::string_view key) const {
  if (key == "e") return {e_.data(), e_.data() + e_.size()};
  Eigen::Index k = -1;
  auto in_range = [&] { return k >= 0 && k < size(); };
  if ((k = parse_indexed(key, "g")) >= 0 && in_range())
    return {g(k), g(k) + size()};
  if ((k = parse_indexed(key, "c2")) >= 0 && in_range()) return {read_c2(k)};
  if ((k = parse_indexed(key, "d2")) >= 0 && in_range()) return {read_d2(k)};
  throw Error(ErrorCode::kInvalidArgument,
              "no key '" + std::string(key) + "'");
}

double worker_update(AssocArray& arr, Eigen::Index k, double gamma) {
  // lookup
  const double d_hat = arr.read_d2(k);
  const double c_hat = arr.read_c2(k);
  const double* g = arr.g(k);
  // compute
  const double delta = apply_nonlinearity(arr.map(k), d_hat, gamma) - c_hat;
  if (delta == 0.0) return 0.0;
  // increment
  for (Eigen::Index j = 0; j < arr.size(); ++j) arr.increment_d2(j, g[j] * delta);
  arr.increment_c2(k, delta);
  return delta;
}

std::uint64_t worker_seed(std::uint64_t seed, int worker) {
  return seed + static_cast<std::uint64_t>(worker) * 0x9E3779B97F4A7C15ull;
}

DistributedResult run_distributed(const StationaritySystem& sys,
                                  const DistributedConfig& config,
                                  const Vector* reference) {
  if (config.workers < 1)
    throw Error(ErrorCode::kInvalidArgument, "need at least one worker");
  const auto K = sys.num_nonlinear();
  const long budget = static_cast<long>(
      std::floor(config.max_equivalent_iterations * static_cast<double>(K)));

  AssocArray arr(sys);
  std::atomic<long> claimed{0};
  std::atomic<bool> stop{false};
  std::mutex trajectory_mutex;

  DistributedResult out;
  out.trajectory.push_back(observe(sys, arr.snapshot_d2(), 0.0, reference));
  if (out.trajectory.back().residual <= config.tolerance) stop = true;

  out.reports.resize(static_cast<std::size_t>(config.workers));
  out.logs.resize(config.log_updates ? out.reports.size() : 0);

  auto work = [&](int id) {
    auto& report = out.reports[static_cast<std::size_t>(id)];
    report.worker_id = id;
    report.histogram.assign(static_cast<std::size_t>(K), 0);
    std::vector<UpdateRecord>* log =
        config.log_updates ? &out.logs[static_cast<std::size_t>(id)] : nullptr;
    Rng rng(worker_seed(config.seed, id));

    while (!stop.load(std::memory_order_relaxed)) {
      const long slot = claimed.fetch_add(1);
      if (slot >= budget) break;
      const Eigen::Index k = draw_coordinate(rng, K);
      const double gamma = config.homotopy.gamma(slot / K + 1);
      const double delta = worker_update(arr, k, gamma);
      ++report.updates;
      ++report.histogram[static_cast<std::size_t>(k)];
      if (log) log->push_back({k, delta});

      if ((slot + 1) % K == 0) {
        const double equiv =
            static_cast<double>(slot + 1) / static_cast<double>(K);
        auto point = observe(sys, arr.snapshot_d2(), equiv, reference);
        const bool done = point.residual <= config.tolerance;
        {
          std::lock_guard lock(trajectory_mutex);
          out.trajectory.push_back(point);
        }
        if (done) stop.store(true);
      }
    }
  };

  if (config.workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(config.workers));
    for (int id = 0; id < config.workers; ++id) threads.emplace_back(work, id);
    for (auto& t : threads) t.join();
  }

  for (const auto& r : out.reports) out.fired_updates += r.updates;
  std::stable_sort(out.trajectory.begin(), out.trajectory.end(),
                   [](const TrajectoryPoint& a, const TrajectoryPoint& b) {
                     return a.equiv_iter < b.equiv_iter;
                   });

  out.c2 = arr.snapshot_c2();
  out.d2 = arr.snapshot_d2();
  const double equiv =
      static_cast<double>(out.fired_updates) / static_cast<double>(K);
  if (config.workers > 1 || out.trajectory.back().equiv_iter != equiv)
    out.trajectory.push_back(observe(sys, out.d2, equiv, reference));
  if (config.workers > 1) {
    // Snapshots taken mid-run may be stale; the final point is exact, so
    // drop any earlier point recorded at the same equivalent iteration.
    const auto last = out.trajectory.back();
    while (out.trajectory.size() > 1 &&
           out.trajectory[out.trajectory.size() - 2].equiv_iter ==
               last.equiv_iter)
      out.trajectory.erase(out.trajectory.end() - 2);
  }
  out.residual = out.trajectory.back().residual;
  out.converged = out.residual <= config.tolerance;
  return out;
}

void write_worker_reports_json(std::ostream& os,
                               const std::vector<WorkerReport>& reports) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : reports)
    arr.push_back({{"worker_id", r.worker_id},
                   {"updates", r.updates},
                   {"histogram", r.histogram}});
  os << arr.dump(2) << '\n';
}

}  // namespace asynclp
