// Timing comparison between the OpenMP counting kernel, the same kernel on a
// single worker, the pruned counter where it applies, and the single-threaded
// naive reference. All routes must report the same count.
//
//   usage: parkfn_bench [preset ...]
//
// The naive reference is skipped on domains above its refusal limit.

#include <chrono>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <omp.h>

#include "parkfn/core.hpp"
#include "parkfn/enumerate.hpp"
#include "parkfn/oracle.hpp"

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void bench_one(const std::string& preset) {
  const parkfn::RuleSpec rule = parkfn::expand_preset(preset);

  parkfn::CountOptions serial;
  serial.workers = 1;
  auto t0 = std::chrono::steady_clock::now();
  const parkfn::CountReport one = parkfn::count_parking(rule, serial);
  const double serial_s = seconds_since(t0);

  parkfn::CountOptions parallel;
  parallel.workers = omp_get_max_threads();
  t0 = std::chrono::steady_clock::now();
  const parkfn::CountReport many = parkfn::count_parking(rule, parallel);
  const double parallel_s = seconds_since(t0);

  double naive_s = -1.0;
  bool naive_agrees = true;
  if (one.domain_size <= parkfn::oracle::kNaiveDomainLimit) {
    t0 = std::chrono::steady_clock::now();
    const std::uint64_t naive = parkfn::oracle::naive_count(rule);
    naive_s = seconds_since(t0);
    naive_agrees = (one.parking_count == naive);
  }

  double pruned_s = -1.0;
  bool pruned_agrees = true;
  parkfn::CountOptions pruning = parallel;
  pruning.prune = true;
  t0 = std::chrono::steady_clock::now();
  const parkfn::CountReport pruned = parkfn::count_parking(rule, pruning);
  pruned_s = seconds_since(t0);
  pruned_agrees = (pruned.parking_count == one.parking_count);

  const bool agree = naive_agrees && pruned_agrees && (one.parking_count == many.parking_count);
  char naive_buf[32];
  if (naive_s < 0) {
    std::snprintf(naive_buf, sizeof naive_buf, "%10s", "-");
  } else {
    std::snprintf(naive_buf, sizeof naive_buf, "%9.3fs", naive_s);
  }
  std::printf("%-24s %12s %12s %s %9.3fs %9.3fs %9.3fs %7.2fx  %s\n", preset.c_str(),
              one.domain_size.get_str().c_str(), one.parking_count.get_str().c_str(),
              naive_buf, serial_s, parallel_s, pruned_s,
              parallel_s > 0 ? serial_s / parallel_s : 0.0, agree ? "ok" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> presets;
  for (int i = 1; i < argc; ++i) presets.emplace_back(argv[i]);
  if (presets.empty()) {
    presets = {"classical:6", "classical:7", "classical:8",
               "naples:6,1",  "teleport:7,2", "scooter:3,3,9"};
  }

  std::printf("threads available: %d\n", omp_get_max_threads());
  std::printf("%-24s %12s %12s %10s %10s %10s %10s %8s  %s\n", "preset", "lists", "count",
              "naive", "engine 1T", "engine NT", "pruned", "speedup", "check");
  for (const auto& preset : presets) {
    try {
      bench_one(preset);
    } catch (const std::exception& e) {
      std::printf("%-24s error: %s\n", preset.c_str(), e.what());
    }
  }
  return 0;
}
