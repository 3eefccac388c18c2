#pragma once

// Exhaustive search over all preference lists in [m]^n: counting, visiting,
// and parameter sweeps. The search space is partitioned by a fixed prefix of
// the list into shared-nothing shards that OpenMP workers process
// independently; shard results merge by exact-integer summation, so every
// count is identical for any worker count and schedule.

#include <gmpxx.h>

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "parkfn/core.hpp"
#include "parkfn/stats.hpp"

namespace parkfn {

inline constexpr std::uint64_t kDefaultBudget = 100'000'000;

struct CountOptions {
  int workers = 0;  // 0 = PARKFN_WORKERS env var, else the OpenMP default
  std::uint64_t budget = kDefaultBudget;  // refuse domains larger than this
  bool prune = false;       // prefix pruning; only forward-only unit rules qualify
  bool with_stats = false;  // aggregate per-list statistics while counting
  bool serialize_visits = false;  // deliver visitor callbacks under a lock
};

struct CountReport {
  RuleSpec rule;
  mpz_class domain_size;    // m^n, exact
  mpz_class parking_count;  // lists on which every car parks
  std::chrono::duration<double> elapsed{0};
  std::optional<AggregateStatistics> stats;
};

struct BudgetExceeded : std::runtime_error {
  mpz_class required;  // the exact domain size that was refused
  std::uint64_t budget;
  BudgetExceeded(mpz_class required_domain, std::uint64_t limit);
};

// Thrown when an enumeration visitor throws; carries the number of visits
// delivered before the abort.
struct VisitorAborted : std::runtime_error {
  std::uint64_t visited;
  VisitorAborted(std::uint64_t delivered, const std::string& why);
};

// parking_count = |{prefs in [m]^n : every car parks}|.
CountReport count_parking(const RuleSpec& rule, const CountOptions& opts = {});

// Invokes the visitor exactly once per successful list and returns the visit
// count. Callbacks arrive from multiple workers; pass serialize_visits when
// the visitor is not safe under concurrent invocation. The spans handed to
// the visitor are only valid for the duration of the call.
using ListVisitor = std::function<void(std::span<const int>, const ParkingOutcome&)>;
std::uint64_t enumerate_parking(const RuleSpec& rule, const ListVisitor& visit,
                                const CountOptions& opts = {});

// Aggregates list statistics over exactly the successful lists.
AggregateStatistics aggregate_stats(const RuleSpec& rule, const CountOptions& opts = {});

// One axis of a sweep grid, e.g. {"k", {0, 1, 2}}.
struct SweepAxis {
  std::string name;
  std::vector<long long> values;
};

struct SweepCell {
  std::string family;
  std::vector<std::pair<std::string, long long>> params;  // in grid order
  std::optional<CountReport> report;  // empty when the cell errored
  std::string error;
};

// Cross product of the axes in row-major order (first axis outermost), one
// CountReport per grid point. Per-cell errors are recorded in the cell and do
// not abort the remaining cells. Families: classical(n), naples(n,k),
// countdown(n), odd_back_even_forward(n), teleport(n,k), clown(m,d,n),
// scooter(m,d,n).
std::vector<SweepCell> sweep(const std::string& family, const std::vector<SweepAxis>& grid,
                             const CountOptions& opts = {});

// Expected axis names, in order, for a sweep family.
std::vector<std::string> sweep_axes(const std::string& family);

int resolve_workers(int requested);

}  // namespace parkfn
