#include "parkfn/enumerate.hpp"

#include <omp.h>

#include <atomic>
#include <cstdlib>
#include <utility>

#include "parkfn/engine.hpp"

namespace parkfn {

BudgetExceeded::BudgetExceeded(mpz_class required_domain, std::uint64_t limit)
    : std::runtime_error("domain size " + required_domain.get_str() +
                         " exceeds the budget of " + std::to_string(limit) + " lists"),
      required(std::move(required_domain)),
      budget(limit) {}

VisitorAborted::VisitorAborted(std::uint64_t delivered, const std::string& why)
    : std::runtime_error("enumeration aborted by visitor after " + std::to_string(delivered) +
                         " visit(s): " + why),
      visited(delivered) {}

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("PARKFN_WORKERS")) {
    const int w = std::atoi(env);
    if (w > 0) return w;
  }
  return omp_get_max_threads();
}

namespace {

// Budgets above 2^62 would overflow the shard arithmetic; nobody can wait for
// that many simulations anyway.
constexpr std::uint64_t kHardBudgetCap = std::uint64_t{1} << 62;

struct Domain {
  mpz_class size;            // m^n
  std::uint64_t total = 0;   // same value, guaranteed to fit
  int prefix_len = 0;        // fixed list positions per shard
  std::uint64_t shards = 0;  // m^prefix_len
};

Domain check_domain(const RuleSpec& rule, std::uint64_t budget) {
  Domain d;
  const auto m = static_cast<unsigned long>(rule.lot.spots);
  const auto n = static_cast<unsigned long>(rule.fleet.cars);
  mpz_ui_pow_ui(d.size.get_mpz_t(), m, n);
  if (budget > kHardBudgetCap) budget = kHardBudgetCap;
  if (mpz_cmp_ui(d.size.get_mpz_t(), budget) > 0) throw BudgetExceeded(d.size, budget);
  d.total = mpz_get_ui(d.size.get_mpz_t());
  d.prefix_len = rule.fleet.cars >= 2 ? 2 : 1;
  d.shards = 1;
  for (int i = 0; i < d.prefix_len; ++i) d.shards *= m;
  return d;
}

void require_countable(const RuleSpec& rule) {
  ensure_valid(rule);
  if (has_coin_policy(rule)) {
    throw std::invalid_argument(
        "counting requires deterministic policies; use the probability evaluator for "
        "coin-flip cars");
  }
}

// Writes the shard's fixed prefix into prefs[0..prefix_len) and resets the
// free positions to 1.
void load_shard(std::uint64_t shard, int m, int prefix_len, std::vector<int>& prefs) {
  std::uint64_t rem = shard;
  for (int pos = prefix_len - 1; pos >= 0; --pos) {
    prefs[pos] = 1 + static_cast<int>(rem % static_cast<std::uint64_t>(m));
    rem /= static_cast<std::uint64_t>(m);
  }
  for (std::size_t pos = prefix_len; pos < prefs.size(); ++pos) prefs[pos] = 1;
}

// Advances the free positions of the odometer; false when the shard is done.
bool advance(std::vector<int>& prefs, int m, int prefix_len) {
  int pos = static_cast<int>(prefs.size()) - 1;
  while (pos >= prefix_len && prefs[pos] == m) {
    prefs[pos] = 1;
    --pos;
  }
  if (pos < prefix_len) return false;
  ++prefs[pos];
  return true;
}

struct ExhaustiveResult {
  std::uint64_t successes = 0;
  AggregateStatistics stats;
};

ExhaustiveResult run_exhaustive(const RuleSpec& rule, const Domain& domain,
                                const CountOptions& opts, const ListVisitor* visitor) {
  const int m = rule.lot.spots;
  const int n = rule.fleet.cars;
  const int workers = resolve_workers(opts.workers);
  const bool want_stats = opts.with_stats;

  ExhaustiveResult result;
  if (want_stats) result.stats.init(n);

  std::atomic<bool> aborted{false};
  std::atomic<std::uint64_t> delivered{0};
  std::string abort_reason;

#pragma omp parallel num_threads(workers)
  {
    ParkRunner runner(rule);
    std::vector<int> prefs(n);
    std::uint64_t local_successes = 0;
    AggregateStatistics local_stats;
    if (want_stats) local_stats.init(n);

#pragma omp for schedule(dynamic)
    for (long long shard = 0; shard < static_cast<long long>(domain.shards); ++shard) {
      if (aborted.load(std::memory_order_relaxed)) continue;
      load_shard(static_cast<std::uint64_t>(shard), m, domain.prefix_len, prefs);
      while (true) {
        const ParkingOutcome& out = runner.run(prefs);
        if (out.success()) {
          ++local_successes;
          if (want_stats) local_stats.add(prefs, out);
          if (visitor) {
            try {
              if (opts.serialize_visits) {
#pragma omp critical(parkfn_visit)
                (*visitor)(prefs, out);
              } else {
                (*visitor)(prefs, out);
              }
              delivered.fetch_add(1, std::memory_order_relaxed);
            } catch (const std::exception& e) {
#pragma omp critical(parkfn_abort)
              {
                if (!aborted.load(std::memory_order_relaxed)) {
                  abort_reason = e.what();
                  aborted.store(true, std::memory_order_relaxed);
                }
              }
              break;
            }
          }
        }
        if (!advance(prefs, m, domain.prefix_len)) break;
      }
    }

#pragma omp critical(parkfn_merge)
    {
      result.successes += local_successes;
      if (want_stats) result.stats.merge(local_stats);
    }
  }

  if (aborted.load()) throw VisitorAborted(delivered.load(), abort_reason);
  return result;
}

// ---------------------------------------------------------------------------
// Pruned counting for forward-only unit rules.
//
// A list parks under such a rule iff for every spot k the number of entries
// >= k is at most m-k+1 (the sorted-rearrangement bound). The counter walks
// the list positions and abandons a prefix as soon as some bound is tight,
// which never changes the count: any extension of a violating prefix violates
// the same bound.

bool prunable(const RuleSpec& rule) {
  if (!rule.lot.obstructed.empty()) return false;
  for (int c : rule.lot.capacities) {
    if (c != 1) return false;
  }
  for (int s : rule.fleet.sizes) {
    if (s != 1) return false;
  }
  for (const MovementPolicy& p : rule.fleet.policies) {
    const bool forward_like =
        p.kind == PolicyKind::ForwardOnly || (p.kind == PolicyKind::BackUpTo && p.k == 0);
    if (!forward_like) return false;
  }
  return true;
}

// ge[k-1] = number of chosen entries >= k. Appending value v is legal iff no
// k <= v already has ge[k-1] == m-k+1.
std::uint64_t pruned_dfs(int pos, int n, int m, std::vector<int>& ge) {
  if (pos == n) return 1;
  std::uint64_t total = 0;
  for (int v = 1; v <= m; ++v) {
    // Ascending scan: bounds for k < v were verified open at earlier
    // iterations, so only k == v is left to check here, and a blocked v
    // blocks every larger value too.
    if (ge[v - 1] >= m - v + 1) break;
    for (int k = 1; k <= v; ++k) ++ge[k - 1];
    total += pruned_dfs(pos + 1, n, m, ge);
    for (int k = 1; k <= v; ++k) --ge[k - 1];
  }
  return total;
}

std::uint64_t run_pruned(const RuleSpec& rule, const Domain& domain, const CountOptions& opts) {
  const int m = rule.lot.spots;
  const int n = rule.fleet.cars;
  const int workers = resolve_workers(opts.workers);
  std::uint64_t total = 0;

#pragma omp parallel num_threads(workers) reduction(+ : total)
  {
    std::vector<int> prefs(n);
    std::vector<int> ge(m);

#pragma omp for schedule(dynamic)
    for (long long shard = 0; shard < static_cast<long long>(domain.shards); ++shard) {
      load_shard(static_cast<std::uint64_t>(shard), m, domain.prefix_len, prefs);
      ge.assign(m, 0);
      bool feasible = true;
      for (int pos = 0; pos < domain.prefix_len && feasible; ++pos) {
        const int v = prefs[pos];
        // Unlike the ascending scan in pruned_dfs, prefix values arrive in an
        // arbitrary order, so every bound k <= v must be inspected.
        for (int k = 1; k <= v; ++k) {
          if (ge[k - 1] >= m - k + 1) {
            feasible = false;
            break;
          }
        }
        if (!feasible) break;
        for (int k = 1; k <= v; ++k) ++ge[k - 1];
      }
      if (feasible) total += pruned_dfs(domain.prefix_len, n, m, ge);
    }
  }
  return total;
}

}  // namespace

CountReport count_parking(const RuleSpec& rule, const CountOptions& opts) {
  require_countable(rule);
  const Domain domain = check_domain(rule, opts.budget);

  const auto start = std::chrono::steady_clock::now();
  CountReport report;
  report.rule = rule;
  report.domain_size = domain.size;

  if (opts.prune && !opts.with_stats && prunable(rule)) {
    report.parking_count = mpz_class{static_cast<unsigned long>(run_pruned(rule, domain, opts))};
  } else {
    ExhaustiveResult r = run_exhaustive(rule, domain, opts, nullptr);
    report.parking_count = mpz_class{static_cast<unsigned long>(r.successes)};
    if (opts.with_stats) report.stats = std::move(r.stats);
  }
  report.elapsed = std::chrono::steady_clock::now() - start;
  return report;
}

std::uint64_t enumerate_parking(const RuleSpec& rule, const ListVisitor& visit,
                                const CountOptions& opts) {
  require_countable(rule);
  if (!visit) throw std::invalid_argument("enumerate_parking needs a visitor");
  const Domain domain = check_domain(rule, opts.budget);
  return run_exhaustive(rule, domain, opts, &visit).successes;
}

AggregateStatistics aggregate_stats(const RuleSpec& rule, const CountOptions& opts) {
  CountOptions with_stats = opts;
  with_stats.with_stats = true;
  with_stats.prune = false;
  return *count_parking(rule, with_stats).stats;
}

std::vector<std::string> sweep_axes(const std::string& family) {
  if (family == "classical" || family == "countdown" || family == "odd_back_even_forward") {
    return {"n"};
  }
  if (family == "naples" || family == "teleport") return {"n", "k"};
  if (family == "clown" || family == "scooter") return {"m", "d", "n"};
  throw std::invalid_argument("unknown sweep family '" + family + "'");
}

std::vector<SweepCell> sweep(const std::string& family, const std::vector<SweepAxis>& grid,
                             const CountOptions& opts) {
  const std::vector<std::string> expected = sweep_axes(family);
  if (grid.size() != expected.size()) {
    throw std::invalid_argument("family '" + family + "' sweeps over " +
                                std::to_string(expected.size()) + " axis/axes");
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i].name != expected[i]) {
      throw std::invalid_argument("axis " + std::to_string(i + 1) + " of family '" + family +
                                  "' must be '" + expected[i] + "'");
    }
    if (grid[i].values.empty()) {
      throw std::invalid_argument("axis '" + grid[i].name + "' has no values");
    }
  }

  std::vector<SweepCell> cells;
  std::vector<std::size_t> idx(grid.size(), 0);
  while (true) {
    SweepCell cell;
    cell.family = family;
    std::vector<PresetArg> args;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      cell.params.emplace_back(grid[i].name, grid[i].values[idx[i]]);
      args.emplace_back(grid[i].values[idx[i]]);
    }
    try {
      const RuleSpec rule = expand_preset(family, args);
      cell.report = count_parking(rule, opts);
    } catch (const std::exception& e) {
      cell.error = e.what();
    }
    cells.push_back(std::move(cell));

    int axis = static_cast<int>(grid.size()) - 1;
    while (axis >= 0 && ++idx[axis] == grid[axis].values.size()) {
      idx[axis] = 0;
      --axis;
    }
    if (axis < 0) break;
  }
  return cells;
}

}  // namespace parkfn
