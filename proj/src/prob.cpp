#include "parkfn/prob.hpp"

#include <omp.h>

#include <cmath>
#include <stdexcept>

#include "parkfn/engine.hpp"

namespace parkfn {

ExactProbability ExactProbability::from_rational(const mpq_class& value) {
  mpq_class v = value;
  v.canonicalize();
  return {v.get_num(), v.get_den()};
}

std::string ExactProbability::str() const {
  return numerator.get_str() + "/" + denominator.get_str();
}

namespace {

void require_prob_inputs(std::span<const int> prefs, const RuleSpec& rule) {
  ensure_valid(rule);
  if (static_cast<int>(prefs.size()) != rule.fleet.cars) {
    throw std::invalid_argument("preference list length != car count");
  }
  for (int a : prefs) {
    if (a < 1 || a > rule.lot.spots) {
      throw std::invalid_argument("preference outside [1, spots]");
    }
  }
}

void take_unit(LotState& state, int spot) { --state.remaining[spot - 1]; }

void release(LotState& state, int spot, int size) {
  for (int j = spot; j < spot + size; ++j) ++state.remaining[j - 1];
}

// Probability that cars car..n all park from the given occupancy state.
mpq_class success_mass(const RuleSpec& rule, std::span<const int> prefs, LotState& state,
                       int car, const mpq_class& p_heads) {
  if (car > rule.fleet.cars) return {1};
  const int pref = prefs[car - 1];
  const MovementPolicy pol = rule.fleet.policies[car - 1];

  if (pol.kind != PolicyKind::CoinBackOne) {
    const int spot = park_one_car(rule, car, pref, state);
    if (!spot) return {0};
    mpq_class mass = success_mass(rule, prefs, state, car + 1, p_heads);
    release(state, spot, rule.fleet.sizes[car - 1]);
    return mass;
  }

  // Coin car. No flip when the preferred spot has room or no previous spot
  // exists; otherwise the tree branches once.
  auto settle = [&](int spot) -> mpq_class {
    if (!spot) return {0};
    take_unit(state, spot);
    mpq_class mass = success_mass(rule, prefs, state, car + 1, p_heads);
    release(state, spot, 1);
    return mass;
  };

  if (state.remaining[pref - 1] > 0) return settle(pref);
  if (pref == 1) return settle(forward_scan(state, pref + 1));

  const int back = (state.remaining[pref - 2] > 0) ? pref - 1 : forward_scan(state, pref + 1);
  const mpq_class heads_mass = settle(back);
  const mpq_class tails_mass = settle(forward_scan(state, pref + 1));
  return p_heads * heads_mass + (1 - p_heads) * tails_mass;
}

}  // namespace

ExactProbability exact_park_probability(std::span<const int> prefs, const RuleSpec& rule,
                                        const mpq_class& p_heads) {
  require_prob_inputs(prefs, rule);
  if (p_heads < 0 || p_heads > 1) {
    throw std::invalid_argument("p_heads must lie in [0, 1]");
  }
  LotState state(rule.lot);
  return ExactProbability::from_rational(success_mass(rule, prefs, state, 1, p_heads));
}

namespace {

// Splittable counter-style generator: every trial derives its own stream from
// (seed, trial), so parallel schedules cannot change the sampled bits.
struct SplitMix64 {
  std::uint64_t state;

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  static SplitMix64 for_trial(std::uint64_t seed, std::uint64_t trial) {
    SplitMix64 mixer{seed ^ (trial * 0xD1B54A32D192ED03ull)};
    return SplitMix64{mixer.next()};
  }
};

bool sample_trial(const RuleSpec& rule, std::span<const int> prefs, LotState& state,
                  SplitMix64& rng, double p_heads) {
  state.reset(rule.lot);
  for (int car = 1; car <= rule.fleet.cars; ++car) {
    const int pref = prefs[car - 1];
    const MovementPolicy pol = rule.fleet.policies[car - 1];
    int spot = 0;
    if (pol.kind != PolicyKind::CoinBackOne) {
      spot = park_one_car(rule, car, pref, state);
    } else if (state.remaining[pref - 1] > 0) {
      spot = pref;
      take_unit(state, pref);
    } else {
      if (pref >= 2 && rng.next_unit() < p_heads && state.remaining[pref - 2] > 0) {
        spot = pref - 1;
      } else {
        spot = forward_scan(state, pref + 1);
      }
      if (spot) take_unit(state, spot);
    }
    if (!spot) return false;
  }
  return true;
}

}  // namespace

McEstimate mc_park_probability(std::span<const int> prefs, const RuleSpec& rule,
                               std::uint64_t trials, std::uint64_t seed, double p_heads,
                               int workers) {
  require_prob_inputs(prefs, rule);
  if (trials == 0) throw std::invalid_argument("trials must be >= 1");
  if (!(p_heads >= 0.0 && p_heads <= 1.0)) {
    throw std::invalid_argument("p_heads must lie in [0, 1]");
  }

  const int nthreads = resolve_workers(workers);
  std::uint64_t successes = 0;

#pragma omp parallel num_threads(nthreads) reduction(+ : successes)
  {
    LotState state(rule.lot);
#pragma omp for schedule(static)
    for (long long t = 0; t < static_cast<long long>(trials); ++t) {
      SplitMix64 rng = SplitMix64::for_trial(seed, static_cast<std::uint64_t>(t));
      if (sample_trial(rule, prefs, state, rng, p_heads)) ++successes;
    }
  }

  McEstimate est;
  est.trials = trials;
  est.successes = successes;
  est.seed = seed;
  est.estimate = static_cast<double>(successes) / static_cast<double>(trials);
  est.standard_error =
      std::sqrt(est.estimate * (1.0 - est.estimate) / static_cast<double>(trials));
  return est;
}

namespace {

// Mirrors the exhaustive counter's sharding; kept local because the merge
// type here is an exact rational rather than an integer.
void load_shard_prefs(std::uint64_t shard, int m, int prefix_len, std::vector<int>& prefs) {
  std::uint64_t rem = shard;
  for (int pos = prefix_len - 1; pos >= 0; --pos) {
    prefs[pos] = 1 + static_cast<int>(rem % static_cast<std::uint64_t>(m));
    rem /= static_cast<std::uint64_t>(m);
  }
  for (std::size_t pos = prefix_len; pos < prefs.size(); ++pos) prefs[pos] = 1;
}

bool advance_prefs(std::vector<int>& prefs, int m, int prefix_len) {
  int pos = static_cast<int>(prefs.size()) - 1;
  while (pos >= prefix_len && prefs[pos] == m) {
    prefs[pos] = 1;
    --pos;
  }
  if (pos < prefix_len) return false;
  ++prefs[pos];
  return true;
}

}  // namespace

mpq_class expected_park_count(const RuleSpec& rule, const CountOptions& opts,
                              const mpq_class& p_heads) {
  ensure_valid(rule);
  if (p_heads < 0 || p_heads > 1) {
    throw std::invalid_argument("p_heads must lie in [0, 1]");
  }
  const int m = rule.lot.spots;
  const int n = rule.fleet.cars;

  mpz_class domain;
  mpz_ui_pow_ui(domain.get_mpz_t(), static_cast<unsigned long>(m),
                static_cast<unsigned long>(n));
  if (mpz_cmp_ui(domain.get_mpz_t(), opts.budget) > 0) {
    throw BudgetExceeded(domain, opts.budget);
  }

  const int prefix_len = n >= 2 ? 2 : 1;
  std::uint64_t shards = 1;
  for (int i = 0; i < prefix_len; ++i) shards *= static_cast<std::uint64_t>(m);

  const int nthreads = resolve_workers(opts.workers);
  mpq_class total{0};

#pragma omp parallel num_threads(nthreads)
  {
    LotState state(rule.lot);
    std::vector<int> prefs(n);
    mpq_class local{0};

#pragma omp for schedule(dynamic)
    for (long long shard = 0; shard < static_cast<long long>(shards); ++shard) {
      load_shard_prefs(static_cast<std::uint64_t>(shard), m, prefix_len, prefs);
      while (true) {
        state.reset(rule.lot);
        local += success_mass(rule, prefs, state, 1, p_heads);
        if (!advance_prefs(prefs, m, prefix_len)) break;
      }
    }

#pragma omp critical(parkfn_expected_merge)
    total += local;
  }
  return total;
}

}  // namespace parkfn
