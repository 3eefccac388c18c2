#pragma once

// Probability semantics for coin-flip cars. A CoinBackOne car flips exactly
// one coin, and only when its preferred spot a is full and a previous spot
// exists (a >= 2): heads checks a-1 and parks there if it has room, tails
// (and a full a-1) continue forward from a+1 like a forward-only car.
//
// exact_park_probability explores the full binary decision tree; the result
// is a sum of products of branch weights, so with a fair coin the denominator
// divides 2^n. mc_park_probability estimates the same value by sampling; each
// trial draws its bits from a generator derived from (seed, trial index), so
// estimates are reproducible for any worker count or schedule.

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <string>

#include "parkfn/core.hpp"
#include "parkfn/enumerate.hpp"

namespace parkfn {

inline constexpr std::uint64_t kDefaultSeed = 42;

struct ExactProbability {
  mpz_class numerator;    // canonical reduced form, value in [0, 1]
  mpz_class denominator;  // a power of two under the fair coin

  static ExactProbability from_rational(const mpq_class& value);
  mpq_class rational() const { return {numerator, denominator}; }
  double to_double() const { return rational().get_d(); }
  std::string str() const;  // "numerator/denominator"
};

// Probability that every car parks, over the coin flips. Deterministic cars
// follow their own policies; a rule without coin cars yields 0/1 or 1/1.
ExactProbability exact_park_probability(std::span<const int> prefs, const RuleSpec& rule,
                                        const mpq_class& p_heads = mpq_class(1, 2));

struct McEstimate {
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  double estimate = 0.0;        // successes / trials
  double standard_error = 0.0;  // sqrt(p(1-p)/trials)
  std::uint64_t seed = 0;
};

McEstimate mc_park_probability(std::span<const int> prefs, const RuleSpec& rule,
                               std::uint64_t trials, std::uint64_t seed = kDefaultSeed,
                               double p_heads = 0.5, int workers = 0);

// Sum of exact_park_probability over every list in [m]^n: the expected number
// of lists that park. Equals count_parking exactly when no coin cars exist.
mpq_class expected_park_count(const RuleSpec& rule, const CountOptions& opts = {},
                              const mpq_class& p_heads = mpq_class(1, 2));

}  // namespace parkfn
