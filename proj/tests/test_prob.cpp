#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <random>

#include "parkfn/engine.hpp"
#include "parkfn/prob.hpp"
#include "test_util.hpp"

using namespace parkfn;

using testutil::coin_vector_probability;

TEST_CASE("exact probabilities on worked examples") {
  CHECK(exact_park_probability(std::vector<int>{2, 1}, coin(2)).str() == "1/1");
  CHECK(exact_park_probability(std::vector<int>{2, 2}, coin(2)).str() == "1/2");
  CHECK(exact_park_probability(std::vector<int>{2, 2, 2}, coin(3)).str() == "3/4");
  CHECK(exact_park_probability(std::vector<int>{1, 1}, coin(2)).str() == "1/1");
}

TEST_CASE("branch recursion equals the coin-vector oracle for n <= 4") {
  for (int n = 1; n <= 4; ++n) {
    const RuleSpec rule = coin(n);
    testutil::for_each_list(n, n, [&](const std::vector<int>& prefs) {
      CHECK(exact_park_probability(prefs, rule).rational() ==
            coin_vector_probability(prefs, rule));
    });
  }
}

TEST_CASE("mixed fleets branch only at the coin cars") {
  RuleSpec rule = classical(2);
  rule.fleet.policies = {MovementPolicy::forward_only(), MovementPolicy::coin_back_one()};
  CHECK(exact_park_probability(std::vector<int>{2, 2}, rule).str() == "1/2");
  CHECK(exact_park_probability(std::vector<int>{2, 2}, rule).rational() ==
        coin_vector_probability({2, 2}, rule));

  rule.fleet.policies = {MovementPolicy::coin_back_one(), MovementPolicy::forward_only()};
  CHECK(exact_park_probability(std::vector<int>{2, 2}, rule).str() == "0/1");
}

TEST_CASE("denominators divide 2^n") {
  for (int n = 1; n <= 4; ++n) {
    const RuleSpec rule = coin(n);
    mpz_class power;
    mpz_ui_pow_ui(power.get_mpz_t(), 2, static_cast<unsigned long>(n));
    testutil::for_each_list(n, n, [&](const std::vector<int>& prefs) {
      const ExactProbability e = exact_park_probability(prefs, rule);
      CHECK(power % e.denominator == 0);
      CHECK(e.numerator >= 0);
      CHECK(e.numerator <= e.denominator);
    });
  }
}

TEST_CASE("lists that park with and without backing have probability one") {
  for (int n = 1; n <= 4; ++n) {
    ParkRunner forward(classical(n));
    ParkRunner one_back(naples(n, 1));
    const RuleSpec coin_rule = coin(n);
    testutil::for_each_list(n, n, [&](const std::vector<int>& prefs) {
      if (forward.run(prefs).success() && one_back.run(prefs).success()) {
        CHECK(exact_park_probability(prefs, coin_rule).rational() == 1);
      }
    });
  }
}

TEST_CASE("permutation lists always park regardless of the flips") {
  std::mt19937_64 rng(73);
  for (int iter = 0; iter < 50; ++iter) {
    const int n = testutil::rand_int(rng, 1, 6);
    std::vector<int> prefs(n);
    std::iota(prefs.begin(), prefs.end(), 1);
    std::shuffle(prefs.begin(), prefs.end(), rng);
    CHECK(exact_park_probability(prefs, coin(n)).rational() == 1);
  }
}

TEST_CASE("weighted coins scale the branch weights") {
  // (2,2): heads parks the second car, tails strands it.
  CHECK(exact_park_probability(std::vector<int>{2, 2}, coin(2), mpq_class(1, 3)).str() ==
        "1/3");
  CHECK(exact_park_probability(std::vector<int>{2, 2}, coin(2), mpq_class(1)).str() == "1/1");
  CHECK(exact_park_probability(std::vector<int>{2, 2}, coin(2), mpq_class(0)).str() == "0/1");
  CHECK_THROWS_AS(exact_park_probability(std::vector<int>{2, 2}, coin(2), mpq_class(2)),
                  std::invalid_argument);
}

TEST_CASE("Monte Carlo estimates are reproducible and near the exact value") {
  const RuleSpec rule = coin(2);
  const std::vector<int> prefs{2, 2};
  const McEstimate a = mc_park_probability(prefs, rule, 100000);
  const McEstimate b = mc_park_probability(prefs, rule, 100000);
  CHECK(a.successes == b.successes);
  CHECK(a.seed == kDefaultSeed);
  CHECK(std::abs(a.estimate - 0.5) <= 0.01);

  const McEstimate c = mc_park_probability(std::vector<int>{2, 2, 2}, coin(3), 100000);
  CHECK(std::abs(c.estimate - 0.75) <= 0.01);

  // a different seed samples different bits
  const McEstimate d = mc_park_probability(prefs, rule, 100000, 12345);
  CHECK(d.successes != a.successes);
}

TEST_CASE("Monte Carlo is exact when no flip can happen") {
  const McEstimate est = mc_park_probability(std::vector<int>{2, 1}, coin(2), 1000, 99);
  CHECK(est.successes == 1000);
  CHECK(est.estimate == 1.0);
  CHECK(est.standard_error == 0.0);
}

TEST_CASE("Monte Carlo error stays within five standard errors of exact") {
  for (int n = 1; n <= 3; ++n) {
    const RuleSpec rule = coin(n);
    testutil::for_each_list(n, n, [&](const std::vector<int>& prefs) {
      const double exact = exact_park_probability(prefs, rule).to_double();
      const McEstimate est = mc_park_probability(prefs, rule, 20000);
      if (est.standard_error == 0.0) {
        CHECK(est.estimate == exact);
      } else {
        CHECK(std::abs(est.estimate - exact) <= 5.0 * est.standard_error);
      }
    });
  }
}

TEST_CASE("Monte Carlo successes are independent of the worker count") {
  const std::vector<int> prefs{2, 2, 3};
  const McEstimate a = mc_park_probability(prefs, coin(3), 50000, 7, 0.5, 1);
  const McEstimate b = mc_park_probability(prefs, coin(3), 50000, 7, 0.5, 4);
  CHECK(a.successes == b.successes);
}

TEST_CASE("Monte Carlo input validation") {
  CHECK_THROWS_AS(mc_park_probability(std::vector<int>{2, 2}, coin(2), 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(mc_park_probability(std::vector<int>{2}, coin(2), 10),
                  std::invalid_argument);
}

TEST_CASE("expected number of parking lists") {
  CHECK(expected_park_count(coin(1)) == 1);
  CHECK(expected_park_count(coin(2)) == mpq_class(7, 2));
  // without coin cars the expectation is exactly the count
  CHECK(expected_park_count(classical(3)) == 16);
  CHECK(expected_park_count(naples(2, 1)) == 4);

  CountOptions tiny;
  tiny.budget = 2;
  CHECK_THROWS_AS(expected_park_count(coin(2), tiny), BudgetExceeded);
}

TEST_CASE("expected count is independent of the worker count") {
  CountOptions one;
  one.workers = 1;
  CountOptions many;
  many.workers = 4;
  CHECK(expected_park_count(coin(3), one) == expected_park_count(coin(3), many));
}

TEST_CASE("coin cars compose with obstructions and capacities") {
  RuleSpec blocked = coin(3);
  blocked.lot.obstructed = {2};
  testutil::for_each_list(3, 3, [&](const std::vector<int>& prefs) {
    CHECK(exact_park_probability(prefs, blocked).rational() ==
          testutil::coin_vector_probability(prefs, blocked));
  });

  RuleSpec roomy = clown(2, 2, 3);
  roomy.fleet.policies.assign(3, MovementPolicy::coin_back_one());
  testutil::for_each_list(2, 3, [&](const std::vector<int>& prefs) {
    CHECK(exact_park_probability(prefs, roomy).rational() ==
          testutil::coin_vector_probability(prefs, roomy));
  });
}
