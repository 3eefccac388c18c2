#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <random>

#include "parkfn/classical.hpp"
#include "parkfn/core.hpp"
#include "parkfn/oracle.hpp"
#include "test_util.hpp"

using namespace parkfn;

TEST_CASE("sorted-rearrangement criterion on worked examples") {
  CHECK(stanley_check(std::vector<int>{1, 2, 4, 2, 2}));
  CHECK_FALSE(stanley_check(std::vector<int>{1, 2, 2, 5, 5}));
  for (int n = 1; n <= 8; ++n) {
    CHECK(stanley_check(std::vector<int>(n, 1)));
  }
  CHECK_THROWS_AS(stanley_check(std::vector<int>{1, 3}), std::invalid_argument);
  CHECK_THROWS_AS(stanley_check(std::vector<int>{0, 1}), std::invalid_argument);
}

TEST_CASE("criterion depends only on the multiset of entries") {
  std::mt19937_64 rng(11);
  for (int iter = 0; iter < 200; ++iter) {
    const int n = testutil::rand_int(rng, 1, 8);
    auto prefs = testutil::random_prefs(rng, n, n);
    const bool expected = stanley_check(prefs);
    std::shuffle(prefs.begin(), prefs.end(), rng);
    CHECK(stanley_check(prefs) == expected);
  }
}

TEST_CASE("counting by criterion matches (n+1)^(n-1) for n <= 6") {
  for (int n = 1; n <= 6; ++n) {
    mpz_class found = 0;
    testutil::for_each_list(n, n, [&](const std::vector<int>& prefs) {
      if (stanley_check(prefs)) ++found;
    });
    CHECK(found == kw_count(static_cast<unsigned>(n)));
  }
}

TEST_CASE("criterion agrees with simulation for n <= 4") {
  for (int n = 1; n <= 4; ++n) {
    const RuleSpec rule = classical(n);
    testutil::for_each_list(n, n, [&](const std::vector<int>& prefs) {
      CHECK(stanley_check(prefs) == oracle::naive_park(prefs, rule).success());
    });
  }
}

TEST_CASE("exact count values") {
  CHECK(kw_count(1) == 1);
  CHECK(kw_count(2) == 3);
  CHECK(kw_count(3) == 16);
  CHECK(kw_count(7) == 262144);
  // well past 64-bit range
  CHECK(kw_count(20).get_str() == "13248496640331026125580781");
  CHECK_THROWS_AS(kw_count(0), std::invalid_argument);
}
