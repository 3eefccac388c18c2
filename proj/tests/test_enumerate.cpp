#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <mutex>
#include <set>

#include "parkfn/enumerate.hpp"
#include "parkfn/oracle.hpp"
#include "test_util.hpp"

using namespace parkfn;

TEST_CASE("exhaustive counts match the frozen reference values") {
  CHECK(count_parking(classical(3)).parking_count == 16);
  CHECK(count_parking(naples(2, 1)).parking_count == 4);
  CHECK(count_parking(clown(2, 2, 4)).parking_count == 11);
  CHECK(count_parking(scooter(2, 2, 4)).parking_count == 16);
  CHECK(count_parking(obstructed_lot(3, 2, {3})).parking_count == 7);
  CHECK(count_parking(obstructed_lot(3, 2, {1})).parking_count == 9);
  CHECK(count_parking(odd_back_even_forward(2)).parking_count == 3);
  CHECK(count_parking(teleport(2, 1)).parking_count == 3);
  CHECK(count_parking(futuristic(2, {1, 1}, 1)).parking_count == 3);
  CHECK(count_parking(classical(3)).domain_size == 27);
}

TEST_CASE("optimized counter equals the naive counter on every preset") {
  std::mt19937_64 rng(47);
  for (const auto& family : testutil::deterministic_families()) {
    for (int iter = 0; iter < 8; ++iter) {
      const RuleSpec rule = testutil::random_rule(rng, family);
      mpz_class domain;
      mpz_ui_pow_ui(domain.get_mpz_t(), rule.lot.spots, rule.fleet.cars);
      if (domain > 100000) continue;
      CHECK(count_parking(rule).parking_count == oracle::naive_count(rule));
    }
  }
}

TEST_CASE("counts are independent of the worker count") {
  std::mt19937_64 rng(53);
  for (const auto& family : testutil::deterministic_families()) {
    const RuleSpec rule = testutil::random_rule(rng, family);
    CountOptions one;
    one.workers = 1;
    CountOptions many;
    many.workers = 4;
    CHECK(count_parking(rule, one).parking_count == count_parking(rule, many).parking_count);
  }
}

TEST_CASE("enumeration visits exactly the successful lists") {
  SUBCASE("classical two-car street") {
    std::set<std::vector<int>> seen;
    std::mutex mu;
    const auto visits = enumerate_parking(classical(2), [&](std::span<const int> prefs,
                                                            const ParkingOutcome& outcome) {
      CHECK(outcome.success());
      std::lock_guard<std::mutex> lock(mu);
      seen.insert(std::vector<int>(prefs.begin(), prefs.end()));
    });
    CHECK(visits == 3);
    CHECK(seen == std::set<std::vector<int>>{{1, 1}, {1, 2}, {2, 1}});
  }
  SUBCASE("single car always parks") {
    std::set<std::vector<int>> seen;
    CountOptions opts;
    opts.serialize_visits = true;
    const auto visits =
        enumerate_parking(naples(1, 1),
                          [&](std::span<const int> prefs, const ParkingOutcome&) {
                            seen.insert(std::vector<int>(prefs.begin(), prefs.end()));
                          },
                          opts);
    CHECK(visits == 1);
    CHECK(seen == std::set<std::vector<int>>{{1}});
  }
  SUBCASE("teleporting fleet") {
    std::set<std::vector<int>> seen;
    CountOptions opts;
    opts.serialize_visits = true;
    enumerate_parking(teleport(2, 1),
                      [&](std::span<const int> prefs, const ParkingOutcome&) {
                        seen.insert(std::vector<int>(prefs.begin(), prefs.end()));
                      },
                      opts);
    CHECK(seen == std::set<std::vector<int>>{{1, 2}, {2, 1}, {2, 2}});
  }
}

TEST_CASE("a throwing visitor aborts with a partial-progress report") {
  try {
    enumerate_parking(classical(3), [](std::span<const int>, const ParkingOutcome&) {
      throw std::runtime_error("collector full");
    });
    FAIL("expected VisitorAborted");
  } catch (const VisitorAborted& e) {
    CHECK(e.visited < 16);
    CHECK(std::string(e.what()).find("collector full") != std::string::npos);
  }
}

TEST_CASE("budget refusals carry the exact domain size") {
  try {
    count_parking(classical(20));
    FAIL("expected BudgetExceeded");
  } catch (const BudgetExceeded& e) {
    mpz_class want;
    mpz_ui_pow_ui(want.get_mpz_t(), 20, 20);
    CHECK(e.required == want);
    CHECK(std::string(e.what()).find(want.get_str()) != std::string::npos);
  }
  CountOptions tiny;
  tiny.budget = 10;
  CHECK_THROWS_AS(count_parking(classical(3), tiny), BudgetExceeded);
}

TEST_CASE("counting rejects coin-flip rules") {
  CHECK_THROWS_AS(count_parking(coin(2)), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_parking(coin(2), [](auto, auto&) {}), std::invalid_argument);
}

TEST_CASE("pruned counting equals plain counting") {
  CountOptions pruned;
  pruned.prune = true;
  for (int n = 1; n <= 6; ++n) {
    CHECK(count_parking(classical(n), pruned).parking_count ==
          count_parking(classical(n)).parking_count);
  }
  // forward-only with more spots than cars
  RuleSpec wide{LotSpec::uniform(5), FleetSpec::uniform(3, MovementPolicy::forward_only())};
  CHECK(count_parking(wide, pruned).parking_count == count_parking(wide).parking_count);
  RuleSpec narrow{LotSpec::uniform(2), FleetSpec::uniform(4, MovementPolicy::forward_only())};
  CHECK(count_parking(narrow, pruned).parking_count == 0);
  // non-qualifying rules silently take the full simulation path
  CHECK(count_parking(naples(3, 1), pruned).parking_count ==
        count_parking(naples(3, 1)).parking_count);
}

TEST_CASE("back-window counts grow with the window") {
  for (int n = 1; n <= 5; ++n) {
    mpz_class prev = count_parking(classical(n)).parking_count;
    CHECK(prev <= count_parking(naples(n, 1)).parking_count);
    for (int k = 0; k <= n; ++k) {
      const mpz_class cur = count_parking(naples(n, k)).parking_count;
      CHECK(cur >= prev);
      prev = cur;
    }
  }
}

TEST_CASE("sweeps cover the grid in order and keep per-cell errors") {
  CountOptions opts;
  SUBCASE("classical growth") {
    const auto cells = sweep("classical", {{"n", {1, 2, 3, 4}}}, opts);
    REQUIRE(cells.size() == 4);
    CHECK(cells[0].report->parking_count == 1);
    CHECK(cells[1].report->parking_count == 3);
    CHECK(cells[2].report->parking_count == 16);
    CHECK(cells[3].report->parking_count == 125);
  }
  SUBCASE("back-window axis") {
    const auto cells = sweep("naples", {{"n", {2}}, {"k", {0, 1}}}, opts);
    REQUIRE(cells.size() == 2);
    CHECK(cells[0].params ==
          std::vector<std::pair<std::string, long long>>{{"n", 2}, {"k", 0}});
    CHECK(cells[0].report->parking_count == 3);
    CHECK(cells[1].report->parking_count == 4);
  }
  SUBCASE("teleport axis") {
    const auto cells = sweep("teleport", {{"n", {2}}, {"k", {1, 2}}}, opts);
    CHECK(cells[0].report->parking_count == 3);
    CHECK(cells[1].report->parking_count == 2);
  }
  SUBCASE("bad cells do not abort the rest") {
    const auto cells = sweep("classical", {{"n", {2, 0, 3}}}, opts);
    REQUIRE(cells.size() == 3);
    CHECK(cells[0].report.has_value());
    CHECK(!cells[1].report.has_value());
    CHECK(!cells[1].error.empty());
    CHECK(cells[2].report->parking_count == 16);
  }
  SUBCASE("axis validation") {
    CHECK_THROWS_AS(sweep("naples", {{"n", {2}}}, opts), std::invalid_argument);
    CHECK_THROWS_AS(sweep("nonsense", {{"n", {2}}}, opts), std::invalid_argument);
  }
}

TEST_CASE("aggregate statistics ride along with counting") {
  CountOptions opts;
  opts.with_stats = true;
  const CountReport report = count_parking(classical(2), opts);
  REQUIRE(report.stats.has_value());
  CHECK(report.stats->list_count == 3);
  CHECK(*report.stats == aggregate_stats(classical(2)));
}
