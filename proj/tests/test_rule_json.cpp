#include <doctest.h>

#include <stdexcept>

#include <random>

#include "parkfn/rule_json.hpp"
#include "test_util.hpp"

using namespace parkfn;
using nlohmann::json;

TEST_CASE("parsing the documented schema") {
  const json doc = json::parse(R"({
    "spots": 3,
    "capacities": 1,
    "obstructed": [3],
    "cars": 2,
    "sizes": 1,
    "policy": {"kind": "back", "k": 1}
  })");
  CHECK(rule_from_json(doc) == obstructed_lot(3, 2, {3}));
}

TEST_CASE("defaults: capacities, sizes, policy, obstructions") {
  const json doc = json::parse(R"({"spots": 4, "cars": 4})");
  CHECK(rule_from_json(doc) == classical(4));
}

TEST_CASE("capacity and size arrays") {
  const json doc = json::parse(R"({
    "spots": 2, "capacities": [2, 2], "cars": 4, "policy": {"kind": "forward"}
  })");
  CHECK(rule_from_json(doc) == clown(2, 2, 4));

  const json sized = json::parse(R"({
    "spots": 3, "cars": 2, "sizes": [2, 1],
    "policy": {"kind": "single_teleport", "k": 1}
  })");
  CHECK(rule_from_json(sized) == futuristic(3, {2, 1}, 1));
}

TEST_CASE("per-car policies and named policy patterns") {
  const json per_car = json::parse(R"({
    "spots": 2, "cars": 2,
    "policy": {"per_car": [{"kind": "back", "k": 1}, {"kind": "forward"}]}
  })");
  CHECK(rule_from_json(per_car) == odd_back_even_forward(2));

  const json pattern = json::parse(R"({
    "spots": 3, "cars": 3, "policy": {"preset": "countdown"}
  })");
  CHECK(rule_from_json(pattern) == countdown(3));

  const json odd = json::parse(R"({
    "spots": 4, "cars": 4, "policy": {"preset": "odd_back_even_forward"}
  })");
  CHECK(rule_from_json(odd) == odd_back_even_forward(4));
}

TEST_CASE("back defaults to a window of one") {
  const json doc = json::parse(R"({"spots": 2, "cars": 2, "policy": {"kind": "back"}})");
  CHECK(rule_from_json(doc) == naples(2, 1));
}

TEST_CASE("parse errors name the offending field") {
  auto message_of = [](const json& doc) {
    try {
      rule_from_json(doc);
    } catch (const std::invalid_argument& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message_of(json::parse(R"({"cars": 2})")).find("spots") != std::string::npos);
  CHECK(message_of(json::parse(R"({"spots": 2})")).find("cars") != std::string::npos);
  CHECK(message_of(json::parse(R"({"spots": "two", "cars": 2})")).find("spots") !=
        std::string::npos);
  CHECK(message_of(json::parse(R"({"spots": 2, "cars": 2, "lanes": 3})")).find("lanes") !=
        std::string::npos);
  CHECK(message_of(json::parse(R"({"spots": 2, "cars": 2, "policy": {"kind": "hover"}})"))
            .find("policy.kind") != std::string::npos);
  CHECK(message_of(json::parse(
                       R"({"spots": 2, "cars": 2, "policy": {"preset": "countdown", "k": 1}})"))
            .find("policy.preset") != std::string::npos);
}

TEST_CASE("structural parse leaves semantic checks to validate") {
  // length mismatch is a violation, not a parse error
  const json doc = json::parse(R"({"spots": 2, "capacities": [1], "cars": 2})");
  const RuleSpec rule = rule_from_json(doc);
  CHECK(!validate(rule).empty());
}

TEST_CASE("serialize/parse round trip is the identity") {
  std::mt19937_64 rng(79);
  for (const auto& family : testutil::deterministic_families()) {
    for (int iter = 0; iter < 20; ++iter) {
      const RuleSpec rule = testutil::random_rule(rng, family);
      CHECK(rule_from_json(rule_to_json(rule)) == rule);
    }
  }
  for (int iter = 0; iter < 100; ++iter) {
    const RuleSpec rule = testutil::random_mixed_rule(rng);
    CHECK(rule_from_json(rule_to_json(rule)) == rule);
  }
  for (int n = 1; n <= 4; ++n) {
    CHECK(rule_from_json(rule_to_json(coin(n))) == coin(n));
    CHECK(rule_from_json(rule_to_json(countdown(n))) == countdown(n));
  }
  // a zero back-window survives the trip rather than collapsing to forward
  CHECK(rule_from_json(rule_to_json(naples(2, 0))) == naples(2, 0));
}

TEST_CASE("malformed rules serialize faithfully") {
  RuleSpec rule = classical(2);
  rule.lot.capacities = {1};  // wrong length must survive the trip
  CHECK(rule_from_json(rule_to_json(rule)) == rule);
  CHECK(!validate(rule_from_json(rule_to_json(rule))).empty());
}
