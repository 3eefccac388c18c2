#pragma once

// Core domain model: parking lots, fleets, movement policies, presets.
// A RuleSpec is pure data; the engine is a single interpreter over it, so
// every lot variant is a configuration rather than a separate code path.

#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace parkfn {

// Preferred spots, one per car, each in [1, spots]. Car i is the i-th car to
// enter the street (1-based everywhere, matching the usual convention).
using PreferenceList = std::vector<int>;

enum class PolicyKind : std::uint8_t {
  ForwardOnly,            // bumped cars scan forward only
  BackUpTo,               // check up to k spots behind, nearest first, then forward
  TeleportBack,           // jump k spots back; landing before spot 1 is an exit
  SingleTeleportForward,  // sized cars with a single forward jump of exactly k
  CoinBackOne,            // randomized one-back; the deterministic engine rejects it
};

struct MovementPolicy {
  PolicyKind kind = PolicyKind::ForwardOnly;
  int k = 0;  // BackUpTo window or teleport distance; unused otherwise

  static MovementPolicy forward_only() { return {}; }
  static MovementPolicy back_up_to(int window) {
    return {PolicyKind::BackUpTo, window};
  }
  static MovementPolicy teleport_back(int dist) {
    return {PolicyKind::TeleportBack, dist};
  }
  static MovementPolicy single_teleport_forward(int dist) {
    return {PolicyKind::SingleTeleportForward, dist};
  }
  static MovementPolicy coin_back_one() { return {PolicyKind::CoinBackOne, 0}; }

  bool operator==(const MovementPolicy&) const = default;
};

// A street of `spots` consecutive spots. Obstructed spots never receive any
// vehicle; they are treated as full from the start by every movement rule.
struct LotSpec {
  int spots = 0;
  std::vector<int> capacities;  // length == spots, each >= 1
  std::set<int> obstructed;     // subset of [1, spots]

  static LotSpec uniform(int spots, int capacity = 1);
  bool operator==(const LotSpec&) const = default;
};

// The cars, in entry order. Sizes > 1 are only meaningful for policies with
// block semantics (SingleTeleportForward, ForwardOnly); validate() enforces
// the allowed combinations.
struct FleetSpec {
  int cars = 0;
  std::vector<int> sizes;                // length == cars, each >= 1
  std::vector<MovementPolicy> policies;  // length == cars

  static FleetSpec uniform(int cars, MovementPolicy policy, int size = 1);
  bool operator==(const FleetSpec&) const = default;
};

struct RuleSpec {
  LotSpec lot;
  FleetSpec fleet;
  bool operator==(const RuleSpec&) const = default;
};

struct ParkingOutcome {
  // assignment[i-1] = spot taken by car i (block start for sized cars).
  // Empty on failure.
  std::vector<int> assignment;
  int first_fail = 0;  // 1-based index of the first car that exits; 0 on success

  bool success() const { return first_fail == 0; }
  static ParkingOutcome parked(std::vector<int> spots) {
    return {std::move(spots), 0};
  }
  static ParkingOutcome failed(int car) { return {{}, car}; }
  bool operator==(const ParkingOutcome&) const = default;
};

// Every invariant violation in the rule, as human-readable descriptions.
// Empty result means the rule is well-formed. Violations are data, not errors.
std::vector<std::string> validate(const RuleSpec& rule);

// Throws std::invalid_argument listing all violations when the rule is not
// well-formed.
void ensure_valid(const RuleSpec& rule);

bool has_coin_policy(const RuleSpec& rule);

// ---------------------------------------------------------------------------
// Presets. Each named preset expands to a fully explicit RuleSpec.

// One preset argument: a plain integer or a bracketed integer list.
struct PresetArg {
  long long value = 0;
  std::vector<long long> list;
  bool is_list = false;

  PresetArg(long long v) : value(v) {}            // NOLINT: implicit by design
  PresetArg(int v) : value(v) {}                  // NOLINT
  PresetArg(std::vector<long long> xs) : list(std::move(xs)), is_list(true) {}
};

// Known presets:
//   classical:n                 n spots, n forward-only unit cars
//   naples:n,k                  classical with a back-window of k on every car
//   countdown:n                 car i may back up n-i+1 spots
//   odd_back_even_forward:n     odd cars back one, even cars forward-only
//   clown:m,d,n                 m spots of capacity d, n forward-only cars
//   scooter:m,d,n               m spots of capacity d, n one-back cars
//   obstructed:m,n,[b...]       m spots with blocked set, n one-back cars
//   teleport:n,k                n spots, cars jump k back on a bump
//   futuristic:m,[s...],k       sized cars with one forward teleport of k
//   coin:n                      n spots, every car flips a coin on a bump
// Throws std::invalid_argument on unknown names, bad arity, or parameters
// that do not expand to a valid rule.
RuleSpec expand_preset(const std::string& name, const std::vector<PresetArg>& args);

// Parses "name:arg,arg,[a,b],..." and expands it, e.g. "naples:4,2" or
// "obstructed:5,3,[1,4]".
RuleSpec expand_preset(const std::string& text);

// Typed equivalents of the named presets.
RuleSpec classical(int n);
RuleSpec naples(int n, int k);
RuleSpec countdown(int n);
RuleSpec odd_back_even_forward(int n);
RuleSpec clown(int m, int d, int n);
RuleSpec scooter(int m, int d, int n);
RuleSpec obstructed_lot(int m, int n, const std::set<int>& blocked);
RuleSpec teleport(int n, int k);
RuleSpec futuristic(int m, const std::vector<int>& sizes, int k);
RuleSpec coin(int n);

}  // namespace parkfn
