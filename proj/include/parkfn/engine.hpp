#pragma once

// Deterministic parking simulator. A ParkRunner carries reusable scratch state
// for repeated simulations of one rule; park()/trace() are one-shot wrappers.
//
// What a bumped car does depends on its policy:
//   ForwardOnly             drive forward, take the first spot with room.
//   BackUpTo(b)             check a-1 .. a-b nearest first (indices < 1 are
//                           skipped), then drive forward from a+1.
//   TeleportBack(k)         land on a-k; landing before spot 1 is an exit.
//                           Park on the landing spot or drive forward from
//                           a-k+1, re-passing a.
//   SingleTeleportForward   the block a .. a+s-1 must be entirely free;
//                           otherwise one jump to exactly a+k, whose block
//                           must be free, else the car exits.
//   ForwardOnly, size s     first block j .. j+s-1 with j >= a that is free.
//
// "Full" always means zero residual capacity. Obstructed spots start with
// residual 0, so every policy treats them as permanently full.

#include <span>
#include <vector>

#include "parkfn/core.hpp"

namespace parkfn {

struct LotState {
  std::vector<int> remaining;  // residual capacity per spot
  bool track_occupants = false;
  std::vector<std::vector<int>> occupied_by;  // per-spot cars, only when tracking

  LotState() = default;
  explicit LotState(const LotSpec& lot, bool track = false);
  // Caller must pass a validated lot.
  void reset(const LotSpec& lot);
  int spots() const { return static_cast<int>(remaining.size()); }
};

// First spot >= from with residual capacity, appending every examined spot to
// probes when given; 0 when the scan leaves the lot.
int forward_scan(const LotState& state, int from, std::vector<int>* probes = nullptr);

// Runs car `car` (1-based) with preference `pref` under its policy, mutating
// state. Returns the spot taken (block start for sized cars) or 0 if the car
// exits. Deterministic policies only; CoinBackOne must be rejected upstream.
int park_one_car(const RuleSpec& rule, int car, int pref, LotState& state,
                 std::vector<int>* probes = nullptr);

class ParkRunner {
 public:
  // Throws std::invalid_argument for invalid rules and for rules containing
  // CoinBackOne cars (those belong to the probability evaluator).
  explicit ParkRunner(RuleSpec rule);

  // The returned reference stays valid until the next run() call.
  const ParkingOutcome& run(std::span<const int> prefs);

  const RuleSpec& rule() const { return rule_; }

 private:
  RuleSpec rule_;
  LotState state_;
  ParkingOutcome out_;
};

ParkingOutcome park(std::span<const int> prefs, const RuleSpec& rule);

struct TraceStep {
  int car = 0;
  std::vector<int> probes;  // spots examined, in the order the car saw them
  int parked = 0;           // 0 = the car exits without parking
};

// Step records for each car, stopping at the first car that exits. Replaying
// the steps reproduces park()'s outcome.
std::vector<TraceStep> trace(std::span<const int> prefs, const RuleSpec& rule);

}  // namespace parkfn
