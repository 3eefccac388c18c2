#include "parkfn/engine.hpp"

#include <stdexcept>
#include <string>

namespace parkfn {

LotState::LotState(const LotSpec& lot, bool track) : track_occupants(track) { reset(lot); }

void LotState::reset(const LotSpec& lot) {
  remaining.assign(lot.capacities.begin(), lot.capacities.end());
  for (int s : lot.obstructed) remaining[s - 1] = 0;
  if (track_occupants) {
    occupied_by.assign(remaining.size(), {});
  }
}

int forward_scan(const LotState& state, int from, std::vector<int>* probes) {
  const int m = state.spots();
  for (int s = from < 1 ? 1 : from; s <= m; ++s) {
    if (probes) probes->push_back(s);
    if (state.remaining[s - 1] > 0) return s;
  }
  return 0;
}

namespace {

void take_spot(LotState& state, int car, int spot, int size) {
  for (int j = spot; j < spot + size; ++j) {
    --state.remaining[j - 1];
    if (state.track_occupants) state.occupied_by[j - 1].push_back(car);
  }
}

// 0 if the block starting at `spot` is entirely free, else the first full spot.
int block_blocker(const LotState& state, int spot, int size, std::vector<int>* probes) {
  for (int j = spot; j < spot + size; ++j) {
    if (probes) probes->push_back(j);
    if (state.remaining[j - 1] <= 0) return j;
  }
  return 0;
}

}  // namespace

int park_one_car(const RuleSpec& rule, int car, int pref, LotState& state,
                 std::vector<int>* probes) {
  const int m = rule.lot.spots;
  const MovementPolicy pol = rule.fleet.policies[car - 1];
  const int size = rule.fleet.sizes[car - 1];

  switch (pol.kind) {
    case PolicyKind::ForwardOnly: {
      if (size == 1) {
        const int s = forward_scan(state, pref, probes);
        if (s) take_spot(state, car, s, 1);
        return s;
      }
      int j = pref;
      while (j + size - 1 <= m) {
        const int blocker = block_blocker(state, j, size, probes);
        if (!blocker) {
          take_spot(state, car, j, size);
          return j;
        }
        j = blocker + 1;
      }
      return 0;
    }

    case PolicyKind::BackUpTo: {
      if (probes) probes->push_back(pref);
      if (state.remaining[pref - 1] > 0) {
        take_spot(state, car, pref, 1);
        return pref;
      }
      for (int d = 1; d <= pol.k && pref - d >= 1; ++d) {
        const int s = pref - d;
        if (probes) probes->push_back(s);
        if (state.remaining[s - 1] > 0) {
          take_spot(state, car, s, 1);
          return s;
        }
      }
      const int s = forward_scan(state, pref + 1, probes);
      if (s) take_spot(state, car, s, 1);
      return s;
    }

    case PolicyKind::TeleportBack: {
      if (probes) probes->push_back(pref);
      if (state.remaining[pref - 1] > 0) {
        take_spot(state, car, pref, 1);
        return pref;
      }
      const int landing = pref - pol.k;
      if (landing < 1) return 0;  // teleports out of the lot: hard exit
      if (probes) probes->push_back(landing);
      if (state.remaining[landing - 1] > 0) {
        take_spot(state, car, landing, 1);
        return landing;
      }
      const int s = forward_scan(state, landing + 1, probes);  // re-passes pref
      if (s) take_spot(state, car, s, 1);
      return s;
    }

    case PolicyKind::SingleTeleportForward: {
      if (pref + size - 1 <= m && !block_blocker(state, pref, size, probes)) {
        take_spot(state, car, pref, size);
        return pref;
      }
      if (pref + pol.k + size - 1 > m) return 0;  // the only jump overshoots
      const int landing = pref + pol.k;
      if (!block_blocker(state, landing, size, probes)) {
        take_spot(state, car, landing, size);
        return landing;
      }
      return 0;  // one teleport's worth of fuel, already spent
    }

    case PolicyKind::CoinBackOne:
      throw std::logic_error("coin-flip policy reached the deterministic engine");
  }
  return 0;
}

namespace {

void require_deterministic(const RuleSpec& rule) {
  ensure_valid(rule);
  if (has_coin_policy(rule)) {
    throw std::invalid_argument(
        "rule contains coin-flip cars; use the probability evaluator");
  }
}

void require_prefs(const RuleSpec& rule, std::span<const int> prefs) {
  if (static_cast<int>(prefs.size()) != rule.fleet.cars) {
    throw std::invalid_argument("preference list length " + std::to_string(prefs.size()) +
                                " != car count " + std::to_string(rule.fleet.cars));
  }
}

}  // namespace

ParkRunner::ParkRunner(RuleSpec rule) : rule_(std::move(rule)) {
  require_deterministic(rule_);
  state_.reset(rule_.lot);
  out_.assignment.reserve(rule_.fleet.cars);
}

const ParkingOutcome& ParkRunner::run(std::span<const int> prefs) {
  require_prefs(rule_, prefs);
  const int n = rule_.fleet.cars;
  const int m = rule_.lot.spots;
  state_.reset(rule_.lot);
  out_.first_fail = 0;
  out_.assignment.assign(n, 0);
  for (int i = 1; i <= n; ++i) {
    const int pref = prefs[i - 1];
    if (pref < 1 || pref > m) {
      throw std::invalid_argument("preference " + std::to_string(pref) + " of car " +
                                  std::to_string(i) + " outside [1, " + std::to_string(m) + "]");
    }
    const int spot = park_one_car(rule_, i, pref, state_);
    if (!spot) {
      out_.first_fail = i;
      out_.assignment.clear();
      return out_;
    }
    out_.assignment[i - 1] = spot;
  }
  return out_;
}

ParkingOutcome park(std::span<const int> prefs, const RuleSpec& rule) {
  ParkRunner runner(rule);
  return runner.run(prefs);
}

std::vector<TraceStep> trace(std::span<const int> prefs, const RuleSpec& rule) {
  require_deterministic(rule);
  require_prefs(rule, prefs);
  const int m = rule.lot.spots;
  LotState state(rule.lot, /*track=*/true);
  std::vector<TraceStep> steps;
  steps.reserve(prefs.size());
  for (int i = 1; i <= static_cast<int>(prefs.size()); ++i) {
    const int pref = prefs[i - 1];
    if (pref < 1 || pref > m) {
      throw std::invalid_argument("preference " + std::to_string(pref) + " of car " +
                                  std::to_string(i) + " outside [1, " + std::to_string(m) + "]");
    }
    TraceStep step;
    step.car = i;
    step.parked = park_one_car(rule, i, pref, state, &step.probes);
    steps.push_back(std::move(step));
    if (!steps.back().parked) break;
  }
  return steps;
}

}  // namespace parkfn
