#pragma once

// Naive reference implementation used by the differential tests and the
// benchmark. Every rule is restated as literally as possible with plain loops
// over an occupancy table. It deliberately shares no code with the engine, so
// a disagreement between the two points at a real bug.

#include <cstdint>

#include "parkfn/core.hpp"

namespace parkfn::oracle {

inline constexpr std::uint64_t kNaiveDomainLimit = 1'000'000;

ParkingOutcome naive_park(const PreferenceList& prefs, const RuleSpec& rule);

// Counts parking lists by looping over every list in [m]^n and simulating it.
// Single-threaded; refuses domains larger than kNaiveDomainLimit.
std::uint64_t naive_count(const RuleSpec& rule);

}  // namespace parkfn::oracle
