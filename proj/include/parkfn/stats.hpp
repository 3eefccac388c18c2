#pragma once

// Per-list and aggregate statistics: lucky cars, displacement, bumps,
// ascents/descents/ties, peaks/valleys, and positional distributions.

#include <cstdint>
#include <span>
#include <vector>

#include "parkfn/core.hpp"

namespace parkfn {

struct ListStatistics {
  int lucky_count = 0;             // cars parked exactly on their preference
  std::vector<bool> lucky_mask;    // per car
  long long displacement_signed = 0;  // sum over cars of parked - preferred
  long long displacement_abs = 0;     // sum over cars of |parked - preferred|
  int bump_count = 0;              // cars with parked != preferred
  int ascents = 0;                 // i with a_i < a_{i+1}
  int descents = 0;                // i with a_i > a_{i+1}
  int ties = 0;                    // i with a_i = a_{i+1}
  int peaks = 0;                   // interior i with a_{i-1} < a_i > a_{i+1}
  int valleys = 0;                 // interior i with a_{i-1} > a_i < a_{i+1}

  bool operator==(const ListStatistics&) const = default;
};

// Statistics of one successfully parked list. The outcome-dependent fields
// (lucky, displacement, bumps) are undefined on failures, so a Failure
// outcome throws std::invalid_argument.
ListStatistics list_stats(std::span<const int> prefs, const ParkingOutcome& outcome);

struct AggregateStatistics {
  std::uint64_t list_count = 0;
  std::uint64_t lucky_total = 0;
  long long displacement_signed_total = 0;
  std::uint64_t displacement_abs_total = 0;
  std::uint64_t bump_total = 0;
  std::uint64_t ascent_total = 0;
  std::uint64_t descent_total = 0;
  std::uint64_t tie_total = 0;
  std::uint64_t peak_total = 0;
  std::uint64_t valley_total = 0;

  // Positional histograms: lucky_at[i-1] counts lists whose car i is lucky;
  // the pair histograms index the boundary between cars i and i+1.
  std::vector<std::uint64_t> lucky_at;
  std::vector<std::uint64_t> ascent_at;
  std::vector<std::uint64_t> descent_at;
  std::vector<std::uint64_t> tie_at;

  void init(int cars);
  void add(std::span<const int> prefs, const ParkingOutcome& outcome);
  void merge(const AggregateStatistics& other);

  bool operator==(const AggregateStatistics&) const = default;
};

}  // namespace parkfn
