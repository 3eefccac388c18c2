#include "parkfn/stats.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace parkfn {

ListStatistics list_stats(std::span<const int> prefs, const ParkingOutcome& outcome) {
  if (!outcome.success()) {
    throw std::invalid_argument("list statistics need a successful outcome (car " +
                                std::to_string(outcome.first_fail) + " exits)");
  }
  const int n = static_cast<int>(prefs.size());
  if (static_cast<int>(outcome.assignment.size()) != n) {
    throw std::invalid_argument("assignment length != preference list length");
  }

  ListStatistics st;
  st.lucky_mask.resize(n);
  for (int i = 0; i < n; ++i) {
    const long long d = outcome.assignment[i] - prefs[i];
    st.lucky_mask[i] = (d == 0);
    if (d == 0) {
      ++st.lucky_count;
    } else {
      ++st.bump_count;
    }
    st.displacement_signed += d;
    st.displacement_abs += std::llabs(d);
  }
  for (int i = 0; i + 1 < n; ++i) {
    if (prefs[i] < prefs[i + 1]) {
      ++st.ascents;
    } else if (prefs[i] > prefs[i + 1]) {
      ++st.descents;
    } else {
      ++st.ties;
    }
  }
  for (int i = 1; i + 1 < n; ++i) {
    if (prefs[i - 1] < prefs[i] && prefs[i + 1] < prefs[i]) ++st.peaks;
    if (prefs[i - 1] > prefs[i] && prefs[i + 1] > prefs[i]) ++st.valleys;
  }
  return st;
}

void AggregateStatistics::init(int cars) {
  *this = AggregateStatistics{};
  lucky_at.assign(cars, 0);
  const int pairs = cars > 1 ? cars - 1 : 0;
  ascent_at.assign(pairs, 0);
  descent_at.assign(pairs, 0);
  tie_at.assign(pairs, 0);
}

void AggregateStatistics::add(std::span<const int> prefs, const ParkingOutcome& outcome) {
  const ListStatistics st = list_stats(prefs, outcome);
  ++list_count;
  lucky_total += st.lucky_count;
  displacement_signed_total += st.displacement_signed;
  displacement_abs_total += st.displacement_abs;
  bump_total += st.bump_count;
  ascent_total += st.ascents;
  descent_total += st.descents;
  tie_total += st.ties;
  peak_total += st.peaks;
  valley_total += st.valleys;

  const int n = static_cast<int>(prefs.size());
  for (int i = 0; i < n; ++i) {
    if (st.lucky_mask[i]) ++lucky_at[i];
  }
  for (int i = 0; i + 1 < n; ++i) {
    if (prefs[i] < prefs[i + 1]) {
      ++ascent_at[i];
    } else if (prefs[i] > prefs[i + 1]) {
      ++descent_at[i];
    } else {
      ++tie_at[i];
    }
  }
}

void AggregateStatistics::merge(const AggregateStatistics& other) {
  if (lucky_at.size() != other.lucky_at.size()) {
    throw std::invalid_argument("cannot merge statistics for different car counts");
  }
  list_count += other.list_count;
  lucky_total += other.lucky_total;
  displacement_signed_total += other.displacement_signed_total;
  displacement_abs_total += other.displacement_abs_total;
  bump_total += other.bump_total;
  ascent_total += other.ascent_total;
  descent_total += other.descent_total;
  tie_total += other.tie_total;
  peak_total += other.peak_total;
  valley_total += other.valley_total;
  for (std::size_t i = 0; i < lucky_at.size(); ++i) lucky_at[i] += other.lucky_at[i];
  for (std::size_t i = 0; i < ascent_at.size(); ++i) {
    ascent_at[i] += other.ascent_at[i];
    descent_at[i] += other.descent_at[i];
    tie_at[i] += other.tie_at[i];
  }
}

}  // namespace parkfn
