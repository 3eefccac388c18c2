#include "parkfn/oracle.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace parkfn::oracle {

ParkingOutcome naive_park(const PreferenceList& prefs, const RuleSpec& rule) {
  ensure_valid(rule);
  const int m = rule.lot.spots;
  const int n = rule.fleet.cars;
  if (static_cast<int>(prefs.size()) != n) {
    throw std::invalid_argument("preference list length != car count");
  }
  for (int a : prefs) {
    if (a < 1 || a > m) throw std::invalid_argument("preference outside [1, spots]");
  }

  // load[s] = vehicles currently in spot s (1-based). A spot is unavailable
  // when it is obstructed or already holds `capacity` vehicles.
  std::vector<int> load(static_cast<std::size_t>(m) + 1, 0);
  auto unavailable = [&](int s) {
    return rule.lot.obstructed.count(s) != 0 || load[s] >= rule.lot.capacities[s - 1];
  };

  std::vector<int> assignment(n, 0);
  for (int i = 1; i <= n; ++i) {
    const int a = prefs[i - 1];
    const int size = rule.fleet.sizes[i - 1];
    const MovementPolicy pol = rule.fleet.policies[i - 1];
    int taken = 0;

    switch (pol.kind) {
      case PolicyKind::ForwardOnly: {
        if (size == 1) {
          for (int s = a; s <= m; ++s) {
            if (!unavailable(s)) {
              load[s] += 1;
              taken = s;
              break;
            }
          }
        } else {
          for (int j = a; j + size - 1 <= m && taken == 0; ++j) {
            bool free = true;
            for (int s = j; s < j + size; ++s) {
              if (unavailable(s)) free = false;
            }
            if (free) {
              for (int s = j; s < j + size; ++s) load[s] += 1;
              taken = j;
            }
          }
        }
        break;
      }
      case PolicyKind::BackUpTo: {
        if (!unavailable(a)) {
          load[a] += 1;
          taken = a;
          break;
        }
        for (int d = 1; d <= pol.k; ++d) {
          const int s = a - d;
          if (s < 1) break;
          if (!unavailable(s)) {
            load[s] += 1;
            taken = s;
            break;
          }
        }
        if (taken == 0) {
          for (int s = a + 1; s <= m; ++s) {
            if (!unavailable(s)) {
              load[s] += 1;
              taken = s;
              break;
            }
          }
        }
        break;
      }
      case PolicyKind::TeleportBack: {
        if (!unavailable(a)) {
          load[a] += 1;
          taken = a;
          break;
        }
        const int landing = a - pol.k;
        if (landing < 1) break;  // the car leaves the lot entirely
        if (!unavailable(landing)) {
          load[landing] += 1;
          taken = landing;
          break;
        }
        for (int s = landing + 1; s <= m; ++s) {
          if (!unavailable(s)) {
            load[s] += 1;
            taken = s;
            break;
          }
        }
        break;
      }
      case PolicyKind::SingleTeleportForward: {
        bool initial_free = (a + size - 1 <= m);
        if (initial_free) {
          for (int s = a; s < a + size; ++s) {
            if (unavailable(s)) initial_free = false;
          }
        }
        if (initial_free) {
          for (int s = a; s < a + size; ++s) load[s] += 1;
          taken = a;
          break;
        }
        if (a + pol.k + size - 1 > m) break;  // the jump overshoots the lot
        const int landing = a + pol.k;
        bool landing_free = true;
        for (int s = landing; s < landing + size; ++s) {
          if (unavailable(s)) landing_free = false;
        }
        if (landing_free) {
          for (int s = landing; s < landing + size; ++s) load[s] += 1;
          taken = landing;
        }
        break;
      }
      case PolicyKind::CoinBackOne:
        throw std::invalid_argument("coin-flip cars have no deterministic outcome");
    }

    if (taken == 0) return ParkingOutcome::failed(i);
    assignment[i - 1] = taken;
  }
  return ParkingOutcome::parked(std::move(assignment));
}

std::uint64_t naive_count(const RuleSpec& rule) {
  ensure_valid(rule);
  const int m = rule.lot.spots;
  const int n = rule.fleet.cars;

  std::uint64_t domain = 1;
  for (int i = 0; i < n; ++i) {
    domain *= static_cast<std::uint64_t>(m);
    if (domain > kNaiveDomainLimit) {
      throw std::invalid_argument("domain larger than " + std::to_string(kNaiveDomainLimit) +
                                  " lists; the naive counter refuses");
    }
  }

  PreferenceList prefs(n, 1);
  std::uint64_t count = 0;
  while (true) {
    if (naive_park(prefs, rule).success()) ++count;
    int pos = n - 1;
    while (pos >= 0 && prefs[pos] == m) {
      prefs[pos] = 1;
      --pos;
    }
    if (pos < 0) break;
    ++prefs[pos];
  }
  return count;
}

}  // namespace parkfn::oracle
