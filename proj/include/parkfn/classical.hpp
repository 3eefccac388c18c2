#pragma once

// Closed-form anchors for the classical one-way street: the sorted-prefix
// criterion and the exact count (n+1)^(n-1).

#include <gmpxx.h>

#include <span>

namespace parkfn {

// True iff the increasing rearrangement b of prefs satisfies b_i <= i for all
// i, which characterizes the lists on which every forward-only car parks.
// Entries must lie in [1, n] where n = prefs.size().
bool stanley_check(std::span<const int> prefs);

// (n+1)^(n-1), exactly; n >= 1.
mpz_class kw_count(unsigned n);

}  // namespace parkfn
