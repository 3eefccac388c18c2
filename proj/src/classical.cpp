#include "parkfn/classical.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace parkfn {

bool stanley_check(std::span<const int> prefs) {
  const int n = static_cast<int>(prefs.size());
  if (n < 1) throw std::invalid_argument("preference list must be nonempty");
  std::vector<int> sorted(prefs.begin(), prefs.end());
  for (int a : sorted) {
    if (a < 1 || a > n) throw std::invalid_argument("entry outside [1, n]");
  }
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < n; ++i) {
    if (sorted[i] > i + 1) return false;
  }
  return true;
}

mpz_class kw_count(unsigned n) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), n + 1, n - 1);
  return r;
}

}  // namespace parkfn
