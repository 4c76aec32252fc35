#pragma once

// Random rational lattices and closed subgroups for property tests.

#include "levy/exact_linalg.hpp"
#include "levy/group.hpp"

#include <random>

namespace levy::testing {

inline Rational random_rational(std::mt19937_64& rng, int max_num = 4, int max_den = 3) {
  std::uniform_int_distribution<int> num(-max_num, max_num), den(1, max_den);
  return Rational(num(rng), den(rng));
}

/// r linearly independent rational vectors in Q^n.
inline std::vector<RationalVector> random_independent(std::mt19937_64& rng, std::size_t n,
                                                      std::size_t r) {
  while (true) {
    std::vector<RationalVector> v(r, RationalVector(n));
    for (auto& x : v)
      for (auto& q : x) q = random_rational(rng);
    if (exact::rank(v, n) == r) return v;
  }
}

/// Subspace of dimension s plus a lattice of rank <= n - s.
inline ClosedSubgroup random_group(std::mt19937_64& rng, std::size_t n, Scale scale = Scale::Unit) {
  std::uniform_int_distribution<std::size_t> sd(0, n), rd(0, n);
  const std::size_t s = sd(rng) % n;  // keep at least one lattice-capable direction
  const std::size_t r = rd(rng) % (n - s + 1);
  auto              all = random_independent(rng, n, s + r);
  std::vector<RationalVector> sub(all.begin(), all.begin() + static_cast<long>(s));
  std::vector<RationalVector> lat(all.begin() + static_cast<long>(s), all.end());
  return ClosedSubgroup::make(n, sub, lat, scale);
}

}  // namespace levy::testing
