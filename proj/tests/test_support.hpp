#pragma once

#include <random>

#include "nilmat/matgroup.hpp"
#include "nilmat/presentation.hpp"

namespace nilmat::testing {

inline UnitriangularMatrix random_unitriangular(std::mt19937_64& rng, std::size_t n, long lo, long hi) {
  std::uniform_int_distribution<long> dist(lo, hi);
  UnitriangularMatrix m(n);
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = i + 1; j <= n; ++j) m.set(i, j, dist(rng));
  return m;
}

inline NormalWord random_word(std::mt19937_64& rng, std::size_t length, long lo, long hi) {
  std::uniform_int_distribution<long> dist(lo, hi);
  NormalWord w(length);
  for (std::size_t k = 0; k < length; ++k) w[k] = dist(rng);
  return w;
}

/// Matrix built entry by entry, 1-based (i, j) -> value.
inline UnitriangularMatrix matrix_with(std::size_t n, std::initializer_list<std::tuple<int, int, long>> entries) {
  UnitriangularMatrix m(n);
  for (auto [i, j, v] : entries) m.set(static_cast<std::size_t>(i), static_cast<std::size_t>(j), v);
  return m;
}

}  // namespace nilmat::testing
