#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "speq/economy.hpp"
#include "speq/simplex_grid.hpp"

namespace speq::test {

inline Rational q(long long num, long long den = 1) {
  return make_ratio(num, den);
}

inline BarycentricPoint pt(std::vector<Rational> coords) {
  return make_point(std::move(coords));
}

// Random interior point with double coordinates bounded away from zero.
inline BarycentricPoint random_interior_point(int n, std::mt19937_64& rng,
                                              double floor = 1e-3) {
  std::vector<double> raw(static_cast<std::size_t>(n) + 1);
  for (auto& r : raw)
    r = floor + static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0);
  return normalize_prices(raw);
}

// Random rational point of the grid at resolution denom (possibly on the
// boundary unless interior is requested).
inline BarycentricPoint random_rational_point(int n, std::int64_t denom,
                                              std::mt19937_64& rng,
                                              bool interior = false) {
  while (true) {
    // composition of denom into n+1 parts via sorted cut points
    std::vector<std::int64_t> cuts{0, denom};
    for (int i = 0; i < n; ++i)
      cuts.push_back(static_cast<std::int64_t>(rng() % (denom + 1)));
    std::sort(cuts.begin(), cuts.end());
    std::vector<Rational> coords;
    bool ok = true;
    for (int i = 0; i <= n; ++i) {
      std::int64_t part = cuts[static_cast<std::size_t>(i) + 1] - cuts[static_cast<std::size_t>(i)];
      if (interior && part == 0) ok = false;
      coords.push_back(Rational(BigInt(part), BigInt(denom)));
    }
    if (ok) return make_point(std::move(coords));
  }
}

}  // namespace speq::test
