#pragma once

// Seeded generators of valid tree specs shared by the unit and acceptance tests.

#include "shiftlab/tree.hpp"
#include "shiftlab/words.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace shiftlab::testing {

inline long uniform_int(std::mt19937_64& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

/// p/q with p in [1, 4], q in [1, 4].
inline Rational small_positive(std::mt19937_64& rng) {
  Rational r(uniform_int(rng, 1, 4), uniform_int(rng, 1, 4));
  r.canonicalize();
  return r;
}

/// A monotone tail whose first value (at first_index) is positive.
inline TailRule random_tail(std::mt19937_64& rng, std::int64_t first_index) {
  switch (uniform_int(rng, 0, 2)) {
    case 0:
      return ConstantTail{small_positive(rng)};
    case 1: {
      // L - c/(j - s) with s = first_index - 1 - extra, so j - s >= 1.
      const Rational limit = uniform_int(rng, 1, 3);
      const Rational shift = first_index - 1 - uniform_int(rng, 0, 2);
      const Rational denom_first = first_index - shift;
      Rational c(uniform_int(rng, 1, 3), uniform_int(rng, 2, 4));
      c.canonicalize();
      if (uniform_int(rng, 0, 1) == 0) c = -c;                         // decreasing
      if (c > 0 && c >= limit * denom_first) c = limit * denom_first / 2;  // keep the first value positive
      return AffineReciprocalTail{limit, c, shift};
    }
    default: {
      const Rational limit = uniform_int(rng, 1, 3);
      const Rational ratio(1, uniform_int(rng, 2, 3));
      Rational c(uniform_int(rng, 1, 2), 1);
      if (uniform_int(rng, 0, 1) == 0) c = -c;
      return GeometricTail{limit, c, ratio};  // |c r^j| <= 2/2 < limit unless limit == 1
    }
  }
}

struct RandomTreeShape {
  int max_core = 20;
  int max_rays = 3;
  bool finite = false;
};

/// Core vertices "v0".."v{n-1}" (v0 the root) with random parents among the
/// earlier vertices, plus up to max_rays rays. Regenerates until valid.
inline TreeSpec random_tree_spec(std::mt19937_64& rng, const RandomTreeShape& shape) {
  for (;;) {
    TreeSpec spec;
    spec.root = "v0";
    const auto n = uniform_int(rng, 1, shape.max_core);
    for (long i = 1; i < n; ++i) {
      spec.core_edges.push_back(
          {"v" + std::to_string(uniform_int(rng, 0, i - 1)), "v" + std::to_string(i), small_positive(rng)});
    }
    if (!shape.finite) {
      const auto rays = uniform_int(rng, 0, shape.max_rays);
      for (long r = 0; r < rays; ++r) {
        RaySpec ray{"r" + std::to_string(r), "v" + std::to_string(uniform_int(rng, 0, n - 1)), {},
                    ConstantTail{Rational(1)}};
        const auto prefix = uniform_int(rng, 0, 2);
        for (long k = 0; k < prefix; ++k) ray.prefix.push_back(small_positive(rng));
        ray.tail = random_tail(rng, prefix + 1);
        spec.rays.push_back(std::move(ray));
      }
    }
    try {
      validate_tree(spec);
      return spec;
    } catch (const TreeError&) {
      // Geometric tails with limit 1 and c = 2 can start non-positive; draw again.
    }
  }
}

/// Support in `pool`, 1..max_support coordinates, coefficients {-3..3}/{1,2,3}.
inline FinVector random_vector(std::mt19937_64& rng, const std::vector<VertexId>& pool, int max_support = 4) {
  FinVector f;
  const auto size = uniform_int(rng, 1, max_support);
  for (long i = 0; i < size; ++i) {
    const auto& v = pool[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<long>(pool.size()) - 1))];
    Rational c(uniform_int(rng, -3, 3), uniform_int(rng, 1, 3));
    c.canonicalize();
    f.set(v, c);
  }
  return f;
}

}  // namespace shiftlab::testing
