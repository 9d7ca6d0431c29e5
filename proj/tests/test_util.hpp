#pragma once

// Shared helpers for the test suites.

#include "tscausal/common.hpp"
#include "tscausal/random.hpp"

namespace test_util {

inline tscausal::Matrix random_matrix(tscausal::Rng& rng, tscausal::Index n,
                                      tscausal::Index p) {
  tscausal::Matrix m(n, p);
  for (tscausal::Index r = 0; r < n; ++r)
    for (tscausal::Index c = 0; c < p; ++c)
      m(r, c) = tscausal::standard_normal(rng);
  return m;
}

inline tscausal::Vector random_vector(tscausal::Rng& rng, tscausal::Index n) {
  tscausal::Vector v(n);
  for (tscausal::Index i = 0; i < n; ++i) v[i] = tscausal::standard_normal(rng);
  return v;
}

}  // namespace test_util
