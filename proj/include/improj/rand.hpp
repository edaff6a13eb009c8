// SPDX-License-Identifier: Apache-2.0

#ifndef IMPROJ_RAND_HPP
#define IMPROJ_RAND_HPP

#include <random>

#include "improj/rational.hpp"

namespace improj {

// Deterministic rational sampler: numerator in [-max_num, max_num],
// denominator in [1, max_den].
inline Rat random_rat(std::mt19937_64& rng, long max_num, long max_den) {
  std::uniform_int_distribution<long> num(-max_num, max_num);
  std::uniform_int_distribution<long> den(1, max_den);
  Rat q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

inline Rat random_nonzero_rat(std::mt19937_64& rng, long max_num,
                              long max_den) {
  while (true) {
    Rat q = random_rat(rng, max_num, max_den);
    if (q != 0) return q;
  }
}

}  // namespace improj

#endif  // IMPROJ_RAND_HPP
