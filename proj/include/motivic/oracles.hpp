#ifndef MOTIVIC_ORACLES_HPP
#define MOTIVIC_ORACLES_HPP

#include <span>
#include <utility>
#include <vector>

#include "motivic/rational.hpp"

// Brute-force validators. Nothing here depends on the series engine.

namespace motivic::oracles {

/// Coefficients 0/1 of sum_{v in <generators>, v <= bound} t^v, index = v.
std::vector<long> semigroup_gf(const std::vector<long>& generators, long bound);

/// s monomial valuations w_i(x^p y^q) = a_i p + b_i q.
struct MonomialValuationSystem {
  std::vector<std::pair<long, long>> weights;
};

/// #{(p, q) >= 0 : some i has a_i p + b_i q < w_i}.
Integer monomial_codim(const MonomialValuationSystem& sys, std::span<const long> w);

/// Effective degree-n divisors over F_q on the projective line minus m
/// rational points (infinity first, then 0, 1, ...). q in {2,3,4,5}, n <= 6,
/// m <= min(4, q + 1).
Integer count_divisors_open_line(int q, int m, int n);

}  // namespace motivic::oracles

#endif
