#include "motivic/oracles.hpp"

#include <algorithm>
#include <stdexcept>

namespace motivic::oracles {

std::vector<long> semigroup_gf(const std::vector<long>& generators, long bound) {
  if (generators.empty()) throw std::invalid_argument("semigroup needs at least one generator");
  for (long g : generators)
    if (g <= 0) throw std::invalid_argument("semigroup generators must be positive");
  if (bound < 0) throw std::invalid_argument("bound must be nonnegative");
  std::vector<long> member(bound + 1, 0);
  member[0] = 1;
  for (long v = 1; v <= bound; ++v)
    for (long g : generators)
      if (g <= v && member[v - g]) member[v] = 1;
  return member;
}

Integer monomial_codim(const MonomialValuationSystem& sys, std::span<const long> w) {
  if (w.size() != sys.weights.size()) throw std::invalid_argument("value vector and weight system differ in length");
  long reach = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const auto [a, b] = sys.weights[i];
    if (a <= 0 || b <= 0) throw std::invalid_argument("monomial weights must be positive");
    reach = std::max(reach, w[i]);
  }
  // a_i, b_i >= 1, so every counted monomial has p < max w. For fixed p the
  // exponents q with a_i p + b_i q < w_i are 0..ceil((w_i - a_i p) / b_i) - 1.
  Integer count = 0;
  for (long p = 0; p < reach; ++p) {
    long column = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const auto [a, b] = sys.weights[i];
      const long room = w[i] - a * p;
      if (room > 0) column = std::max(column, (room + b - 1) / b);
    }
    count += column;
  }
  return count;
}

namespace {

// F_q with elements 0..q-1. For q = 4 the element x + 2y stands for x + y*a,
// a^2 = a + 1.
struct SmallField {
  int q;

  int add(int x, int y) const { return q == 4 ? x ^ y : (x + y) % q; }

  int mul(int x, int y) const {
    if (q != 4) return x * y % q;
    static const int table[4][4] = {{0, 0, 0, 0}, {0, 1, 2, 3}, {0, 2, 3, 1}, {0, 3, 1, 2}};
    return table[x][y];
  }
};

}  // namespace

Integer count_divisors_open_line(int q, int m, int n) {
  if (q != 2 && q != 3 && q != 4 && q != 5) throw std::invalid_argument("q must be 2, 3, 4 or 5");
  if (n < 0 || n > 6) throw std::invalid_argument("n must lie in 0..6");
  if (m < 0 || m > 4 || m > q + 1) throw std::invalid_argument("m must lie in 0..min(4, q+1)");
  const SmallField field{q};
  const bool keeps_infinity = m == 0;
  const int affine_removed = m == 0 ? 0 : m - 1;

  // A divisor avoiding infinity is a monic polynomial; with infinity allowed,
  // the part at infinity takes up the missing degree.
  Integer count = 0;
  for (int d = keeps_infinity ? 0 : n; d <= n; ++d) {
    std::vector<int> coeffs(d, 0);  // lower coefficients; the leading one is 1
    while (true) {
      bool avoids = true;
      for (int x = 0; x < affine_removed && avoids; ++x) {
        int value = 1;
        for (int k = d - 1; k >= 0; --k) value = field.add(field.mul(value, x), coeffs[k]);
        avoids = value != 0;
      }
      if (avoids) ++count;
      int k = 0;
      while (k < d && coeffs[k] == q - 1) coeffs[k++] = 0;
      if (k == d) break;
      ++coeffs[k];
    }
  }
  return count;
}

}  // namespace motivic::oracles
