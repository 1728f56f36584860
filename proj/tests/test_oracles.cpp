#include <doctest.h>

#include "motivic/oracles.hpp"
#include "motivic/series.hpp"

using namespace motivic;
using namespace motivic::oracles;

namespace {

Integer power(long q, long n) {
  Integer out = 1;
  for (long k = 0; k < n; ++k) out *= q;
  return out;
}

}  // namespace

TEST_CASE("numerical semigroups") {
  CHECK(semigroup_gf({1}, 3) == std::vector<long>{1, 1, 1, 1});
  CHECK(semigroup_gf({2, 3}, 7) == std::vector<long>{1, 0, 1, 1, 1, 1, 1, 1});
  const auto even = semigroup_gf({4, 6}, 20);
  for (long v = 0; v <= 20; ++v)
    if (v % 2) CHECK(even[v] == 0);
  CHECK(even[2] == 0);
  CHECK(even[10] == 1);
  CHECK(semigroup_gf({5, 7}, 23)[23] == 0);
  CHECK(semigroup_gf({5, 7}, 24)[24] == 1);
  CHECK_THROWS_AS(semigroup_gf({}, 3), std::invalid_argument);
  CHECK_THROWS_AS(semigroup_gf({0, 2}, 3), std::invalid_argument);
}

TEST_CASE("monomial codimensions") {
  const std::vector<long> three{3}, zero{0}, cusp{2, 3, 6};
  CHECK(monomial_codim({{{1, 1}}}, three) == 6);
  CHECK(monomial_codim({{{1, 1}}}, zero) == 0);
  const MonomialValuationSystem sys{{{1, 1}, {1, 2}, {2, 3}}};
  CHECK(monomial_codim(sys, cusp) == 5);
  const std::vector<long> none{0, 0, 0};
  CHECK(monomial_codim(sys, none) == 0);
  CHECK_THROWS_AS(monomial_codim(sys, three), std::invalid_argument);
}

TEST_CASE("monomial codimension matches a direct count of monomials") {
  const MonomialValuationSystem sys{{{1, 1}, {2, 3}, {3, 5}}};
  for (long w0 = 0; w0 <= 7; ++w0)
    for (long w1 = 0; w1 <= 9; ++w1)
      for (long w2 = 0; w2 <= 11; ++w2) {
        const std::vector<long> w{w0, w1, w2};
        long direct = 0;
        for (long p = 0; p <= 12; ++p)
          for (long q = 0; q <= 12; ++q) {
            bool below = false;
            for (std::size_t i = 0; i < 3; ++i)
              below = below || sys.weights[i].first * p + sys.weights[i].second * q < w[i];
            direct += below;
          }
        CHECK(monomial_codim(sys, w) == direct);
      }
}

TEST_CASE("divisors on open lines") {
  CHECK(count_divisors_open_line(2, 2, 0) == 1);
  CHECK(count_divisors_open_line(2, 2, 1) == 1);
  for (int q : {2, 3, 4, 5})
    for (int n = 0; n <= 4; ++n) {
      CHECK(count_divisors_open_line(q, 1, n) == power(q, n));
      Integer projective = 0;
      for (int d = 0; d <= n; ++d) projective += power(q, d);
      CHECK(count_divisors_open_line(q, 0, n) == projective);
    }
  // Monic quadratics over F_2 with no root at 0 or 1: only x^2 + x + 1.
  CHECK(count_divisors_open_line(2, 3, 2) == 1);
  CHECK_THROWS_AS(count_divisors_open_line(6, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(count_divisors_open_line(2, 4, 1), std::invalid_argument);
  CHECK_THROWS_AS(count_divisors_open_line(2, 1, 7), std::invalid_argument);
}

TEST_CASE("symmetric power classes count divisors, including over F_4 and F_5") {
  for (int q : {2, 3, 4, 5})
    for (int m = 0; m <= std::min(4, q + 1); ++m)
      for (int n = 0; n <= 5; ++n) {
        Specialization s;
        s.lefschetz = Rational(q);
        s.default_symbol = Rational(1);
        CAPTURE(q);
        CAPTURE(m);
        CAPTURE(n);
        CHECK(sym_power_class(RingElement::one(), m, n).specialize(s) == Rational(count_divisors_open_line(q, m, n)));
      }
}
