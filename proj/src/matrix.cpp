#include "motivic/matrix.hpp"

#include <utility>

namespace motivic {

Rational parse_rational(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty rational");
  std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  bool slash = false;
  if (start == text.size()) throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  for (std::size_t i = start; i < text.size(); ++i) {
    char c = text[i];
    if (c == '/') {
      if (slash || i == start || i + 1 == text.size())
        throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
      slash = true;
    } else if (c < '0' || c > '9') {
      throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    }
  }
  std::string s(text[0] == '+' ? text.substr(1) : text);
  Rational q;
  q.set_str(s, 10);
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  q.canonicalize();
  return q;
}

Integer binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = Rational(m(i, j));
  return out;
}

namespace {

// In-place Bareiss forward elimination over the first `pivot_cols` columns.
// Returns the sign flips from row swaps, or 0 if a zero pivot column is met.
int bareiss_forward(IntMatrix& a, std::size_t pivot_cols) {
  const std::size_t n = a.rows();
  int sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k < pivot_cols && k < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && a(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(k, j), a(swap, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < a.cols(); ++j) {
        Integer t = a(k, k) * a(i, j) - a(i, k) * a(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = t;
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign;
}

}  // namespace

Integer determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  if (m.rows() == 0) return 1;
  IntMatrix a(m);
  int sign = bareiss_forward(a, a.cols());
  if (sign == 0) return 0;
  return sign * a(a.rows() - 1, a.cols() - 1);
}

std::vector<Integer> leading_principal_minors(const IntMatrix& m) {
  std::vector<Integer> out;
  for (std::size_t k = 1; k <= m.rows(); ++k) {
    IntMatrix sub(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) sub(i, j) = m(i, j);
    out.push_back(determinant(sub));
  }
  return out;
}

RatMatrix bareiss_inverse(const IntMatrix& m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw std::invalid_argument("inverse of a non-square matrix");
  IntMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  if (bareiss_forward(aug, n) == 0) throw std::domain_error("singular matrix");
  const Integer det = aug(n - 1, n - 1);
  if (det == 0) throw std::domain_error("singular matrix");

  // Forward pass left an integral upper block U (with U(n-1,n-1) = ±det);
  // back substitution is the only place fractions appear.
  RatMatrix inv(n, n);
  for (std::size_t col = 0; col < n; ++col) {
    std::vector<Rational> x(n);
    for (std::size_t ii = n; ii-- > 0;) {
      Rational acc(aug(ii, n + col));
      for (std::size_t j = ii + 1; j < n; ++j) acc -= Rational(aug(ii, j)) * x[j];
      x[ii] = acc / Rational(aug(ii, ii));
    }
    for (std::size_t i = 0; i < n; ++i) inv(i, col) = x[i];
  }
  return inv;
}

}  // namespace motivic
