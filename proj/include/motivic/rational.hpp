#ifndef MOTIVIC_RATIONAL_HPP
#define MOTIVIC_RATIONAL_HPP

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace motivic {

using Integer = mpz_class;
using Rational = mpq_class;

inline bool is_integral(const Rational& q) { return q.get_den() == 1; }

/// "3/2", "-7", "0"; integers never carry a denominator.
inline std::string to_string(const Rational& q) { return q.get_str(); }
inline std::string to_string(const Integer& z) { return z.get_str(); }

/// Parses "p", "-p" or "p/q". Throws std::invalid_argument on anything else.
Rational parse_rational(std::string_view text);

Integer binomial(long n, long k);

}  // namespace motivic

#endif
