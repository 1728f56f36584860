#ifndef MOTIVIC_RING_HPP
#define MOTIVIC_RING_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "motivic/rational.hpp"

namespace motivic {

// Monomial L^a * prod e[label]^k. Symbols are kept sorted by label with
// strictly positive exponents; a is an exact rational (integral in every
// totally rational computation).
struct Monomial {
  Rational lefschetz_exp = 0;
  std::vector<std::pair<std::string, unsigned long>> symbols;

  Monomial operator*(const Monomial& rhs) const;
  bool operator==(const Monomial& rhs) const {
    return lefschetz_exp == rhs.lefschetz_exp && symbols == rhs.symbols;
  }
};

/// Monomial order: L-degree first, then symbol exponents lexicographically by label.
struct MonomialLess {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Values for L and for symbols. Symbols not listed fall back to
/// `default_symbol` when set.
struct Specialization {
  std::optional<Rational> lefschetz;
  std::map<std::string, Rational> symbols;
  std::optional<Rational> default_symbol;

  /// Parses "L=1,all=1" / "L=2,k2=0,all=1".
  static Specialization parse(const std::string& text);
  std::string to_string() const;
};

class SpecializationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Element of the formal localized Grothendieck ring: a finite Z-combination of
// monomials. No relation is imposed among distinct symbols.
class RingElement {
public:
  using Terms = std::map<Monomial, Integer, MonomialLess>;

  RingElement() = default;
  RingElement(long c);  // NOLINT: integers embed in the ring
  RingElement(const Integer& c);  // NOLINT

  static RingElement one() { return RingElement(1); }
  static RingElement lefschetz() { return lefschetz_power(1); }
  static RingElement lefschetz_power(const Rational& exponent);
  static RingElement symbol(const std::string& label, unsigned long exponent = 1);
  static RingElement monomial(const Monomial& m, const Integer& coeff = 1);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;

  RingElement& operator+=(const RingElement& rhs);
  RingElement& operator-=(const RingElement& rhs);
  RingElement& operator*=(const RingElement& rhs);
  RingElement operator-() const;
  RingElement scaled(const Integer& k) const;
  RingElement pow(unsigned long n) const;

  friend RingElement operator+(RingElement a, const RingElement& b) { return a += b; }
  friend RingElement operator-(RingElement a, const RingElement& b) { return a -= b; }
  friend RingElement operator*(const RingElement& a, const RingElement& b);
  bool operator==(const RingElement& rhs) const { return terms_ == rhs.terms_; }

  /// Ring homomorphism to Q. Throws SpecializationError when a symbol has no
  /// value, when L=0 meets a negative L power, or when a fractional L power
  /// has no rational value.
  Rational specialize(const Specialization& s) const;

  /// `(3)*L^2*e[k2] - 1*L^-1`: descending monomial order, the leading
  /// coefficient parenthesized with its sign.
  std::string to_text() const;
  nlohmann::json to_json() const;
  static RingElement from_json(const nlohmann::json& j);

private:
  void add_term(const Monomial& m, const Integer& c);
  Terms terms_;
};

std::string monomial_to_text(const Monomial& m);

class UnknownLabelError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// Field labels and their residue degrees. Degree-1 labels are identified
// with the unit; every other label is an opaque symbol e[label].
class LabelRegistry {
public:
  /// Registers `label` with `degree`; re-registering with a different degree throws.
  void add(const std::string& label, long degree);
  bool contains(const std::string& label) const { return degrees_.count(label) != 0; }
  long degree(const std::string& label) const;
  const std::map<std::string, long>& labels() const { return degrees_; }

  /// [Spec(k)] : e[label], or 1 for degree-1 labels.
  RingElement field_class(const std::string& label) const;
  /// [k*] = [Spec(k)] L - 1.
  RingElement units_class(const std::string& label) const;

private:
  std::map<std::string, long> degrees_;
};

}  // namespace motivic

#endif
