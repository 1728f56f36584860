#include "motivic/ring.hpp"

#include <algorithm>
#include <sstream>

namespace motivic {

Monomial Monomial::operator*(const Monomial& rhs) const {
  Monomial out;
  out.lefschetz_exp = lefschetz_exp + rhs.lefschetz_exp;
  auto a = symbols.begin();
  auto b = rhs.symbols.begin();
  while (a != symbols.end() || b != rhs.symbols.end()) {
    if (b == rhs.symbols.end() || (a != symbols.end() && a->first < b->first)) {
      out.symbols.push_back(*a++);
    } else if (a == symbols.end() || b->first < a->first) {
      out.symbols.push_back(*b++);
    } else {
      out.symbols.emplace_back(a->first, a->second + b->second);
      ++a;
      ++b;
    }
  }
  return out;
}

bool MonomialLess::operator()(const Monomial& a, const Monomial& b) const {
  if (a.lefschetz_exp != b.lefschetz_exp) return a.lefschetz_exp < b.lefschetz_exp;
  // Lexicographic by label over the exponent vectors: a missing label is exponent 0.
  auto ia = a.symbols.begin();
  auto ib = b.symbols.begin();
  while (ia != a.symbols.end() || ib != b.symbols.end()) {
    if (ib == b.symbols.end() || (ia != a.symbols.end() && ia->first < ib->first)) return false;
    if (ia == a.symbols.end() || ib->first < ia->first) return true;
    if (ia->second != ib->second) return ia->second < ib->second;
    ++ia;
    ++ib;
  }
  return false;
}

RingElement::RingElement(long c) : RingElement(Integer(c)) {}

RingElement::RingElement(const Integer& c) {
  if (c != 0) terms_.emplace(Monomial{}, c);
}

RingElement RingElement::lefschetz_power(const Rational& exponent) {
  Monomial m;
  m.lefschetz_exp = exponent;
  return monomial(m);
}

RingElement RingElement::symbol(const std::string& label, unsigned long exponent) {
  Monomial m;
  if (exponent > 0) m.symbols.emplace_back(label, exponent);
  return monomial(m);
}

RingElement RingElement::monomial(const Monomial& m, const Integer& coeff) {
  RingElement r;
  r.add_term(m, coeff);
  return r;
}

bool RingElement::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Monomial{});
}

void RingElement::add_term(const Monomial& m, const Integer& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

RingElement& RingElement::operator+=(const RingElement& rhs) {
  for (const auto& [m, c] : rhs.terms_) add_term(m, c);
  return *this;
}

RingElement& RingElement::operator-=(const RingElement& rhs) {
  for (const auto& [m, c] : rhs.terms_) add_term(m, -c);
  return *this;
}

RingElement RingElement::operator-() const {
  RingElement r;
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

RingElement RingElement::scaled(const Integer& k) const {
  RingElement r;
  if (k == 0) return r;
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, c * k);
  return r;
}

RingElement operator*(const RingElement& a, const RingElement& b) {
  RingElement r;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
  return r;
}

RingElement& RingElement::operator*=(const RingElement& rhs) {
  *this = *this * rhs;
  return *this;
}

RingElement RingElement::pow(unsigned long n) const {
  RingElement result = one();
  RingElement base = *this;
  while (n > 0) {
    if (n & 1UL) result *= base;
    n >>= 1;
    if (n > 0) base *= base;
  }
  return result;
}

namespace {

Rational rational_pow(const Rational& x, long e) {
  Rational base = x;
  if (e < 0) {
    if (base == 0) throw SpecializationError("negative power of zero");
    base = 1 / base;
    e = -e;
  }
  Rational r = 1;
  mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(e));
  r.canonicalize();
  return r;
}

// x^(p/q) when it is rational.
Rational rational_power(const Rational& x, const Rational& exponent) {
  if (is_integral(exponent)) return rational_pow(x, exponent.get_num().get_si());
  if (x == 1) return 1;
  if (x == 0) {
    if (exponent < 0) throw SpecializationError("negative power of zero");
    return 0;
  }
  Rational raised = rational_pow(x, exponent.get_num().get_si());
  const unsigned long q = exponent.get_den().get_ui();
  if (raised < 0 && q % 2 == 0)
    throw SpecializationError("even root of a negative value for L^(" + to_string(exponent) + ")");
  Integer num = abs(raised.get_num());
  Integer den = raised.get_den();
  Integer rn, rd;
  bool exact_n = mpz_root(rn.get_mpz_t(), num.get_mpz_t(), q) != 0;
  bool exact_d = mpz_root(rd.get_mpz_t(), den.get_mpz_t(), q) != 0;
  if (!exact_n || !exact_d)
    throw SpecializationError("L^(" + to_string(exponent) + ") has no rational value at L=" + to_string(x));
  Rational r(rn, rd);
  r.canonicalize();
  return raised < 0 ? Rational(-r) : r;
}

}  // namespace

Rational RingElement::specialize(const Specialization& s) const {
  Rational total = 0;
  for (const auto& [m, c] : terms_) {
    Rational term(c);
    if (m.lefschetz_exp != 0) {
      if (!s.lefschetz) throw SpecializationError("no value assigned to L");
      if (*s.lefschetz == 0 && m.lefschetz_exp < 0)
        throw SpecializationError("L=0 with a negative L power");
      term *= rational_power(*s.lefschetz, m.lefschetz_exp);
    }
    for (const auto& [label, k] : m.symbols) {
      auto it = s.symbols.find(label);
      const Rational* value = nullptr;
      if (it != s.symbols.end()) value = &it->second;
      else if (s.default_symbol) value = &*s.default_symbol;
      if (value == nullptr) throw SpecializationError("no value assigned to symbol e[" + label + "]");
      term *= rational_pow(*value, static_cast<long>(k));
    }
    total += term;
  }
  return total;
}

std::string monomial_to_text(const Monomial& m) {
  std::string out;
  auto append = [&out](const std::string& factor) {
    if (!out.empty()) out += '*';
    out += factor;
  };
  if (m.lefschetz_exp != 0) {
    if (m.lefschetz_exp == 1) append("L");
    else if (is_integral(m.lefschetz_exp)) append("L^" + to_string(m.lefschetz_exp));
    else append("L^(" + to_string(m.lefschetz_exp) + ")");
  }
  for (const auto& [label, k] : m.symbols) {
    std::string f = "e[" + label + "]";
    if (k != 1) f += "^" + std::to_string(k);
    append(f);
  }
  return out;
}

std::string RingElement::to_text() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    std::string mono = monomial_to_text(m);
    if (first) {
      os << '(' << c.get_str() << ')';
    } else {
      os << (c < 0 ? " - " : " + ") << Integer(abs(c)).get_str();
    }
    if (!mono.empty()) os << '*' << mono;
    first = false;
  }
  return os.str();
}

namespace {

nlohmann::json integer_json(const Integer& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

nlohmann::json rational_json(const Rational& q) {
  if (is_integral(q) && q.get_num().fits_slong_p()) return q.get_num().get_si();
  return to_string(q);
}

Rational rational_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return Rational(static_cast<long>(j.get<long long>()));
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw std::invalid_argument("expected an integer or a fraction string, got " + j.dump());
}

}  // namespace

nlohmann::json RingElement::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [m, c] : terms_) {
    nlohmann::json syms = nlohmann::json::object();
    for (const auto& [label, k] : m.symbols) syms[label] = k;
    arr.push_back({{"Lexp", rational_json(m.lefschetz_exp)}, {"symbols", syms}, {"coeff", integer_json(c)}});
  }
  return arr;
}

RingElement RingElement::from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw std::invalid_argument("ring element JSON must be an array");
  RingElement r;
  for (const auto& t : j) {
    Monomial m;
    m.lefschetz_exp = rational_from_json(t.at("Lexp"));
    for (const auto& [label, k] : t.at("symbols").items()) {
      auto e = k.get<unsigned long>();
      if (e > 0) m.symbols.emplace_back(label, e);
    }
    std::sort(m.symbols.begin(), m.symbols.end());
    Rational c = rational_from_json(t.at("coeff"));
    if (!is_integral(c)) throw std::invalid_argument("ring coefficients are integers");
    r.add_term(m, c.get_num());
  }
  return r;
}

Specialization Specialization::parse(const std::string& text) {
  Specialization s;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == item.size())
      throw std::invalid_argument("malformed specialization entry '" + item + "'");
    std::string key = item.substr(0, eq);
    Rational value = parse_rational(item.substr(eq + 1));
    if (key == "L") s.lefschetz = value;
    else if (key == "all") s.default_symbol = value;
    else s.symbols[key] = value;
  }
  if (!s.lefschetz && s.symbols.empty() && !s.default_symbol)
    throw std::invalid_argument("empty specialization");
  return s;
}

std::string Specialization::to_string() const {
  std::string out;
  auto add = [&out](const std::string& k, const Rational& v) {
    if (!out.empty()) out += ',';
    out += k + "=" + motivic::to_string(v);
  };
  if (lefschetz) add("L", *lefschetz);
  for (const auto& [k, v] : symbols) add(k, v);
  if (default_symbol) add("all", *default_symbol);
  return out;
}

void LabelRegistry::add(const std::string& label, long degree) {
  if (degree < 1) throw std::invalid_argument("label '" + label + "' has non-positive degree");
  auto [it, inserted] = degrees_.emplace(label, degree);
  if (!inserted && it->second != degree)
    throw std::invalid_argument("label '" + label + "' is shared by sites of degrees " +
                                std::to_string(it->second) + " and " + std::to_string(degree));
}

long LabelRegistry::degree(const std::string& label) const {
  auto it = degrees_.find(label);
  if (it == degrees_.end()) throw UnknownLabelError("unknown field label '" + label + "'");
  return it->second;
}

RingElement LabelRegistry::field_class(const std::string& label) const {
  return degree(label) == 1 ? RingElement::one() : RingElement::symbol(label);
}

RingElement LabelRegistry::units_class(const std::string& label) const {
  return field_class(label) * RingElement::lefschetz() - RingElement::one();
}

}  // namespace motivic
