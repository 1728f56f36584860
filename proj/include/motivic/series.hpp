#ifndef MOTIVIC_SERIES_HPP
#define MOTIVIC_SERIES_HPP

#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "motivic/codimension.hpp"
#include "motivic/ring.hpp"

namespace motivic {

namespace detail {
inline bool coeff_is_zero(const RingElement& c) { return c.is_zero(); }
inline bool coeff_is_zero(const Rational& c) { return c == 0; }
inline std::string coeff_text(const RingElement& c) { return c.to_text(); }
inline std::string coeff_text(const Rational& c) { return to_string(c); }
nlohmann::json coeff_json(const RingElement& c);
nlohmann::json coeff_json(const Rational& c);
void coeff_from_json(const nlohmann::json& j, RingElement& out);
void coeff_from_json(const nlohmann::json& j, Rational& out);
}  // namespace detail

// Finite map exponent -> coefficient holding exactly the terms whose exponent
// is coordinatewise <= bound. Terms are kept in graded lexicographic order;
// zero coefficients are never stored.
template <class Coeff>
class Series {
public:
  using Terms = std::map<ExponentVector, Coeff, GradedLex>;

  Series() = default;
  explicit Series(std::vector<long> bound) : bound_(std::move(bound)) {}

  std::size_t arity() const { return bound_.size(); }
  const std::vector<long>& bound() const { return bound_; }
  const Terms& terms() const { return terms_; }

  bool within_bound(const ExponentVector& e) const { return e.leq(bound_); }

  /// Adds c * t^e; terms beyond the bound are dropped.
  void add(const ExponentVector& e, const Coeff& c) {
    if (e.size() != arity()) throw std::invalid_argument("series term arity mismatch");
    if (detail::coeff_is_zero(c) || !within_bound(e)) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (detail::coeff_is_zero(it->second)) terms_.erase(it);
    }
  }

  Coeff coefficient(const ExponentVector& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Coeff(0) : it->second;
  }

  /// Truncated product; both operands must share the bound.
  Series operator*(const Series& rhs) const {
    if (rhs.bound_ != bound_) throw std::invalid_argument("series bounds differ");
    Series out(bound_);
    for (const auto& [ea, ca] : terms_)
      for (const auto& [eb, cb] : rhs.terms_) {
        ExponentVector e = ea + eb;
        if (out.within_bound(e)) out.add(e, ca * cb);
      }
    return out;
  }

  bool operator==(const Series& rhs) const { return bound_ == rhs.bound_ && terms_ == rhs.terms_; }

  bool has_non_integral_exponents() const {
    for (const auto& [e, c] : terms_)
      if (!e.integral()) return true;
    return false;
  }

  /// One `exponent : coefficient` line per term.
  std::string to_text() const {
    std::string out;
    for (const auto& [e, c] : terms_) out += e.to_text() + " : " + detail::coeff_text(c) + "\n";
    return out;
  }

  nlohmann::json to_json() const {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [e, c] : terms_) terms.push_back({{"exponent", e.to_json()}, {"coefficient", detail::coeff_json(c)}});
    return {{"arity", arity()}, {"bound", bound_}, {"terms", terms}};
  }

  static Series from_json(const nlohmann::json& j) {
    Series out(j.at("bound").get<std::vector<long>>());
    if (j.at("arity").get<std::size_t>() != out.arity()) throw std::invalid_argument("series arity/bound mismatch");
    for (const auto& t : j.at("terms")) {
      Coeff c;
      detail::coeff_from_json(t.at("coefficient"), c);
      out.add(ExponentVector::from_json(t.at("exponent")), c);
    }
    return out;
  }

private:
  std::vector<long> bound_;
  Terms terms_;
};

using TruncatedSeries = Series<RingElement>;
using RationalSeries = Series<Rational>;

RationalSeries specialize(const TruncatedSeries& s, const Specialization& spec);

// ---------------------------------------------------------------------------
// Stratum classes

/// [S^n of a punctured line with `nu` removed points], field class e:
/// sum_{l=0}^{min(n, nu-1)} (-1)^l C(nu-1, l) e^{n-l} L^{n-l}. For nu = 0 the
/// generating identity (1-t)^{-(eL+1)} gives sum_{l=0}^{n} e^l L^l.
RingElement sym_power_class(const RingElement& field_class, long nu, long n);
/// Same, with the field class looked up in `labels`.
RingElement sym_power_class(const LabelRegistry& labels, const std::string& label, long nu, long n);

enum class Puncture { circ, bullet };

/// [Y_n] = prod [S^{n_i} E_i] * prod_{sigma in I} [k_sigma^*] * prod_{j in J} [k_j^*].
/// The bullet variant uses nu_bullet and drops J.
RingElement stratum_class(const Stratum& st, const ResolutionGraph& g, Puncture variant);

// ---------------------------------------------------------------------------
// Enumeration

enum class SeriesMode { full, divisorial };
enum class Strictness { literal, integral };

struct EnumerationStats {
  std::size_t emitted = 0;
  std::size_t skipped_non_integral = 0;  // integral mode only
  std::size_t non_integral_emitted = 0;  // literal mode only
};

/// Calls `visit(stratum, exponent)` for every stratum whose exponent (v in
/// full mode, w in divisorial mode) is <= bound, exactly once, in a fixed
/// order: subsets I then J by bitmask, then multiplicities lexicographically.
EnumerationStats for_each_stratum(const ResolutionGraph& g, std::span<const long> bound, SeriesMode mode,
                                  Strictness strictness,
                                  const std::function<void(const Stratum&, const ExponentVector&)>& visit);

std::vector<Stratum> enumerate_strata(const ResolutionGraph& g, std::span<const long> bound, SeriesMode mode,
                                      Strictness strictness, EnumerationStats* stats = nullptr);

// ---------------------------------------------------------------------------
// Series

struct SeriesOptions {
  Strictness strictness = Strictness::literal;
  unsigned workers = 1;
};

struct SeriesResult {
  TruncatedSeries series;
  EnumerationStats stats;
  /// For P_g: the stratum-sum form and the factored form agree term by term.
  bool cross_form_agrees = true;
};

/// P_g truncated at a bound on the branch values v (arity r).
SeriesResult poincare_generalised(const ResolutionGraph& g, std::span<const long> bound,
                                  const SeriesOptions& opts = {});
/// P_g via sum L^{-F} [Y_n] t^v only.
TruncatedSeries poincare_generalised_stratum_form(const ResolutionGraph& g, std::span<const long> bound,
                                                  const SeriesOptions& opts = {});
/// P_g via the factored display L^{sum n - F} S_I S_J prod e^{n_i} prod(binomial sums).
TruncatedSeries poincare_generalised_factored_form(const ResolutionGraph& g, std::span<const long> bound,
                                                   const SeriesOptions& opts = {});

/// P^D_g truncated at a bound on the divisorial values w (arity s).
SeriesResult poincare_divisorial(const ResolutionGraph& g, std::span<const long> bound,
                                 const SeriesOptions& opts = {});

/// sum_I sum_n [Y^D_n] t^{w(n)} (no L^{-F} factor): the stratum-sum side of P^D-hat.
SeriesResult divisorial_semigroup_stratum_sum(const ResolutionGraph& g, std::span<const long> bound,
                                              const SeriesOptions& opts = {});

// ---------------------------------------------------------------------------
// Closed form of P^D-hat

struct ClosedFormExpr {
  struct NumeratorFactor {
    std::size_t pair = 0;
    ExponentVector first;   // m_{i1(sigma)}
    ExponentVector second;  // m_{i2(sigma)}
    long degree = 1;        // h_sigma
    RingElement units;      // [Spec(k_sigma)] L - 1
  };
  struct DenominatorFactor {
    int component = 0;
    ExponentVector exponent;  // m_i
    RingElement field;        // [Spec(k_i)]
  };

  std::size_t arity = 0;
  std::vector<NumeratorFactor> numerator;
  std::vector<DenominatorFactor> denominator;

  bool integral_exponents() const;
  /// e.g. `1 / ((1 - t1)*(1 - L*t1))`.
  std::string to_text() const;
  nlohmann::json to_json() const;
};

/// m_i is row i of M.
ClosedFormExpr divisorial_closed_form(const ResolutionGraph& g);
TruncatedSeries expand(const ClosedFormExpr& cf, std::span<const long> bound);

// ---------------------------------------------------------------------------
// Totally rational displays, evaluated with integer polynomials in L only.
// Both throw std::invalid_argument on graphs with any degree > 1.

TruncatedSeries poincare_generalised_totally_rational(const ResolutionGraph& g, std::span<const long> bound);
TruncatedSeries closed_form_totally_rational(const ResolutionGraph& g, std::span<const long> bound);

}  // namespace motivic

#endif
