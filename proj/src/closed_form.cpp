#include <algorithm>
#include <stdexcept>

#include "motivic/series.hpp"

namespace motivic {

namespace {

ExponentVector row_of(const RatMatrix& m, int i) {
  ExponentVector e(m.cols());
  for (std::size_t k = 0; k < m.cols(); ++k) e[k] = m(i, k);
  return e;
}

std::string power_text(const ExponentVector& e) { return e.to_text(); }

std::string unit_factor_text(const RingElement& field, const ExponentVector& m) {
  if (field == RingElement::one()) return "(1 - L*" + power_text(m) + ")";
  const auto& terms = field.terms();
  if (terms.size() == 1 && terms.begin()->second == 1)
    return "(1 - " + monomial_to_text(terms.begin()->first) + "*L*" + power_text(m) + ")";
  return "(1 - (" + field.to_text() + ")*L*" + power_text(m) + ")";
}

TruncatedSeries unit_series(const std::vector<long>& bound) {
  TruncatedSeries s(bound);
  s.add(ExponentVector(bound.size()), RingElement::one());
  return s;
}

// sum_k c^k t^{k m}, truncated at bound.
TruncatedSeries geometric(const std::vector<long>& bound, const ExponentVector& m, const RingElement& c) {
  TruncatedSeries s(bound);
  ExponentVector e(bound.size());
  RingElement coeff = RingElement::one();
  while (e.leq(bound)) {
    s.add(e, coeff);
    e = e + m;
    coeff *= c;
  }
  return s;
}

}  // namespace

bool ClosedFormExpr::integral_exponents() const {
  for (const auto& f : numerator)
    if (!f.first.integral() || !f.second.integral()) return false;
  for (const auto& f : denominator)
    if (!f.exponent.integral()) return false;
  return true;
}

std::string ClosedFormExpr::to_text() const {
  std::string num;
  for (const auto& f : numerator) {
    const std::string a = power_text(f.first), b = power_text(f.second), ab = power_text(f.first + f.second);
    const std::string base = "(1 - " + a + ")*(1 - " + b + ")";
    const std::string units = "(" + f.units.to_text() + ")";
    std::string factor;
    if (f.degree == 1) {
      factor = base + " + " + units + "*" + ab;
    } else {
      const std::string lower = f.degree == 2 ? "(" + base + ")" : "(" + base + ")^" + std::to_string(f.degree - 1);
      factor = "(" + base + ")^" + std::to_string(f.degree) + " + " + lower + "*" + units + "*" + ab;
    }
    if (!num.empty()) num += "*";
    num += "(" + factor + ")";
  }
  if (num.empty()) num = "1";
  std::string den;
  for (const auto& f : denominator) {
    if (!den.empty()) den += "*";
    den += "(1 - " + power_text(f.exponent) + ")*" + unit_factor_text(f.field, f.exponent);
  }
  return num + " / (" + den + ")";
}

nlohmann::json ClosedFormExpr::to_json() const {
  nlohmann::json num = nlohmann::json::array(), den = nlohmann::json::array();
  for (const auto& f : numerator)
    num.push_back({{"pair_index", f.pair},
                   {"first", f.first.to_json()},
                   {"second", f.second.to_json()},
                   {"degree", f.degree},
                   {"units", f.units.to_json()}});
  for (const auto& f : denominator)
    den.push_back({{"component", f.component + 1}, {"exponent", f.exponent.to_json()}, {"field", f.field.to_json()}});
  return {{"arity", arity}, {"numerator", num}, {"denominator", den}, {"integral_exponents", integral_exponents()}};
}

ClosedFormExpr divisorial_closed_form(const ResolutionGraph& g) {
  ClosedFormExpr cf;
  cf.arity = static_cast<std::size_t>(g.size());
  const auto& m = g.m_matrix();
  for (std::size_t k = 0; k < g.pairs().size(); ++k) {
    const auto& p = g.pairs()[k];
    cf.numerator.push_back({k, row_of(m, p.first), row_of(m, p.second), p.degree,
                            g.labels().units_class(g.pair_label(k))});
  }
  for (int i = 0; i < g.size(); ++i)
    cf.denominator.push_back({i, row_of(m, i), g.labels().field_class(g.component_label(i))});
  return cf;
}

TruncatedSeries expand(const ClosedFormExpr& cf, std::span<const long> bound_span) {
  if (bound_span.size() != cf.arity)
    throw std::invalid_argument("bound has " + std::to_string(bound_span.size()) + " entries, closed form has " +
                                std::to_string(cf.arity) + " variables");
  const std::vector<long> bound(bound_span.begin(), bound_span.end());
  TruncatedSeries out = unit_series(bound);
  for (const auto& f : cf.numerator) {
    // T = (1 - t^a)(1 - t^b)
    TruncatedSeries one_minus_a = unit_series(bound), one_minus_b = unit_series(bound);
    one_minus_a.add(f.first, RingElement(-1));
    one_minus_b.add(f.second, RingElement(-1));
    const TruncatedSeries t = one_minus_a * one_minus_b;
    TruncatedSeries lower = unit_series(bound);
    for (long k = 0; k + 1 < f.degree; ++k) lower = lower * t;
    TruncatedSeries cross(bound);
    cross.add(f.first + f.second, f.units);
    TruncatedSeries factor = lower * t;
    const TruncatedSeries crossed = lower * cross;
    for (const auto& [e, c] : crossed.terms()) factor.add(e, c);
    out = out * factor;
  }
  for (const auto& f : cf.denominator) {
    out = out * geometric(bound, f.exponent, RingElement::one());
    out = out * geometric(bound, f.exponent, f.field * RingElement::lefschetz());
  }
  return out;
}

}  // namespace motivic
