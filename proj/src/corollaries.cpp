#include <map>
#include <stdexcept>

#include "motivic/series.hpp"

// Totally rational displays, evaluated over Z[L, L^-1] without the symbol
// machinery of RingElement.

namespace motivic {

namespace {

using Laurent = std::map<long, Integer>;  // L-exponent -> coefficient

void add_to(Laurent& a, const Laurent& b) {
  for (const auto& [k, c] : b) {
    Integer& slot = a[k];
    slot += c;
    if (slot == 0) a.erase(k);
  }
}

Laurent times(const Laurent& a, const Laurent& b) {
  Laurent out;
  for (const auto& [ka, ca] : a)
    for (const auto& [kb, cb] : b) add_to(out, Laurent{{ka + kb, ca * cb}});
  return out;
}

Laurent monomial(long k, const Integer& c = 1) { return c == 0 ? Laurent{} : Laurent{{k, c}}; }

Laurent power(const Laurent& a, long n) {
  Laurent out = monomial(0);
  for (long k = 0; k < n; ++k) out = times(out, a);
  return out;
}

RingElement to_ring(const Laurent& p) {
  RingElement out;
  for (const auto& [k, c] : p) out += RingElement::lefschetz_power(k).scaled(c);
  return out;
}

void require_totally_rational(const ResolutionGraph& g) {
  if (!g.totally_rational()) throw std::invalid_argument("graph is not totally rational");
}

long integral_value(const Rational& q, const char* what) {
  if (!is_integral(q)) throw std::logic_error(std::string(what) + " is not integral on a totally rational graph");
  return q.get_num().get_si();
}

// sum_{l=0}^{min(n, nu-1)} (-1)^l C(nu-1, l) L^{-l}; nu = 0 via the generating identity.
Laurent inner_sum(long nu, long n) {
  Laurent out;
  if (nu == 0) {
    for (long k = 0; k <= n; ++k) add_to(out, monomial(-k));
    return out;
  }
  for (long l = 0; l <= std::min(n, nu - 1); ++l) {
    Integer c = binomial(nu - 1, l);
    add_to(out, monomial(-l, l % 2 ? Integer(-c) : c));
  }
  return out;
}

struct PlainSeries {
  std::vector<long> bound;
  std::map<ExponentVector, Laurent, GradedLex> terms;

  void add(const ExponentVector& e, const Laurent& c) {
    if (!e.leq(bound) || c.empty()) return;
    Laurent& slot = terms[e];
    add_to(slot, c);
    if (slot.empty()) terms.erase(e);
  }

  PlainSeries operator*(const PlainSeries& rhs) const {
    PlainSeries out{bound, {}};
    for (const auto& [ea, ca] : terms)
      for (const auto& [eb, cb] : rhs.terms) out.add(ea + eb, times(ca, cb));
    return out;
  }

  TruncatedSeries to_series() const {
    TruncatedSeries out(bound);
    for (const auto& [e, c] : terms) out.add(e, to_ring(c));
    return out;
  }
};

ExponentVector row(const ResolutionGraph& g, int i) {
  ExponentVector e(g.size());
  for (int k = 0; k < g.size(); ++k) e[k] = g.m_matrix()(i, k);
  return e;
}

}  // namespace

TruncatedSeries poincare_generalised_totally_rational(const ResolutionGraph& g, std::span<const long> bound) {
  require_totally_rational(g);
  PlainSeries acc{std::vector<long>(bound.begin(), bound.end()), {}};
  const Laurent one_minus_inverse = {{0, 1}, {-1, -1}};
  for_each_stratum(g, bound, SeriesMode::full, Strictness::literal, [&](const Stratum& st, const ExponentVector& v) {
    const long units = static_cast<long>(st.pairs.size() + st.branches.size());
    const long f = integral_value(codim_F(st, g), "F");
    Laurent term = times(monomial(units + st.smooth_total() - f), power(one_minus_inverse, units));
    for (int i = 0; i < g.size(); ++i) term = times(term, inner_sum(g.nu_circ()[i], st.smooth[i]));
    acc.add(v, term);
  });
  return acc.to_series();
}

TruncatedSeries closed_form_totally_rational(const ResolutionGraph& g, std::span<const long> bound) {
  require_totally_rational(g);
  const std::vector<long> b(bound.begin(), bound.end());
  if (b.size() != static_cast<std::size_t>(g.size())) throw std::invalid_argument("bound arity must equal s");
  const ExponentVector zero(b.size());
  PlainSeries acc{b, {}};
  acc.add(zero, monomial(0));
  for (const auto& p : g.pairs()) {
    const ExponentVector a = row(g, p.first), c = row(g, p.second);
    PlainSeries factor{b, {}};
    factor.add(zero, monomial(0));
    factor.add(a, monomial(0, -1));
    factor.add(c, monomial(0, -1));
    factor.add(a + c, monomial(1));
    acc = acc * factor;
  }
  for (int i = 0; i < g.size(); ++i) {
    const ExponentVector m = row(g, i);
    PlainSeries plain{b, {}}, twisted{b, {}};
    ExponentVector e = zero;
    for (long k = 0; e.leq(b); ++k, e = e + m) {
      plain.add(e, monomial(0));
      twisted.add(e, monomial(k));
    }
    acc = acc * plain * twisted;
  }
  return acc.to_series();
}

}  // namespace motivic
