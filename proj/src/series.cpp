#include <algorithm>
#include <exception>
#include <thread>

#include "motivic/series.hpp"

namespace motivic {

namespace detail {

nlohmann::json coeff_json(const RingElement& c) { return c.to_json(); }

nlohmann::json coeff_json(const Rational& c) {
  if (is_integral(c) && c.get_num().fits_slong_p()) return c.get_num().get_si();
  return to_string(c);
}

void coeff_from_json(const nlohmann::json& j, RingElement& out) { out = RingElement::from_json(j); }

void coeff_from_json(const nlohmann::json& j, Rational& out) {
  if (j.is_number_integer()) out = Rational(static_cast<long>(j.get<long long>()));
  else if (j.is_string()) out = parse_rational(j.get<std::string>());
  else throw std::invalid_argument("rational coefficient must be an integer or a fraction string");
}

}  // namespace detail

RationalSeries specialize(const TruncatedSeries& s, const Specialization& spec) {
  RationalSeries out(s.bound());
  for (const auto& [e, c] : s.terms()) out.add(e, c.specialize(spec));
  return out;
}

RingElement sym_power_class(const RingElement& field_class, long nu, long n) {
  if (n < 0 || nu < 0) throw std::invalid_argument("symmetric power needs n >= 0 and nu >= 0");
  const RingElement eL = field_class * RingElement::lefschetz();
  RingElement out;
  if (nu == 0) {
    for (long l = 0; l <= n; ++l) out += eL.pow(l);
    return out;
  }
  for (long l = 0; l <= std::min(n, nu - 1); ++l) {
    RingElement term = eL.pow(n - l).scaled(binomial(nu - 1, l));
    if (l % 2) out -= term;
    else out += term;
  }
  return out;
}

RingElement sym_power_class(const LabelRegistry& labels, const std::string& label, long nu, long n) {
  return sym_power_class(labels.field_class(label), nu, n);
}

RingElement stratum_class(const Stratum& st, const ResolutionGraph& g, Puncture variant) {
  const auto& nu = variant == Puncture::circ ? g.nu_circ() : g.nu_bullet();
  RingElement out = RingElement::one();
  for (int i = 0; i < g.size(); ++i)
    if (st.smooth[i] > 0) out *= sym_power_class(g.labels(), g.component_label(i), nu[i], st.smooth[i]);
  for (const auto& p : st.pairs) out *= g.labels().units_class(g.pair_label(p.pair));
  if (variant == Puncture::circ)
    for (const auto& b : st.branches) out *= g.labels().units_class(g.branch_label(b.branch));
  return out;
}

namespace {

// Evaluates `term` on every stratum with up to `workers` threads, then sums in
// enumeration order; the result does not depend on the worker count.
SeriesResult sum_over_strata(const ResolutionGraph& g, std::span<const long> bound, SeriesMode mode,
                             const SeriesOptions& opts,
                             const std::function<RingElement(const Stratum&)>& term) {
  std::vector<Stratum> strata;
  std::vector<ExponentVector> exponents;
  SeriesResult result;
  result.stats = for_each_stratum(g, bound, mode, opts.strictness, [&](const Stratum& st, const ExponentVector& e) {
    strata.push_back(st);
    exponents.push_back(e);
  });

  std::vector<RingElement> values(strata.size());
  const unsigned workers = std::max(1U, std::min<unsigned>(opts.workers, static_cast<unsigned>(strata.size())));
  if (workers <= 1) {
    for (std::size_t k = 0; k < strata.size(); ++k) values[k] = term(strata[k]);
  } else {
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t k = w; k < strata.size(); k += workers) values[k] = term(strata[k]);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  result.series = TruncatedSeries(std::vector<long>(bound.begin(), bound.end()));
  for (std::size_t k = 0; k < strata.size(); ++k) result.series.add(exponents[k], values[k]);
  return result;
}

// prod_i (sum_l (-1)^l C(nu_i - 1, l) e_i^{n_i - l} L^{-l}), the e^{n_i} prefactor
// already absorbed so that no symbol exponent goes negative.
RingElement binomial_factor(const RingElement& field_class, long nu, long n) {
  RingElement out;
  if (nu == 0) {
    for (long k = 0; k <= n; ++k) out += field_class.pow(n - k) * RingElement::lefschetz_power(-k);
    return out;
  }
  for (long l = 0; l <= std::min(n, nu - 1); ++l) {
    RingElement term = (field_class.pow(n - l) * RingElement::lefschetz_power(-l)).scaled(binomial(nu - 1, l));
    if (l % 2) out -= term;
    else out += term;
  }
  return out;
}

RingElement factored_term(const Stratum& st, const ResolutionGraph& g, const Rational& codim, Puncture variant) {
  const auto& nu = variant == Puncture::circ ? g.nu_circ() : g.nu_bullet();
  RingElement out = RingElement::lefschetz_power(Rational(st.smooth_total()) - codim);
  for (const auto& p : st.pairs) out *= g.labels().units_class(g.pair_label(p.pair));
  if (variant == Puncture::circ)
    for (const auto& b : st.branches) out *= g.labels().units_class(g.branch_label(b.branch));
  for (int i = 0; i < g.size(); ++i)
    out *= binomial_factor(g.labels().field_class(g.component_label(i)), nu[i], st.smooth[i]);
  return out;
}

}  // namespace

TruncatedSeries poincare_generalised_stratum_form(const ResolutionGraph& g, std::span<const long> bound,
                                                  const SeriesOptions& opts) {
  return sum_over_strata(g, bound, SeriesMode::full, opts, [&g](const Stratum& st) {
           return RingElement::lefschetz_power(-codim_F(st, g)) * stratum_class(st, g, Puncture::circ);
         }).series;
}

TruncatedSeries poincare_generalised_factored_form(const ResolutionGraph& g, std::span<const long> bound,
                                                   const SeriesOptions& opts) {
  return sum_over_strata(g, bound, SeriesMode::full, opts, [&g](const Stratum& st) {
           return factored_term(st, g, codim_F(st, g), Puncture::circ);
         }).series;
}

SeriesResult poincare_generalised(const ResolutionGraph& g, std::span<const long> bound, const SeriesOptions& opts) {
  SeriesResult result = sum_over_strata(g, bound, SeriesMode::full, opts, [&g](const Stratum& st) {
    return RingElement::lefschetz_power(-codim_F(st, g)) * stratum_class(st, g, Puncture::circ);
  });
  result.cross_form_agrees = poincare_generalised_factored_form(g, bound, opts) == result.series;
  return result;
}

SeriesResult poincare_divisorial(const ResolutionGraph& g, std::span<const long> bound, const SeriesOptions& opts) {
  return sum_over_strata(g, bound, SeriesMode::divisorial, opts, [&g](const Stratum& st) {
    return factored_term(st, g, codim_FD(st, g), Puncture::bullet);
  });
}

SeriesResult divisorial_semigroup_stratum_sum(const ResolutionGraph& g, std::span<const long> bound,
                                              const SeriesOptions& opts) {
  return sum_over_strata(g, bound, SeriesMode::divisorial, opts,
                         [&g](const Stratum& st) { return stratum_class(st, g, Puncture::bullet); });
}

}  // namespace motivic
