#include "motivic/codimension.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace motivic {

bool ExponentVector::integral() const {
  return std::all_of(values_.begin(), values_.end(), [](const Rational& q) { return is_integral(q); });
}

std::vector<bool> ExponentVector::integrality() const {
  std::vector<bool> out;
  for (const auto& q : values_) out.push_back(is_integral(q));
  return out;
}

Rational ExponentVector::total() const {
  Rational t = 0;
  for (const auto& q : values_) t += q;
  return t;
}

bool ExponentVector::leq(std::span<const long> bound) const {
  if (bound.size() != values_.size()) throw std::invalid_argument("bound arity mismatch");
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (values_[i] > bound[i]) return false;
  return true;
}

ExponentVector ExponentVector::operator+(const ExponentVector& rhs) const {
  if (rhs.size() != size()) throw std::invalid_argument("exponent arity mismatch");
  ExponentVector out(*this);
  for (std::size_t i = 0; i < size(); ++i) out.values_[i] += rhs.values_[i];
  return out;
}

ExponentVector ExponentVector::scaled(const Rational& k) const {
  ExponentVector out(*this);
  for (auto& q : out.values_) q *= k;
  return out;
}

std::string ExponentVector::to_text() const {
  std::string out;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const Rational& e = values_[i];
    if (e == 0) continue;
    if (!out.empty()) out += '*';
    out += "t" + std::to_string(i + 1);
    if (e == 1) continue;
    if (is_integral(e)) out += "^" + to_string(e);
    else out += "^(" + to_string(e) + ")";
  }
  return out.empty() ? "1" : out;
}

nlohmann::json ExponentVector::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& q : values_) {
    if (is_integral(q) && q.get_num().fits_slong_p()) arr.push_back(q.get_num().get_si());
    else arr.push_back(to_string(q));
  }
  return arr;
}

ExponentVector ExponentVector::from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw std::invalid_argument("exponent vector JSON must be an array");
  std::vector<Rational> v;
  for (const auto& e : j) {
    if (e.is_number_integer()) v.emplace_back(static_cast<long>(e.get<long long>()));
    else if (e.is_string()) v.push_back(parse_rational(e.get<std::string>()));
    else throw std::invalid_argument("exponent entries must be integers or fraction strings");
  }
  return ExponentVector(std::move(v));
}

bool GradedLex::operator()(const ExponentVector& a, const ExponentVector& b) const {
  Rational ta = a.total(), tb = b.total();
  if (ta != tb) return ta < tb;
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i)
    if (a[i] != b[i]) return a[i] < b[i];
  return a.size() < b.size();
}

long Stratum::smooth_total() const { return std::accumulate(smooth.begin(), smooth.end(), 0L); }

void validate_stratum(const Stratum& st, const ResolutionGraph& g) {
  if (static_cast<int>(st.smooth.size()) != g.size())
    throw std::invalid_argument("stratum has " + std::to_string(st.smooth.size()) + " smooth multiplicities, graph has " +
                                std::to_string(g.size()) + " components");
  for (std::size_t i = 0; i < st.smooth.size(); ++i)
    if (st.smooth[i] < 0) throw std::invalid_argument("n_" + std::to_string(i + 1) + " is negative");
  std::vector<bool> seen_pair(g.pairs().size(), false);
  for (const auto& p : st.pairs) {
    if (p.pair >= g.pairs().size()) throw std::invalid_argument("stratum references a nonexistent intersection pair");
    if (seen_pair[p.pair]) throw std::invalid_argument("intersection pair listed twice in stratum");
    seen_pair[p.pair] = true;
    if (p.first <= 0 || p.second <= 0)
      throw std::invalid_argument("n'_sigma and n''_sigma must be positive for sigma in I");
  }
  std::vector<bool> seen_branch(g.branch_count(), false);
  for (const auto& b : st.branches) {
    if (b.branch < 0 || b.branch >= g.branch_count())
      throw std::invalid_argument("stratum references nonexistent branch " + std::to_string(b.branch + 1));
    if (seen_branch[b.branch]) throw std::invalid_argument("branch listed twice in stratum");
    seen_branch[b.branch] = true;
    if (b.first <= 0 || b.second <= 0) throw std::invalid_argument("ñ'_j and ñ''_j must be positive for j in J");
  }
}

Stratum parse_stratum(const nlohmann::json& j, const ResolutionGraph& g) {
  Stratum st;
  st.smooth.assign(g.size(), 0);
  if (j.contains("n")) {
    const auto& n = j.at("n");
    if (!n.is_array() || static_cast<int>(n.size()) != g.size())
      throw std::invalid_argument("stratum 'n' must list one multiplicity per component");
    for (int i = 0; i < g.size(); ++i) st.smooth[i] = n[i].get<long>();
  }
  if (j.contains("pairs")) {
    for (const auto& p : j.at("pairs")) {
      const auto& pr = p.at("pair");
      int a = std::min(pr.at(0).get<int>(), pr.at(1).get<int>()) - 1;
      int b = std::max(pr.at(0).get<int>(), pr.at(1).get<int>()) - 1;
      auto it = std::find_if(g.pairs().begin(), g.pairs().end(),
                             [&](const IntersectionPair& q) { return q.first == a && q.second == b; });
      if (it == g.pairs().end())
        throw std::invalid_argument("components " + std::to_string(a + 1) + " and " + std::to_string(b + 1) +
                                    " do not meet");
      st.pairs.push_back({static_cast<std::size_t>(it - g.pairs().begin()), p.at("n1").get<long>(),
                          p.at("n2").get<long>()});
    }
  }
  if (j.contains("branches")) {
    for (const auto& b : j.at("branches"))
      st.branches.push_back({b.at("branch").get<int>() - 1, b.at("n1").get<long>(), b.at("n2").get<long>()});
  }
  std::sort(st.pairs.begin(), st.pairs.end(), [](const auto& x, const auto& y) { return x.pair < y.pair; });
  std::sort(st.branches.begin(), st.branches.end(), [](const auto& x, const auto& y) { return x.branch < y.branch; });
  validate_stratum(st, g);
  return st;
}

nlohmann::json stratum_to_json(const Stratum& st, const ResolutionGraph& g) {
  nlohmann::json j;
  j["n"] = st.smooth;
  j["pairs"] = nlohmann::json::array();
  for (const auto& p : st.pairs) {
    const auto& pr = g.pairs()[p.pair];
    j["pairs"].push_back({{"pair", {pr.first + 1, pr.second + 1}}, {"n1", p.first}, {"n2", p.second}});
  }
  j["branches"] = nlohmann::json::array();
  for (const auto& b : st.branches) j["branches"].push_back({{"branch", b.branch + 1}, {"n1", b.first}, {"n2", b.second}});
  return j;
}

std::vector<long> nhat(const Stratum& st, const ResolutionGraph& g) {
  std::vector<long> out = st.smooth;
  out.resize(g.size(), 0);
  for (const auto& p : st.pairs) {
    const auto& pr = g.pairs()[p.pair];
    out[pr.first] += p.first;
    out[pr.second] += p.second;
  }
  for (const auto& b : st.branches) out[g.branch(b.branch).attach] += b.first;
  return out;
}

ExponentVector w_of(std::span<const long> nh, const ResolutionGraph& g) {
  const auto& m = g.m_matrix();
  ExponentVector w(g.size());
  for (int i = 0; i < g.size(); ++i) {
    if (nh[i] == 0) continue;
    for (int k = 0; k < g.size(); ++k) w[k] += nh[i] * m(i, k);
  }
  return w;
}

ExponentVector v_of(const Stratum& st, const ResolutionGraph& g) {
  const auto nh = nhat(st, g);
  const ExponentVector w = w_of(nh, g);
  ExponentVector v(g.branch_count());
  for (int j = 0; j < g.branch_count(); ++j) v[j] = w[g.branch(j).attach];
  for (const auto& b : st.branches) {
    const int i = g.branch(b.branch).attach;
    v[b.branch] += b.second * g.degree(i);
  }
  return v;
}

HoskinDeligne hoskin_deligne(std::span<const Rational> w, const ResolutionGraph& g) {
  const int s = g.size();
  if (static_cast<int>(w.size()) != s) throw std::invalid_argument("valuation vector arity mismatch");
  HoskinDeligne out;
  out.alpha.assign(s, Rational(0));
  const auto& p = g.proximity();
  for (int k = 0; k < s; ++k)
    for (int i = 0; i < s; ++i)
      if (p(i, k) != 0) out.alpha[k] += w[i] * Rational(p(i, k));
  Rational twice = 0;
  for (int i = 0; i < s; ++i) {
    twice += g.degree(i) * out.alpha[i] * (out.alpha[i] + 1);
    if (out.alpha[i] < 0) out.alpha_nonnegative = false;
  }
  out.value = twice / 2;

  const auto& n = g.intersection();
  for (int k = 0; k < s && out.in_semigroup; ++k) {
    Rational nk = 0;
    for (int i = 0; i < s; ++i) nk -= w[i] * Rational(n(i, k));
    if (nk < 0 || !is_integral(nk)) out.in_semigroup = false;
  }
  if (!out.alpha_nonnegative) out.diagnostic = "w not a valuation vector of the graph (negative alpha)";
  else if (!out.in_semigroup) out.diagnostic = "w not a valuation vector of the graph (outside the divisorial semigroup)";
  return out;
}

HoskinDeligne hoskin_deligne(const ExponentVector& w, const ResolutionGraph& g) {
  return hoskin_deligne(std::span<const Rational>(w.values()), g);
}

Rational deg_AK(std::span<const long> nh, const ResolutionGraph& g) {
  const auto& m = g.m_matrix();
  Rational out = 0;
  for (int i = 0; i < g.size(); ++i) {
    if (nh[i] == 0) continue;
    out += nh[i];
    for (int k = 0; k < g.size(); ++k) out -= nh[i] * m(i, k) * g.epsilon()[k];
  }
  return out;
}

Rational deg_AA(std::span<const long> nh, const ResolutionGraph& g) {
  const auto& m = g.m_matrix();
  Rational out = 0;
  for (int i = 0; i < g.size(); ++i)
    for (int k = 0; k < g.size(); ++k)
      if (nh[i] != 0 && nh[k] != 0) out -= nh[i] * m(i, k) * nh[k];
  return out;
}

namespace {

Rational weighted_nhat(std::span<const long> nh, const ResolutionGraph& g) {
  Rational out = 0;
  for (int i = 0; i < g.size(); ++i) out += nh[i] * g.degree(i);
  return out;
}

}  // namespace

Rational codim_F(const Stratum& st, const ResolutionGraph& g) {
  const auto nh = nhat(st, g);
  Rational f = hoskin_deligne(w_of(nh, g), g).value + weighted_nhat(nh, g);
  for (const auto& b : st.branches) f += b.second * g.branch(b.branch).degree;
  return f;
}

Rational codim_FD(const Stratum& st, const ResolutionGraph& g) {
  if (!st.divisorial()) throw std::invalid_argument("divisorial codimension of a stratum with branch data");
  const auto nh = nhat(st, g);
  return hoskin_deligne(w_of(nh, g), g).value + weighted_nhat(nh, g);
}

Rational codim_F_display(const Stratum& st, const ResolutionGraph& g) {
  const auto nh = nhat(st, g);
  const auto& m = g.m_matrix();
  const int s = g.size();
  Rational quad = 0, lin = 0;
  for (int i = 0; i < s; ++i) {
    if (nh[i] == 0) continue;
    Rational inner = 0;
    for (int k = 0; k < s; ++k) {
      quad += m(i, k) * nh[i] * nh[k];
      inner += m(i, k) * (2 * g.degree(k) - g.nu_bullet()[k]);
    }
    lin += nh[i] * (inner + (2 * g.degree(i) - 1));
  }
  Rational f = (quad + lin) / 2;
  for (const auto& b : st.branches) f += b.second * g.branch(b.branch).degree;
  return f;
}

}  // namespace motivic
