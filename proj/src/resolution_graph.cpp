#include "motivic/resolution_graph.hpp"

#include <algorithm>
#include <fstream>
#include <set>

namespace motivic {

namespace {

std::string join_issues(const std::vector<ValidationIssue>& issues) {
  std::string out = "invalid resolution graph:";
  for (const auto& issue : issues) out += "\n  [" + issue.code + "] " + issue.message;
  return out;
}

long positive_degree(const nlohmann::json& obj, const char* where) {
  if (!obj.contains("h")) return 1;
  const auto& h = obj.at("h");
  if (!h.is_number_integer()) throw std::invalid_argument(std::string(where) + ": 'h' must be an integer");
  return h.get<long>();
}

}  // namespace

ValidationError::ValidationError(std::vector<ValidationIssue> issues)
    : std::runtime_error(join_issues(issues)), issues_(std::move(issues)) {}

GraphDescription parse_graph_description(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("graph description must be a JSON object");
  GraphDescription d;
  if (!j.contains("centers") || !j.at("centers").is_array())
    throw std::invalid_argument("graph description needs a 'centers' array");
  for (const auto& c : j.at("centers")) {
    CenterSpec spec;
    if (c.contains("prox")) {
      for (const auto& p : c.at("prox")) {
        if (!p.is_number_integer()) throw std::invalid_argument("center 'prox' entries must be integers");
        spec.proximate_to.push_back(p.get<int>());
      }
    }
    spec.degree = positive_degree(c, "center");
    d.centers.push_back(std::move(spec));
  }
  if (j.contains("branches")) {
    for (const auto& b : j.at("branches")) {
      BranchSpec spec;
      if (!b.contains("attach") || !b.at("attach").is_number_integer())
        throw std::invalid_argument("branch needs an integer 'attach'");
      spec.attach = b.at("attach").get<int>();
      spec.degree = positive_degree(b, "branch");
      d.branches.push_back(spec);
    }
  }
  if (j.contains("labels")) {
    for (const auto& [site, label] : j.at("labels").items()) {
      if (!label.is_string()) throw std::invalid_argument("label for site '" + site + "' must be a string");
      d.labels[site] = label.get<std::string>();
    }
  }
  if (j.contains("h_sigma_overrides")) {
    for (const auto& o : j.at("h_sigma_overrides")) {
      const auto& pair = o.at("pair");
      if (!pair.is_array() || pair.size() != 2)
        throw std::invalid_argument("h_sigma override needs 'pair': [i1, i2]");
      d.h_sigma_overrides.push_back({pair[0].get<int>(), pair[1].get<int>(), positive_degree(o, "h_sigma override")});
    }
  }
  return d;
}

GraphDescription load_graph_description(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("graph file '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_graph_description(j);
}

ResolutionGraph ResolutionGraph::build(const GraphDescription& desc) {
  std::vector<ValidationIssue> errors;
  ResolutionGraph g;
  const int s = static_cast<int>(desc.centers.size());
  if (s == 0) throw ValidationError(std::vector<ValidationIssue>{{"empty", "a resolution needs at least one center"}});

  for (int i = 0; i < s; ++i) {
    const auto& c = desc.centers[i];
    const std::string who = "center " + std::to_string(i + 1);
    if (c.degree < 1) errors.push_back({"degree", who + " has non-positive degree h=" + std::to_string(c.degree)});
    g.degrees_.push_back(c.degree);
    std::set<int> seen;
    std::vector<int> prox;
    for (int p : c.proximate_to) {
      if (p < 1 || p >= i + 1) {
        errors.push_back({"proximity-order", who + ": proximity must reference earlier center (got " +
                                                 std::to_string(p) + ")"});
        continue;
      }
      if (!seen.insert(p).second) {
        errors.push_back({"proximity-duplicate", who + " lists center " + std::to_string(p) + " twice"});
        continue;
      }
      prox.push_back(p - 1);
    }
    std::sort(prox.begin(), prox.end());
    if (i > 0 && c.proximate_to.empty())
      errors.push_back({"proximity-missing", who + " is proximate to no earlier center"});
    if (prox.size() > 2)
      g.warnings_.push_back({"proximity-count", who + " is proximate to " + std::to_string(prox.size()) +
                                                     " centers (free/satellite points have at most 2)"});
    g.proximate_to_.push_back(std::move(prox));
  }
  for (int i = 0; i < s; ++i) {
    for (int p : g.proximate_to_[i]) {
      if (g.degrees_[p] >= 1 && g.degrees_[i] >= 1 && g.degrees_[i] % g.degrees_[p] != 0)
        errors.push_back({"degree-divisibility", "center " + std::to_string(i + 1) + ": h=" +
                                                     std::to_string(g.degrees_[i]) + " is not divisible by h=" +
                                                     std::to_string(g.degrees_[p]) + " of center " +
                                                     std::to_string(p + 1)});
    }
  }
  for (std::size_t j = 0; j < desc.branches.size(); ++j) {
    const auto& b = desc.branches[j];
    const std::string who = "branch " + std::to_string(j + 1);
    if (b.degree < 1) errors.push_back({"degree", who + " has non-positive degree h=" + std::to_string(b.degree)});
    if (b.attach < 1 || b.attach > s) {
      errors.push_back({"dangling-branch", who + " attaches to nonexistent component " + std::to_string(b.attach)});
    } else if (b.degree >= 1 && g.degrees_[b.attach - 1] >= 1 && b.degree % g.degrees_[b.attach - 1] != 0) {
      errors.push_back({"degree-divisibility", who + ": h=" + std::to_string(b.degree) +
                                                   " is not divisible by h=" +
                                                   std::to_string(g.degrees_[b.attach - 1]) + " of component " +
                                                   std::to_string(b.attach)});
    }
    g.branches_.push_back({b.attach - 1, b.degree});
  }
  if (!errors.empty()) throw ValidationError(std::move(errors));

  g.proximity_ = IntMatrix::identity(s);
  g.delta_ = IntMatrix(s, s);
  for (int i = 0; i < s; ++i) {
    g.delta_(i, i) = g.degrees_[i];
    for (int p : g.proximate_to_[i]) g.proximity_(p, i) = -1;
  }
  g.intersection_ = -(g.proximity_ * g.delta_ * g.proximity_.transpose());
  const IntMatrix& n = g.intersection_;

  for (int a = 0; a < s; ++a)
    for (int b = a + 1; b < s; ++b)
      if (n(a, b) < 0)
        errors.push_back({"intersection-sign", "N[" + std::to_string(a + 1) + "][" + std::to_string(b + 1) +
                                                   "] = " + n(a, b).get_str() + " is negative"});
  for (const auto& minor : leading_principal_minors(-n)) {
    if (minor <= 0) {
      errors.push_back({"not-negative-definite", "intersection matrix is not negative definite"});
      break;
    }
  }
  if (!errors.empty()) throw ValidationError(std::move(errors));

  g.m_ = bareiss_inverse(n);
  g.m_ = -g.m_;
  if (!(g.m_ * to_rational(-n) == RatMatrix::identity(s)))
    throw std::logic_error("M * (-N) != I after exact inversion");
  for (int a = 0; a < s; ++a)
    for (int b = 0; b < s; ++b)
      if (g.m_(a, b) <= 0) {
        throw ValidationError(std::vector<ValidationIssue>{
            {"disconnected",
             "exceptional components " + std::to_string(a + 1) + " and " + std::to_string(b + 1) + " are not connected"}});
      }

  for (int a = 0; a < s; ++a)
    for (int b = a + 1; b < s; ++b)
      if (n(a, b) != 0) g.pairs_.push_back({a, b, n(a, b).get_si(), false});
  for (const auto& o : desc.h_sigma_overrides) {
    int a = std::min(o.first, o.second) - 1;
    int b = std::max(o.first, o.second) - 1;
    auto it = std::find_if(g.pairs_.begin(), g.pairs_.end(),
                           [&](const IntersectionPair& p) { return p.first == a && p.second == b; });
    if (it == g.pairs_.end()) {
      errors.push_back({"override-pair", "h_sigma override for (" + std::to_string(o.first) + "," +
                                             std::to_string(o.second) + ") names components that do not meet"});
    } else if (o.degree < 1) {
      errors.push_back({"degree", "h_sigma override for (" + std::to_string(o.first) + "," +
                                      std::to_string(o.second) + ") is non-positive"});
    } else {
      it->degree = o.degree;
      it->overridden = true;
    }
  }
  if (!errors.empty()) throw ValidationError(std::move(errors));
  for (const auto& p : g.pairs_) {
    const long nab = n(p.first, p.second).get_si();
    if (nab > std::max(g.degrees_[p.first], g.degrees_[p.second]))
      g.warnings_.push_back({"multi-point-intersection",
                             "E" + std::to_string(p.first + 1) + "·E" + std::to_string(p.second + 1) + " = " +
                                 std::to_string(nab) + " exceeds both component degrees"});
  }

  g.nu_bullet_.assign(s, 0);
  g.beta_.assign(s, 0);
  g.nu_circ_.assign(s, 0);
  g.epsilon_.assign(s, 0);
  for (int i = 0; i < s; ++i) {
    for (int j = 0; j < s; ++j) {
      if (j == i || n(i, j) == 0) continue;
      g.nu_bullet_[i] += n(i, j).get_si();
      ++g.beta_[i];
    }
    long attached = std::count_if(g.branches_.begin(), g.branches_.end(),
                                  [i](const BranchSpec& b) { return b.attach == i; });
    g.nu_circ_[i] = g.nu_bullet_[i] + g.degrees_[i] * attached;
    g.epsilon_[i] = 2 * g.degrees_[i] - g.nu_bullet_[i];
    if (g.nu_bullet_[i] != g.degrees_[i] * g.beta_[i])
      g.warnings_.push_back({"nu-bullet", "component " + std::to_string(i + 1) + ": nu_bullet=" +
                                              std::to_string(g.nu_bullet_[i]) + " differs from h*beta=" +
                                              std::to_string(g.degrees_[i] * g.beta_[i])});
  }

  // Field labels: every site defaults to its own name.
  std::map<std::string, long> site_degree;
  for (int i = 0; i < s; ++i) site_degree[component_site(i)] = g.degrees_[i];
  for (const auto& p : g.pairs_) site_degree[pair_site(p.first, p.second)] = p.degree;
  for (int j = 0; j < g.branch_count(); ++j) site_degree[branch_site(j)] = g.branches_[j].degree;
  for (const auto& [site, label] : desc.labels) {
    if (!site_degree.count(site)) errors.push_back({"label-site", "label given for unknown site '" + site + "'"});
    if (label.empty()) errors.push_back({"label-empty", "empty label for site '" + site + "'"});
  }
  if (!errors.empty()) throw ValidationError(std::move(errors));
  auto label_of = [&](const std::string& site) {
    auto it = desc.labels.find(site);
    return it == desc.labels.end() ? site : it->second;
  };
  try {
    for (const auto& [site, degree] : site_degree) g.labels_.add(label_of(site), degree);
  } catch (const std::invalid_argument& e) {
    throw ValidationError(std::vector<ValidationIssue>{{"label-degree", e.what()}});
  }
  for (int i = 0; i < s; ++i) g.component_labels_.push_back(label_of(component_site(i)));
  for (const auto& p : g.pairs_) g.pair_labels_.push_back(label_of(pair_site(p.first, p.second)));
  for (int j = 0; j < g.branch_count(); ++j) g.branch_labels_.push_back(label_of(branch_site(j)));
  return g;
}

bool ResolutionGraph::totally_rational() const {
  for (long h : degrees_)
    if (h != 1) return false;
  for (const auto& p : pairs_)
    if (p.degree != 1) return false;
  for (const auto& b : branches_)
    if (b.degree != 1) return false;
  return true;
}

bool ResolutionGraph::integral_m() const {
  for (std::size_t a = 0; a < m_.rows(); ++a)
    for (std::size_t b = 0; b < m_.cols(); ++b)
      if (!is_integral(m_(a, b))) return false;
  return true;
}

IntMatrix proximity_matrix(const ResolutionGraph& g) { return g.proximity(); }
IntMatrix intersection_matrix(const ResolutionGraph& g) { return g.intersection(); }
RatMatrix m_matrix(const ResolutionGraph& g) { return g.m_matrix(); }

}  // namespace motivic
