#ifndef MOTIVIC_RESOLUTION_GRAPH_HPP
#define MOTIVIC_RESOLUTION_GRAPH_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "motivic/matrix.hpp"
#include "motivic/ring.hpp"

namespace motivic {

// Input records use 1-based indices as in a blowup sequence; the built graph
// stores everything 0-based.

struct CenterSpec {
  std::vector<int> proximate_to;  // earlier centers this one is proximate to
  long degree = 1;                // h_i = [k_i : k_R]
};

struct BranchSpec {
  int attach = 0;   // exceptional component met by the strict transform
  long degree = 1;  // h_j
};

struct PairOverride {
  int first = 0;
  int second = 0;
  long degree = 1;
};

struct GraphDescription {
  std::vector<CenterSpec> centers;
  std::vector<BranchSpec> branches;
  std::map<std::string, std::string> labels;  // site -> field label
  std::vector<PairOverride> h_sigma_overrides;
};

/// Parses the graph JSON schema (keys `centers`, `branches`, `labels`,
/// `h_sigma_overrides`). Throws std::invalid_argument on schema errors.
GraphDescription parse_graph_description(const nlohmann::json& j);
GraphDescription load_graph_description(const std::string& path);

struct ValidationIssue {
  std::string code;
  std::string message;
};

class ValidationError : public std::runtime_error {
public:
  explicit ValidationError(std::vector<ValidationIssue> issues);
  const std::vector<ValidationIssue>& issues() const { return issues_; }

private:
  std::vector<ValidationIssue> issues_;
};

/// An intersection point P_sigma = E_first ∩ E_second, first < second.
struct IntersectionPair {
  int first = 0;
  int second = 0;
  long degree = 1;  // h_sigma, N[first][second] unless overridden
  bool overridden = false;
};

class ResolutionGraph {
public:
  /// Validates the description and derives P, Delta, N, M and the
  /// neighbour data. Throws ValidationError listing every offending index.
  static ResolutionGraph build(const GraphDescription& desc);

  int size() const { return static_cast<int>(degrees_.size()); }
  int branch_count() const { return static_cast<int>(branches_.size()); }
  long degree(int i) const { return degrees_[i]; }
  const std::vector<long>& degrees() const { return degrees_; }
  const std::vector<std::vector<int>>& proximities() const { return proximate_to_; }
  const BranchSpec& branch(int j) const { return branches_[j]; }
  const std::vector<BranchSpec>& branches() const { return branches_; }  // attach is 0-based here

  const IntMatrix& proximity() const { return proximity_; }
  const IntMatrix& delta() const { return delta_; }
  const IntMatrix& intersection() const { return intersection_; }
  const RatMatrix& m_matrix() const { return m_; }

  const std::vector<IntersectionPair>& pairs() const { return pairs_; }
  const std::vector<long>& nu_bullet() const { return nu_bullet_; }
  const std::vector<long>& nu_circ() const { return nu_circ_; }
  const std::vector<long>& beta() const { return beta_; }
  const std::vector<long>& epsilon() const { return epsilon_; }

  /// Non-fatal findings (multi-point intersections, nu != h*beta, more than
  /// two proximities).
  const std::vector<ValidationIssue>& warnings() const { return warnings_; }

  bool totally_rational() const;
  /// True when every entry of M is an integer.
  bool integral_m() const;

  const LabelRegistry& labels() const { return labels_; }
  const std::string& component_label(int i) const { return component_labels_[i]; }
  const std::string& pair_label(std::size_t k) const { return pair_labels_[k]; }
  const std::string& branch_label(int j) const { return branch_labels_[j]; }

  static std::string component_site(int i) { return "E" + std::to_string(i + 1); }
  static std::string pair_site(int a, int b) {
    return "P" + std::to_string(a + 1) + "_" + std::to_string(b + 1);
  }
  static std::string branch_site(int j) { return "B" + std::to_string(j + 1); }

private:
  std::vector<long> degrees_;
  std::vector<std::vector<int>> proximate_to_;
  std::vector<BranchSpec> branches_;
  IntMatrix proximity_, delta_, intersection_;
  RatMatrix m_;
  std::vector<IntersectionPair> pairs_;
  std::vector<long> nu_bullet_, nu_circ_, beta_, epsilon_;
  std::vector<ValidationIssue> warnings_;
  LabelRegistry labels_;
  std::vector<std::string> component_labels_, pair_labels_, branch_labels_;
};

IntMatrix proximity_matrix(const ResolutionGraph& g);
IntMatrix intersection_matrix(const ResolutionGraph& g);
RatMatrix m_matrix(const ResolutionGraph& g);

}  // namespace motivic

#endif
