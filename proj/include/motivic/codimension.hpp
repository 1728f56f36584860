#ifndef MOTIVIC_CODIMENSION_HPP
#define MOTIVIC_CODIMENSION_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "motivic/rational.hpp"
#include "motivic/resolution_graph.hpp"

namespace motivic {

// Exact-rational exponent vector of a series term. Ordered graded
// lexicographically (total degree, then coordinates left to right).
class ExponentVector {
public:
  ExponentVector() = default;
  explicit ExponentVector(std::size_t arity) : values_(arity, Rational(0)) {}
  explicit ExponentVector(std::vector<Rational> values) : values_(std::move(values)) {}

  std::size_t size() const { return values_.size(); }
  const Rational& operator[](std::size_t i) const { return values_[i]; }
  Rational& operator[](std::size_t i) { return values_[i]; }
  const std::vector<Rational>& values() const { return values_; }

  bool integral() const;
  /// Per-coordinate integrality.
  std::vector<bool> integrality() const;
  Rational total() const;
  bool leq(std::span<const long> bound) const;

  ExponentVector operator+(const ExponentVector& rhs) const;
  ExponentVector scaled(const Rational& k) const;
  bool operator==(const ExponentVector& rhs) const { return values_ == rhs.values_; }

  /// `t1^2*t2^(3/2)`, or `1` for the zero vector.
  std::string to_text() const;
  nlohmann::json to_json() const;
  static ExponentVector from_json(const nlohmann::json& j);

private:
  std::vector<Rational> values_;
};

struct GradedLex {
  bool operator()(const ExponentVector& a, const ExponentVector& b) const;
};

struct PairMultiplicity {
  std::size_t pair = 0;  // index into ResolutionGraph::pairs()
  long first = 1;        // n'_sigma, along E_{i1(sigma)}
  long second = 1;       // n''_sigma, along E_{i2(sigma)}
  bool operator==(const PairMultiplicity&) const = default;
};

struct BranchMultiplicity {
  int branch = 0;  // 0-based branch index
  long first = 1;  // ñ'_j
  long second = 1; // ñ''_j
  bool operator==(const BranchMultiplicity&) const = default;
};

// A stratum (I, J, n). Divisorial strata carry no branch data.
struct Stratum {
  std::vector<long> smooth;  // n_i >= 0
  std::vector<PairMultiplicity> pairs;
  std::vector<BranchMultiplicity> branches;

  bool divisorial() const { return branches.empty(); }
  long smooth_total() const;
  bool operator==(const Stratum&) const = default;
};

/// Throws std::invalid_argument when the stratum does not fit the graph or
/// violates the positivity constraints.
void validate_stratum(const Stratum& st, const ResolutionGraph& g);

/// Parses `{"n":[..], "pairs":[{"pair":[i1,i2],"n1":..,"n2":..}], "branches":[{"branch":j,"n1":..,"n2":..}]}`
/// (1-based indices).
Stratum parse_stratum(const nlohmann::json& j, const ResolutionGraph& g);
nlohmann::json stratum_to_json(const Stratum& st, const ResolutionGraph& g);

std::vector<long> nhat(const Stratum& st, const ResolutionGraph& g);

/// w = nhat . M
ExponentVector w_of(std::span<const long> nhat, const ResolutionGraph& g);
/// v_j = w_{i1(j)} + ñ''_j h_{i1(j)} for j in J, w_{i1(j)} otherwise.
ExponentVector v_of(const Stratum& st, const ResolutionGraph& g);

struct HoskinDeligne {
  Rational value;
  std::vector<Rational> alpha;  // w . P
  bool alpha_nonnegative = true;
  bool in_semigroup = true;     // nhat = -w.N is a nonnegative integer vector
  std::string diagnostic;       // empty when both checks hold
};

/// h^D(w) = 1/2 sum h_i alpha_i (alpha_i + 1) with alpha = w.P. Always
/// evaluated; the result records whether w is a valuation vector of g.
HoskinDeligne hoskin_deligne(std::span<const Rational> w, const ResolutionGraph& g);
HoskinDeligne hoskin_deligne(const ExponentVector& w, const ResolutionGraph& g);

/// deg(A.K) = nhat.1 - nhat.M.eps
Rational deg_AK(std::span<const long> nhat, const ResolutionGraph& g);
/// deg(A.A) = -nhat.M.nhat
Rational deg_AA(std::span<const long> nhat, const ResolutionGraph& g);

/// F(n) = h^D(w(n)) + sum nhat_i h_i + sum_{j in J} ñ''_j h_j
Rational codim_F(const Stratum& st, const ResolutionGraph& g);
/// F^D(n) = h^D(w(n)) + sum nhat_i h_i. Throws if the stratum has branch data.
Rational codim_FD(const Stratum& st, const ResolutionGraph& g);
/// The closed display of F(n) in terms of M, nu_bullet and h, with the
/// trailing term read as (2h_i - 1) on the outer index.
Rational codim_F_display(const Stratum& st, const ResolutionGraph& g);

}  // namespace motivic

#endif
