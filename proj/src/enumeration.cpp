#include <stdexcept>

#include "motivic/series.hpp"

namespace motivic {

namespace {

enum class Slot { smooth, pair_first, pair_second, branch_first, branch_second };

struct Variable {
  Slot slot;
  std::size_t index;  // component, position in stratum.pairs, or position in stratum.branches
  long minimum;
  ExponentVector step;  // exponent increase per unit
};

// Exponent contribution of one unit of nhat_i.
ExponentVector nhat_step(const ResolutionGraph& g, int component, SeriesMode mode) {
  const auto& m = g.m_matrix();
  if (mode == SeriesMode::divisorial) {
    ExponentVector e(g.size());
    for (int k = 0; k < g.size(); ++k) e[k] = m(component, k);
    return e;
  }
  ExponentVector e(g.branch_count());
  for (int j = 0; j < g.branch_count(); ++j) e[j] = m(component, g.branch(j).attach);
  return e;
}

class Enumerator {
public:
  Enumerator(const ResolutionGraph& g, std::span<const long> bound, SeriesMode mode, Strictness strictness,
             const std::function<void(const Stratum&, const ExponentVector&)>& visit)
      : g_(g), bound_(bound), mode_(mode), strictness_(strictness), visit_(visit) {}

  EnumerationStats run() {
    const std::size_t pair_count = g_.pairs().size();
    const std::size_t branch_subsets = mode_ == SeriesMode::full ? (std::size_t{1} << g_.branch_count()) : 1;
    for (std::size_t imask = 0; imask < (std::size_t{1} << pair_count); ++imask)
      for (std::size_t jmask = 0; jmask < branch_subsets; ++jmask) run_subsets(imask, jmask);
    return stats_;
  }

private:
  void run_subsets(std::size_t imask, std::size_t jmask) {
    vars_.clear();
    current_ = Stratum{};
    current_.smooth.assign(g_.size(), 0);
    for (int i = 0; i < g_.size(); ++i) vars_.push_back({Slot::smooth, std::size_t(i), 0, nhat_step(g_, i, mode_)});
    for (std::size_t k = 0; k < g_.pairs().size(); ++k) {
      if (!(imask >> k & 1U)) continue;
      const auto& pr = g_.pairs()[k];
      const std::size_t pos = current_.pairs.size();
      current_.pairs.push_back({k, 1, 1});
      vars_.push_back({Slot::pair_first, pos, 1, nhat_step(g_, pr.first, mode_)});
      vars_.push_back({Slot::pair_second, pos, 1, nhat_step(g_, pr.second, mode_)});
    }
    for (int j = 0; j < g_.branch_count(); ++j) {
      if (!(jmask >> j & 1U)) continue;
      const std::size_t pos = current_.branches.size();
      current_.branches.push_back({j, 1, 1});
      const int attach = g_.branch(j).attach;
      vars_.push_back({Slot::branch_first, pos, 1, nhat_step(g_, attach, mode_)});
      ExponentVector only_j(g_.branch_count());
      only_j[j] = g_.degree(attach);
      vars_.push_back({Slot::branch_second, pos, 1, only_j});
    }
    const std::size_t arity = bound_.size();
    suffix_min_.assign(vars_.size() + 1, ExponentVector(arity));
    for (std::size_t k = vars_.size(); k-- > 0;)
      suffix_min_[k] = suffix_min_[k + 1] + vars_[k].step.scaled(vars_[k].minimum);
    if (!suffix_min_[0].leq(bound_)) return;
    recurse(0, ExponentVector(arity));
  }

  void set(const Variable& v, long value) {
    switch (v.slot) {
      case Slot::smooth: current_.smooth[v.index] = value; break;
      case Slot::pair_first: current_.pairs[v.index].first = value; break;
      case Slot::pair_second: current_.pairs[v.index].second = value; break;
      case Slot::branch_first: current_.branches[v.index].first = value; break;
      case Slot::branch_second: current_.branches[v.index].second = value; break;
    }
  }

  void recurse(std::size_t level, const ExponentVector& partial) {
    if (level == vars_.size()) {
      emit(partial);
      return;
    }
    const Variable& v = vars_[level];
    ExponentVector chosen = partial + v.step.scaled(v.minimum);
    for (long x = v.minimum;; ++x) {
      if (!(chosen + suffix_min_[level + 1]).leq(bound_)) break;
      set(v, x);
      recurse(level + 1, chosen);
      chosen = chosen + v.step;
    }
    set(v, v.minimum);
  }

  void emit(const ExponentVector& exponent) {
    if (!exponent.integral()) {
      if (strictness_ == Strictness::integral) {
        ++stats_.skipped_non_integral;
        return;
      }
      ++stats_.non_integral_emitted;
    }
    ++stats_.emitted;
    visit_(current_, exponent);
  }

  const ResolutionGraph& g_;
  std::span<const long> bound_;
  SeriesMode mode_;
  Strictness strictness_;
  const std::function<void(const Stratum&, const ExponentVector&)>& visit_;
  std::vector<Variable> vars_;
  std::vector<ExponentVector> suffix_min_;
  Stratum current_;
  EnumerationStats stats_;
};

}  // namespace

EnumerationStats for_each_stratum(const ResolutionGraph& g, std::span<const long> bound, SeriesMode mode,
                                  Strictness strictness,
                                  const std::function<void(const Stratum&, const ExponentVector&)>& visit) {
  const std::size_t arity = mode == SeriesMode::full ? g.branch_count() : g.size();
  if (bound.size() != arity)
    throw std::invalid_argument("bound has " + std::to_string(bound.size()) + " entries, series has " +
                                std::to_string(arity) + " variables");
  if (arity == 0) throw std::invalid_argument("the branch series needs at least one branch");
  for (long b : bound)
    if (b < 0) throw std::invalid_argument("bounds must be nonnegative");
  return Enumerator(g, bound, mode, strictness, visit).run();
}

std::vector<Stratum> enumerate_strata(const ResolutionGraph& g, std::span<const long> bound, SeriesMode mode,
                                      Strictness strictness, EnumerationStats* stats) {
  std::vector<Stratum> out;
  auto st = for_each_stratum(g, bound, mode, strictness,
                             [&out](const Stratum& s, const ExponentVector&) { out.push_back(s); });
  if (stats) *stats = st;
  return out;
}

}  // namespace motivic
