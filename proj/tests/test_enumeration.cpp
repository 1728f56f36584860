#include <doctest.h>

#include <algorithm>
#include <functional>

#include "motivic/series.hpp"
#include "support.hpp"

using namespace motivic;
using testing::corpus;

namespace {

std::string key(const Stratum& st) {
  std::string s = nlohmann::json(st.smooth).dump();
  for (const auto& p : st.pairs)
    s += "|p" + std::to_string(p.pair) + ":" + std::to_string(p.first) + "," + std::to_string(p.second);
  for (const auto& b : st.branches)
    s += "|b" + std::to_string(b.branch) + ":" + std::to_string(b.first) + "," + std::to_string(b.second);
  return s;
}

// Every multiplicity from 0 (or 1) up to `cap`, all subsets, filtered by the bound.
std::vector<std::string> naive(const ResolutionGraph& g, const std::vector<long>& bound, SeriesMode mode, long cap,
                               Strictness strictness) {
  std::vector<std::string> out;
  const std::size_t np = g.pairs().size();
  const int nb = mode == SeriesMode::full ? g.branch_count() : 0;
  for (std::size_t imask = 0; imask < (std::size_t{1} << np); ++imask)
    for (std::size_t jmask = 0; jmask < (std::size_t{1} << nb); ++jmask) {
      Stratum st;
      st.smooth.assign(g.size(), 0);
      for (std::size_t k = 0; k < np; ++k)
        if (imask >> k & 1U) st.pairs.push_back({k, 1, 1});
      for (int j = 0; j < nb; ++j)
        if (jmask >> j & 1U) st.branches.push_back({j, 1, 1});
      std::vector<long*> slots;
      std::vector<long> lows;
      auto slot = [&](long& x, long low) {
        slots.push_back(&x);
        lows.push_back(low);
      };
      for (auto& n : st.smooth) slot(n, 0);
      for (auto& p : st.pairs) slot(p.first, 1), slot(p.second, 1);
      for (auto& b : st.branches) slot(b.first, 1), slot(b.second, 1);
      auto value = [&] { return mode == SeriesMode::full ? v_of(st, g) : w_of(nhat(st, g), g); };
      // Values grow with every multiplicity, so a slot can stop once the
      // remaining slots at their minimum already overshoot.
      std::function<void(std::size_t)> loop = [&](std::size_t k) {
        if (k == slots.size()) {
          const ExponentVector e = value();
          if (strictness == Strictness::integral && !e.integral()) return;
          out.push_back(key(st));
          return;
        }
        for (long x = lows[k]; x <= cap; ++x) {
          *slots[k] = x;
          if (!value().leq(bound)) break;
          loop(k + 1);
        }
        *slots[k] = lows[k];
      };
      loop(0);
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> fast(const ResolutionGraph& g, const std::vector<long>& bound, SeriesMode mode,
                              Strictness strictness) {
  std::vector<std::string> out;
  for (const auto& st : enumerate_strata(g, bound, mode, strictness)) out.push_back(key(st));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("zero bound gives only the zero stratum") {
  const auto g = corpus("cusp");
  const std::vector<long> zero{0};
  const auto strata = enumerate_strata(g, zero, SeriesMode::full, Strictness::literal);
  REQUIRE(strata.size() == 1);
  CHECK(strata[0] == testing::smooth_stratum({0, 0, 0}));
}

TEST_CASE("single blowup, divisorial, bound 3") {
  const auto g = corpus("single_blowup");
  const std::vector<long> b{3};
  const auto strata = enumerate_strata(g, b, SeriesMode::divisorial, Strictness::literal);
  REQUIRE(strata.size() == 4);
  for (long n = 0; n <= 3; ++n) CHECK(strata[n].smooth == std::vector<long>{n});
}

TEST_CASE("cusp, full mode, bound 6") {
  const auto g = corpus("cusp");
  const std::vector<long> b{6};
  const auto strata = enumerate_strata(g, b, SeriesMode::full, Strictness::literal);
  CHECK(std::find(strata.begin(), strata.end(), testing::smooth_stratum({0, 0, 1})) != strata.end());
  Stratum with_branch = testing::smooth_stratum({0, 0, 0});
  with_branch.branches.push_back({0, 1, 1});
  CHECK(std::find(strata.begin(), strata.end(), with_branch) == strata.end());
}

TEST_CASE("enumeration matches nested loops") {
  struct Case {
    const char* graph;
    std::vector<long> bound;
    SeriesMode mode;
  };
  const std::vector<Case> cases = {
      {"single_blowup", {5}, SeriesMode::full},   {"single_blowup", {5}, SeriesMode::divisorial},
      {"cusp", {9}, SeriesMode::full},            {"cusp", {3, 5, 9}, SeriesMode::divisorial},
      {"chain_h12", {4}, SeriesMode::full},       {"chain_h12", {3, 4}, SeriesMode::divisorial},
      {"node", {3, 2}, SeriesMode::full},         {"y3_x5", {11}, SeriesMode::full},
      {"y5_x7", {3, 4, 7, 9, 15}, SeriesMode::divisorial},
  };
  for (const auto& c : cases) {
    const auto g = corpus(c.graph);
    const long cap = *std::max_element(c.bound.begin(), c.bound.end()) + 1;
    for (Strictness s : {Strictness::literal, Strictness::integral}) {
      CAPTURE(c.graph);
      const auto got = fast(g, c.bound, c.mode, s);
      CHECK(got == naive(g, c.bound, c.mode, cap, s));
      CHECK(std::adjacent_find(got.begin(), got.end()) == got.end());
    }
  }
}

TEST_CASE("integral mode counts what it drops") {
  const auto g = corpus("chain_h12");
  const std::vector<long> b{3, 4};
  EnumerationStats literal, integral;
  const auto all = enumerate_strata(g, b, SeriesMode::divisorial, Strictness::literal, &literal);
  const auto kept = enumerate_strata(g, b, SeriesMode::divisorial, Strictness::integral, &integral);
  CHECK(literal.non_integral_emitted > 0);
  CHECK(integral.skipped_non_integral == literal.non_integral_emitted);
  CHECK(kept.size() + integral.skipped_non_integral == all.size());
  CHECK(integral.non_integral_emitted == 0);
}

TEST_CASE("bad bounds are rejected") {
  const auto g = corpus("cusp");
  const std::vector<long> two{1, 1}, negative{-1};
  CHECK_THROWS_AS(enumerate_strata(g, two, SeriesMode::full, Strictness::literal), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_strata(g, negative, SeriesMode::full, Strictness::literal), std::invalid_argument);
  const auto bare = testing::graph_from(R"({"centers": [{"prox": []}]})");
  const std::vector<long> none;
  CHECK_THROWS_AS(enumerate_strata(bare, none, SeriesMode::full, Strictness::literal), std::invalid_argument);
}
