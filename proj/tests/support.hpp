#ifndef MOTIVIC_TEST_SUPPORT_HPP
#define MOTIVIC_TEST_SUPPORT_HPP

#include <fstream>
#include <initializer_list>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "motivic/codimension.hpp"
#include "motivic/resolution_graph.hpp"
#include "motivic/ring.hpp"

namespace testing {

inline std::string source_path(const std::string& relative) { return std::string(MOTIVIC_SOURCE_DIR) + "/" + relative; }

inline motivic::ResolutionGraph corpus(const std::string& name) {
  return motivic::ResolutionGraph::build(motivic::load_graph_description(source_path("graphs/" + name + ".json")));
}

inline motivic::ResolutionGraph graph_from(const std::string& json_text) {
  return motivic::ResolutionGraph::build(motivic::parse_graph_description(nlohmann::json::parse(json_text)));
}

inline nlohmann::json derived_values() {
  std::ifstream in(source_path("tests/data/derived_values.json"));
  return nlohmann::json::parse(in);
}

/// sum c * L^k over (k, c) pairs.
inline motivic::RingElement laurent(std::initializer_list<std::pair<long, long>> terms) {
  motivic::RingElement out;
  for (auto [k, c] : terms) out += motivic::RingElement::lefschetz_power(k).scaled(c);
  return out;
}

inline motivic::ExponentVector exps(std::initializer_list<long> v) {
  std::vector<motivic::Rational> r;
  for (long x : v) r.emplace_back(x);
  return motivic::ExponentVector(r);
}

inline motivic::Stratum smooth_stratum(std::vector<long> n) {
  motivic::Stratum st;
  st.smooth = std::move(n);
  return st;
}

}  // namespace testing

#endif
