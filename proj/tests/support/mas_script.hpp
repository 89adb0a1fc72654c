#pragma once

// Scripted three-role setup on the fixture world, shared by the protocol
// tests and the acceptance run.

#include <memory>
#include <string>

#include "fixtures.hpp"
#include "imagine/mas.hpp"
#include "imagine/query_gen.hpp"

namespace mas_script {

using namespace imagine;

inline const std::string kThink = "Taxi out and back, two nights at Quay House.";

inline std::string reasoner_reply() { return "<think>" + kThink + "</think>\n" + serialize_plan(fixtures::good_brill_plan()); }

inline TravelPlan corrected_plan() {
  auto p = fixtures::good_brill_plan();
  p.entries[0].transportation = "Self-driving, from Aston to Brill";
  return p;
}

inline std::string reflector_reply() {
  return "Day 1 should drive so the car is available later.\nFinal answer:\n" + serialize_plan(corrected_plan());
}

inline MasBackends scripted(const std::string& j1, const std::string& j2, const std::string& reflection = reflector_reply()) {
  return MasBackends{std::make_shared<ScriptedBackend>(std::vector<std::string>{reasoner_reply()}),
                     {std::make_shared<ScriptedBackend>(std::vector<std::string>{j1}),
                      std::make_shared<ScriptedBackend>(std::vector<std::string>{j2})},
                     std::make_shared<ScriptedBackend>(std::vector<std::string>{reflection})};
}

inline MasTrace run_fixture(const MasBackends& b, MasOptions opt = {}) {
  const auto q = fixtures::brill_trip();
  return run_mas(q, build_reference_information(fixtures::world(), q), b, opt);
}

inline std::string expected_completion(const std::string& middle, const std::string& answer) {
  return "<think>" + kThink +
         "REFLECTION(Now, I need to reflect on whether there are any errors in my reasoning above):" + middle +
         "The reflection is over, now IMMEDIATELY output the final answer!</think>" + answer;
}

}  // namespace mas_script
