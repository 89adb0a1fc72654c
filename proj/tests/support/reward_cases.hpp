#pragma once

// Hand-scored responses over the fixture world. Each expected reward is
// written as commonsense + hard + reflection with the item counts worked
// out by hand, in the same evaluation order the scorer uses, so the
// comparison can be exact.

#include <functional>
#include <string>
#include <vector>

#include "fixtures.hpp"

namespace reward_cases {

using namespace imagine;
using fixtures::day;

struct Case {
  std::string name;
  Query query;
  std::string response;
  double expected;
  bool format_ok;
};

inline const std::string kMarker =
    "REFLECTION(Now, I need to reflect on whether there are any errors in my reasoning above):";
inline const std::string kCloser = "The reflection is over, now IMMEDIATELY output the final answer!";

/// SFT-shaped reasoning: short reasoning, reflection, closer.
inline std::string reflective(const std::string& reasoning = "Taxis both ways; stay at the quay.") {
  return reasoning + kMarker + "No errors." + kCloser;
}

inline std::string plain() { return "Taxis both ways; stay at the quay."; }

inline std::string json(const TravelPlan& p) { return serialize_plan(p); }

inline TravelPlan edit(TravelPlan p, const std::function<void(std::vector<DayEntry>&)>& f) {
  f(p.entries);
  return p;
}

inline std::vector<Case> all() {
  using fixtures::wrap;
  const Query brill = fixtures::brill_trip();
  const Query corde = fixtures::corde_trip();
  const auto good_b = fixtures::good_brill_plan();
  const auto good_c = fixtures::good_corde_plan();
  auto with = [](Query q, const std::function<void(Query&)>& f) {
    f(q);
    return q;
  };

  std::vector<Case> v;
  // Format failures.
  v.push_back({"no open tag", brill, json(good_b), -1.0, false});
  v.push_back({"open tag not at start", brill, " <think>x</think>" + json(good_b), -1.0, false});
  v.push_back({"no close tag", brill, "<think>x" + json(good_b), -1.0, false});
  v.push_back({"empty tail", brill, "<think>x</think>", -1.0, false});
  v.push_back({"blank tail", brill, "<think>x</think> \n\t", -1.0, false});
  v.push_back({"two close tags", brill, "<think>x</think>y</think>" + json(good_b), -1.0, false});
  v.push_back({"tail is prose", brill, wrap(reflective(), "Day 1: go to Brill."), -1.0, false});
  v.push_back({"tail is an object", brill, wrap(reflective(), "{\"day\": 1}"), -1.0, false});
  v.push_back({"empty plan array", brill, wrap(reflective(), "[]"), -1.0, false});
  v.push_back({"missing key", brill,
               wrap(reflective(), "[{\"day\": 1, \"current_city\": \"Aston\"}]"), -1.0, false});
  v.push_back({"days out of order", brill,
               wrap(reflective(), json(edit(good_b, [](auto& d) { std::swap(d[0], d[1]); }))), -1.0, false});
  v.push_back({"day as string", brill,
               wrap(reflective(), "[{\"day\": \"1\", \"current_city\": \"a\", \"transportation\": \"-\", "
                                  "\"breakfast\": \"-\", \"lunch\": \"-\", \"dinner\": \"-\", "
                                  "\"attraction\": \"-\", \"accommodation\": \"-\"}]"),
               -1.0, false});

  // Well-formed, everything passes.
  v.push_back({"good brill, reflective", brill, wrap(reflective(), json(good_b)), 8.0 / 8 + 1.0 / 1 + 0.5, true});
  v.push_back({"good brill, no reflection", brill, wrap(plain(), json(good_b)), 8.0 / 8 + 1.0 / 1 - 0.5, true});
  v.push_back({"good brill, fenced", brill, wrap(reflective(), "```json\n" + json(good_b) + "\n```"),
               8.0 / 8 + 1.0 / 1 + 0.5, true});
  v.push_back({"good corde, reflective", corde, wrap(reflective(), json(good_c)), 8.0 / 8 + 1.0 / 1 + 0.5, true});
  v.push_back({"empty think", brill, wrap("", json(good_b)), 8.0 / 8 + 1.0 / 1 - 0.5, true});

  // Commonsense items.
  v.push_back({"repeated restaurant", brill,
               wrap(reflective(), json(edit(good_b, [](auto& d) { d[1].dinner = "Pier, Brill"; }))),
               7.0 / 8 + 1.0 / 1 + 0.5, true});
  // unknown restaurant: restaurant + sandbox fail
  v.push_back({"unknown restaurant", brill,
               wrap(reflective(), json(edit(good_b, [](auto& d) { d[1].lunch = "Nowhere, Brill"; }))),
               6.0 / 8 + 1.0 / 1 + 0.5, true});
  v.push_back({"restaurant in another city", brill,
               wrap(reflective(), json(edit(good_b, [](auto& d) { d[1].lunch = "Lotus, Aston"; }))),
               7.0 / 8 + 1.0 / 1 + 0.5, true});
  v.push_back({"missing lunch", brill,
               wrap(reflective(), json(edit(good_b, [](auto& d) { d[1].lunch = "-"; }))),
               7.0 / 8 + 1.0 / 1 + 0.5, true});
  v.push_back({"missing first night", brill,
               wrap(reflective(), json(edit(good_b, [](auto& d) { d[0].accommodation = "-"; }))),
               7.0 / 8 + 1.0 / 1 + 0.5, true});
  v.push_back({"bunk loft one night", brill,
               wrap(reflective(), json(edit(good_b, [](auto& d) { d[1].accommodation = "Bunk Loft, Brill"; }))),
               7.0 / 8 + 1.0 / 1 + 0.5, true});
  v.push_back({"bunk loft two nights", brill,
               wrap(reflective(), json(edit(good_b, [](auto& d) {
                      d[0].accommodation = d[1].accommodation = "Bunk Loft, Brill";
                    }))),
               8.0 / 8 + 1.0 / 1 + 0.5, true});
  // flight on the wrong leg; 2 x 200 + 30 + 102 + 240 = 772 > 600
  v.push_back({"flight on a ground leg", brill,
               wrap(reflective(), json(edit(good_b, [](auto& d) {
                      d[0].transportation = "Flight Number: F0001, from Aston to Brill";
                    }))),
               7.0 / 8 + 0.0 / 1 + 0.5, true});
  // 50 + 30 + 102 + 240 = 422
  v.push_back({"drive out, taxi back", brill,
               wrap(reflective(), json(edit(good_b, [](auto& d) {
                      d[0].transportation = "Self-driving, from Aston to Brill";
                    }))),
               8.0 / 8 + 1.0 / 1 + 0.5, true});
  v.push_back({"one day too many", brill,
               wrap(reflective(), json(edit(good_b, [](auto& d) {
                      d.push_back(day(4, "Aston", "-", "-", "-", "-", "-", "-"));
                    }))),
               7.0 / 8 + 1.0 / 1 + 0.5, true});
  // query wants Corde; the Brill plan is otherwise sound. 60 + 51 + 240 = 351.
  v.push_back({"wrong destination", corde, wrap(reflective(), json(good_b)), 7.0 / 8 + 1.0 / 1 + 0.5, true});
  v.push_back({"flights off schedule", with(corde, [](Query& q) {
                 q.date = {fixtures::d(3, 2), fixtures::d(3, 3), fixtures::d(3, 4)};
               }),
               wrap(reflective(), json(good_c)), 7.0 / 8 + 1.0 / 1 + 0.5, true});
  // flight + self-driving; 200 + 56 + 180 + 400 = 836 > 800
  v.push_back({"flight and self-driving", corde,
               wrap(reflective(), json(edit(good_c, [](auto& d) {
                      d[2].transportation = "Self-driving, from Corde to Aston";
                    }))),
               7.0 / 8 + 0.0 / 1 + 0.5, true});

  // Hard items (cost 402 for brill, 616 for corde).
  v.push_back({"over budget by one", with(brill, [](Query& q) { q.budget = 401; }),
               wrap(reflective(), json(good_b)), 8.0 / 8 + 0.0 / 1 + 0.5, true});
  v.push_back({"budget exactly met", with(brill, [](Query& q) { q.budget = 402; }),
               wrap(reflective(), json(good_b)), 8.0 / 8 + 1.0 / 1 + 0.5, true});
  v.push_back({"cuisine served", with(corde, [](Query& q) { q.local_constraint.cuisine = "Chinese"; }),
               wrap(reflective(), json(good_c)), 8.0 / 8 + 2.0 / 2 + 0.5, true});
  v.push_back({"cuisine missing", with(corde, [](Query& q) { q.local_constraint.cuisine = "Mexican"; }),
               wrap(reflective(), json(good_c)), 8.0 / 8 + 1.0 / 2 + 0.5, true});
  v.push_back({"house rule broken", with(corde, [](Query& q) { q.local_constraint.house_rule = "smoking"; }),
               wrap(reflective(), json(good_c)), 8.0 / 8 + 1.0 / 2 + 0.5, true});
  v.push_back({"house rule kept", with(corde, [](Query& q) { q.local_constraint.house_rule = "parties"; }),
               wrap(reflective(), json(good_c)), 8.0 / 8 + 2.0 / 2 + 0.5, true});
  v.push_back({"room type kept", with(corde, [](Query& q) { q.local_constraint.room_type = "not shared room"; }),
               wrap(reflective(), json(good_c)), 8.0 / 8 + 2.0 / 2 + 0.5, true});
  v.push_back({"room type broken", with(brill, [](Query& q) { q.local_constraint.room_type = "private room"; }),
               wrap(reflective(), json(good_b)), 8.0 / 8 + 1.0 / 2 + 0.5, true});
  v.push_back({"no flight, flew", with(corde, [](Query& q) { q.local_constraint.transportation = "no flight"; }),
               wrap(plain(), json(good_c)), 8.0 / 8 + 1.0 / 2 - 0.5, true});
  v.push_back({"four constraints, one broken", with(corde, [](Query& q) {
                 q.local_constraint = {"pets", "French", "entire room", "no self-driving"};
               }),
               wrap(reflective(), json(good_c)), 8.0 / 8 + 4.0 / 5 + 0.5, true});

  // Reflection detection.
  const std::string padding(300, '.');
  v.push_back({"marker early, no closer", brill, wrap(kMarker + "No errors." + padding, json(good_b)),
               8.0 / 8 + 1.0 / 1 - 0.5, true});
  v.push_back({"marker late, no closer", brill, wrap(padding + kMarker + "Errors exist: none found.", json(good_b)),
               8.0 / 8 + 1.0 / 1 + 0.5, true});
  v.push_back({"bare marker at end", brill, wrap(padding + "REFLECTION:", json(good_b)),
               8.0 / 8 + 1.0 / 1 - 0.5, true});
  v.push_back({"short think, full structure", brill, wrap(reflective("ok."), json(good_b)),
               8.0 / 8 + 1.0 / 1 + 0.5, true});
  return v;
}

}  // namespace reward_cases
