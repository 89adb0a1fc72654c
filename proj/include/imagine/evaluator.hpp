#pragma once

// Rule-based plan checker and batch metric aggregation.
//
// Check semantics (all decided per plan, no partial credit):
//   is reasonable visiting city   the chain of current_city values starts and
//                                 ends at the origin and visits exactly the
//                                 query destinations, in order, without gaps
//   is valid restaurant           every meal resolves to a restaurant in the
//                                 city it names; no restaurant used twice
//   is valid attraction           same for attractions; none repeated
//   is valid accommodation        every stay resolves in its city; each
//                                 consecutive run at one place lasts at
//                                 least that place's min_nights
//   is valid transportation       travel days cite a link that exists for
//                                 that leg (flights: number, leg and date);
//                                 other days cite none; flight and
//                                 self-driving are never mixed
//   is valid information in the   every cited place lies in that day's
//   current city                  city (either end on a travel day; the
//                                 arrival city for accommodation)
//   is valid information in the   every cited city, place and flight number
//   sandbox                       resolves to a sandbox record
//   is not absent                 one entry per query day; transport on
//                                 travel days; three meals on non-travel days
//                                 and a stay on every non-final night,
//                                 wherever the city offers any option
// Hard checks apply only when the query imposes them; the cost check always
// applies. See plan_cost() for the cost model.

#include <array>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "imagine/plan.hpp"
#include "imagine/query.hpp"
#include "imagine/sandbox.hpp"
#include "imagine/util/errors.hpp"
#include "imagine/util/expected.hpp"
#include "imagine/util/json_io.hpp"

namespace imagine {

inline constexpr std::array<std::string_view, 8> kCommonsenseChecks = {
    "is reasonable visiting city",
    "is valid restaurant",
    "is valid attraction",
    "is valid accommodation",
    "is valid transportation",
    "is valid information in the current city",
    "is valid information in the sandbox",
    "is not absent"};

inline constexpr std::array<std::string_view, 5> kHardChecks = {
    "is valid cuisine", "is valid room rule", "is valid transportation", "is valid room type",
    "is valid cost"};

/// Vacuous (not imposed) hard checks report applicable=false, passed=true.
struct ConstraintResult {
  std::string name;
  bool applicable = true;
  bool passed = false;
  std::string detail;
  bool operator==(const ConstraintResult&) const = default;
};

struct EvalConventions {
  /// When true the hard micro denominator is all five checks and vacuous
  /// ones count as passed; otherwise only imposed checks are counted.
  bool count_vacuous_hard = false;
};

struct EvalReport {
  std::string query_id;
  bool delivered = false;
  std::array<ConstraintResult, 8> commonsense;
  std::array<ConstraintResult, 5> hard;
  int commonsense_passed = 0;
  int commonsense_total = 0;
  int hard_passed = 0;
  int hard_total = 0;
  double commonsense_micro = 0;
  bool commonsense_macro_pass = false;
  double hard_micro = 0;
  bool hard_macro_pass = false;
  bool final_pass = false;
};

/// The six aggregate criteria, as fractions in [0, 1].
struct Criteria {
  double delivery_rate = 0;
  double commonsense_micro = 0;
  double commonsense_macro = 0;
  double hard_micro = 0;
  double hard_macro = 0;
  double final_pass_rate = 0;
  bool operator==(const Criteria&) const = default;
};

struct BatchReport {
  std::vector<EvalReport> rows;
  Criteria criteria;
};

namespace detail {

template <class T>
struct Cited {
  bool absent = true;
  std::optional<T> value;  // empty when present but malformed
};

struct DayView {
  std::optional<CityField> city;
  Cited<TransportRef> transport;
  std::array<Cited<PlaceRef>, 3> meals;
  Cited<std::vector<PlaceRef>> attractions;
  Cited<PlaceRef> stay;

  std::vector<std::string> cities() const {
    if (!city) return {};
    if (city->from) return {*city->from, city->to};
    return {city->to};
  }
  bool transit() const { return city && city->is_transit(); }
};

template <class T, class F>
Cited<T> cite(const std::string& field, F parse) {
  Cited<T> c;
  if (is_absent(field)) return c;
  c.absent = false;
  if (auto v = parse(field)) c.value = std::move(*v);
  return c;
}

inline std::vector<DayView> view_plan(const TravelPlan& plan) {
  std::vector<DayView> out;
  for (const auto& e : plan.entries) {
    DayView v;
    v.city = parse_current_city(e.current_city);
    v.transport = cite<TransportRef>(e.transportation, parse_transportation);
    v.meals[0] = cite<PlaceRef>(e.breakfast, parse_place);
    v.meals[1] = cite<PlaceRef>(e.lunch, parse_place);
    v.meals[2] = cite<PlaceRef>(e.dinner, parse_place);
    v.attractions = cite<std::vector<PlaceRef>>(e.attraction, parse_place_list);
    v.stay = cite<PlaceRef>(e.accommodation, parse_place);
    out.push_back(std::move(v));
  }
  return out;
}

inline bool contains(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

inline ConstraintResult verdict(std::string_view name, std::string failure) {
  ConstraintResult r{std::string(name), true, failure.empty(), std::move(failure)};
  if (r.passed) r.detail = "ok";
  return r;
}

inline const TransportLink* find_link(const Sandbox& sb, TransportMode mode, const std::string& from,
                                      const std::string& to) {
  const TransportLink* best = nullptr;
  for (const auto& l : sb.links)
    if (l.mode == mode && l.origin == from && l.destination == to && (!best || l.cost < best->cost))
      best = &l;
  return best;
}

inline std::string day_tag(std::size_t i) { return "day " + std::to_string(i + 1) + ": "; }

}  // namespace detail

/// Total plan cost: flights cost x people, taxi and self-driving per group,
/// meals avg_cost x people, each cited night price x rooms where
/// rooms = ceil(people / max_occupancy). Unresolvable items cost nothing.
inline long plan_cost(const Sandbox& sb, const Query& q, const TravelPlan& plan) {
  long total = 0;
  for (const auto& v : detail::view_plan(plan)) {
    if (v.transport.value) {
      const auto& t = *v.transport.value;
      if (t.mode == TransportMode::Flight) {
        if (const auto* l = sb.find_flight(*t.flight_number))
          total += static_cast<long>(l->cost) * q.people_number;
      } else if (const auto* l = detail::find_link(sb, t.mode, t.from, t.to)) {
        total += l->cost;
      }
    }
    for (const auto& m : v.meals)
      if (m.value)
        if (const auto* r = sb.find_restaurant(m.value->name, m.value->city))
          total += static_cast<long>(r->avg_cost) * q.people_number;
    if (v.stay.value)
      if (const auto* a = sb.find_accommodation(v.stay.value->name, v.stay.value->city))
        total += static_cast<long>(a->price_per_night) * a->rooms_for(q.people_number);
  }
  return total;
}

inline std::array<ConstraintResult, 8> check_commonsense(const Sandbox& sb, const Query& q,
                                                         const TravelPlan& plan) {
  using detail::verdict;
  const auto days = detail::view_plan(plan);
  std::array<ConstraintResult, 8> out;

  // is reasonable visiting city
  {
    std::string fail;
    std::vector<std::string> chain;
    for (std::size_t i = 0; i < days.size() && fail.empty(); ++i) {
      const auto& c = days[i].city;
      if (!c) {
        fail = detail::day_tag(i) + "no current city";
        break;
      }
      const std::string& start = c->from ? *c->from : c->to;
      if (chain.empty()) chain.push_back(start);
      if (start != chain.back()) fail = detail::day_tag(i) + "discontinuous route";
      else if (c->from) chain.push_back(c->to);
    }
    if (fail.empty()) {
      std::vector<std::string> expected = {q.origin};
      expected.insert(expected.end(), q.destination.begin(), q.destination.end());
      expected.push_back(q.origin);
      if (chain != expected) fail = "visited cities do not match the requested itinerary";
    }
    out[0] = verdict(kCommonsenseChecks[0], fail);
  }

  // is valid restaurant
  {
    std::string fail;
    std::set<std::pair<std::string, std::string>> used;
    for (std::size_t i = 0; i < days.size() && fail.empty(); ++i) {
      for (const auto& m : days[i].meals) {
        if (m.absent) continue;
        if (!m.value) { fail = detail::day_tag(i) + "malformed meal"; break; }
        if (!sb.find_restaurant(m.value->name, m.value->city)) {
          fail = detail::day_tag(i) + "unknown restaurant " + format_place(*m.value);
          break;
        }
        if (!used.insert({m.value->name, m.value->city}).second) {
          fail = detail::day_tag(i) + "repeated restaurant " + format_place(*m.value);
          break;
        }
      }
    }
    out[1] = verdict(kCommonsenseChecks[1], fail);
  }

  // is valid attraction
  {
    std::string fail;
    std::set<std::pair<std::string, std::string>> used;
    for (std::size_t i = 0; i < days.size() && fail.empty(); ++i) {
      const auto& a = days[i].attractions;
      if (a.absent) continue;
      if (!a.value) { fail = detail::day_tag(i) + "malformed attraction list"; break; }
      for (const auto& p : *a.value) {
        if (!sb.find_attraction(p.name, p.city)) {
          fail = detail::day_tag(i) + "unknown attraction " + format_place(p);
          break;
        }
        if (!used.insert({p.name, p.city}).second) {
          fail = detail::day_tag(i) + "repeated attraction " + format_place(p);
          break;
        }
      }
    }
    out[2] = verdict(kCommonsenseChecks[2], fail);
  }

  // is valid accommodation
  {
    std::string fail;
    std::size_t i = 0;
    while (i < days.size() && fail.empty()) {
      const auto& s = days[i].stay;
      if (s.absent) { ++i; continue; }
      if (!s.value) { fail = detail::day_tag(i) + "malformed accommodation"; break; }
      const auto* acc = sb.find_accommodation(s.value->name, s.value->city);
      if (!acc) { fail = detail::day_tag(i) + "unknown accommodation " + format_place(*s.value); break; }
      std::size_t j = i + 1;
      while (j < days.size() && days[j].stay.value && *days[j].stay.value == *s.value) ++j;
      const int nights = static_cast<int>(j - i);
      if (nights < acc->min_nights)
        fail = detail::day_tag(i) + format_place(*s.value) + " requires " +
               std::to_string(acc->min_nights) + " nights, stayed " + std::to_string(nights);
      i = j;
    }
    out[3] = verdict(kCommonsenseChecks[3], fail);
  }

  // is valid transportation
  {
    std::string fail;
    bool flight = false, driving = false;
    for (std::size_t i = 0; i < days.size() && fail.empty(); ++i) {
      const auto& d = days[i];
      if (d.transport.absent) continue;
      if (!d.transport.value) { fail = detail::day_tag(i) + "malformed transportation"; break; }
      const auto& t = *d.transport.value;
      if (!d.transit()) { fail = detail::day_tag(i) + "transportation on a non-travel day"; break; }
      if (t.from != *d.city->from || t.to != d.city->to) {
        fail = detail::day_tag(i) + "transportation does not match the day's route";
        break;
      }
      if (t.mode == TransportMode::Flight) {
        flight = true;
        const auto* l = sb.find_flight(*t.flight_number);
        if (!l || l->origin != t.from || l->destination != t.to) {
          fail = detail::day_tag(i) + "no flight " + *t.flight_number + " on this leg";
        } else if (i >= q.date.size() || !l->available_on(q.date[i])) {
          fail = detail::day_tag(i) + "flight " + *t.flight_number + " does not operate that day";
        }
      } else {
        driving = driving || t.mode == TransportMode::SelfDriving;
        if (!detail::find_link(sb, t.mode, t.from, t.to))
          fail = detail::day_tag(i) + "no " + std::string(to_string(t.mode)) + " link on this leg";
      }
    }
    if (fail.empty() && flight && driving) fail = "flight and self-driving mixed in one trip";
    out[4] = verdict(kCommonsenseChecks[4], fail);
  }

  // is valid information in the current city
  {
    std::string fail;
    for (std::size_t i = 0; i < days.size() && fail.empty(); ++i) {
      const auto& d = days[i];
      if (!d.city) { fail = detail::day_tag(i) + "no current city"; break; }
      const auto here = d.cities();
      for (const auto& m : d.meals)
        if (m.value && !detail::contains(here, m.value->city))
          fail = detail::day_tag(i) + format_place(*m.value) + " is not in the current city";
      if (d.attractions.value)
        for (const auto& p : *d.attractions.value)
          if (!detail::contains(here, p.city))
            fail = detail::day_tag(i) + format_place(p) + " is not in the current city";
      if (d.stay.value && d.stay.value->city != d.city->to)
        fail = detail::day_tag(i) + "accommodation is not in the arrival city";
    }
    out[5] = verdict(kCommonsenseChecks[5], fail);
  }

  // is valid information in the sandbox
  {
    std::string fail;
    for (std::size_t i = 0; i < days.size() && fail.empty(); ++i) {
      const auto& d = days[i];
      for (const auto& c : d.cities())
        if (!sb.has_city(c)) fail = detail::day_tag(i) + "unknown city " + c;
      if (d.transport.value) {
        const auto& t = *d.transport.value;
        if (!sb.has_city(t.from) || !sb.has_city(t.to))
          fail = detail::day_tag(i) + "transportation names an unknown city";
        if (t.flight_number && !sb.find_flight(*t.flight_number))
          fail = detail::day_tag(i) + "unknown flight " + *t.flight_number;
      }
      for (const auto& m : d.meals) {
        if (m.absent) continue;
        if (!m.value || !sb.find_restaurant(m.value->name, m.value->city))
          fail = detail::day_tag(i) + "meal not in sandbox";
      }
      if (!d.attractions.absent) {
        if (!d.attractions.value) fail = detail::day_tag(i) + "attraction not in sandbox";
        else
          for (const auto& p : *d.attractions.value)
            if (!sb.find_attraction(p.name, p.city))
              fail = detail::day_tag(i) + "attraction not in sandbox";
      }
      if (!d.stay.absent && (!d.stay.value || !sb.find_accommodation(d.stay.value->name, d.stay.value->city)))
        fail = detail::day_tag(i) + "accommodation not in sandbox";
    }
    out[6] = verdict(kCommonsenseChecks[6], fail);
  }

  // is not absent
  {
    std::string fail;
    if (static_cast<int>(days.size()) != q.days)
      fail = "plan has " + std::to_string(days.size()) + " days, query asks for " + std::to_string(q.days);
    auto offers = [&](const auto& records, const std::string& city) {
      return std::any_of(records.begin(), records.end(), [&](const auto& r) { return r.city == city; });
    };
    for (std::size_t i = 0; i < days.size() && fail.empty(); ++i) {
      const auto& d = days[i];
      if (!d.city) { fail = detail::day_tag(i) + "current_city missing"; break; }
      if (d.transit() && d.transport.absent) fail = detail::day_tag(i) + "transportation missing";
      if (!d.transit() && offers(sb.restaurants, d.city->to))
        for (const auto& m : d.meals)
          if (m.absent) fail = detail::day_tag(i) + "meal missing";
      if (i + 1 < days.size() && d.stay.absent && offers(sb.accommodations, d.city->to))
        fail = detail::day_tag(i) + "accommodation missing";
    }
    out[7] = verdict(kCommonsenseChecks[7], fail);
  }
  return out;
}

inline std::array<ConstraintResult, 5> check_hard(const Sandbox& sb, const Query& q,
                                                  const TravelPlan& plan) {
  const auto days = detail::view_plan(plan);
  const auto& lc = q.local_constraint;
  std::array<ConstraintResult, 5> out;
  auto vacuous = [](std::string_view name) {
    return ConstraintResult{std::string(name), false, true, "not imposed"};
  };

  std::vector<const Accommodation*> stays;
  std::vector<const Restaurant*> meals;
  std::vector<TransportMode> modes;
  for (const auto& d : days) {
    if (d.stay.value)
      if (const auto* a = sb.find_accommodation(d.stay.value->name, d.stay.value->city)) stays.push_back(a);
    for (const auto& m : d.meals)
      if (m.value)
        if (const auto* r = sb.find_restaurant(m.value->name, m.value->city)) meals.push_back(r);
    if (d.transport.value) modes.push_back(d.transport.value->mode);
  }

  if (!lc.cuisine) {
    out[0] = vacuous(kHardChecks[0]);
  } else {
    const bool ok = std::any_of(meals.begin(), meals.end(), [&](const Restaurant* r) { return r->serves(*lc.cuisine); });
    out[0] = detail::verdict(kHardChecks[0], ok ? "" : "no meal serves " + *lc.cuisine);
  }

  if (!lc.house_rule) {
    out[1] = vacuous(kHardChecks[1]);
  } else {
    const auto tag = house_rule_tag(*lc.house_rule);
    std::string fail;
    for (const auto* a : stays)
      if (a->has_rule(tag)) fail = a->name + " has rule '" + tag + "'";
    out[1] = detail::verdict(kHardChecks[1], fail);
  }

  if (!lc.transportation) {
    out[2] = vacuous(kHardChecks[2]);
  } else {
    std::string fail;
    if (*lc.transportation == "no flight") {
      if (std::count(modes.begin(), modes.end(), TransportMode::Flight)) fail = "plan uses a flight";
    } else if (*lc.transportation == "no self-driving") {
      if (std::count(modes.begin(), modes.end(), TransportMode::SelfDriving)) fail = "plan uses self-driving";
    } else {
      fail = "unrecognized transportation constraint '" + *lc.transportation + "'";
    }
    out[2] = detail::verdict(kHardChecks[2], fail);
  }

  if (!lc.room_type) {
    out[3] = vacuous(kHardChecks[3]);
  } else {
    std::string fail;
    const auto want = room_type_from(*lc.room_type);
    if (!want) fail = "unrecognized room type '" + *lc.room_type + "'";
    for (const auto* a : stays) {
      if (!want) break;
      const bool ok = *want == RoomType::NotSharedRoom ? a->room_type != RoomType::SharedRoom
                                                       : a->room_type == *want;
      if (!ok) fail = a->name + " is a " + std::string(to_string(a->room_type));
    }
    out[3] = detail::verdict(kHardChecks[3], fail);
  }

  const long cost = plan_cost(sb, q, plan);
  out[4] = detail::verdict(kHardChecks[4], cost <= q.budget ? ""
                                                            : "cost " + std::to_string(cost) +
                                                                  " exceeds budget " + std::to_string(q.budget));
  if (out[4].passed) out[4].detail = "cost " + std::to_string(cost) + " within budget";
  return out;
}

namespace detail {

inline void finish(EvalReport& r, const EvalConventions& conv) {
  r.commonsense_total = static_cast<int>(r.commonsense.size());
  r.commonsense_passed = 0;
  for (const auto& c : r.commonsense) r.commonsense_passed += c.passed;
  r.hard_total = 0;
  r.hard_passed = 0;
  for (const auto& h : r.hard) {
    if (h.applicable || conv.count_vacuous_hard) {
      ++r.hard_total;
      r.hard_passed += h.passed;
    }
  }
  r.commonsense_micro = static_cast<double>(r.commonsense_passed) / r.commonsense_total;
  r.hard_micro = r.hard_total == 0 ? 1.0 : static_cast<double>(r.hard_passed) / r.hard_total;
  r.commonsense_macro_pass = r.commonsense_passed == r.commonsense_total;
  r.hard_macro_pass = r.hard_passed == r.hard_total;
  r.final_pass = r.delivered && r.commonsense_macro_pass && r.hard_macro_pass;
}

}  // namespace detail

inline EvalReport evaluate_plan(const Sandbox& sb, const Query& q, const TravelPlan& plan,
                                const EvalConventions& conv = {}) {
  EvalReport r;
  r.query_id = q.query_id;
  r.delivered = true;
  r.commonsense = check_commonsense(sb, q, plan);
  r.hard = check_hard(sb, q, plan);
  detail::finish(r, conv);
  return r;
}

/// Report for a response that did not yield a plan: every item fails.
inline EvalReport undelivered_report(const Query& q, const std::string& reason,
                                     const EvalConventions& conv = {}) {
  EvalReport r;
  r.query_id = q.query_id;
  r.delivered = false;
  for (std::size_t i = 0; i < r.commonsense.size(); ++i)
    r.commonsense[i] = ConstraintResult{std::string(kCommonsenseChecks[i]), true, false, reason};
  const auto& lc = q.local_constraint;
  const std::array<bool, 5> imposed = {lc.cuisine.has_value(), lc.house_rule.has_value(),
                                       lc.transportation.has_value(), lc.room_type.has_value(), true};
  for (std::size_t i = 0; i < r.hard.size(); ++i)
    r.hard[i] = ConstraintResult{std::string(kHardChecks[i]), imposed[i], false, reason};
  detail::finish(r, conv);
  return r;
}

inline EvalReport evaluate(const Sandbox& sb, const Query& q,
                           const Expected<ResponseEnvelope, FormatFailure>& envelope,
                           const EvalConventions& conv = {}) {
  if (!envelope) return undelivered_report(q, std::string(to_string(envelope.error().reason)), conv);
  if (!envelope->plan) return undelivered_report(q, "final answer is not a valid plan", conv);
  return evaluate_plan(sb, q, *envelope->plan, conv);
}

inline EvalReport evaluate_response(const Sandbox& sb, const Query& q, std::string_view text,
                                    const EvalConventions& conv = {}) {
  return evaluate(sb, q, parse_envelope(text), conv);
}

inline BatchReport aggregate(std::vector<EvalReport> reports) {
  if (reports.empty()) throw InvariantError("aggregate: empty batch");
  long cs_pass = 0, cs_total = 0, hard_pass = 0, hard_total = 0;
  long delivered = 0, cs_macro = 0, hard_macro = 0, final_pass = 0;
  for (const auto& r : reports) {
    cs_pass += r.commonsense_passed;
    cs_total += r.commonsense_total;
    hard_pass += r.hard_passed;
    hard_total += r.hard_total;
    delivered += r.delivered;
    cs_macro += r.delivered && r.commonsense_macro_pass;
    hard_macro += r.delivered && r.hard_macro_pass;
    final_pass += r.final_pass;
  }
  const double n = static_cast<double>(reports.size());
  BatchReport b;
  b.criteria.delivery_rate = delivered / n;
  b.criteria.commonsense_micro = cs_total ? static_cast<double>(cs_pass) / cs_total : 0.0;
  b.criteria.commonsense_macro = cs_macro / n;
  b.criteria.hard_micro = hard_total ? static_cast<double>(hard_pass) / hard_total : 0.0;
  b.criteria.hard_macro = hard_macro / n;
  b.criteria.final_pass_rate = final_pass / n;
  b.rows = std::move(reports);
  return b;
}

// ---------------------------------------------------------------------------
// Serialization

inline Json to_json(const ConstraintResult& c) {
  return Json{{"name", c.name}, {"applicable", c.applicable}, {"passed", c.passed}, {"detail", c.detail}};
}

inline Json to_json(const EvalReport& r) {
  Json cs = Json::array(), hard = Json::array();
  for (const auto& c : r.commonsense) cs.push_back(to_json(c));
  for (const auto& h : r.hard) hard.push_back(to_json(h));
  return Json{{"query_id", r.query_id},
              {"delivered", r.delivered},
              {"commonsense", cs},
              {"hard", hard},
              {"commonsense_micro", r.commonsense_micro},
              {"commonsense_macro_pass", r.commonsense_macro_pass},
              {"hard_micro", r.hard_micro},
              {"hard_macro_pass", r.hard_macro_pass},
              {"final_pass", r.final_pass}};
}

/// Criteria in percent, keyed in reporting order.
inline Json criteria_to_json(const Criteria& c) {
  return Json{{"delivery_rate", 100 * c.delivery_rate},
              {"commonsense_micro", 100 * c.commonsense_micro},
              {"commonsense_macro", 100 * c.commonsense_macro},
              {"hard_micro", 100 * c.hard_micro},
              {"hard_macro", 100 * c.hard_macro},
              {"final_pass_rate", 100 * c.final_pass_rate}};
}

inline Criteria criteria_from_json(const Json& j) {
  Criteria c;
  c.delivery_rate = j.at("delivery_rate").get<double>() / 100;
  c.commonsense_micro = j.at("commonsense_micro").get<double>() / 100;
  c.commonsense_macro = j.at("commonsense_macro").get<double>() / 100;
  c.hard_micro = j.at("hard_micro").get<double>() / 100;
  c.hard_macro = j.at("hard_macro").get<double>() / 100;
  c.final_pass_rate = j.at("final_pass_rate").get<double>() / 100;
  return c;
}

inline Json to_json(const BatchReport& b) {
  Json rows = Json::array();
  for (const auto& r : b.rows) rows.push_back(to_json(r));
  return Json{{"criteria", criteria_to_json(b.criteria)}, {"count", b.rows.size()}, {"reports", rows}};
}

/// One row per query, one column per check: 1 passed, 0 failed, n/a not imposed.
inline std::string batch_report_csv(const BatchReport& b) {
  std::ostringstream out;
  out << "query_id,delivered";
  for (auto n : kCommonsenseChecks) out << ",commonsense:" << n;
  for (auto n : kHardChecks) out << ",hard:" << n;
  out << ",final_pass\n";
  for (const auto& r : b.rows) {
    out << r.query_id << ',' << int(r.delivered);
    for (const auto& c : r.commonsense) out << ',' << int(c.passed);
    for (const auto& h : r.hard) {
      out << ',';
      if (h.applicable) out << int(h.passed);
      else out << "n/a";
    }
    out << ',' << int(r.final_pass) << '\n';
  }
  return out.str();
}

}  // namespace imagine
