#pragma once

// Exact minimum-cost planner over the sandbox, used as the LLM-free agent
// backend and as the source of known-good plans in tests.
//
// Plans depart on day 1 and return on the last day. Every placement of the
// intermediate travel days is enumerated, and for each placement and each
// transport policy (flights or self-driving, taxis always allowed) the
// cheapest choice of links, stays and meals is taken. Constraints are
// respected by filtering; the cheapest overall plan is returned together
// with whether it fits the budget.

#include <algorithm>
#include <functional>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "imagine/evaluator.hpp"
#include "imagine/plan.hpp"
#include "imagine/query.hpp"
#include "imagine/query_gen.hpp"
#include "imagine/sandbox.hpp"

namespace imagine {

struct OraclePlan {
  TravelPlan plan;
  long cost = 0;
  bool within_budget = false;
};

namespace detail {

struct LegChoice {
  TransportRef ref;
  long cost;
};

inline std::optional<LegChoice> cheapest_leg(const Sandbox& sb, const Query& q, const std::string& from,
                                             const std::string& to, const Date& date, bool allow_flight,
                                             bool allow_driving) {
  std::optional<LegChoice> best;
  for (const auto& l : sb.links) {
    if (l.origin != from || l.destination != to) continue;
    long cost = 0;
    if (l.mode == TransportMode::Flight) {
      if (!allow_flight || !l.available_on(date)) continue;
      cost = static_cast<long>(l.cost) * q.people_number;
    } else {
      if (l.mode == TransportMode::SelfDriving && !allow_driving) continue;
      cost = l.cost;
    }
    if (!best || cost < best->cost)
      best = LegChoice{TransportRef{l.mode, l.flight_number, from, to}, cost};
  }
  return best;
}

inline bool stay_allowed(const Accommodation& a, const Query& q, int nights) {
  if (a.min_nights > nights) return false;
  const auto& lc = q.local_constraint;
  if (lc.house_rule && a.has_rule(house_rule_tag(*lc.house_rule))) return false;
  if (lc.room_type) {
    const auto want = room_type_from(*lc.room_type);
    if (!want) return false;
    if (*want == RoomType::NotSharedRoom ? a.room_type == RoomType::SharedRoom : a.room_type != *want)
      return false;
  }
  return true;
}

/// Sorted by per-person cost, then name for determinism.
inline std::vector<const Restaurant*> restaurants_by_cost(const Sandbox& sb, const std::string& city) {
  std::vector<const Restaurant*> out;
  for (const auto& r : sb.restaurants)
    if (r.city == city) out.push_back(&r);
  std::stable_sort(out.begin(), out.end(), [](auto* a, auto* b) {
    return a->avg_cost != b->avg_cost ? a->avg_cost < b->avg_cost : a->name < b->name;
  });
  return out;
}

/// Travel-day placements: strictly increasing, first = 1, last = days.
inline void enumerate_transits(int days, int legs, std::vector<int>& cur,
                               const std::function<void(const std::vector<int>&)>& emit) {
  if (static_cast<int>(cur.size()) == legs - 1) {
    cur.push_back(days);
    if (cur.back() > cur[cur.size() - 2] || legs == 1) emit(cur);
    cur.pop_back();
    return;
  }
  const int start = cur.empty() ? 1 : cur.back() + 1;
  if (cur.empty()) {
    cur.push_back(1);
    enumerate_transits(days, legs, cur, emit);
    cur.pop_back();
    return;
  }
  for (int d = start; d < days; ++d) {
    cur.push_back(d);
    enumerate_transits(days, legs, cur, emit);
    cur.pop_back();
  }
}

struct Candidate {
  TravelPlan plan;
  long cost = std::numeric_limits<long>::max();
};

inline std::optional<Candidate> build_candidate(const Sandbox& sb, const Query& q,
                                                const std::vector<int>& transit_days,
                                                bool allow_flight, bool allow_driving) {
  const auto route = itinerary_cities(q);  // O, D1..Dk, O
  const int n = q.days;
  if (static_cast<int>(q.date.size()) != n) return std::nullopt;
  const std::size_t legs = route.size() - 1;

  std::vector<DayEntry> entries(static_cast<std::size_t>(n));
  for (int d = 1; d <= n; ++d) entries[static_cast<std::size_t>(d - 1)].day = d;
  long cost = 0;

  // Which route position each day ends in, and travel legs.
  std::vector<std::size_t> end_pos(static_cast<std::size_t>(n));
  std::vector<int> leg_of_day(static_cast<std::size_t>(n), -1);
  {
    std::size_t leg = 0;
    std::size_t pos = 0;
    for (int d = 1; d <= n; ++d) {
      if (leg < legs && transit_days[leg] == d) {
        leg_of_day[static_cast<std::size_t>(d - 1)] = static_cast<int>(leg);
        ++leg;
        pos = leg;
      }
      end_pos[static_cast<std::size_t>(d - 1)] = pos;
    }
  }

  for (std::size_t leg = 0; leg < legs; ++leg) {
    const int d = transit_days[leg];
    auto choice = cheapest_leg(sb, q, route[leg], route[leg + 1], q.date[static_cast<std::size_t>(d - 1)],
                               allow_flight, allow_driving);
    if (!choice) return std::nullopt;
    auto& e = entries[static_cast<std::size_t>(d - 1)];
    e.current_city = format_current_city(CityField{route[leg], route[leg + 1]});
    e.transportation = format_transportation(choice->ref);
    cost += choice->cost;
  }
  for (int d = 1; d <= n; ++d) {
    auto& e = entries[static_cast<std::size_t>(d - 1)];
    if (e.current_city.empty()) e.current_city = route[end_pos[static_cast<std::size_t>(d - 1)]];
  }

  // Stays: one place per destination for all of its nights.
  for (std::size_t leg = 0; leg + 1 < legs; ++leg) {
    const std::string& city = route[leg + 1];
    const int first_night = transit_days[leg];
    const int nights = transit_days[leg + 1] - first_night;
    const Accommodation* best = nullptr;
    long best_cost = 0;
    bool any = false;
    for (const auto& a : sb.accommodations) {
      if (a.city != city) continue;
      any = true;
      if (!stay_allowed(a, q, nights)) continue;
      const long c = static_cast<long>(a.price_per_night) * a.rooms_for(q.people_number);
      if (!best || c < best_cost) {
        best = &a;
        best_cost = c;
      }
    }
    if (any && !best) return std::nullopt;
    if (!best) continue;
    for (int d = first_night; d < first_night + nights; ++d)
      entries[static_cast<std::size_t>(d - 1)].accommodation = format_place({best->name, best->city});
    cost += best_cost * nights;
  }

  // Meals on non-travel days, cheapest distinct restaurants per city.
  struct CityMeals {
    std::vector<const Restaurant*> ranked;
    std::vector<int> days;  // non-travel days spent here
  };
  std::vector<CityMeals> per_city(route.size());
  for (int d = 1; d <= n; ++d)
    if (leg_of_day[static_cast<std::size_t>(d - 1)] < 0)
      per_city[end_pos[static_cast<std::size_t>(d - 1)]].days.push_back(d);
  std::vector<std::vector<const Restaurant*>> chosen(route.size());
  for (std::size_t p = 0; p < route.size(); ++p) {
    auto& cm = per_city[p];
    if (cm.days.empty()) continue;
    cm.ranked = restaurants_by_cost(sb, route[p]);
    if (cm.ranked.empty()) continue;
    const std::size_t need = cm.days.size() * 3;
    if (cm.ranked.size() < need) return std::nullopt;
    chosen[p].assign(cm.ranked.begin(), cm.ranked.begin() + static_cast<long>(need));
  }
  // Cuisine requirement: swap in, or add on a travel day, the cheapest option.
  std::optional<std::pair<int, PlaceRef>> extra_meal;  // (day, restaurant) on a travel day
  if (const auto& want = q.local_constraint.cuisine) {
    bool served = false;
    for (const auto& c : chosen)
      for (const auto* r : c) served = served || r->serves(*want);
    if (!served) {
      long best_delta = std::numeric_limits<long>::max();
      std::function<void()> apply;
      for (std::size_t p = 0; p < route.size(); ++p) {
        if (chosen[p].empty()) continue;
        for (const auto* r : per_city[p].ranked) {
          if (!r->serves(*want) || std::count(chosen[p].begin(), chosen[p].end(), r)) continue;
          const long delta = static_cast<long>(r->avg_cost - chosen[p].back()->avg_cost) * q.people_number;
          if (delta < best_delta) {
            best_delta = delta;
            apply = [&chosen, p, r] { chosen[p].back() = r; };
          }
          break;
        }
      }
      for (std::size_t leg = 0; leg < legs; ++leg) {
        const int d = transit_days[leg];
        for (const auto& city : {route[leg], route[leg + 1]}) {
          for (const auto* r : restaurants_by_cost(sb, city)) {
            if (!r->serves(*want)) continue;
            bool used = false;
            for (const auto& c : chosen) used = used || std::count(c.begin(), c.end(), r);
            if (used) continue;
            const long delta = static_cast<long>(r->avg_cost) * q.people_number;
            if (delta < best_delta) {
              best_delta = delta;
              apply = [&extra_meal, d, r] { extra_meal = {d, PlaceRef{r->name, r->city}}; };
            }
            break;
          }
        }
      }
      if (!apply) return std::nullopt;
      apply();
    }
  }
  std::set<std::pair<std::string, std::string>> used_attractions;
  for (std::size_t p = 0; p < route.size(); ++p) {
    const auto& cm = per_city[p];
    for (std::size_t k = 0; k < cm.days.size(); ++k) {
      auto& e = entries[static_cast<std::size_t>(cm.days[k] - 1)];
      if (!chosen[p].empty()) {
        e.breakfast = format_place({chosen[p][3 * k]->name, chosen[p][3 * k]->city});
        e.lunch = format_place({chosen[p][3 * k + 1]->name, chosen[p][3 * k + 1]->city});
        e.dinner = format_place({chosen[p][3 * k + 2]->name, chosen[p][3 * k + 2]->city});
        for (std::size_t m = 0; m < 3; ++m)
          cost += static_cast<long>(chosen[p][3 * k + m]->avg_cost) * q.people_number;
      }
      for (const auto& a : sb.attractions) {
        if (a.city == route[p] && used_attractions.insert({a.name, a.city}).second) {
          e.attraction = format_place_list({PlaceRef{a.name, a.city}});
          break;
        }
      }
    }
  }
  if (extra_meal) {
    auto& e = entries[static_cast<std::size_t>(extra_meal->first - 1)];
    e.dinner = format_place(extra_meal->second);
    cost += static_cast<long>(sb.find_restaurant(extra_meal->second.name, extra_meal->second.city)->avg_cost) *
            q.people_number;
  }
  return Candidate{TravelPlan{std::move(entries)}, cost};
}

}  // namespace detail

/// Cheapest constraint-respecting plan, or nullopt if none exists under the
/// planner's plan shape (missing links, no eligible stay, too few distinct
/// restaurants, unservable cuisine).
inline std::optional<OraclePlan> plan_oracle(const Sandbox& sb, const Query& q) {
  const int legs = static_cast<int>(q.destination.size()) + 1;
  if (q.days < legs || static_cast<int>(q.date.size()) != q.days) return std::nullopt;
  const auto& tc = q.local_constraint.transportation;
  std::vector<std::pair<bool, bool>> policies;  // (flights, self-driving)
  if (!(tc && *tc == "no flight")) policies.emplace_back(true, false);
  if (!(tc && *tc == "no self-driving")) policies.emplace_back(false, true);

  std::optional<detail::Candidate> best;
  std::vector<int> cur;
  detail::enumerate_transits(q.days, legs, cur, [&](const std::vector<int>& transits) {
    for (auto [flights, driving] : policies) {
      auto c = detail::build_candidate(sb, q, transits, flights, driving);
      if (c && (!best || c->cost < best->cost)) best = std::move(c);
    }
  });
  if (!best) return std::nullopt;
  return OraclePlan{std::move(best->plan), best->cost, best->cost <= q.budget};
}

}  // namespace imagine
