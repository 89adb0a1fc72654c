#pragma once

// Synthetic query generation: element sampling, the duration/difficulty
// grid, strict deduplication, reference information and text rendering.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <string>
#include <vector>

#include "imagine/query.hpp"
#include "imagine/sandbox.hpp"
#include "imagine/util/errors.hpp"
#include "imagine/util/rng.hpp"

namespace imagine {

/// Allowed (days, visiting_city_number) pairs.
inline constexpr std::array<std::pair<int, int>, 3> kDurationShapes = {{{3, 1}, {5, 2}, {7, 3}}};

inline bool valid_duration_shape(int days, int cities) {
  return std::any_of(kDurationShapes.begin(), kDurationShapes.end(),
                     [&](auto p) { return p.first == days && p.second == cities; });
}

/// Number of local constraints a level may carry: [min, max].
inline std::pair<int, int> constraint_count_range(Level level) {
  switch (level) {
    case Level::Easy: return {0, 0};
    case Level::Medium: return {1, 1};
    case Level::Hard: return {2, 3};
  }
  return {0, 0};
}

struct QueryGenConfig {
  /// Relative weight of each (duration, level) cell; rows 3/5/7 days,
  /// columns easy/medium/hard.
  std::array<std::array<double, 3>, 3> grid_weights{{{1, 1, 1}, {1, 1, 1}, {1, 1, 1}}};
  Date window_start = kCalendarStart;
  int window_days = kCalendarDays;
  int people_min = 1;
  int people_max = 8;
  double budget_multiplier_min = 1.2;
  double budget_multiplier_max = 2.5;
  /// Share of hard queries whose budget is set below the cost lower bound.
  double infeasible_fraction = 0.2;
  double infeasible_multiplier_min = 0.5;
  double infeasible_multiplier_max = 0.95;
  int max_attempts = 2000;
  std::string id_prefix = "q";
};

/// origin, destinations..., origin
inline std::vector<std::string> itinerary_cities(const Query& q) {
  std::vector<std::string> out{q.origin};
  out.insert(out.end(), q.destination.begin(), q.destination.end());
  out.push_back(q.origin);
  return out;
}

namespace detail {

/// Trip dates on which leg `leg` of `legs` may be travelled.
inline std::vector<Date> leg_dates(const Query& q, std::size_t leg, std::size_t legs) {
  if (q.date.empty()) return {};
  if (leg == 0) return {q.date.front()};
  if (leg + 1 == legs) return {q.date.back()};
  if (q.date.size() <= 2) return {};
  return std::vector<Date>(q.date.begin() + 1, q.date.end() - 1);
}

inline bool available_any(const TransportLink& l, const std::vector<Date>& dates) {
  return std::any_of(dates.begin(), dates.end(), [&](const Date& d) { return l.available_on(d); });
}

}  // namespace detail

/// Projection of the sandbox onto the query: every link on each itinerary
/// leg usable on the leg's dates, and every listing in origin and
/// destination cities. Records are copied verbatim.
inline ReferenceInformation build_reference_information(const Sandbox& sb, const Query& q) {
  for (const auto& c : itinerary_cities(q))
    if (!sb.has_city(c)) throw UnknownCityError(c);

  ReferenceInformation ref;
  const auto route = itinerary_cities(q);
  const std::size_t legs = route.size() - 1;
  for (std::size_t i = 0; i < legs; ++i) {
    TransportSegment seg{route[i], route[i + 1], {}};
    const auto dates = detail::leg_dates(q, i, legs);
    for (const auto& l : sb.links_between(route[i], route[i + 1])) {
      if (l.mode == TransportMode::Flight && !detail::available_any(l, dates)) continue;
      seg.options.push_back(l);
    }
    ref.transportation.push_back(std::move(seg));
  }
  std::vector<std::string> cities{q.origin};
  cities.insert(cities.end(), q.destination.begin(), q.destination.end());
  for (const auto& c : cities) {
    ref.cities.push_back(CityListing{c, Sandbox::in_city(sb.restaurants, c),
                                     Sandbox::in_city(sb.attractions, c),
                                     Sandbox::in_city(sb.accommodations, c)});
  }
  return ref;
}

/// Lower bound on the cost of any plan that passes every commonsense check:
/// cheapest usable link per leg, the cheapest room for every non-final
/// night and the cheapest meal for three meals on every non-travel day.
/// Legs without any link contribute nothing.
inline int estimate_min_cost(const Sandbox& sb, const Query& q) {
  const auto route = itinerary_cities(q);
  long total = 0;
  for (std::size_t i = 0; i + 1 < route.size(); ++i) {
    long best = std::numeric_limits<long>::max();
    for (const auto& l : sb.links_between(route[i], route[i + 1])) {
      if (l.mode == TransportMode::Flight) {
        if (!detail::available_any(l, q.date)) continue;
        best = std::min(best, static_cast<long>(l.cost) * q.people_number);
      } else {
        best = std::min(best, static_cast<long>(l.cost));
      }
    }
    if (best != std::numeric_limits<long>::max()) total += best;
  }

  std::vector<std::string> stay_cities{q.origin};
  stay_cities.insert(stay_cities.end(), q.destination.begin(), q.destination.end());
  long night = std::numeric_limits<long>::max();
  long meal = std::numeric_limits<long>::max();
  for (const auto& c : stay_cities) {
    long city_night = std::numeric_limits<long>::max();
    for (const auto& a : sb.accommodations)
      if (a.city == c)
        city_night = std::min(city_night, static_cast<long>(a.price_per_night) * a.rooms_for(q.people_number));
    night = std::min(night, city_night == std::numeric_limits<long>::max() ? 0L : city_night);
    long city_meal = std::numeric_limits<long>::max();
    for (const auto& r : sb.restaurants)
      if (r.city == c) city_meal = std::min(city_meal, static_cast<long>(r.avg_cost));
    meal = std::min(meal, city_meal == std::numeric_limits<long>::max() ? 0L : city_meal);
  }
  const long nights = q.days - 1;
  const long full_days = std::max(0, q.days - (q.visiting_city_number + 1));
  total += nights * night + full_days * 3L * meal * q.people_number;
  return static_cast<int>(total);
}

// ---------------------------------------------------------------------------
// Text rendering

inline std::string format_thousands(long value) {
  std::string digits = std::to_string(value < 0 ? -value : value);
  std::string out;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i > 0 && (digits.size() - i) % 3 == 0) out += ',';
    out += digits[i];
  }
  return value < 0 ? "-" + out : out;
}

/// Deterministic one-sentence rendering of the structured query.
inline std::string render_query_text(const Query& q) {
  std::string dest;
  for (std::size_t i = 0; i < q.destination.size(); ++i) {
    if (i > 0) dest += (i + 1 == q.destination.size()) ? " and " : ", ";
    dest += q.destination[i];
  }
  std::string text = "Please plan a " + std::to_string(q.days) + "-day trip for " +
                     std::to_string(q.people_number) +
                     (q.people_number == 1 ? " person" : " people") + " departing from " +
                     q.origin + " and visiting " + dest;
  if (!q.date.empty()) text += ", from " + q.date.front().str() + " to " + q.date.back().str();

  std::vector<std::string> wishes;
  const auto& lc = q.local_constraint;
  if (lc.house_rule) wishes.push_back("the accommodation must allow " + *lc.house_rule);
  if (lc.cuisine) wishes.push_back("we would like to try " + *lc.cuisine + " cuisine");
  if (lc.room_type) wishes.push_back("we prefer a " + *lc.room_type);
  if (lc.transportation) wishes.push_back("the itinerary must involve " + *lc.transportation);
  for (std::size_t i = 0; i < wishes.size(); ++i) {
    text += (i == 0) ? "; " : (i + 1 == wishes.size() ? " and " : ", ");
    text += wishes[i];
  }
  text += ", with a total budget of $" + format_thousands(q.budget) + ".";
  return text;
}

// ---------------------------------------------------------------------------
// Generation

namespace detail {

/// Largest-remainder apportionment of `count` slots over the 3x3 grid.
inline std::vector<std::pair<int, int>> grid_slots(const QueryGenConfig& cfg, int count) {
  double total = 0;
  for (const auto& row : cfg.grid_weights)
    for (double w : row) {
      if (w < 0) throw ConfigError("grid weights must be non-negative");
      total += w;
    }
  if (total <= 0) throw ConfigError("grid weights sum to zero");
  std::array<int, 9> quota{};
  std::array<double, 9> rem{};
  int assigned = 0;
  for (int c = 0; c < 9; ++c) {
    const double exact = count * cfg.grid_weights[c / 3][c % 3] / total;
    quota[c] = static_cast<int>(std::floor(exact));
    rem[c] = exact - quota[c];
    assigned += quota[c];
  }
  std::array<int, 9> order{0, 1, 2, 3, 4, 5, 6, 7, 8};
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return rem[a] > rem[b]; });
  for (int i = 0; assigned < count; ++i, ++assigned) quota[order[i % 9]]++;
  std::vector<std::pair<int, int>> slots;
  for (int c = 0; c < 9; ++c)
    for (int k = 0; k < quota[c]; ++k) slots.emplace_back(c / 3, c % 3);
  return slots;
}

inline LocalConstraint sample_constraints(Rng& rng, Level level) {
  auto [lo, hi] = constraint_count_range(level);
  const int n = static_cast<int>(rng.uniform_int(lo, hi));
  std::vector<int> kinds{0, 1, 2, 3};
  rng.shuffle(kinds);
  LocalConstraint c;
  for (int i = 0; i < n; ++i) {
    switch (kinds[static_cast<std::size_t>(i)]) {
      case 0: c.house_rule = rng.pick(house_rule_values()); break;
      case 1: c.cuisine = rng.pick(cuisine_tags()); break;
      case 2: c.room_type = rng.pick(room_type_values()); break;
      default: c.transportation = rng.pick(transportation_values()); break;
    }
  }
  return c;
}

}  // namespace detail

/// Generates `count` queries whose dedup keys are pairwise distinct and
/// disjoint from `existing`. Not every query is guaranteed solvable.
/// Throws ExhaustionError when a slot cannot find a fresh key within
/// `max_attempts` draws.
inline std::vector<QueryRecord> generate_queries(const Sandbox& sb, int count, std::uint64_t seed,
                                                 const std::set<DedupKey>& existing,
                                                 const QueryGenConfig& cfg = {}) {
  if (count < 1) throw ConfigError("count must be >= 1");
  if (sb.cities.size() < 2) throw ExhaustionError("sandbox needs at least two cities");
  if (cfg.people_min < 1 || cfg.people_max < cfg.people_min)
    throw ConfigError("invalid people range");

  Rng rng(seed);
  auto slots = detail::grid_slots(cfg, count);
  rng.shuffle(slots);

  std::set<DedupKey> used = existing;
  std::vector<QueryRecord> out;
  out.reserve(static_cast<std::size_t>(count));

  for (const auto& [dur_idx, level_idx] : slots) {
    const auto [days, n_cities] = kDurationShapes[static_cast<std::size_t>(dur_idx)];
    const auto level = static_cast<Level>(level_idx);
    if (days > cfg.window_days) throw ExhaustionError("date window shorter than trip length");

    bool placed = false;
    for (int attempt = 0; attempt < cfg.max_attempts && !placed; ++attempt) {
      Query q;
      q.origin = rng.pick(sb.cities).name;
      q.days = days;
      q.visiting_city_number = n_cities;

      // Multi-city trips stay inside one state, as in a state-level request.
      std::vector<std::string> pool;
      if (n_cities == 1) {
        for (const auto& c : sb.cities)
          if (c.name != q.origin) pool.push_back(c.name);
      } else {
        std::vector<std::string> states;
        for (const auto& c : sb.cities) {
          int others = 0;
          for (const auto& d : sb.cities) others += (d.state == c.state && d.name != q.origin);
          if (others >= n_cities && std::find(states.begin(), states.end(), c.state) == states.end())
            states.push_back(c.state);
        }
        if (states.empty()) continue;
        const auto& state = rng.pick(states);
        for (const auto& c : sb.cities)
          if (c.state == state && c.name != q.origin) pool.push_back(c.name);
      }
      if (static_cast<int>(pool.size()) < n_cities) continue;
      rng.shuffle(pool);
      q.destination.assign(pool.begin(), pool.begin() + n_cities);

      const auto start = cfg.window_start.plus_days(
          static_cast<int>(rng.uniform_int(0, cfg.window_days - days)));
      for (int d = 0; d < days; ++d) q.date.push_back(start.plus_days(d));
      q.people_number = static_cast<int>(rng.uniform_int(cfg.people_min, cfg.people_max));
      q.local_constraint = detail::sample_constraints(rng, level);
      q.level = level;

      const int lower = estimate_min_cost(sb, q);
      if (level == Level::Hard && rng.bernoulli(cfg.infeasible_fraction)) {
        const double m = rng.uniform_real(cfg.infeasible_multiplier_min, cfg.infeasible_multiplier_max);
        q.budget = static_cast<int>(std::floor(lower * m / 100.0)) * 100;
      } else {
        const double m = rng.uniform_real(cfg.budget_multiplier_min, cfg.budget_multiplier_max);
        q.budget = std::max(100, static_cast<int>(std::ceil(lower * m / 100.0)) * 100);
      }

      auto key = dedup_key(q);
      if (!used.insert(key).second) continue;

      char id[32];
      std::snprintf(id, sizeof id, "%05zu", out.size());
      q.query_id = cfg.id_prefix + id;
      q.query_text = render_query_text(q);
      auto ref = build_reference_information(sb, q);
      out.push_back(QueryRecord{std::move(q), std::move(ref)});
      placed = true;
    }
    if (!placed)
      throw ExhaustionError("could not find a fresh query after " + std::to_string(cfg.max_attempts) +
                            " attempts (" + std::to_string(out.size()) + " of " +
                            std::to_string(count) + " generated)");
  }
  return out;
}

}  // namespace imagine
