#pragma once

// Deterministic synthetic travel sandbox: the ground truth for reference
// information and for every plan validity check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "imagine/util/date.hpp"
#include "imagine/util/errors.hpp"
#include "imagine/util/json_io.hpp"
#include "imagine/util/rng.hpp"

namespace imagine {

enum class TransportMode { Flight, SelfDriving, Taxi };

enum class RoomType { EntireRoom, PrivateRoom, SharedRoom, NotSharedRoom };

enum class SandboxProfile { Tiny, Standard };

inline std::string_view to_string(TransportMode m) {
  switch (m) {
    case TransportMode::Flight: return "flight";
    case TransportMode::SelfDriving: return "self-driving";
    case TransportMode::Taxi: return "taxi";
  }
  return "?";
}

inline std::optional<TransportMode> transport_mode_from(std::string_view s) {
  if (s == "flight") return TransportMode::Flight;
  if (s == "self-driving") return TransportMode::SelfDriving;
  if (s == "taxi") return TransportMode::Taxi;
  return std::nullopt;
}

inline std::string_view to_string(RoomType r) {
  switch (r) {
    case RoomType::EntireRoom: return "entire room";
    case RoomType::PrivateRoom: return "private room";
    case RoomType::SharedRoom: return "shared room";
    case RoomType::NotSharedRoom: return "not shared room";
  }
  return "?";
}

inline std::optional<RoomType> room_type_from(std::string_view s) {
  if (s == "entire room") return RoomType::EntireRoom;
  if (s == "private room") return RoomType::PrivateRoom;
  if (s == "shared room") return RoomType::SharedRoom;
  if (s == "not shared room") return RoomType::NotSharedRoom;
  return std::nullopt;
}

inline std::string_view to_string(SandboxProfile p) {
  return p == SandboxProfile::Tiny ? "tiny" : "standard";
}

inline std::optional<SandboxProfile> sandbox_profile_from(std::string_view s) {
  if (s == "tiny") return SandboxProfile::Tiny;
  if (s == "standard") return SandboxProfile::Standard;
  return std::nullopt;
}

struct City {
  std::string name;
  std::string state;
  bool operator==(const City&) const = default;
};

/// Flight cost is per person; self-driving and taxi cost is per group.
struct TransportLink {
  std::string origin;
  std::string destination;
  TransportMode mode = TransportMode::Taxi;
  int cost = 0;
  int duration = 0;  // minutes
  std::optional<std::string> flight_number;
  std::vector<Date> date_availability;  // flights only, sorted

  bool available_on(const Date& d) const {
    if (mode != TransportMode::Flight) return true;
    return std::binary_search(date_availability.begin(), date_availability.end(), d);
  }
  bool operator==(const TransportLink&) const = default;
};

struct Restaurant {
  std::string name;
  std::string city;
  std::vector<std::string> cuisines;
  int avg_cost = 0;  // per person per meal

  bool serves(std::string_view cuisine) const {
    return std::find(cuisines.begin(), cuisines.end(), cuisine) != cuisines.end();
  }
  bool operator==(const Restaurant&) const = default;
};

struct Attraction {
  std::string name;
  std::string city;
  bool operator==(const Attraction&) const = default;
};

struct Accommodation {
  std::string name;
  std::string city;
  RoomType room_type = RoomType::EntireRoom;
  int price_per_night = 0;  // per room
  std::vector<std::string> house_rules;
  int max_occupancy = 1;
  int min_nights = 1;

  bool has_rule(std::string_view rule) const {
    return std::find(house_rules.begin(), house_rules.end(), rule) != house_rules.end();
  }
  int rooms_for(int people) const { return (people + max_occupancy - 1) / max_occupancy; }
  bool operator==(const Accommodation&) const = default;
};

/// Immutable once built; share freely across readers.
struct Sandbox {
  std::vector<City> cities;
  std::vector<TransportLink> links;
  std::vector<Restaurant> restaurants;
  std::vector<Attraction> attractions;
  std::vector<Accommodation> accommodations;
  std::uint64_t seed = 0;

  bool operator==(const Sandbox&) const = default;

  const City* find_city(std::string_view name) const {
    for (const auto& c : cities)
      if (c.name == name) return &c;
    return nullptr;
  }
  bool has_city(std::string_view name) const { return find_city(name) != nullptr; }

  const Restaurant* find_restaurant(std::string_view name, std::string_view city) const {
    for (const auto& r : restaurants)
      if (r.name == name && r.city == city) return &r;
    return nullptr;
  }
  const Attraction* find_attraction(std::string_view name, std::string_view city) const {
    for (const auto& a : attractions)
      if (a.name == name && a.city == city) return &a;
    return nullptr;
  }
  const Accommodation* find_accommodation(std::string_view name, std::string_view city) const {
    for (const auto& a : accommodations)
      if (a.name == name && a.city == city) return &a;
    return nullptr;
  }
  const TransportLink* find_flight(std::string_view number) const {
    for (const auto& l : links)
      if (l.flight_number && *l.flight_number == number) return &l;
    return nullptr;
  }

  template <class Record>
  static std::vector<Record> in_city(const std::vector<Record>& records, std::string_view city) {
    std::vector<Record> out;
    for (const auto& r : records)
      if (r.city == city) out.push_back(r);
    return out;
  }

  std::vector<TransportLink> links_between(std::string_view from, std::string_view to) const {
    std::vector<TransportLink> out;
    for (const auto& l : links)
      if (l.origin == from && l.destination == to) out.push_back(l);
    return out;
  }
};

// Calendar window shared by flight schedules and query dates.
inline const Date kCalendarStart{2022, 3, 1};
inline constexpr int kCalendarDays = 61;

inline const std::vector<std::string>& house_rule_tags() {
  static const std::vector<std::string> tags = {"No parties", "No smoking", "No children under 10",
                                                "No pets", "No visitors"};
  return tags;
}

inline const std::vector<std::string>& cuisine_tags() {
  static const std::vector<std::string> tags = {
      "American", "Mexican", "Italian", "Chinese", "Indian",  "French",  "Japanese", "Mediterranean",
      "Thai",     "BBQ",     "Seafood", "Desserts", "Pizza", "Cafe",   "Fast Food"};
  return tags;
}

// ---------------------------------------------------------------------------
// Validation

namespace detail {

inline void require(bool ok, const std::string& where, const std::string& what) {
  if (!ok) throw InvariantError(where + ": " + what);
}

inline bool has_any(std::string_view s, std::string_view chars) {
  return s.find_first_of(chars) != std::string_view::npos;
}

}  // namespace detail

/// Throws InvariantError naming the first offending record.
inline void validate(const Sandbox& sb) {
  using detail::require;
  std::set<std::string> names;
  for (std::size_t i = 0; i < sb.cities.size(); ++i) {
    const auto& c = sb.cities[i];
    const std::string where = "cities[" + std::to_string(i) + "]";
    require(!c.name.empty(), where, "empty city name");
    // ", " and ";" delimit plan items, so names must not contain them.
    require(!detail::has_any(c.name, ",;"), where, "city name contains ',' or ';'");
    require(names.insert(c.name).second, where, "duplicate city '" + c.name + "'");
  }
  auto city_ok = [&](const std::string& city, const std::string& where) {
    require(names.count(city) > 0, where, "unknown city '" + city + "'");
  };

  std::set<std::string> flight_numbers;
  for (std::size_t i = 0; i < sb.links.size(); ++i) {
    const auto& l = sb.links[i];
    const std::string where = "links[" + std::to_string(i) + "]";
    city_ok(l.origin, where);
    city_ok(l.destination, where);
    require(l.origin != l.destination, where, "origin equals destination");
    require(l.cost >= 0, where, "negative cost");
    require(l.duration > 0, where, "non-positive duration");
    const bool flight = l.mode == TransportMode::Flight;
    require(flight == l.flight_number.has_value(), where,
            "flight_number must be present iff mode is flight");
    if (flight) {
      require(flight_numbers.insert(*l.flight_number).second, where,
              "duplicate flight number " + *l.flight_number);
      require(std::is_sorted(l.date_availability.begin(), l.date_availability.end()), where,
              "date_availability not sorted");
    } else {
      require(l.date_availability.empty(), where, "date_availability on a non-flight link");
    }
  }

  std::set<std::pair<std::string, std::string>> seen;
  for (std::size_t i = 0; i < sb.restaurants.size(); ++i) {
    const auto& r = sb.restaurants[i];
    const std::string where = "restaurants[" + std::to_string(i) + "] '" + r.name + "'";
    city_ok(r.city, where);
    require(!r.name.empty() && !detail::has_any(r.name, ";"), where, "bad name");
    require(r.avg_cost >= 0, where, "negative avg_cost");
    require(!r.cuisines.empty(), where, "no cuisines");
    require(seen.insert({r.name, r.city}).second, where, "duplicate (name, city)");
  }
  seen.clear();
  for (std::size_t i = 0; i < sb.attractions.size(); ++i) {
    const auto& a = sb.attractions[i];
    const std::string where = "attractions[" + std::to_string(i) + "] '" + a.name + "'";
    city_ok(a.city, where);
    require(!a.name.empty() && !detail::has_any(a.name, ";"), where, "bad name");
    require(seen.insert({a.name, a.city}).second, where, "duplicate (name, city)");
  }
  seen.clear();
  for (std::size_t i = 0; i < sb.accommodations.size(); ++i) {
    const auto& a = sb.accommodations[i];
    const std::string where = "accommodations[" + std::to_string(i) + "] '" + a.name + "'";
    city_ok(a.city, where);
    require(!a.name.empty() && !detail::has_any(a.name, ";"), where, "bad name");
    require(a.price_per_night >= 0, where, "negative price_per_night");
    require(a.max_occupancy >= 1, where, "max_occupancy < 1");
    require(a.min_nights >= 1, where, "min_nights < 1");
    require(seen.insert({a.name, a.city}).second, where, "duplicate (name, city)");
  }
}

// ---------------------------------------------------------------------------
// JSON

inline Json to_json(const TransportLink& l) {
  Json dates = Json::array();
  for (const auto& d : l.date_availability) dates.push_back(d.str());
  return Json{{"origin", l.origin},
              {"destination", l.destination},
              {"mode", to_string(l.mode)},
              {"cost", l.cost},
              {"duration", l.duration},
              {"flight_number", l.flight_number ? Json(*l.flight_number) : Json(nullptr)},
              {"date_availability", std::move(dates)}};
}

inline Json to_json(const Restaurant& r) {
  return Json{{"name", r.name}, {"city", r.city}, {"cuisines", r.cuisines}, {"avg_cost", r.avg_cost}};
}

inline Json to_json(const Attraction& a) { return Json{{"name", a.name}, {"city", a.city}}; }

inline Json to_json(const Accommodation& a) {
  return Json{{"name", a.name},
              {"city", a.city},
              {"room_type", to_string(a.room_type)},
              {"price_per_night", a.price_per_night},
              {"house_rules", a.house_rules},
              {"max_occupancy", a.max_occupancy},
              {"min_nights", a.min_nights}};
}

inline Json to_json(const Sandbox& sb) {
  Json j;
  j["cities"] = Json::array();
  for (const auto& c : sb.cities) j["cities"].push_back(Json{{"name", c.name}, {"state", c.state}});
  j["links"] = Json::array();
  for (const auto& l : sb.links) j["links"].push_back(to_json(l));
  j["restaurants"] = Json::array();
  for (const auto& r : sb.restaurants) j["restaurants"].push_back(to_json(r));
  j["attractions"] = Json::array();
  for (const auto& a : sb.attractions) j["attractions"].push_back(to_json(a));
  j["accommodations"] = Json::array();
  for (const auto& a : sb.accommodations) j["accommodations"].push_back(to_json(a));
  j["seed"] = sb.seed;
  return j;
}

namespace detail {

template <class T>
T field(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key))
    throw ParseError(where + ": missing field '" + key + "'");
  try {
    return obj.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ParseError(where + ": field '" + key + "' has the wrong type");
  }
}

inline const Json& array_field(const Json& doc, const char* key) {
  if (!doc.contains(key) || !doc.at(key).is_array())
    throw ParseError(std::string("sandbox: missing array '") + key + "'");
  return doc.at(key);
}

}  // namespace detail

inline TransportLink transport_link_from_json(const Json& j, const std::string& where) {
  using detail::field;
  TransportLink l;
  l.origin = field<std::string>(j, "origin", where);
  l.destination = field<std::string>(j, "destination", where);
  auto mode = transport_mode_from(field<std::string>(j, "mode", where));
  if (!mode) throw ParseError(where + ": unknown mode");
  l.mode = *mode;
  l.cost = field<int>(j, "cost", where);
  l.duration = field<int>(j, "duration", where);
  if (j.contains("flight_number") && !j.at("flight_number").is_null())
    l.flight_number = field<std::string>(j, "flight_number", where);
  if (j.contains("date_availability")) {
    for (const auto& s : field<std::vector<std::string>>(j, "date_availability", where)) {
      auto d = Date::try_parse(s);
      if (!d) throw ParseError(where + ": bad date '" + s + "'");
      l.date_availability.push_back(*d);
    }
  }
  return l;
}

inline Restaurant restaurant_from_json(const Json& j, const std::string& where) {
  using detail::field;
  return Restaurant{field<std::string>(j, "name", where), field<std::string>(j, "city", where),
                    field<std::vector<std::string>>(j, "cuisines", where),
                    field<int>(j, "avg_cost", where)};
}

inline Attraction attraction_from_json(const Json& j, const std::string& where) {
  using detail::field;
  return Attraction{field<std::string>(j, "name", where), field<std::string>(j, "city", where)};
}

inline Accommodation accommodation_from_json(const Json& j, const std::string& where) {
  using detail::field;
  Accommodation a;
  a.name = field<std::string>(j, "name", where);
  a.city = field<std::string>(j, "city", where);
  auto rt = room_type_from(field<std::string>(j, "room_type", where));
  if (!rt) throw ParseError(where + ": unknown room_type");
  a.room_type = *rt;
  a.price_per_night = field<int>(j, "price_per_night", where);
  a.house_rules = field<std::vector<std::string>>(j, "house_rules", where);
  a.max_occupancy = field<int>(j, "max_occupancy", where);
  a.min_nights = field<int>(j, "min_nights", where);
  return a;
}

/// Parses and validates. ParseError on schema problems, InvariantError on
/// referential or value violations.
inline Sandbox sandbox_from_json(const Json& doc) {
  if (!doc.is_object()) throw ParseError("sandbox: top level must be an object");
  Sandbox sb;
  const auto& cities = detail::array_field(doc, "cities");
  for (std::size_t i = 0; i < cities.size(); ++i) {
    const std::string where = "cities[" + std::to_string(i) + "]";
    sb.cities.push_back(City{detail::field<std::string>(cities[i], "name", where),
                             detail::field<std::string>(cities[i], "state", where)});
  }
  const auto& links = detail::array_field(doc, "links");
  for (std::size_t i = 0; i < links.size(); ++i)
    sb.links.push_back(transport_link_from_json(links[i], "links[" + std::to_string(i) + "]"));
  const auto& rest = detail::array_field(doc, "restaurants");
  for (std::size_t i = 0; i < rest.size(); ++i)
    sb.restaurants.push_back(restaurant_from_json(rest[i], "restaurants[" + std::to_string(i) + "]"));
  const auto& attr = detail::array_field(doc, "attractions");
  for (std::size_t i = 0; i < attr.size(); ++i)
    sb.attractions.push_back(attraction_from_json(attr[i], "attractions[" + std::to_string(i) + "]"));
  const auto& acc = detail::array_field(doc, "accommodations");
  for (std::size_t i = 0; i < acc.size(); ++i)
    sb.accommodations.push_back(
        accommodation_from_json(acc[i], "accommodations[" + std::to_string(i) + "]"));
  sb.seed = detail::field<std::uint64_t>(doc, "seed", "sandbox");
  validate(sb);
  return sb;
}

inline std::string serialize_sandbox(const Sandbox& sb) { return to_json(sb).dump(2) + "\n"; }

inline void save_sandbox(const Sandbox& sb, const std::filesystem::path& path) {
  write_text_file(path, serialize_sandbox(sb));
}

inline Sandbox load_sandbox(const std::filesystem::path& path) {
  return sandbox_from_json(parse_json_text(read_text_file(path), path.string()));
}

// ---------------------------------------------------------------------------
// Generation

namespace detail {

struct ProfileShape {
  int regions;
  int cities_per_region;
  int restaurants_min, restaurants_max;
  int attractions_min, attractions_max;
  int accommodations_min, accommodations_max;
  double flight_pair_prob;      // per ordered cross-region pair
  double cross_drive_prob;      // per unordered cross-region pair
  double flight_date_prob;      // per calendar date
};

inline ProfileShape shape_of(SandboxProfile p) {
  if (p == SandboxProfile::Tiny) return {3, 3, 4, 8, 0, 5, 4, 7, 0.9, 0.5, 0.85};
  return {8, 5, 6, 12, 2, 8, 4, 8, 0.55, 0.35, 0.7};
}

inline int dist_units(double ax, double ay, double bx, double by) {
  return static_cast<int>(std::lround(std::hypot(ax - bx, ay - by)));
}

/// Draws `count` distinct "<first> <second>" names.
inline std::vector<std::string> distinct_names(Rng& rng, const std::vector<std::string>& first,
                                               const std::vector<std::string>& second, int count,
                                               const char* sep = " ") {
  std::vector<std::string> all;
  for (const auto& a : first)
    for (const auto& b : second) all.push_back(a + sep + b);
  rng.shuffle(all);
  all.resize(std::min<std::size_t>(all.size(), static_cast<std::size_t>(count)));
  return all;
}

}  // namespace detail

/// Deterministic in (seed, profile). Same-region city pairs always get taxi
/// and self-driving links in both directions; flights only cross regions and
/// only for a random subset of ordered pairs.
inline Sandbox generate_sandbox(std::uint64_t seed, SandboxProfile profile) {
  const auto shape = detail::shape_of(profile);
  Rng rng(seed);
  Sandbox sb;
  sb.seed = seed;

  static const std::vector<std::string> states = {"Arden",  "Brevia", "Caldor", "Dunmore",
                                                  "Estria", "Falken", "Galdor", "Hollis",
                                                  "Isen",   "Jorvik"};
  static const std::vector<std::string> city_head = {
      "Ash", "Bel",  "Cal",  "Dor", "Elm",   "Fal", "Gran", "Hart", "Iron", "Jun", "Kel",  "Lyn",
      "Mar", "Nor",  "Oak",  "Pine", "Quin", "Red", "Sil",  "Thorn", "Ul",  "Val", "West", "York"};
  static const std::vector<std::string> city_tail = {"ford",  "ton",  "ville", "burg",  "port",
                                                     "field", "wood", "dale",  "haven", "ridge"};
  static const std::vector<std::string> food_adj = {
      "Golden", "Rustic", "Blue",   "Silver", "Little", "Happy", "Old",   "Urban",
      "Coastal", "Royal", "Green",  "Sunny",  "Cozy",   "Spicy", "Lucky", "Maple"};
  static const std::vector<std::string> food_noun = {
      "Fork",   "Spoon",  "Table", "Kitchen", "Grill",  "Bistro",  "Diner",      "Garden",
      "Oven",   "Plate",  "Corner", "House",  "Tavern", "Cantina", "Noodle Bar", "Cafe"};
  static const std::vector<std::string> sight_adj = {"Central",  "Riverside", "Old Town", "Heritage",
                                                     "Lakeside", "Sunset",    "Liberty",  "Pioneer",
                                                     "Harbor",   "Memorial",  "Hilltop",  "Grand"};
  static const std::vector<std::string> sight_noun = {"Park",    "Museum", "Gallery", "Gardens",
                                                      "Aquarium", "Zoo",   "Tower",   "Market",
                                                      "Theater", "Pier"};
  static const std::vector<std::string> stay_adj = {"Cozy",    "Sunny",    "Modern",   "Quiet",
                                                    "Charming", "Spacious", "Bright",   "Elegant",
                                                    "Rustic",  "Downtown", "Lakeview", "Garden"};
  static const std::vector<std::string> stay_noun = {"Loft",  "Studio",  "Apartment", "Cottage",
                                                     "Suite", "Room",    "Villa",     "Retreat",
                                                     "Bungalow", "Flat"};

  const int n_cities = shape.regions * shape.cities_per_region;
  auto city_names = detail::distinct_names(rng, city_head, city_tail, n_cities, "");

  struct Pos {
    double x, y;
    int region;
  };
  std::vector<Pos> pos;
  for (int r = 0; r < shape.regions; ++r) {
    const double cx = rng.uniform_real(0, 1000), cy = rng.uniform_real(0, 1000);
    for (int k = 0; k < shape.cities_per_region; ++k) {
      const auto idx = static_cast<std::size_t>(r * shape.cities_per_region + k);
      sb.cities.push_back(City{city_names[idx], states[static_cast<std::size_t>(r)]});
      pos.push_back({cx + rng.uniform_real(-60, 60), cy + rng.uniform_real(-60, 60), r});
    }
  }

  int next_flight = 1;
  auto make_flight_dates = [&] {
    std::vector<Date> dates;
    for (int d = 0; d < kCalendarDays; ++d)
      if (rng.bernoulli(shape.flight_date_prob)) dates.push_back(kCalendarStart.plus_days(d));
    return dates;
  };
  const auto n = static_cast<std::size_t>(n_cities);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const int dist = std::max(1, detail::dist_units(pos[i].x, pos[i].y, pos[j].x, pos[j].y));
      const auto& a = sb.cities[i].name;
      const auto& b = sb.cities[j].name;
      const bool same_region = pos[i].region == pos[j].region;
      if (same_region) {
        const int taxi = 10 + dist + static_cast<int>(rng.uniform_int(0, 20));
        const int drive = 5 + dist / 2 + static_cast<int>(rng.uniform_int(0, 10));
        for (auto [o, d] : {std::pair{a, b}, std::pair{b, a}}) {
          sb.links.push_back({o, d, TransportMode::Taxi, taxi, 10 + dist * 6 / 5, std::nullopt, {}});
          sb.links.push_back(
              {o, d, TransportMode::SelfDriving, drive, 10 + dist, std::nullopt, {}});
        }
      } else if (rng.bernoulli(shape.cross_drive_prob)) {
        const int drive = 5 + dist / 2 + static_cast<int>(rng.uniform_int(0, 30));
        for (auto [o, d] : {std::pair{a, b}, std::pair{b, a}})
          sb.links.push_back(
              {o, d, TransportMode::SelfDriving, drive, 10 + dist, std::nullopt, {}});
      }
      if (same_region) continue;
      for (auto [o, d] : {std::pair{a, b}, std::pair{b, a}}) {
        if (!rng.bernoulli(shape.flight_pair_prob)) continue;
        const int flights = static_cast<int>(rng.uniform_int(1, 2));
        for (int f = 0; f < flights; ++f) {
          char num[16];
          std::snprintf(num, sizeof num, "F%04d", next_flight++);
          const int cost = 60 + dist * 3 / 20 + static_cast<int>(rng.uniform_int(0, 40));
          sb.links.push_back({o, d, TransportMode::Flight, cost, 60 + dist / 10, std::string(num),
                              make_flight_dates()});
        }
      }
    }
  }

  for (const auto& city : sb.cities) {
    const int nr = static_cast<int>(rng.uniform_int(shape.restaurants_min, shape.restaurants_max));
    for (auto& name : detail::distinct_names(rng, food_adj, food_noun, nr)) {
      Restaurant r{name, city.name, {}, static_cast<int>(rng.uniform_int(10, 100))};
      const int nc = static_cast<int>(rng.uniform_int(1, 3));
      auto tags = cuisine_tags();
      rng.shuffle(tags);
      r.cuisines.assign(tags.begin(), tags.begin() + nc);
      sb.restaurants.push_back(std::move(r));
    }
    const int na = static_cast<int>(rng.uniform_int(shape.attractions_min, shape.attractions_max));
    for (auto& name : detail::distinct_names(rng, sight_adj, sight_noun, na))
      sb.attractions.push_back(Attraction{name, city.name});
    const int nh =
        static_cast<int>(rng.uniform_int(shape.accommodations_min, shape.accommodations_max));
    for (auto& name : detail::distinct_names(rng, stay_adj, stay_noun, nh)) {
      Accommodation a;
      a.name = name;
      a.city = city.name;
      const auto kind = rng.uniform_int(0, 2);
      a.room_type = static_cast<RoomType>(kind);
      const int base = kind == 0 ? 150 : (kind == 1 ? 80 : 40);
      a.price_per_night = base + static_cast<int>(rng.uniform_int(0, base * 2));
      for (const auto& rule : house_rule_tags())
        if (rng.bernoulli(0.3)) a.house_rules.push_back(rule);
      a.max_occupancy = kind == 2 ? static_cast<int>(rng.uniform_int(1, 2))
                                  : static_cast<int>(rng.uniform_int(2, 6));
      const auto mn = rng.uniform_int(0, 9);
      a.min_nights = mn < 6 ? 1 : (mn < 9 ? 2 : 3);
      sb.accommodations.push_back(std::move(a));
    }
  }

  validate(sb);
  return sb;
}

}  // namespace imagine
