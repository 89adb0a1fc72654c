#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "imagine/sandbox.hpp"
#include "imagine/util/date.hpp"
#include "imagine/util/json_io.hpp"

namespace imagine {

enum class Level { Easy, Medium, Hard };

inline std::string_view to_string(Level l) {
  switch (l) {
    case Level::Easy: return "easy";
    case Level::Medium: return "medium";
    case Level::Hard: return "hard";
  }
  return "?";
}

inline std::optional<Level> level_from(std::string_view s) {
  if (s == "easy") return Level::Easy;
  if (s == "medium") return Level::Medium;
  if (s == "hard") return Level::Hard;
  return std::nullopt;
}

/// User-imposed constraints beyond the budget. Absent entries impose nothing.
///   house_rule     one of house_rule_values(); forbids accommodations tagged "No <value>"
///   cuisine        one of cuisine_tags(); at least one meal must serve it
///   room_type      "entire room" | "private room" | "shared room" | "not shared room"
///   transportation "no flight" | "no self-driving"
struct LocalConstraint {
  std::optional<std::string> house_rule;
  std::optional<std::string> cuisine;
  std::optional<std::string> room_type;
  std::optional<std::string> transportation;

  int count() const {
    return int(house_rule.has_value()) + int(cuisine.has_value()) + int(room_type.has_value()) +
           int(transportation.has_value());
  }

  /// Stable "kind=value|..." form used by the dedup key.
  std::string canonical() const {
    std::string out;
    auto add = [&](const char* k, const std::optional<std::string>& v) {
      out += k;
      out += '=';
      out += v.value_or("");
      out += '|';
    };
    add("cuisine", cuisine);
    add("house rule", house_rule);
    add("room type", room_type);
    add("transportation", transportation);
    return out;
  }
  bool operator==(const LocalConstraint&) const = default;
};

inline const std::vector<std::string>& house_rule_values() {
  static const std::vector<std::string> v = {"parties", "smoking", "children under 10", "pets",
                                             "visitors"};
  return v;
}

inline std::string house_rule_tag(std::string_view value) { return "No " + std::string(value); }

inline const std::vector<std::string>& room_type_values() {
  static const std::vector<std::string> v = {"entire room", "private room", "shared room",
                                             "not shared room"};
  return v;
}

inline const std::vector<std::string>& transportation_values() {
  static const std::vector<std::string> v = {"no flight", "no self-driving"};
  return v;
}

struct Query {
  std::string query_id;
  std::string origin;
  std::vector<std::string> destination;
  int days = 3;
  int visiting_city_number = 1;
  std::vector<Date> date;
  int people_number = 1;
  LocalConstraint local_constraint;
  int budget = 0;
  Level level = Level::Easy;
  std::string query_text;

  bool operator==(const Query&) const = default;
};

struct DedupKey {
  std::string origin;
  std::vector<std::string> destination;
  Date first_date;
  Date last_date;
  int people_number = 0;
  std::string local_constraint;
  int budget_band = 0;

  auto operator<=>(const DedupKey&) const = default;
};

inline constexpr int kBudgetBand = 500;

inline DedupKey dedup_key(const Query& q) {
  return DedupKey{q.origin,
                  q.destination,
                  q.date.empty() ? Date{} : q.date.front(),
                  q.date.empty() ? Date{} : q.date.back(),
                  q.people_number,
                  q.local_constraint.canonical(),
                  q.budget / kBudgetBand};
}

/// Transport options for one itinerary leg, restricted to the trip dates.
struct TransportSegment {
  std::string from;
  std::string to;
  std::vector<TransportLink> options;
  bool operator==(const TransportSegment&) const = default;
};

struct CityListing {
  std::string city;
  std::vector<Restaurant> restaurants;
  std::vector<Attraction> attractions;
  std::vector<Accommodation> accommodations;
  bool operator==(const CityListing&) const = default;
};

struct ReferenceInformation {
  std::vector<TransportSegment> transportation;
  std::vector<CityListing> cities;
  bool operator==(const ReferenceInformation&) const = default;
};

// ---------------------------------------------------------------------------
// JSON

inline Json to_json(const LocalConstraint& c) {
  auto opt = [](const std::optional<std::string>& v) { return v ? Json(*v) : Json(nullptr); };
  return Json{{"house rule", opt(c.house_rule)},
              {"cuisine", opt(c.cuisine)},
              {"room type", opt(c.room_type)},
              {"transportation", opt(c.transportation)}};
}

inline LocalConstraint local_constraint_from_json(const Json& j) {
  LocalConstraint c;
  if (!j.is_object()) throw ParseError("local_constraint must be an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    std::optional<std::string> v;
    if (!it.value().is_null()) {
      if (!it.value().is_string()) throw ParseError("local_constraint values must be strings");
      v = it.value().get<std::string>();
    }
    if (it.key() == "house rule") c.house_rule = v;
    else if (it.key() == "cuisine") c.cuisine = v;
    else if (it.key() == "room type") c.room_type = v;
    else if (it.key() == "transportation") c.transportation = v;
    else throw ParseError("unknown local_constraint kind '" + it.key() + "'");
  }
  return c;
}

inline Json to_json(const ReferenceInformation& ref) {
  Json j;
  j["transportation"] = Json::array();
  for (const auto& seg : ref.transportation) {
    Json opts = Json::array();
    for (const auto& l : seg.options) opts.push_back(to_json(l));
    j["transportation"].push_back(Json{{"from", seg.from}, {"to", seg.to}, {"options", opts}});
  }
  j["cities"] = Json::array();
  for (const auto& c : ref.cities) {
    Json city{{"city", c.city}};
    city["restaurants"] = Json::array();
    for (const auto& r : c.restaurants) city["restaurants"].push_back(to_json(r));
    city["attractions"] = Json::array();
    for (const auto& a : c.attractions) city["attractions"].push_back(to_json(a));
    city["accommodations"] = Json::array();
    for (const auto& a : c.accommodations) city["accommodations"].push_back(to_json(a));
    j["cities"].push_back(std::move(city));
  }
  return j;
}

inline ReferenceInformation reference_information_from_json(const Json& j) {
  ReferenceInformation ref;
  for (const auto& seg : j.at("transportation")) {
    TransportSegment s{seg.at("from").get<std::string>(), seg.at("to").get<std::string>(), {}};
    for (const auto& o : seg.at("options"))
      s.options.push_back(transport_link_from_json(o, "reference_information"));
    ref.transportation.push_back(std::move(s));
  }
  for (const auto& c : j.at("cities")) {
    CityListing l{c.at("city").get<std::string>(), {}, {}, {}};
    for (const auto& r : c.at("restaurants")) l.restaurants.push_back(restaurant_from_json(r, "ref"));
    for (const auto& a : c.at("attractions")) l.attractions.push_back(attraction_from_json(a, "ref"));
    for (const auto& a : c.at("accommodations"))
      l.accommodations.push_back(accommodation_from_json(a, "ref"));
    ref.cities.push_back(std::move(l));
  }
  return ref;
}

/// Query fields in the order of the JSONL output.
inline Json to_json(const Query& q) {
  Json dates = Json::array();
  for (const auto& d : q.date) dates.push_back(d.str());
  return Json{{"query_id", q.query_id},
              {"origin", q.origin},
              {"destination", q.destination},
              {"days", q.days},
              {"visiting_city_number", q.visiting_city_number},
              {"date", dates},
              {"people_number", q.people_number},
              {"local_constraint", to_json(q.local_constraint)},
              {"budget", q.budget},
              {"level", to_string(q.level)},
              {"query", q.query_text}};
}

inline Query query_from_json(const Json& j) {
  try {
    Query q;
    q.query_id = j.value("query_id", std::string{});
    q.origin = j.at("origin").get<std::string>();
    q.destination = j.at("destination").get<std::vector<std::string>>();
    q.days = j.at("days").get<int>();
    q.visiting_city_number = j.at("visiting_city_number").get<int>();
    for (const auto& s : j.at("date")) q.date.push_back(Date::parse(s.get<std::string>()));
    q.people_number = j.at("people_number").get<int>();
    q.local_constraint = local_constraint_from_json(j.at("local_constraint"));
    q.budget = j.at("budget").get<int>();
    auto level = level_from(j.at("level").get<std::string>());
    if (!level) throw ParseError("unknown level");
    q.level = *level;
    q.query_text = j.value("query", std::string{});
    return q;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("query: ") + e.what());
  }
}

/// A query together with its reference information, as stored in JSONL.
struct QueryRecord {
  Query query;
  ReferenceInformation reference;
  bool operator==(const QueryRecord&) const = default;
};

inline Json to_json(const QueryRecord& r) {
  Json j = to_json(r.query);
  j["reference_information"] = to_json(r.reference);
  return j;
}

inline QueryRecord query_record_from_json(const Json& j) {
  QueryRecord r{query_from_json(j), {}};
  if (j.contains("reference_information"))
    r.reference = reference_information_from_json(j.at("reference_information"));
  return r;
}

inline std::vector<QueryRecord> load_query_records(const std::filesystem::path& path) {
  std::vector<QueryRecord> out;
  for (const auto& row : read_jsonl(path)) out.push_back(query_record_from_json(row));
  return out;
}

}  // namespace imagine
