#pragma once

// Final-answer travel plans and the "<think>...</think>answer" response
// envelope that wraps them.

#include <algorithm>
#include <array>
#include <cctype>
#include <optional>
#include <regex>
#include <string>
#include <string_view>
#include <vector>

#include "imagine/sandbox.hpp"
#include "imagine/util/expected.hpp"
#include "imagine/util/json_io.hpp"

namespace imagine {

inline constexpr std::string_view kThinkOpen = "<think>";
inline constexpr std::string_view kThinkClose = "</think>";
inline constexpr std::string_view kAbsent = "-";

struct DayEntry {
  int day = 1;
  std::string current_city;
  std::string transportation = "-";
  std::string breakfast = "-";
  std::string lunch = "-";
  std::string dinner = "-";
  std::string attraction = "-";
  std::string accommodation = "-";

  bool operator==(const DayEntry&) const = default;
};

struct TravelPlan {
  std::vector<DayEntry> entries;
  bool operator==(const TravelPlan&) const = default;
};

/// Serialized key order of a day object.
inline constexpr std::array<std::string_view, 8> kDayKeys = {
    "day", "current_city", "transportation", "breakfast", "lunch", "dinner", "attraction",
    "accommodation"};

enum class FormatFailureReason { MissingOpenTag, MissingCloseTag, EmptyTail, MultipleCloseTags };

inline std::string_view to_string(FormatFailureReason r) {
  switch (r) {
    case FormatFailureReason::MissingOpenTag: return "missing open tag";
    case FormatFailureReason::MissingCloseTag: return "missing close tag";
    case FormatFailureReason::EmptyTail: return "empty tail";
    case FormatFailureReason::MultipleCloseTags: return "multiple close tags";
  }
  return "?";
}

struct FormatFailure {
  FormatFailureReason reason;
  bool operator==(const FormatFailure&) const = default;
};

struct PlanFailure {
  std::string message;
};

struct ResponseEnvelope {
  std::string think;
  std::string answer_raw;
  std::optional<TravelPlan> plan;

  std::string reconstruct() const {
    return std::string(kThinkOpen) + think + std::string(kThinkClose) + answer_raw;
  }
};

namespace detail {

inline bool is_blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c) != 0; });
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Plan JSON

/// Accepts a JSON array of day objects carrying exactly the eight day keys,
/// numbered 1..n. One surrounding markdown code fence is tolerated.
inline Expected<TravelPlan, PlanFailure> parse_plan(std::string_view answer_raw) {
  auto fail = [](std::string msg) { return Unexpected{PlanFailure{std::move(msg)}}; };

  std::string_view body = detail::trim(answer_raw);
  if (body.starts_with("```")) {
    const auto eol = body.find('\n');
    if (eol == std::string_view::npos || !body.ends_with("```") || body.size() < 6)
      return fail("unterminated code fence");
    body = detail::trim(body.substr(eol + 1, body.size() - 3 - (eol + 1)));
  }

  Json doc;
  try {
    doc = Json::parse(body);
  } catch (const nlohmann::json::parse_error& e) {
    return fail(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_array()) return fail("plan must be a JSON array");
  if (doc.empty()) return fail("plan has no days");

  TravelPlan plan;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto& obj = doc[i];
    const std::string where = "day entry " + std::to_string(i + 1);
    if (!obj.is_object()) return fail(where + ": not an object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      if (std::find(kDayKeys.begin(), kDayKeys.end(), it.key()) == kDayKeys.end())
        return fail(where + ": unexpected key '" + it.key() + "'");
    }
    DayEntry e;
    for (auto key : kDayKeys) {
      const std::string k(key);
      if (!obj.contains(k)) return fail(where + ": missing key '" + k + "'");
      const auto& v = obj.at(k);
      if (key == "day") {
        if (!v.is_number_integer()) return fail(where + ": 'day' must be an integer");
        e.day = v.get<int>();
        continue;
      }
      if (!v.is_string()) return fail(where + ": '" + k + "' must be a string");
      auto s = v.get<std::string>();
      if (key == "current_city") e.current_city = std::move(s);
      else if (key == "transportation") e.transportation = std::move(s);
      else if (key == "breakfast") e.breakfast = std::move(s);
      else if (key == "lunch") e.lunch = std::move(s);
      else if (key == "dinner") e.dinner = std::move(s);
      else if (key == "attraction") e.attraction = std::move(s);
      else e.accommodation = std::move(s);
    }
    if (e.day != static_cast<int>(i) + 1)
      return fail(where + ": non-consecutive days (got day " + std::to_string(e.day) + ")");
    plan.entries.push_back(std::move(e));
  }
  return plan;
}

inline Json plan_to_json(const TravelPlan& plan) {
  Json arr = Json::array();
  for (const auto& e : plan.entries) {
    arr.push_back(Json{{"day", e.day},
                       {"current_city", e.current_city},
                       {"transportation", e.transportation},
                       {"breakfast", e.breakfast},
                       {"lunch", e.lunch},
                       {"dinner", e.dinner},
                       {"attraction", e.attraction},
                       {"accommodation", e.accommodation}});
  }
  return arr;
}

inline std::string serialize_plan(const TravelPlan& plan) { return plan_to_json(plan).dump(2); }

// ---------------------------------------------------------------------------
// Envelope

/// Lossless split of "<think>" think "</think>" answer_raw. The plan is
/// parsed opportunistically; a JSON failure leaves `plan` empty.
inline Expected<ResponseEnvelope, FormatFailure> parse_envelope(std::string_view text) {
  if (!text.starts_with(kThinkOpen)) return Unexpected{FormatFailure{FormatFailureReason::MissingOpenTag}};
  const auto close = text.find(kThinkClose, kThinkOpen.size());
  if (close == std::string_view::npos)
    return Unexpected{FormatFailure{FormatFailureReason::MissingCloseTag}};
  if (text.find(kThinkClose, close + kThinkClose.size()) != std::string_view::npos)
    return Unexpected{FormatFailure{FormatFailureReason::MultipleCloseTags}};
  const auto tail = text.substr(close + kThinkClose.size());
  if (detail::is_blank(tail)) return Unexpected{FormatFailure{FormatFailureReason::EmptyTail}};

  ResponseEnvelope env;
  env.think = std::string(text.substr(kThinkOpen.size(), close - kThinkOpen.size()));
  env.answer_raw = std::string(tail);
  if (auto plan = parse_plan(env.answer_raw)) env.plan = *plan;
  return env;
}

// ---------------------------------------------------------------------------
// Field microformats. All "Name, City" / "from A to B" conventions live here.

struct PlaceRef {
  std::string name;
  std::string city;
  bool operator==(const PlaceRef&) const = default;
};

inline bool is_absent(std::string_view field) { return detail::trim(field) == kAbsent; }

/// "Name, City" split at the last ", ".
inline std::optional<PlaceRef> parse_place(std::string_view text) {
  text = detail::trim(text);
  const auto sep = text.rfind(", ");
  if (sep == std::string_view::npos) return std::nullopt;
  auto name = detail::trim(text.substr(0, sep));
  auto city = detail::trim(text.substr(sep + 2));
  if (name.empty() || city.empty()) return std::nullopt;
  return PlaceRef{std::string(name), std::string(city)};
}

/// Semicolon-joined places; a trailing ';' is allowed.
inline std::optional<std::vector<PlaceRef>> parse_place_list(std::string_view text) {
  std::vector<PlaceRef> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(';', start);
    if (end == std::string_view::npos) end = text.size();
    auto item = detail::trim(text.substr(start, end - start));
    if (!item.empty()) {
      auto place = parse_place(item);
      if (!place) return std::nullopt;
      out.push_back(std::move(*place));
    }
    start = end + 1;
  }
  if (out.empty()) return std::nullopt;
  return out;
}

inline std::string format_place(const PlaceRef& p) { return p.name + ", " + p.city; }

inline std::string format_place_list(const std::vector<PlaceRef>& places) {
  std::string out;
  for (const auto& p : places) out += format_place(p) + ";";
  return out.empty() ? std::string(kAbsent) : out;
}

/// current_city is either "City" or "from A to B".
struct CityField {
  std::optional<std::string> from;
  std::string to;

  bool is_transit() const { return from.has_value(); }
  bool operator==(const CityField&) const = default;
};

inline std::optional<CityField> parse_current_city(std::string_view text) {
  text = detail::trim(text);
  if (text.empty() || text == kAbsent) return std::nullopt;
  static const std::regex transit(R"(^from (.+) to (.+)$)");
  std::match_results<std::string_view::const_iterator> m;
  if (std::regex_match(text.begin(), text.end(), m, transit)) {
    return CityField{std::string(detail::trim(m.str(1))), std::string(detail::trim(m.str(2)))};
  }
  return CityField{std::nullopt, std::string(text)};
}

inline std::string format_current_city(const CityField& c) {
  return c.from ? "from " + *c.from + " to " + c.to : c.to;
}

struct TransportRef {
  TransportMode mode = TransportMode::Taxi;
  std::optional<std::string> flight_number;
  std::string from;
  std::string to;
  bool operator==(const TransportRef&) const = default;
};

/// "Flight Number: F0001, from A to B", "Self-driving, from A to B" or
/// "Taxi, from A to B", optionally followed by ", <details>".
inline std::optional<TransportRef> parse_transportation(std::string_view text) {
  static const std::regex pattern(
      R"(^(?:[Ff]light [Nn]umber:\s*([^,\s]+)|([Ss]elf-driving|[Tt]axi)),\s*from ([^,]+?) to ([^,]+?)\s*(?:,.*)?$)");
  text = detail::trim(text);
  std::match_results<std::string_view::const_iterator> m;
  if (!std::regex_match(text.begin(), text.end(), m, pattern)) return std::nullopt;
  TransportRef ref;
  if (m[1].matched) {
    ref.mode = TransportMode::Flight;
    ref.flight_number = m.str(1);
  } else {
    ref.mode = std::tolower(static_cast<unsigned char>(m.str(2)[0])) == 's' ? TransportMode::SelfDriving
                                                                           : TransportMode::Taxi;
  }
  ref.from = m.str(3);
  ref.to = m.str(4);
  return ref;
}

inline std::string format_transportation(const TransportRef& t) {
  std::string head;
  switch (t.mode) {
    case TransportMode::Flight: head = "Flight Number: " + t.flight_number.value_or("?"); break;
    case TransportMode::SelfDriving: head = "Self-driving"; break;
    case TransportMode::Taxi: head = "Taxi"; break;
  }
  return head + ", from " + t.from + " to " + t.to;
}

}  // namespace imagine
