#pragma once

// Independent reading of the response envelope and the plan JSON: a
// character scan for the tags and a direct walk over the parsed document.

#include <cctype>
#include <optional>
#include <string>
#include <vector>

#include "imagine/plan.hpp"

namespace scan {

using imagine::FormatFailureReason;
using imagine::TravelPlan;

struct Envelope {
  std::optional<FormatFailureReason> failure;
  std::string think, tail;
};

inline bool blank(const std::string& s) {
  for (char c : s)
    if (!(c == ' ' || c == '\n' || c == '\t' || c == '\r' || c == '\v' || c == '\f')) return false;
  return true;
}

inline Envelope envelope(const std::string& s) {
  const std::string open = "<think>", close = "</think>";
  auto at = [&](std::size_t i, const std::string& w) {
    if (i + w.size() > s.size()) return false;
    for (std::size_t k = 0; k < w.size(); ++k)
      if (s[i + k] != w[k]) return false;
    return true;
  };
  if (!at(0, open)) return {FormatFailureReason::MissingOpenTag, {}, {}};
  std::vector<std::size_t> hits;
  for (std::size_t i = open.size(); i < s.size(); ++i)
    if (at(i, close)) hits.push_back(i);
  if (hits.empty()) return {FormatFailureReason::MissingCloseTag, {}, {}};
  if (hits.size() > 1) return {FormatFailureReason::MultipleCloseTags, {}, {}};
  std::string tail = s.substr(hits[0] + close.size());
  if (blank(tail)) return {FormatFailureReason::EmptyTail, {}, {}};
  return {std::nullopt, s.substr(open.size(), hits[0] - open.size()), tail};
}

inline std::string strip(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

/// The plan in a final answer, or nothing.
inline std::optional<TravelPlan> plan(const std::string& tail) {
  std::string body = strip(tail);
  if (body.rfind("```", 0) == 0) {
    const auto nl = body.find('\n');
    if (nl == std::string::npos || body.size() < 6 || body.substr(body.size() - 3) != "```") return std::nullopt;
    body = strip(body.substr(nl + 1, body.size() - 3 - (nl + 1)));
  }
  const auto doc = nlohmann::json::parse(body, nullptr, false);
  if (doc.is_discarded() || !doc.is_array() || doc.empty()) return std::nullopt;
  TravelPlan p;
  int n = 0;
  for (const auto& o : doc) {
    ++n;
    if (!o.is_object() || o.size() != 8) return std::nullopt;
    if (!o.contains("day") || !o["day"].is_number_integer() || o["day"].get<long>() != n) return std::nullopt;
    imagine::DayEntry e;
    e.day = n;
    std::string* slots[7] = {&e.current_city, &e.transportation, &e.breakfast, &e.lunch,
                             &e.dinner,       &e.attraction,     &e.accommodation};
    const char* names[7] = {"current_city", "transportation", "breakfast", "lunch",
                            "dinner",       "attraction",     "accommodation"};
    for (int k = 0; k < 7; ++k) {
      if (!o.contains(names[k]) || !o[names[k]].is_string()) return std::nullopt;
      *slots[k] = o[names[k]].get<std::string>();
    }
    p.entries.push_back(e);
  }
  return p;
}

}  // namespace scan
