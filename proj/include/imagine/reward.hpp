#pragma once

// Composite rule-based reward:
//   R = -1                                        if the format check fails
//   R = commonsense micro + hard micro +/- 0.5    otherwise
// where the format check requires a "<think>...</think>answer" envelope whose
// answer parses as a plan, and the +/-0.5 term rewards a reflection at the
// end of the think section.

#include <regex>
#include <string>
#include <string_view>

#include "imagine/evaluator.hpp"
#include "imagine/plan.hpp"
#include "imagine/query.hpp"
#include "imagine/sandbox.hpp"
#include "imagine/util/json_io.hpp"

namespace imagine {

inline constexpr std::string_view kReflectionMarker =
    "REFLECTION(Now, I need to reflect on whether there are any errors in my reasoning above):";
inline constexpr std::string_view kReflectionCloser =
    "The reflection is over, now IMMEDIATELY output the final answer!";
inline constexpr std::string_view kNoErrors = "No errors.";

inline constexpr double kFormatFailureReward = -1.0;
inline constexpr double kReflectionBonus = 0.5;

struct ReflectionRule {
  /// The last marker must start within this trailing share of the think text.
  double trailing_region = 0.4;
};

/// True iff the think text ends with a reflection: the last "REFLECTION"
/// marker is followed by content and either starts in the trailing region or
/// opens the block that closes the think text with the closing sentence.
inline bool detect_reflection(std::string_view think, const ReflectionRule& rule = {}) {
  const auto pos = think.rfind("REFLECTION");
  if (pos == std::string_view::npos) return false;

  static const std::regex block(R"(^REFLECTION(?:\([^)]*\)|(?!\())(?::|(?!:))\s*\S)");
  const auto tail = think.substr(pos);
  if (!std::regex_search(tail.begin(), tail.end(), block)) return false;

  const double start_fraction = static_cast<double>(pos) / static_cast<double>(think.size());
  if (start_fraction >= 1.0 - rule.trailing_region) return true;
  return detail::trim(tail).ends_with(kReflectionCloser);
}

struct RewardBreakdown {
  bool format_ok = false;
  std::string failure;  // empty when format_ok
  double commonsense_reward = 0;
  double hard_reward = 0;
  double reflection_reward = 0;
  double total = kFormatFailureReward;
};

inline RewardBreakdown compute_reward(const Sandbox& sb, const Query& q, std::string_view response,
                                      const EvalConventions& conv = {},
                                      const ReflectionRule& rule = {}) {
  RewardBreakdown r;
  auto env = parse_envelope(response);
  if (!env) {
    r.failure = std::string(to_string(env.error().reason));
    return r;
  }
  if (!env->plan) {
    r.failure = parse_plan(env->answer_raw).error().message;
    return r;
  }
  const auto report = evaluate_plan(sb, q, *env->plan, conv);
  r.format_ok = true;
  r.commonsense_reward = report.commonsense_micro;
  r.hard_reward = report.hard_micro;
  r.reflection_reward = detect_reflection(env->think, rule) ? kReflectionBonus : -kReflectionBonus;
  r.total = r.commonsense_reward + r.hard_reward + r.reflection_reward;
  return r;
}

inline Json to_json(const RewardBreakdown& r) {
  return Json{{"format_ok", r.format_ok},
              {"failure", r.failure.empty() ? Json(nullptr) : Json(r.failure)},
              {"commonsense_reward", r.commonsense_reward},
              {"hard_reward", r.hard_reward},
              {"reflection_reward", r.reflection_reward},
              {"total", r.total}};
}

}  // namespace imagine
