#pragma once

#include <memory>
#include <sstream>
#include <string>

#include "imagine/evaluator.hpp"
#include "imagine/mas.hpp"
#include "imagine/oracle_planner.hpp"
#include "imagine/query_gen.hpp"

namespace imagine {

/// Agent that answers from the sandbox instead of a language model. It
/// recovers the structured query embedded in the prompt, so it plugs into
/// run_mas() unchanged.
///   reasoner   cheapest constraint-respecting plan (or a route skeleton)
///   judge      "No errors." iff the answer passes every check
///   reflector  lists the failed checks and re-plans
class OracleAgent : public AgentBackend {
 public:
  OracleAgent(AgentRole role, std::shared_ptr<const Sandbox> sandbox)
      : role_(role), sandbox_(std::move(sandbox)) {}

  AgentReply invoke(const std::string& prompt) override {
    auto q = query_from_prompt(prompt);
    if (!q) throw BackendError("oracle agent: prompt carries no query");
    switch (role_) {
      case AgentRole::Reasoner: return {reason(*q), std::nullopt, std::nullopt};
      case AgentRole::Judge: return {judge(*q, answer_from_prompt(prompt).value_or("")), std::nullopt, std::nullopt};
      case AgentRole::Reflector: return {reflect(*q, answer_from_prompt(prompt).value_or("")), std::nullopt, std::nullopt};
    }
    throw BackendError("oracle agent: unknown role");
  }

  /// Route-only plan used when no complete plan exists.
  static TravelPlan skeleton(const Query& q) {
    TravelPlan plan;
    const auto route = itinerary_cities(q);
    for (int d = 1; d <= q.days; ++d) {
      DayEntry e;
      e.day = d;
      if (d == 1) e.current_city = format_current_city({route[0], route[1]});
      else if (d == q.days) e.current_city = format_current_city({route[route.size() - 2], route.back()});
      else e.current_city = route[route.size() - 2];
      plan.entries.push_back(e);
    }
    return plan;
  }

 private:
  std::string best_answer(const Query& q, std::ostringstream& think) const {
    auto best = plan_oracle(*sandbox_, q);
    if (!best) {
      think << "No complete plan satisfies the constraints with the available options.";
      return serialize_plan(skeleton(q));
    }
    think << "The cheapest plan that respects every constraint costs " << best->cost
          << " against a budget of " << q.budget << ".";
    if (!best->within_budget) think << " It exceeds the budget, and no cheaper plan exists.";
    return serialize_plan(best->plan);
  }

  std::string reason(const Query& q) const {
    std::ostringstream think;
    const auto route = itinerary_cities(q);
    think << "Route: ";
    for (std::size_t i = 0; i < route.size(); ++i) think << (i ? " -> " : "") << route[i];
    think << ". Travel days are placed to minimise cost and every option is checked against the "
             "reference information. ";
    const auto answer = best_answer(q, think);
    return "<think>" + think.str() + "</think>" + answer;
  }

  std::string judge(const Query& q, const std::string& answer) const {
    auto plan = parse_plan(answer);
    if (!plan) return "Errors exist.";
    return evaluate_plan(*sandbox_, q, *plan).final_pass ? "No errors." : "Errors exist.";
  }

  std::string reflect(const Query& q, const std::string& answer) const {
    std::ostringstream out;
    if (auto plan = parse_plan(answer)) {
      const auto report = evaluate_plan(*sandbox_, q, *plan);
      out << "Failed checks:";
      for (const auto& c : report.commonsense)
        if (!c.passed) out << " [" << c.name << ": " << c.detail << "]";
      for (const auto& h : report.hard)
        if (!h.passed) out << " [" << h.name << ": " << h.detail << "]";
    } else {
      out << "The answer is not a valid plan.";
    }
    out << " Correction: re-plan from the reference information. ";
    std::ostringstream note;
    const auto corrected = best_answer(q, note);
    out << note.str() << "\n" << kFinalAnswerTag << "\n" << corrected;
    return out.str();
  }

  AgentRole role_;
  std::shared_ptr<const Sandbox> sandbox_;
};

inline MasBackends oracle_backends(std::shared_ptr<const Sandbox> sb) {
  return MasBackends{std::make_shared<OracleAgent>(AgentRole::Reasoner, sb),
                     {std::make_shared<OracleAgent>(AgentRole::Judge, sb),
                      std::make_shared<OracleAgent>(AgentRole::Judge, sb)},
                     std::make_shared<OracleAgent>(AgentRole::Reflector, sb)};
}

}  // namespace imagine
