#pragma once

// Desk-scale training objectives on a tabular softmax policy.
//
// The policy holds one logit vector per (context, position), so
//   log pi(y_t | x, y_<t) = log softmax(theta[x][t])[y_t]
// and every gradient below is exact.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "imagine/util/errors.hpp"
#include "imagine/util/rng.hpp"

namespace imagine {

class UnknownTokenError : public Error {
 public:
  explicit UnknownTokenError(const std::string& what) : Error("unknown_token", what) {}
};

class DivergenceError : public Error {
 public:
  explicit DivergenceError(const std::string& what) : Error("divergence", what) {}
};

class ToyPolicy {
 public:
  ToyPolicy(int contexts, int positions, int vocab)
      : contexts_(contexts), positions_(positions), vocab_(vocab),
        logits_(static_cast<std::size_t>(contexts) * positions * vocab, 0.0) {
    if (contexts < 1 || positions < 1 || vocab < 2) throw ConfigError("ToyPolicy: bad shape");
  }

  int contexts() const { return contexts_; }
  int positions() const { return positions_; }
  int vocab() const { return vocab_; }

  std::span<double> parameters() { return logits_; }
  std::span<const double> parameters() const { return logits_; }

  std::size_t offset(int context, int position) const {
    return (static_cast<std::size_t>(context) * positions_ + position) * vocab_;
  }

  std::vector<double> probabilities(int context, int position) const {
    const auto row = std::span<const double>(logits_).subspan(offset(context, position), vocab_);
    const double mx = *std::max_element(row.begin(), row.end());
    std::vector<double> p(row.size());
    double z = 0;
    for (std::size_t v = 0; v < row.size(); ++v) z += (p[v] = std::exp(row[v] - mx));
    for (auto& x : p) x /= z;
    return p;
  }

  double log_prob(int context, int position, int token) const {
    const auto row = std::span<const double>(logits_).subspan(offset(context, position), vocab_);
    const double mx = *std::max_element(row.begin(), row.end());
    double z = 0;
    for (double l : row) z += std::exp(l - mx);
    return row[static_cast<std::size_t>(token)] - mx - std::log(z);
  }

  /// Validates a (context, sequence) pair against the table shape.
  void check(int context, std::span<const int> tokens) const {
    if (context < 0 || context >= contexts_)
      throw UnknownTokenError("context " + std::to_string(context) + " out of range");
    if (static_cast<int>(tokens.size()) > positions_)
      throw UnknownTokenError("sequence longer than " + std::to_string(positions_) + " positions");
    for (int t : tokens)
      if (t < 0 || t >= vocab_) throw UnknownTokenError("token " + std::to_string(t) + " not in vocabulary");
  }

  std::vector<int> sample(int context, int length, Rng& rng) const {
    std::vector<int> out;
    for (int t = 0; t < length; ++t) {
      const auto p = probabilities(context, t);
      double u = rng.uniform01();
      int tok = vocab_ - 1;
      for (int v = 0; v < vocab_; ++v) {
        u -= p[static_cast<std::size_t>(v)];
        if (u < 0) {
          tok = v;
          break;
        }
      }
      out.push_back(tok);
    }
    return out;
  }

 private:
  int contexts_, positions_, vocab_;
  std::vector<double> logits_;
};

struct ObjectiveValue {
  double value = 0;
  std::vector<double> gradient;  // same layout as ToyPolicy::parameters()
};

struct SftItem {
  int context = 0;
  std::vector<int> completion;
};

/// Mean over the batch of -sum_t log pi(y_t | x, y_<t), with its gradient.
inline ObjectiveValue sft_loss(const ToyPolicy& policy, std::span<const SftItem> batch) {
  ObjectiveValue out{0.0, std::vector<double>(policy.parameters().size(), 0.0)};
  if (batch.empty()) return out;
  const double scale = 1.0 / static_cast<double>(batch.size());
  for (const auto& item : batch) {
    policy.check(item.context, item.completion);
    for (std::size_t t = 0; t < item.completion.size(); ++t) {
      const int pos = static_cast<int>(t);
      const int y = item.completion[t];
      out.value -= scale * policy.log_prob(item.context, pos, y);
      const auto p = policy.probabilities(item.context, pos);
      const auto base = policy.offset(item.context, pos);
      for (std::size_t v = 0; v < p.size(); ++v)
        out.gradient[base + v] += scale * (p[v] - (static_cast<int>(v) == y ? 1.0 : 0.0));
    }
  }
  return out;
}

/// (r - mean) / population std; all zeros when std <= std_floor.
inline std::vector<double> compute_advantages(std::span<const double> rewards, double std_floor = 1e-6) {
  if (rewards.size() < 2) throw ConfigError("compute_advantages: group size must be >= 2");
  const double n = static_cast<double>(rewards.size());
  const double mean = std::accumulate(rewards.begin(), rewards.end(), 0.0) / n;
  double var = 0;
  for (double r : rewards) var += (r - mean) * (r - mean);
  const double sd = std::sqrt(var / n);
  std::vector<double> adv(rewards.size(), 0.0);
  if (sd <= std_floor) return adv;
  for (std::size_t i = 0; i < rewards.size(); ++i) adv[i] = (rewards[i] - mean) / sd;
  return adv;
}

struct GrpoConfig {
  int group_size = 8;
  double clip_epsilon = 0.2;
  double learning_rate = 1.0;
  double std_floor = 1e-6;
  std::uint64_t seed = 0;
  /// Average over all tokens of the group instead of per-sequence first.
  bool pooled_tokens = false;
  /// Gradient steps taken on each sampled group (steps after the first see
  /// ratios away from 1, so clipping can engage).
  int updates_per_group = 2;

  void validate() const {
    if (group_size < 2) throw ConfigError("group_size must be >= 2");
    if (!(clip_epsilon > 0 && clip_epsilon < 1)) throw ConfigError("clip_epsilon must be in (0, 1)");
    if (!(learning_rate >= 0) || !std::isfinite(learning_rate))
      throw ConfigError("learning_rate must be finite and >= 0");
    if (updates_per_group < 1) throw ConfigError("updates_per_group must be >= 1");
  }
};

/// G responses to one context. Every token of response i shares
/// advantages[i]; old_log_probs[i][t] is recorded from the sampling policy.
struct GroupSample {
  int context = 0;
  std::vector<std::vector<int>> responses;
  std::vector<double> rewards;
  std::vector<std::vector<double>> old_log_probs;
  std::vector<double> advantages;
};

inline void record_old_log_probs(const ToyPolicy& old_policy, GroupSample& g) {
  g.old_log_probs.clear();
  for (const auto& y : g.responses) {
    old_policy.check(g.context, y);
    std::vector<double> lp;
    for (std::size_t t = 0; t < y.size(); ++t) lp.push_back(old_policy.log_prob(g.context, static_cast<int>(t), y[t]));
    g.old_log_probs.push_back(std::move(lp));
  }
}

/// Clipped surrogate
///   J = mean_groups (1/G) sum_i (1/|y_i|) sum_t min(w A_i, clip(w, 1-eps, 1+eps) A_i),
///   w = exp(log pi_theta - log pi_old),
/// and its gradient with respect to the policy logits. A token whose
/// clipped branch is the minimum contributes no gradient.
inline ObjectiveValue grpo_objective(const ToyPolicy& policy, std::span<const GroupSample> groups,
                                     const GrpoConfig& cfg) {
  ObjectiveValue out{0.0, std::vector<double>(policy.parameters().size(), 0.0)};
  if (groups.empty()) return out;
  const double per_group = 1.0 / static_cast<double>(groups.size());
  for (const auto& g : groups) {
    const std::size_t G = g.responses.size();
    if (g.advantages.size() != G || g.old_log_probs.size() != G)
      throw InvariantError("grpo_objective: group arrays disagree in size");
    std::size_t pooled = 0;
    for (const auto& y : g.responses) pooled += y.size();
    for (std::size_t i = 0; i < G; ++i) {
      const auto& y = g.responses[i];
      if (y.empty()) continue;
      policy.check(g.context, y);
      const double weight = per_group * (cfg.pooled_tokens ? 1.0 / static_cast<double>(pooled)
                                                           : 1.0 / (static_cast<double>(G) * y.size()));
      const double A = g.advantages[i];
      for (std::size_t t = 0; t < y.size(); ++t) {
        const int pos = static_cast<int>(t);
        const double w = std::exp(policy.log_prob(g.context, pos, y[t]) - g.old_log_probs[i][t]);
        const double unclipped = w * A;
        const double clipped = std::clamp(w, 1.0 - cfg.clip_epsilon, 1.0 + cfg.clip_epsilon) * A;
        out.value += weight * std::min(unclipped, clipped);
        if (unclipped > clipped) continue;  // clipped branch is active: flat
        // d w / d theta = w * (onehot(y) - p)
        const auto p = policy.probabilities(g.context, pos);
        const auto base = policy.offset(g.context, pos);
        for (std::size_t v = 0; v < p.size(); ++v)
          out.gradient[base + v] += weight * A * w * ((static_cast<int>(v) == y[t] ? 1.0 : 0.0) - p[v]);
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Toy environment and training loop

class RewardEnvironment {
 public:
  virtual ~RewardEnvironment() = default;
  virtual int length() const = 0;
  virtual int vocab() const = 0;
  virtual double reward(std::span<const int> tokens) const = 0;
};

/// Three-slot "plan": transport, meal set, lodging, each one of four symbols.
/// Mirrors the real reward's structure: a malformed slot scores -1;
/// otherwise (commonsense items passed / 3) + (hard items passed / 2).
///   transport  0 flight, 1 taxi, 2 self-driving (no such link), 3 malformed
///   meal set   3 cites a closed restaurant
///   lodging    0 violates minimum nights; 2 and 3 have the requested room type
///   cost       transport + meals + lodging <= budget
class ToyPlanEnvironment : public RewardEnvironment {
 public:
  int length() const override { return 3; }
  int vocab() const override { return 4; }

  double reward(std::span<const int> y) const override {
    if (y.size() != 3) return -1.0;
    if (y[0] == 3) return -1.0;
    const int commonsense = (y[0] != 2) + (y[1] != 3) + (y[2] != 0);
    const int cost = kTransportCost[y[0]] + kMealCost[y[1]] + kLodgingCost[y[2]];
    const int hard = (cost <= kBudget) + (y[2] == 2 || y[2] == 3);
    return commonsense / 3.0 + hard / 2.0;
  }

  static constexpr int kBudget = 400;
  static constexpr int kTransportCost[4] = {300, 100, 80, 0};
  static constexpr int kMealCost[4] = {150, 60, 90, 40};
  static constexpr int kLodgingCost[4] = {100, 400, 200, 250};
};

struct TrainLogRow {
  int step = 0;
  double mean_reward = 0;
  double objective = 0;
  double grad_norm = 0;
  bool operator==(const TrainLogRow&) const = default;
};

/// sample -> reward -> advantage -> update, on one context. The logged
/// objective and gradient norm are those of the first update on each group.
inline std::vector<TrainLogRow> grpo_train_demo(const RewardEnvironment& env, const GrpoConfig& cfg, int steps) {
  cfg.validate();
  ToyPolicy policy(1, env.length(), env.vocab());
  Rng rng(cfg.seed);
  std::vector<TrainLogRow> log;
  for (int step = 0; step < steps; ++step) {
    GroupSample g;
    g.context = 0;
    for (int i = 0; i < cfg.group_size; ++i) {
      g.responses.push_back(policy.sample(0, env.length(), rng));
      g.rewards.push_back(env.reward(g.responses.back()));
    }
    g.advantages = compute_advantages(g.rewards, cfg.std_floor);
    record_old_log_probs(policy, g);

    TrainLogRow row;
    row.step = step;
    row.mean_reward = std::accumulate(g.rewards.begin(), g.rewards.end(), 0.0) / cfg.group_size;
    for (int u = 0; u < cfg.updates_per_group; ++u) {
      const auto obj = grpo_objective(policy, std::span<const GroupSample>(&g, 1), cfg);
      double norm2 = 0;
      for (double x : obj.gradient) norm2 += x * x;
      if (!std::isfinite(obj.value) || !std::isfinite(norm2))
        throw DivergenceError("non-finite objective at step " + std::to_string(step));
      if (u == 0) {
        row.objective = obj.value;
        row.grad_norm = std::sqrt(norm2);
      }
      auto params = policy.parameters();
      for (std::size_t k = 0; k < params.size(); ++k) {
        params[k] += cfg.learning_rate * obj.gradient[k];
        if (!std::isfinite(params[k])) throw DivergenceError("non-finite parameter at step " + std::to_string(step));
      }
    }
    log.push_back(row);
  }
  return log;
}

inline std::string train_log_csv(const std::vector<TrainLogRow>& log) {
  std::ostringstream out;
  out.precision(10);
  out << "step,mean_reward,objective,grad_norm\n";
  for (const auto& r : log) out << r.step << ',' << r.mean_reward << ',' << r.objective << ',' << r.grad_norm << '\n';
  return out.str();
}

/// Mean reward over log rows [first, first + count).
inline double mean_reward_window(const std::vector<TrainLogRow>& log, std::size_t first, std::size_t count) {
  double s = 0;
  for (std::size_t i = first; i < first + count && i < log.size(); ++i) s += log[i].mean_reward;
  return s / static_cast<double>(count);
}

}  // namespace imagine
