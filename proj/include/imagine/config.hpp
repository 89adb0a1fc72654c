#pragma once

// Pipeline configuration: one JSON file, every section optional, unknown
// keys rejected. Credentials are referenced by environment variable name
// only.
//
// {
//   "jobs": 1,
//   "sandbox":    {"seed": 42, "profile": "tiny"},
//   "queries":    {"count": 90, "seed": 7, "grid_weights": [[1,1,1],[1,1,1],[1,1,1]],
//                  "infeasible_fraction": 0.2, "id_prefix": "q"},
//   "backend":    {"kind": "oracle" | "http", "base_url": "...", "path": "/v1/chat/completions",
//                  "model": "...", "credential_env": "IMAGINE_API_KEY", "system_prompt": null,
//                  "timeout_seconds": 300, "retries": 3, "backoff_ms": 200, "concurrent_judges": true},
//   "evaluation": {"count_vacuous_hard": false, "reflection_trailing_region": 0.4},
//   "grpo":       {"group_size": 8, "clip_epsilon": 0.2, "learning_rate": 1.0, "std_floor": 1e-6,
//                  "seed": 0, "pooled_tokens": false, "updates_per_group": 2, "steps": 200},
//   "paths":      {"sandbox": "...", "queries": "...", "dataset": "...", "traces": "...", "report": "..."}
// }

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>

#include "imagine/evaluator.hpp"
#include "imagine/query_gen.hpp"
#include "imagine/reward.hpp"
#include "imagine/sandbox.hpp"
#include "imagine/train.hpp"
#include "imagine/util/errors.hpp"
#include "imagine/util/json_io.hpp"

namespace imagine {

enum class BackendKind { Oracle, Http };

struct BackendSettings {
  BackendKind kind = BackendKind::Oracle;
  std::string base_url = "http://127.0.0.1:8000";
  std::string path = "/v1/chat/completions";
  std::string model;
  std::string credential_env = "IMAGINE_API_KEY";
  std::optional<std::string> system_prompt;
  int timeout_seconds = 300;
  int retries = 3;
  int backoff_ms = 200;
  bool concurrent_judges = true;
  bool operator==(const BackendSettings&) const = default;
};

struct PathSettings {
  std::string sandbox = "out/sandbox.json";
  std::string queries = "out/queries.jsonl";
  std::string dataset = "out/sft.jsonl";
  std::string traces = "out/traces.jsonl";
  std::string report = "out/report";
  bool operator==(const PathSettings&) const = default;
};

struct PipelineConfig {
  int jobs = 1;
  std::uint64_t sandbox_seed = 42;
  SandboxProfile profile = SandboxProfile::Tiny;
  int query_count = 90;
  std::uint64_t query_seed = 7;
  QueryGenConfig query_gen;
  BackendSettings backend;
  EvalConventions eval;
  ReflectionRule reflection;
  GrpoConfig grpo;
  int grpo_steps = 200;
  PathSettings paths;
};

namespace detail {

/// Reads keys from one object, remembering which were consumed so that
/// leftovers can be reported.
class Section {
 public:
  Section(const Json& j, std::string name) : j_(j), name_(std::move(name)) {
    if (!j_.is_object()) throw ConfigError(name_ + ": expected an object");
  }

  template <class T>
  void read(const char* key, T& into) {
    seen_.insert(key);
    if (!j_.contains(key)) return;
    try {
      into = j_.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
      throw ConfigError(name_ + "." + key + ": wrong type");
    }
  }

  void read(const char* key, std::optional<std::string>& into) {
    seen_.insert(key);
    if (!j_.contains(key) || j_.at(key).is_null()) return;
    if (!j_.at(key).is_string()) throw ConfigError(name_ + "." + key + ": wrong type");
    into = j_.at(key).get<std::string>();
  }

  std::optional<Json> sub(const char* key) {
    seen_.insert(key);
    if (!j_.contains(key)) return std::nullopt;
    return j_.at(key);
  }

  void finish() const {
    for (const auto& [k, v] : j_.items())
      if (!seen_.count(k)) throw ConfigError(name_ + ": unknown key '" + k + "'");
  }

 private:
  const Json& j_;
  std::string name_;
  std::set<std::string> seen_;
};

}  // namespace detail

inline void validate(const PipelineConfig& c) {
  if (c.jobs < 1) throw ConfigError("jobs must be >= 1");
  if (c.query_count < 0) throw ConfigError("queries.count must be >= 0");
  for (const auto& row : c.query_gen.grid_weights)
    for (double w : row)
      if (!(w >= 0)) throw ConfigError("queries.grid_weights must be non-negative");
  if (!(c.query_gen.infeasible_fraction >= 0 && c.query_gen.infeasible_fraction <= 1))
    throw ConfigError("queries.infeasible_fraction must be in [0, 1]");
  if (c.query_gen.id_prefix.empty()) throw ConfigError("queries.id_prefix must not be empty");
  if (c.backend.kind == BackendKind::Http && c.backend.model.empty())
    throw ConfigError("backend.model is required for the http backend");
  if (c.backend.timeout_seconds < 1) throw ConfigError("backend.timeout_seconds must be >= 1");
  if (c.backend.retries < 0 || c.backend.backoff_ms < 0) throw ConfigError("backend retry settings must be >= 0");
  if (!(c.reflection.trailing_region > 0 && c.reflection.trailing_region <= 1))
    throw ConfigError("evaluation.reflection_trailing_region must be in (0, 1]");
  if (c.grpo_steps < 0) throw ConfigError("grpo.steps must be >= 0");
  c.grpo.validate();
}

inline PipelineConfig config_from_json(const Json& j) {
  PipelineConfig c;
  detail::Section top(j, "config");
  top.read("jobs", c.jobs);
  if (auto s = top.sub("sandbox")) {
    detail::Section sec(*s, "sandbox");
    sec.read("seed", c.sandbox_seed);
    std::string profile(to_string(c.profile));
    sec.read("profile", profile);
    auto p = sandbox_profile_from(profile);
    if (!p) throw ConfigError("sandbox.profile: expected 'tiny' or 'standard'");
    c.profile = *p;
    sec.finish();
  }
  if (auto s = top.sub("queries")) {
    detail::Section sec(*s, "queries");
    sec.read("count", c.query_count);
    sec.read("seed", c.query_seed);
    sec.read("grid_weights", c.query_gen.grid_weights);
    sec.read("infeasible_fraction", c.query_gen.infeasible_fraction);
    sec.read("id_prefix", c.query_gen.id_prefix);
    sec.finish();
  }
  if (auto s = top.sub("backend")) {
    detail::Section sec(*s, "backend");
    std::string kind = c.backend.kind == BackendKind::Http ? "http" : "oracle";
    sec.read("kind", kind);
    if (kind == "oracle") c.backend.kind = BackendKind::Oracle;
    else if (kind == "http") c.backend.kind = BackendKind::Http;
    else throw ConfigError("backend.kind: expected 'oracle' or 'http'");
    sec.read("base_url", c.backend.base_url);
    sec.read("path", c.backend.path);
    sec.read("model", c.backend.model);
    sec.read("credential_env", c.backend.credential_env);
    sec.read("system_prompt", c.backend.system_prompt);
    sec.read("timeout_seconds", c.backend.timeout_seconds);
    sec.read("retries", c.backend.retries);
    sec.read("backoff_ms", c.backend.backoff_ms);
    sec.read("concurrent_judges", c.backend.concurrent_judges);
    sec.finish();
  }
  if (auto s = top.sub("evaluation")) {
    detail::Section sec(*s, "evaluation");
    sec.read("count_vacuous_hard", c.eval.count_vacuous_hard);
    sec.read("reflection_trailing_region", c.reflection.trailing_region);
    sec.finish();
  }
  if (auto s = top.sub("grpo")) {
    detail::Section sec(*s, "grpo");
    sec.read("group_size", c.grpo.group_size);
    sec.read("clip_epsilon", c.grpo.clip_epsilon);
    sec.read("learning_rate", c.grpo.learning_rate);
    sec.read("std_floor", c.grpo.std_floor);
    sec.read("seed", c.grpo.seed);
    sec.read("pooled_tokens", c.grpo.pooled_tokens);
    sec.read("updates_per_group", c.grpo.updates_per_group);
    sec.read("steps", c.grpo_steps);
    sec.finish();
  }
  if (auto s = top.sub("paths")) {
    detail::Section sec(*s, "paths");
    sec.read("sandbox", c.paths.sandbox);
    sec.read("queries", c.paths.queries);
    sec.read("dataset", c.paths.dataset);
    sec.read("traces", c.paths.traces);
    sec.read("report", c.paths.report);
    sec.finish();
  }
  top.finish();
  validate(c);
  return c;
}

inline Json to_json(const PipelineConfig& c) {
  Json j;
  j["jobs"] = c.jobs;
  j["sandbox"] = Json{{"seed", c.sandbox_seed}, {"profile", to_string(c.profile)}};
  j["queries"] = Json{{"count", c.query_count},
                      {"seed", c.query_seed},
                      {"grid_weights", c.query_gen.grid_weights},
                      {"infeasible_fraction", c.query_gen.infeasible_fraction},
                      {"id_prefix", c.query_gen.id_prefix}};
  j["backend"] = Json{{"kind", c.backend.kind == BackendKind::Http ? "http" : "oracle"},
                      {"base_url", c.backend.base_url},
                      {"path", c.backend.path},
                      {"model", c.backend.model},
                      {"credential_env", c.backend.credential_env},
                      {"system_prompt", c.backend.system_prompt ? Json(*c.backend.system_prompt) : Json(nullptr)},
                      {"timeout_seconds", c.backend.timeout_seconds},
                      {"retries", c.backend.retries},
                      {"backoff_ms", c.backend.backoff_ms},
                      {"concurrent_judges", c.backend.concurrent_judges}};
  j["evaluation"] = Json{{"count_vacuous_hard", c.eval.count_vacuous_hard},
                         {"reflection_trailing_region", c.reflection.trailing_region}};
  j["grpo"] = Json{{"group_size", c.grpo.group_size},
                   {"clip_epsilon", c.grpo.clip_epsilon},
                   {"learning_rate", c.grpo.learning_rate},
                   {"std_floor", c.grpo.std_floor},
                   {"seed", c.grpo.seed},
                   {"pooled_tokens", c.grpo.pooled_tokens},
                   {"updates_per_group", c.grpo.updates_per_group},
                   {"steps", c.grpo_steps}};
  j["paths"] = Json{{"sandbox", c.paths.sandbox},
                    {"queries", c.paths.queries},
                    {"dataset", c.paths.dataset},
                    {"traces", c.paths.traces},
                    {"report", c.paths.report}};
  return j;
}

inline PipelineConfig load_config(const std::filesystem::path& path) {
  return config_from_json(parse_json_text(read_text_file(path), path.string()));
}

}  // namespace imagine
