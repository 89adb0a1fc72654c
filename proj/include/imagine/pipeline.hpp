#pragma once

// Glue shared by the command-line tool and the end-to-end tests.

#include <algorithm>
#include <filesystem>
#include <future>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "imagine/config.hpp"
#include "imagine/evaluator.hpp"
#include "imagine/http_backend.hpp"
#include "imagine/mas.hpp"
#include "imagine/oracle_agent.hpp"
#include "imagine/reward.hpp"

namespace imagine {

inline MasBackends make_backends(const PipelineConfig& cfg, std::shared_ptr<const Sandbox> sb) {
  if (cfg.backend.kind == BackendKind::Oracle) return oracle_backends(std::move(sb));
  HttpBackendConfig http;
  http.base_url = cfg.backend.base_url;
  http.path = cfg.backend.path;
  http.model = cfg.backend.model;
  http.api_key = credential_from_env(cfg.backend.credential_env);
  http.system_prompt = cfg.backend.system_prompt;
  http.timeout_seconds = cfg.backend.timeout_seconds;
  auto one = std::make_shared<HttpChatBackend>(http);
  return MasBackends{one, {one, one}, one};
}

inline MasOptions mas_options(const PipelineConfig& cfg) {
  MasOptions opt;
  opt.retries = cfg.backend.retries;
  opt.backoff = std::chrono::milliseconds(cfg.backend.backoff_ms);
  opt.concurrent_judges = cfg.backend.concurrent_judges;
  return opt;
}

/// Responses keyed by query id. Rows carry the text under "response" or,
/// for SFT datasets, "completion".
inline std::map<std::string, std::string> load_responses(const std::filesystem::path& path) {
  std::map<std::string, std::string> out;
  for (const auto& row : read_jsonl(path)) {
    if (!row.is_object() || !row.contains("query_id") || !row["query_id"].is_string())
      throw ParseError(path.string() + ": row without a string query_id");
    const char* key = row.contains("response") ? "response" : "completion";
    if (!row.contains(key) || !row[key].is_string())
      throw ParseError(path.string() + ": row '" + row["query_id"].get<std::string>() +
                       "' has no response or completion text");
    out[row["query_id"].get<std::string>()] = row[key].get<std::string>();
  }
  return out;
}

/// Evaluates one response per query, in query order. A query with no
/// response is scored as an empty response.
inline BatchReport evaluate_batch(const Sandbox& sb, const std::vector<QueryRecord>& queries,
                                  const std::map<std::string, std::string>& responses,
                                  const EvalConventions& conv = {}, int jobs = 1) {
  std::vector<EvalReport> rows(queries.size());
  const std::size_t step = static_cast<std::size_t>(std::max(1, jobs));
  auto work = [&](std::size_t first) {
    for (std::size_t i = first; i < queries.size(); i += step) {
      const auto it = responses.find(queries[i].query.query_id);
      rows[i] = evaluate_response(sb, queries[i].query, it == responses.end() ? "" : it->second, conv);
    }
  };
  std::vector<std::future<void>> pending;
  for (std::size_t k = 1; k < step; ++k) pending.push_back(std::async(std::launch::async, work, k));
  work(0);
  for (auto& f : pending) f.get();
  return aggregate(std::move(rows));
}

inline std::vector<Json> score_batch(const Sandbox& sb, const std::vector<QueryRecord>& queries,
                                     const std::map<std::string, std::string>& responses,
                                     const EvalConventions& conv = {}, const ReflectionRule& rule = {}) {
  std::vector<Json> out;
  for (const auto& r : queries) {
    const auto it = responses.find(r.query.query_id);
    if (it == responses.end()) continue;
    Json row{{"query_id", r.query.query_id}};
    row["reward"] = to_json(compute_reward(sb, r.query, it->second, conv, rule));
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace imagine
