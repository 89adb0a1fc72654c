#pragma once

// Chat-completion backend over HTTP.
//
// Request:  POST <base_url><path>
//           {"model": M, "messages": [{"role": "system", ...}?, {"role": "user", "content": prompt}]}
// Response: choices[0].message.content is the reply; a sibling
//           "reasoning_content" (reasoning models) is wrapped as
//           "<think>...</think>" in front of it. usage.prompt_tokens and
//           usage.completion_tokens are used for accounting when present.
// Connection failures, 429 and 5xx raise TransportError (retried by
// run_mas); any other non-200 status raises BackendError.

#include <cstdlib>
#include <optional>
#include <string>

#include "httplib.h"
#include "imagine/mas.hpp"
#include "imagine/util/json_io.hpp"

namespace imagine {

struct HttpBackendConfig {
  std::string base_url = "http://127.0.0.1:8000";
  std::string path = "/v1/chat/completions";
  std::string model;
  std::optional<std::string> api_key;
  std::optional<std::string> system_prompt;
  int timeout_seconds = 300;
};

/// Looks up a credential by environment variable name; empty name or unset
/// variable yields nullopt.
inline std::optional<std::string> credential_from_env(const std::string& var) {
  if (var.empty()) return std::nullopt;
  const char* v = std::getenv(var.c_str());
  if (!v || !*v) return std::nullopt;
  return std::string(v);
}

class HttpChatBackend : public AgentBackend {
 public:
  explicit HttpChatBackend(HttpBackendConfig cfg) : cfg_(std::move(cfg)) {}

  static Json request_body(const HttpBackendConfig& cfg, const std::string& prompt) {
    Json messages = Json::array();
    if (cfg.system_prompt) messages.push_back(Json{{"role", "system"}, {"content", *cfg.system_prompt}});
    messages.push_back(Json{{"role", "user"}, {"content", prompt}});
    return Json{{"model", cfg.model}, {"messages", messages}};
  }

  static AgentReply parse_response(const std::string& body) {
    Json doc;
    try {
      doc = Json::parse(body);
    } catch (const nlohmann::json::parse_error&) {
      throw BackendError("chat completion: response is not JSON");
    }
    if (!doc.contains("choices") || !doc["choices"].is_array() || doc["choices"].empty())
      throw BackendError("chat completion: response has no choices");
    const auto& msg = doc["choices"][0].value("message", Json::object());
    if (!msg.contains("content") || !msg["content"].is_string())
      throw BackendError("chat completion: first choice has no message content");
    AgentReply reply;
    reply.text = msg["content"].get<std::string>();
    if (msg.contains("reasoning_content") && msg["reasoning_content"].is_string())
      reply.text = "<think>" + msg["reasoning_content"].get<std::string>() + "</think>" + reply.text;
    if (doc.contains("usage") && doc["usage"].is_object()) {
      const auto& u = doc["usage"];
      if (u.contains("prompt_tokens") && u["prompt_tokens"].is_number_integer())
        reply.prompt_tokens = u["prompt_tokens"].get<long>();
      if (u.contains("completion_tokens") && u["completion_tokens"].is_number_integer())
        reply.completion_tokens = u["completion_tokens"].get<long>();
    }
    return reply;
  }

  AgentReply invoke(const std::string& prompt) override {
    httplib::Client client(cfg_.base_url);
    client.set_connection_timeout(cfg_.timeout_seconds, 0);
    client.set_read_timeout(cfg_.timeout_seconds, 0);
    httplib::Headers headers;
    if (cfg_.api_key) headers.emplace("Authorization", "Bearer " + *cfg_.api_key);
    auto res = client.Post(cfg_.path, headers, request_body(cfg_, prompt).dump(), "application/json");
    if (!res) throw TransportError("chat completion: " + httplib::to_string(res.error()));
    if (res->status == 429 || res->status >= 500)
      throw TransportError("chat completion: HTTP " + std::to_string(res->status));
    if (res->status != 200)
      throw BackendError("chat completion: HTTP " + std::to_string(res->status) + ": " + res->body.substr(0, 200));
    return parse_response(res->body);
  }

 private:
  HttpBackendConfig cfg_;
};

}  // namespace imagine
