#pragma once

// Reasoner / Judge x2 / Reflector protocol and SFT data construction.
//
//   reasoner --> judge A --+
//            \-> judge B --+--> any "Errors exist." ? reflector : reasoner's answer
//
// Completions are concatenated as
//   "<think>" reasoning MARKER (reflection | "No errors.") CLOSER "</think>" final answer

#include <algorithm>
#include <array>
#include <atomic>
#include <cctype>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <iostream>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "imagine/plan.hpp"
#include "imagine/query.hpp"
#include "imagine/reward.hpp"
#include "imagine/util/errors.hpp"
#include "imagine/util/json_io.hpp"

namespace imagine {

enum class AgentRole { Reasoner, Judge, Reflector };

inline std::string_view to_string(AgentRole r) {
  switch (r) {
    case AgentRole::Reasoner: return "reasoner";
    case AgentRole::Judge: return "judge";
    case AgentRole::Reflector: return "reflector";
  }
  return "?";
}

/// Retryable failure (connection, timeout, 429/5xx).
class TransportError : public Error {
 public:
  explicit TransportError(const std::string& what) : Error("transport_error", what) {}
};

/// Non-retryable backend failure.
class BackendError : public Error {
 public:
  explicit BackendError(const std::string& what) : Error("backend_error", what) {}
};

class IncompleteTraceError : public Error {
 public:
  explicit IncompleteTraceError(const std::string& what) : Error("incomplete_trace", what) {}
};

struct AgentReply {
  std::string text;
  std::optional<long> prompt_tokens;  // as reported by the backend, if at all
  std::optional<long> completion_tokens;
};

/// Stateless across queries; must tolerate concurrent invoke() calls.
class AgentBackend {
 public:
  virtual ~AgentBackend() = default;
  virtual AgentReply invoke(const std::string& prompt) = 0;
};

/// Whitespace-delimited token estimate for backends that report no usage.
inline long approx_tokens(std::string_view text) {
  long n = 0;
  bool in_word = false;
  for (unsigned char c : text) {
    const bool space = std::isspace(c) != 0;
    if (!space && !in_word) ++n;
    in_word = !space;
  }
  return n;
}

/// Fixture-driven backend: replies come from a function of the prompt, or
/// from a fixed list consumed in order (the last one repeats).
class ScriptedBackend : public AgentBackend {
 public:
  explicit ScriptedBackend(std::function<std::string(const std::string&)> fn) : fn_(std::move(fn)) {}
  explicit ScriptedBackend(std::vector<std::string> replies)
      : replies_(std::move(replies)) {
    if (replies_.empty()) throw ConfigError("ScriptedBackend needs at least one reply");
  }

  AgentReply invoke(const std::string& prompt) override {
    ++calls_;
    if (fn_) return AgentReply{fn_(prompt), std::nullopt, std::nullopt};
    std::lock_guard lock(mu_);
    const auto& r = replies_[std::min(next_, replies_.size() - 1)];
    ++next_;
    return AgentReply{r, std::nullopt, std::nullopt};
  }

  int calls() const { return calls_.load(); }

 private:
  std::function<std::string(const std::string&)> fn_;
  std::vector<std::string> replies_;
  std::size_t next_ = 0;
  std::mutex mu_;
  std::atomic<int> calls_{0};
};

struct MasBackends {
  std::shared_ptr<AgentBackend> reasoner;
  std::array<std::shared_ptr<AgentBackend>, 2> judges;
  std::shared_ptr<AgentBackend> reflector;
};

enum class JudgeVerdict { ErrorsExist, NoErrors };

inline std::string_view to_string(JudgeVerdict v) {
  return v == JudgeVerdict::NoErrors ? "no_errors" : "errors_exist";
}

/// Case-insensitive; anything but an unambiguous "no errors" is treated as
/// "errors exist".
inline JudgeVerdict parse_verdict(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  const bool clean = lower.find("no errors") != std::string::npos;
  const bool flagged = lower.find("errors exist") != std::string::npos;
  return clean && !flagged ? JudgeVerdict::NoErrors : JudgeVerdict::ErrorsExist;
}

struct CallRecord {
  AgentRole role = AgentRole::Reasoner;
  long prompt_tokens = 0;
  long completion_tokens = 0;
  int attempts = 1;
  double latency_ms = 0;
};

struct MasTrace {
  std::string query_id;
  std::string reasoner_prompt;
  std::string reasoner_think;
  std::string reasoner_answer;
  std::array<JudgeVerdict, 2> judge_verdicts{JudgeVerdict::ErrorsExist, JudgeVerdict::ErrorsExist};
  std::array<std::string, 2> judge_raw;
  bool reflector_invoked = false;
  std::optional<std::string> reflection_content;
  std::string final_answer;
  std::vector<CallRecord> calls;
  std::optional<std::string> error;  // set when a backend failed for good

  long prompt_tokens() const {
    long n = 0;
    for (const auto& c : calls) n += c.prompt_tokens;
    return n;
  }
  long completion_tokens() const {
    long n = 0;
    for (const auto& c : calls) n += c.completion_tokens;
    return n;
  }
};

// ---------------------------------------------------------------------------
// Prompts

inline constexpr std::string_view kQueryJsonOpen = "<query_json>";
inline constexpr std::string_view kQueryJsonClose = "</query_json>";
inline constexpr std::string_view kAnswerOpen = "<answer>";
inline constexpr std::string_view kAnswerClose = "</answer>";
inline constexpr std::string_view kFinalAnswerTag = "Final answer:";

inline const std::array<std::string_view, 4>& reference_section_headers() {
  static const std::array<std::string_view, 4> h = {"### Transportation", "### Restaurants",
                                                    "### Attractions", "### Accommodations"};
  return h;
}

inline std::string build_reasoner_prompt(const Query& q, const ReferenceInformation& ref) {
  std::ostringstream p;
  p << "You are the Reasoner of a travel planning team. Using only the reference information "
       "below, reason carefully and produce a complete travel plan for the query.\n\n";
  p << "## Query\n" << q.query_text << "\n\n";
  p << "## Query details\n" << kQueryJsonOpen << "\n" << to_json(q).dump() << "\n" << kQueryJsonClose << "\n\n";
  p << "## Reference information\n";
  const auto& headers = reference_section_headers();
  p << headers[0] << "\n";
  for (const auto& seg : ref.transportation) {
    if (seg.options.empty()) p << "- " << seg.from << " -> " << seg.to << ": no options\n";
    for (const auto& o : seg.options) p << "- " << seg.from << " -> " << seg.to << ": " << to_json(o).dump() << "\n";
  }
  p << "\n" << headers[1] << "\n";
  for (const auto& c : ref.cities) {
    p << "[" << c.city << "]\n";
    for (const auto& r : c.restaurants) p << "- " << to_json(r).dump() << "\n";
  }
  p << "\n" << headers[2] << "\n";
  for (const auto& c : ref.cities) {
    p << "[" << c.city << "]\n";
    for (const auto& a : c.attractions) p << "- " << to_json(a).dump() << "\n";
  }
  p << "\n" << headers[3] << "\n";
  for (const auto& c : ref.cities) {
    p << "[" << c.city << "]\n";
    for (const auto& a : c.accommodations) p << "- " << to_json(a).dump() << "\n";
  }
  p << "\n## Output format\n"
       "Think inside <think></think>. After </think>, output only the final plan: a JSON array with "
       "one object per day and the keys day, current_city, transportation, breakfast, lunch, dinner, "
       "attraction, accommodation. Use \"-\" for empty fields, \"Name, City\" for places (attractions "
       "joined by ';'), \"from A to B\" as current_city on travel days, and \"Flight Number: X, from A "
       "to B\", \"Self-driving, from A to B\" or \"Taxi, from A to B\" for transportation.\n";
  return p.str();
}

inline std::string build_judge_prompt(const std::string& reasoner_prompt, const std::string& think,
                                      const std::string& answer) {
  std::ostringstream p;
  p << "You are a Judge. Check the Reasoner's reasoning and answer below for errors against the "
       "query and the reference information. Reply with exactly \"Errors exist.\" or \"No errors.\" "
       "and nothing else.\n\n";
  p << "# Reasoner input\n" << reasoner_prompt << "\n# Reasoner reasoning\n" << think << "\n\n";
  p << "# Reasoner answer\n" << kAnswerOpen << "\n" << answer << "\n" << kAnswerClose << "\n";
  return p.str();
}

inline std::string build_reflector_prompt(const std::string& reasoner_prompt, const std::string& think,
                                          const std::string& answer) {
  std::ostringstream p;
  p << "You are the Reflector. At least one Judge found errors in the Reasoner's work below. First "
       "point out each error in the reasoning and give its correction. Then write a line \""
    << kFinalAnswerTag << "\" followed by the corrected final plan as a JSON array.\n\n";
  p << "# Reasoner input\n" << reasoner_prompt << "\n# Reasoner reasoning\n" << think << "\n\n";
  p << "# Reasoner answer\n" << kAnswerOpen << "\n" << answer << "\n" << kAnswerClose << "\n";
  return p.str();
}

/// Extracts the embedded query JSON from any prompt built above.
inline std::optional<Query> query_from_prompt(std::string_view prompt) {
  const auto a = prompt.find(kQueryJsonOpen);
  if (a == std::string_view::npos) return std::nullopt;
  const auto b = prompt.find(kQueryJsonClose, a);
  if (b == std::string_view::npos) return std::nullopt;
  const auto body = prompt.substr(a + kQueryJsonOpen.size(), b - a - kQueryJsonOpen.size());
  try {
    return query_from_json(Json::parse(body));
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

inline std::optional<std::string> answer_from_prompt(std::string_view prompt) {
  const auto a = prompt.rfind(kAnswerOpen);
  if (a == std::string_view::npos) return std::nullopt;
  const auto b = prompt.find(kAnswerClose, a);
  if (b == std::string_view::npos) return std::nullopt;
  return std::string(detail::trim(prompt.substr(a + kAnswerOpen.size(), b - a - kAnswerOpen.size())));
}

// ---------------------------------------------------------------------------
// Protocol

struct MasOptions {
  int retries = 3;                  // extra attempts after a transport error
  std::chrono::milliseconds backoff{200};  // doubled per retry
  bool concurrent_judges = true;
};

namespace detail {

inline AgentReply invoke_with_retry(AgentBackend& backend, AgentRole role, const std::string& prompt,
                                    const MasOptions& opt, CallRecord& rec) {
  rec.role = role;
  auto delay = opt.backoff;
  for (int attempt = 1;; ++attempt) {
    const auto t0 = std::chrono::steady_clock::now();
    try {
      auto reply = backend.invoke(prompt);
      rec.attempts = attempt;
      rec.latency_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      rec.prompt_tokens = reply.prompt_tokens.value_or(approx_tokens(prompt));
      rec.completion_tokens = reply.completion_tokens.value_or(approx_tokens(reply.text));
      return reply;
    } catch (const TransportError&) {
      if (attempt > opt.retries) {
        rec.attempts = attempt;
        throw;
      }
      if (delay.count() > 0) std::this_thread::sleep_for(delay);
      delay *= 2;
    }
  }
}

/// Splits a reasoner reply into (think, answer). Without a closing tag the
/// whole reply is the answer.
inline std::pair<std::string, std::string> split_reasoner_reply(std::string_view text) {
  std::string_view body = text;
  if (body.starts_with(kThinkOpen)) body.remove_prefix(kThinkOpen.size());
  const auto close = body.find(kThinkClose);
  if (close == std::string_view::npos) return {"", std::string(trim(text))};
  return {std::string(trim(body.substr(0, close))),
          std::string(trim(body.substr(close + kThinkClose.size())))};
}

/// Splits a reflector reply at the last "Final answer:" line. Without it the
/// reply is all reflection and the reasoner's answer stands.
inline std::pair<std::string, std::optional<std::string>> split_reflector_reply(std::string_view text) {
  const auto pos = text.rfind(kFinalAnswerTag);
  if (pos == std::string_view::npos) return {std::string(trim(text)), std::nullopt};
  return {std::string(trim(text.substr(0, pos))),
          std::string(trim(text.substr(pos + kFinalAnswerTag.size())))};
}

}  // namespace detail

/// Runs one query through the protocol. Backend failures that survive the
/// retries are recorded in `error` rather than thrown.
inline MasTrace run_mas(const Query& q, const ReferenceInformation& ref, const MasBackends& backends,
                        const MasOptions& opt = {}) {
  MasTrace t;
  t.query_id = q.query_id;
  t.reasoner_prompt = build_reasoner_prompt(q, ref);
  try {
    CallRecord rec;
    auto reply = detail::invoke_with_retry(*backends.reasoner, AgentRole::Reasoner, t.reasoner_prompt, opt, rec);
    t.calls.push_back(rec);
    std::tie(t.reasoner_think, t.reasoner_answer) = detail::split_reasoner_reply(reply.text);

    const auto judge_prompt = build_judge_prompt(t.reasoner_prompt, t.reasoner_think, t.reasoner_answer);
    std::array<CallRecord, 2> judge_recs;
    auto ask = [&](std::size_t i) {
      return detail::invoke_with_retry(*backends.judges[i], AgentRole::Judge, judge_prompt, opt, judge_recs[i]).text;
    };
    if (opt.concurrent_judges) {
      auto a = std::async(std::launch::async, ask, 0);
      auto b = std::async(std::launch::async, ask, 1);
      // get() both before rethrowing so neither task outlives this frame.
      std::exception_ptr failure;
      try { t.judge_raw[0] = a.get(); } catch (...) { failure = std::current_exception(); }
      try { t.judge_raw[1] = b.get(); } catch (...) { if (!failure) failure = std::current_exception(); }
      if (failure) std::rethrow_exception(failure);
    } else {
      t.judge_raw[0] = ask(0);
      t.judge_raw[1] = ask(1);
    }
    t.calls.push_back(judge_recs[0]);
    t.calls.push_back(judge_recs[1]);
    for (std::size_t i = 0; i < 2; ++i) t.judge_verdicts[i] = parse_verdict(t.judge_raw[i]);

    t.reflector_invoked = std::any_of(t.judge_verdicts.begin(), t.judge_verdicts.end(),
                                      [](JudgeVerdict v) { return v == JudgeVerdict::ErrorsExist; });
    if (!t.reflector_invoked) {
      t.final_answer = t.reasoner_answer;
      return t;
    }
    const auto reflect_prompt = build_reflector_prompt(t.reasoner_prompt, t.reasoner_think, t.reasoner_answer);
    CallRecord rrec;
    auto rreply = detail::invoke_with_retry(*backends.reflector, AgentRole::Reflector, reflect_prompt, opt, rrec);
    t.calls.push_back(rrec);
    auto [reflection, corrected] = detail::split_reflector_reply(rreply.text);
    t.reflection_content = std::move(reflection);
    t.final_answer = corrected.value_or(t.reasoner_answer);
  } catch (const Error& e) {
    t.error = e.what();
  }
  return t;
}

// ---------------------------------------------------------------------------
// SFT examples

enum class SftBranch { Reflected, NoErrors };

inline std::string_view to_string(SftBranch b) { return b == SftBranch::Reflected ? "reflected" : "no_errors"; }

struct SftExample {
  std::string query_id;
  std::string prompt;
  std::string completion;
  SftBranch branch = SftBranch::NoErrors;
};

inline SftExample build_sft_example(const MasTrace& t) {
  if (t.error) throw IncompleteTraceError(t.query_id + ": trace failed: " + *t.error);
  if (t.reasoner_prompt.empty()) throw IncompleteTraceError(t.query_id + ": missing reasoner prompt");
  if (detail::trim(t.final_answer).empty()) throw IncompleteTraceError(t.query_id + ": missing final answer");
  if (t.reflector_invoked && !t.reflection_content)
    throw IncompleteTraceError(t.query_id + ": reflector invoked but no reflection recorded");

  SftExample ex;
  ex.query_id = t.query_id;
  ex.prompt = t.reasoner_prompt;
  ex.branch = t.reflector_invoked ? SftBranch::Reflected : SftBranch::NoErrors;
  ex.completion = std::string(kThinkOpen) + t.reasoner_think + std::string(kReflectionMarker) +
                  (t.reflector_invoked ? *t.reflection_content : std::string(kNoErrors)) +
                  std::string(kReflectionCloser) + std::string(kThinkClose) + t.final_answer;
  if (!parse_envelope(ex.completion))
    throw IncompleteTraceError(t.query_id + ": completion does not form a valid envelope");
  return ex;
}

inline Json accounting_json(const MasTrace& t) {
  Json calls = Json::array();
  for (const auto& c : t.calls)
    calls.push_back(Json{{"role", to_string(c.role)},
                         {"prompt_tokens", c.prompt_tokens},
                         {"completion_tokens", c.completion_tokens},
                         {"attempts", c.attempts}});
  return Json{{"prompt_tokens", t.prompt_tokens()},
              {"completion_tokens", t.completion_tokens()},
              {"calls", calls}};
}

/// Wall-clock figures; kept apart so the rest of a record is reproducible.
inline Json timing_json(const MasTrace& t) {
  Json ms = Json::array();
  for (const auto& c : t.calls) ms.push_back(c.latency_ms);
  return Json{{"latency_ms", ms}};
}

inline Json to_json(const MasTrace& t) {
  return Json{{"query_id", t.query_id},
              {"reasoner_prompt", t.reasoner_prompt},
              {"reasoner_think", t.reasoner_think},
              {"reasoner_answer", t.reasoner_answer},
              {"judge_verdicts", {to_string(t.judge_verdicts[0]), to_string(t.judge_verdicts[1])}},
              {"judge_raw", {t.judge_raw[0], t.judge_raw[1]}},
              {"reflector_invoked", t.reflector_invoked},
              {"reflection_content", t.reflection_content ? Json(*t.reflection_content) : Json(nullptr)},
              {"final_answer", t.final_answer},
              {"error", t.error ? Json(*t.error) : Json(nullptr)},
              {"accounting", accounting_json(t)},
              {"metadata", timing_json(t)}};
}

inline MasTrace mas_trace_from_json(const Json& j) {
  try {
    MasTrace t;
    t.query_id = j.at("query_id").get<std::string>();
    t.reasoner_prompt = j.at("reasoner_prompt").get<std::string>();
    t.reasoner_think = j.at("reasoner_think").get<std::string>();
    t.reasoner_answer = j.at("reasoner_answer").get<std::string>();
    for (std::size_t i = 0; i < 2; ++i) {
      t.judge_verdicts[i] = j.at("judge_verdicts").at(i).get<std::string>() == "no_errors"
                                ? JudgeVerdict::NoErrors
                                : JudgeVerdict::ErrorsExist;
      t.judge_raw[i] = j.at("judge_raw").at(i).get<std::string>();
    }
    t.reflector_invoked = j.at("reflector_invoked").get<bool>();
    if (!j.at("reflection_content").is_null()) t.reflection_content = j.at("reflection_content").get<std::string>();
    t.final_answer = j.at("final_answer").get<std::string>();
    if (j.contains("error") && !j.at("error").is_null()) t.error = j.at("error").get<std::string>();
    if (j.contains("accounting")) {
      for (const auto& c : j.at("accounting").at("calls")) {
        CallRecord r;
        const auto role = c.at("role").get<std::string>();
        r.role = role == "judge" ? AgentRole::Judge : role == "reflector" ? AgentRole::Reflector : AgentRole::Reasoner;
        r.prompt_tokens = c.at("prompt_tokens").get<long>();
        r.completion_tokens = c.at("completion_tokens").get<long>();
        r.attempts = c.value("attempts", 1);
        t.calls.push_back(r);
      }
    }
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("trace: ") + e.what());
  }
}

inline Json to_json(const SftExample& ex, const MasTrace& t) {
  return Json{{"query_id", ex.query_id},
              {"prompt", ex.prompt},
              {"completion", ex.completion},
              {"branch", to_string(ex.branch)},
              {"accounting", accounting_json(t)}};
}

// ---------------------------------------------------------------------------
// Dataset generation

struct DatasetOptions {
  int jobs = 1;
  MasOptions mas;
  std::optional<std::filesystem::path> traces_path;  // optional raw-trace log
  std::function<void(const std::string&)> log = [](const std::string& msg) { std::cerr << msg << "\n"; };
};

struct DatasetSummary {
  int total = 0;              // queries offered
  int skipped_existing = 0;   // already present in the output
  int written = 0;
  int failed = 0;
  int reflected = 0;
  int no_errors = 0;
  long prompt_tokens = 0;
  long completion_tokens = 0;
};

inline Json to_json(const DatasetSummary& s) {
  return Json{{"total", s.total},         {"skipped_existing", s.skipped_existing},
              {"written", s.written},     {"failed", s.failed},
              {"reflected", s.reflected}, {"no_errors", s.no_errors},
              {"prompt_tokens", s.prompt_tokens}, {"completion_tokens", s.completion_tokens}};
}

/// Appends one SFT example per query to `out`. Query ids already present
/// in `out` are skipped, so an interrupted run can be resumed. Queries run
/// `jobs` at a time; each batch is written in input order.
inline DatasetSummary generate_dataset(const std::vector<QueryRecord>& queries, const MasBackends& backends,
                                       const std::filesystem::path& out, const DatasetOptions& opt = {}) {
  DatasetSummary summary;
  summary.total = static_cast<int>(queries.size());

  std::set<std::string> done;
  if (std::filesystem::exists(out)) {
    for (const auto& row : read_jsonl(out)) done.insert(row.at("query_id").get<std::string>());
  } else if (out.has_parent_path()) {
    std::filesystem::create_directories(out.parent_path());
  }

  std::vector<const QueryRecord*> todo;
  for (const auto& r : queries) {
    if (done.count(r.query.query_id)) {
      ++summary.skipped_existing;
      continue;
    }
    todo.push_back(&r);
  }

  std::ofstream sink(out, std::ios::binary | std::ios::app);
  if (!sink) throw IoError("cannot append to " + out.string());
  std::optional<std::ofstream> trace_sink;
  if (opt.traces_path) {
    if (opt.traces_path->has_parent_path()) std::filesystem::create_directories(opt.traces_path->parent_path());
    trace_sink.emplace(*opt.traces_path, std::ios::binary | std::ios::app);
  }

  const std::size_t jobs = static_cast<std::size_t>(std::max(1, opt.jobs));
  for (std::size_t start = 0; start < todo.size(); start += jobs) {
    const std::size_t end = std::min(todo.size(), start + jobs);
    std::vector<std::future<MasTrace>> running;
    for (std::size_t i = start; i < end; ++i) {
      const auto* rec = todo[i];
      running.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred,
                                   [&, rec] { return run_mas(rec->query, rec->reference, backends, opt.mas); }));
    }
    for (auto& f : running) {
      const MasTrace t = f.get();
      if (trace_sink) *trace_sink << to_json(t).dump() << "\n";
      summary.prompt_tokens += t.prompt_tokens();
      summary.completion_tokens += t.completion_tokens();
      try {
        const auto ex = build_sft_example(t);
        sink << to_json(ex, t).dump() << "\n";
        ++summary.written;
        (ex.branch == SftBranch::Reflected ? summary.reflected : summary.no_errors)++;
      } catch (const IncompleteTraceError& e) {
        ++summary.failed;
        if (opt.log) opt.log(std::string("skipping query: ") + e.what());
      }
    }
    sink.flush();
    if (trace_sink) trace_sink->flush();
  }
  return summary;
}

}  // namespace imagine
