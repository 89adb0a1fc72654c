// imagine: command-line front end for the planning pipeline.
//
//   imagine gen-sandbox  [--config F] [--seed N] [--profile tiny|standard] [--out sandbox.json]
//   imagine gen-queries  [--config F] [--sandbox F] [--count N] [--seed N] [--out queries.jsonl]
//   imagine run-mas      [--config F] [--sandbox F] [--queries F] [--jobs N] [--traces F] [--out sft.jsonl]
//   imagine build-sft    --traces F [--out sft.jsonl]
//   imagine eval         [--config F] [--sandbox F] [--queries F] --responses F [--jobs N] [--out prefix]
//   imagine reward       [--config F] [--sandbox F] [--queries F] --responses F [--out rewards.jsonl]
//   imagine grpo-demo    [--config F] [--seed N] [--steps N] [--learning-rate X] [--out log.csv]
//   imagine report       --in [label=]report.json ... [--out prefix]
//
// Failures exit with status 1 and print {"error": {"kind": ..., "message": ...}} on stderr.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "imagine/config.hpp"
#include "imagine/pipeline.hpp"
#include "imagine/report.hpp"
#include "imagine/train.hpp"

namespace fs = std::filesystem;
using namespace imagine;

namespace {

struct Common {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<int> jobs;
  std::string out;
};

PipelineConfig load(const Common& c) {
  PipelineConfig cfg = c.config.empty() ? config_from_json(Json::object()) : load_config(c.config);
  if (c.jobs) cfg.jobs = *c.jobs;
  validate(cfg);
  return cfg;
}

std::string pick(const std::string& flag, const std::string& fallback) { return flag.empty() ? fallback : flag; }

void require_file(const std::string& path) {
  if (!fs::exists(path)) throw IoError("input not found: " + path);
}

int fail(std::string_view kind, const std::string& message, int code = 1) {
  std::cerr << Json{{"error", {{"kind", kind}, {"message", message}}}}.dump() << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Travel-planning reasoning pipeline"};
  app.require_subcommand(1);

  Common common;
  auto add_common = [&](CLI::App* sub, bool with_seed, bool with_jobs) {
    sub->add_option("--config", common.config, "pipeline config (JSON)");
    if (with_seed) sub->add_option("--seed", common.seed, "override the config seed");
    if (with_jobs) sub->add_option("--jobs", common.jobs, "parallel work limit");
    sub->add_option("--out", common.out, "output path");
  };

  std::string sandbox_path, queries_path, responses_path, traces_path, profile;
  std::optional<int> count, steps;
  std::optional<double> learning_rate;
  std::vector<std::string> inputs;

  auto* gen_sandbox = app.add_subcommand("gen-sandbox", "generate a synthetic sandbox");
  add_common(gen_sandbox, true, false);
  gen_sandbox->add_option("--profile", profile, "tiny or standard");

  auto* gen_queries = app.add_subcommand("gen-queries", "generate deduplicated queries with reference information");
  add_common(gen_queries, true, false);
  gen_queries->add_option("--sandbox", sandbox_path);
  gen_queries->add_option("--count", count);

  auto* run_mas_cmd = app.add_subcommand("run-mas", "run reasoner/judges/reflector and append SFT examples");
  add_common(run_mas_cmd, false, true);
  run_mas_cmd->add_option("--sandbox", sandbox_path);
  run_mas_cmd->add_option("--queries", queries_path);
  run_mas_cmd->add_option("--traces", traces_path, "also append raw traces here");

  auto* build_sft = app.add_subcommand("build-sft", "rebuild SFT examples from a trace file");
  add_common(build_sft, false, false);
  build_sft->add_option("--traces", traces_path)->required();

  auto* eval_cmd = app.add_subcommand("eval", "evaluate responses against the constraint checks");
  add_common(eval_cmd, false, true);
  eval_cmd->add_option("--sandbox", sandbox_path);
  eval_cmd->add_option("--queries", queries_path);
  eval_cmd->add_option("--responses", responses_path, "JSONL rows {query_id, response|completion}")->required();

  auto* reward_cmd = app.add_subcommand("reward", "score responses with the rule-based reward");
  add_common(reward_cmd, false, false);
  reward_cmd->add_option("--sandbox", sandbox_path);
  reward_cmd->add_option("--queries", queries_path);
  reward_cmd->add_option("--responses", responses_path)->required();

  auto* grpo_cmd = app.add_subcommand("grpo-demo", "train the toy policy with the clipped group objective");
  add_common(grpo_cmd, true, false);
  grpo_cmd->add_option("--steps", steps);
  grpo_cmd->add_option("--learning-rate", learning_rate);

  auto* report_cmd = app.add_subcommand("report", "render criteria as CSV and a text table");
  add_common(report_cmd, false, false);
  report_cmd->add_option("--in", inputs, "[label=]eval report JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("usage_error", e.what(), 2);
  }

  try {
    const PipelineConfig cfg = load(common);
    const std::string sb_path = pick(sandbox_path, cfg.paths.sandbox);
    const std::string q_path = pick(queries_path, cfg.paths.queries);

    if (*gen_sandbox) {
      auto p = cfg.profile;
      if (!profile.empty()) {
        auto parsed = sandbox_profile_from(profile);
        if (!parsed) throw ConfigError("--profile: expected 'tiny' or 'standard'");
        p = *parsed;
      }
      const auto sb = generate_sandbox(common.seed.value_or(cfg.sandbox_seed), p);
      const auto out = pick(common.out, cfg.paths.sandbox);
      save_sandbox(sb, out);
      std::cout << Json{{"sandbox", out}, {"cities", sb.cities.size()}, {"links", sb.links.size()}}.dump() << "\n";
    } else if (*gen_queries) {
      require_file(sb_path);
      const auto sb = load_sandbox(sb_path);
      const auto records = generate_queries(sb, count.value_or(cfg.query_count),
                                            common.seed.value_or(cfg.query_seed), {}, cfg.query_gen);
      std::vector<Json> rows;
      for (const auto& r : records) rows.push_back(to_json(r));
      const auto out = pick(common.out, cfg.paths.queries);
      write_jsonl(out, rows);
      std::cout << Json{{"queries", out}, {"count", rows.size()}}.dump() << "\n";
    } else if (*run_mas_cmd) {
      require_file(sb_path);
      require_file(q_path);
      auto sb = std::make_shared<const Sandbox>(load_sandbox(sb_path));
      const auto records = load_query_records(q_path);
      DatasetOptions opt;
      opt.jobs = cfg.jobs;
      opt.mas = mas_options(cfg);
      opt.traces_path = fs::path(pick(traces_path, cfg.paths.traces));
      const auto summary = generate_dataset(records, make_backends(cfg, sb), pick(common.out, cfg.paths.dataset), opt);
      std::cout << to_json(summary).dump() << "\n";
    } else if (*build_sft) {
      require_file(traces_path);
      std::vector<Json> rows;
      int failed = 0;
      for (const auto& j : read_jsonl(traces_path)) {
        const auto trace = mas_trace_from_json(j);
        try {
          rows.push_back(to_json(build_sft_example(trace), trace));
        } catch (const IncompleteTraceError& e) {
          ++failed;
          std::cerr << e.what() << "\n";
        }
      }
      const auto out = pick(common.out, cfg.paths.dataset);
      write_jsonl(out, rows);
      std::cout << Json{{"dataset", out}, {"written", rows.size()}, {"failed", failed}}.dump() << "\n";
    } else if (*eval_cmd) {
      require_file(sb_path);
      require_file(q_path);
      require_file(responses_path);
      const auto sb = load_sandbox(sb_path);
      const auto batch = evaluate_batch(sb, load_query_records(q_path), load_responses(responses_path), cfg.eval,
                                        cfg.jobs);
      const auto prefix = pick(common.out, cfg.paths.report);
      write_text_file(prefix + ".json", to_json(batch).dump(2) + "\n");
      write_text_file(prefix + ".csv", batch_report_csv(batch));
      std::cout << criteria_to_json(batch.criteria).dump() << "\n";
    } else if (*reward_cmd) {
      require_file(sb_path);
      require_file(q_path);
      require_file(responses_path);
      const auto sb = load_sandbox(sb_path);
      const auto rows = score_batch(sb, load_query_records(q_path), load_responses(responses_path), cfg.eval,
                                    cfg.reflection);
      if (common.out.empty()) {
        for (const auto& r : rows) std::cout << r.dump() << "\n";
      } else {
        write_jsonl(common.out, rows);
      }
    } else if (*grpo_cmd) {
      GrpoConfig g = cfg.grpo;
      if (common.seed) g.seed = *common.seed;
      if (learning_rate) g.learning_rate = *learning_rate;
      const auto log = grpo_train_demo(ToyPlanEnvironment{}, g, steps.value_or(cfg.grpo_steps));
      const auto csv = train_log_csv(log);
      if (common.out.empty()) std::cout << csv;
      else write_text_file(common.out, csv);
    } else if (*report_cmd) {
      std::vector<ReportRow> rows;
      for (const auto& arg : inputs) {
        const auto eq = arg.find('=');
        const std::string path = eq == std::string::npos ? arg : arg.substr(eq + 1);
        const std::string label = eq == std::string::npos ? fs::path(path).stem().string() : arg.substr(0, eq);
        require_file(path);
        const auto doc = parse_json_text(read_text_file(path), path);
        if (!doc.contains("criteria")) throw ParseError(path + ": no 'criteria' object");
        rows.push_back({label, criteria_from_json(doc.at("criteria"))});
      }
      const auto table = report_table(rows);
      if (!common.out.empty()) {
        write_text_file(common.out + ".csv", report_csv(rows));
        write_text_file(common.out + ".txt", table);
      }
      std::cout << table;
    }
  } catch (const Error& e) {
    return fail(e.kind(), e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail("parse_error", e.what());
  } catch (const std::exception& e) {
    return fail("internal_error", e.what());
  }
  return 0;
}
