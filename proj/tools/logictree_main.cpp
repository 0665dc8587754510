// Command-line harness: dataset evaluation, oracle gold-labeling, and trace
// inspection.

#include <fstream>
#include <iostream>
#include <memory>

#include <CLI11.hpp>
#include <json.hpp>

#include "logictree/chat_client.hpp"
#include "logictree/dataset.hpp"
#include "logictree/eval.hpp"
#include "logictree/llm_backend.hpp"
#include "logictree/oracle.hpp"
#include "logictree/symbolic_backend.hpp"
#include "logictree/trace.hpp"

namespace {

using namespace logictree;

struct CommonArgs {
  std::string dataset;
  std::string format = "jsonl";
  bool strict_parse = false;
};

DatasetFormat parse_format(const std::string& format) {
  if (format == "text") return DatasetFormat::text_block;
  return DatasetFormat::jsonl;
}

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--dataset", args.dataset, "dataset file")->required();
  cmd->add_option("--format", args.format, "dataset format: jsonl|text")
      ->check(CLI::IsMember({"jsonl", "text"}));
  cmd->add_flag("--strict-parse", args.strict_parse,
                "abort on unparseable premises instead of skipping them");
}

int run_eval_command(const CommonArgs& common, const EvalConfig& config_in,
                     const std::string& backend_name, const LlmConfig& llm,
                     const std::string& cassette, bool record, const std::string& out_dir) {
  LoadedDataset data =
      load_dataset(common.dataset, parse_format(common.format), common.strict_parse);
  for (const LoadIssue& issue : data.issues) {
    std::cerr << "warning: line " << issue.line << ": " << issue.message << "\n";
  }

  EvalConfig config = config_in;
  config.strict_parse = common.strict_parse;
  config.backend_name = backend_name;

  std::unique_ptr<ReasoningBackend> backend;
  if (backend_name == "symbolic") {
    backend = std::make_unique<SymbolicBackend>();
  } else {
    std::shared_ptr<ChatTransport> transport;
    if (backend_name == "replay") {
      if (cassette.empty()) throw CLI::ValidationError("replay backend needs --cassette");
      transport = std::make_shared<CassetteReplayTransport>(cassette);
    } else {
      transport = std::make_shared<HttpChatTransport>(llm);
      if (record) {
        if (cassette.empty()) throw CLI::ValidationError("--record needs --cassette");
        transport = std::make_shared<CassetteRecorder>(transport, cassette);
      }
    }
    backend = std::make_unique<LlmBackend>(transport, llm);
  }

  RunReport report = run_eval(data.records, *backend, config);
  std::cout << report.table();

  if (!out_dir.empty()) {
    auto report_path = emit_report(report, out_dir);
    std::cout << "report: " << report_path.string() << "\n";
    if (config.emit_traces) {
      auto traces = emit_traces(report, out_dir);
      std::cout << "traces: " << traces.size() << " files in " << out_dir << "\n";
    }
  }

  if (auto* llm_backend = dynamic_cast<LlmBackend*>(backend.get())) {
    LlmBackendStats stats = llm_backend->stats();
    std::cerr << "llm calls: " << stats.calls << ", malformed: " << stats.malformed_responses
              << ", format retries: " << stats.format_retries
              << ", transport retries: " << stats.transport_retries
              << ", hallucinated rules: " << stats.hallucinated_rules
              << ", hallucinated facts: " << stats.hallucinated_facts << "\n";
  }
  return 0;
}

int run_label_command(const CommonArgs& common, const std::string& out_path) {
  LoadedDataset data =
      load_dataset(common.dataset, parse_format(common.format), common.strict_parse);
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const DatasetRecord& record : data.records) {
    nlohmann::ordered_json row;
    row["id"] = record.id;
    try {
      BuiltProblem built = build_problem(record, common.strict_parse);
      GoldResult gold = gold_label(built.problem);
      row["label"] = std::string(to_string(gold.label));
      row["inconsistent"] = gold.inconsistent;
      row["premises_skipped"] = built.skipped.size();
      if (record.gold) {
        row["dataset_label"] = std::string(to_string(*record.gold));
        row["matches_dataset"] = *record.gold == gold.label;
      }
    } catch (const std::exception& e) {
      row["error"] = e.what();
    }
    std::cout << row["id"].get<std::string>() << "\t"
              << (row.contains("label") ? row["label"].get<std::string>() : "error") << "\n";
    rows.push_back(std::move(row));
  }
  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    out << rows.dump(2) << "\n";
  }
  return 0;
}

int run_trace_show(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "cannot open " << path << "\n";
    return 1;
  }
  nlohmann::ordered_json trace = nlohmann::ordered_json::parse(in, nullptr, false);
  if (trace.is_discarded()) {
    std::cerr << "not a trace file: " << path << "\n";
    return 1;
  }
  std::cout << trace_to_text(trace);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LogicTree proof-search engine"};
  app.require_subcommand(1);

  CommonArgs eval_common;
  EvalConfig config;
  LlmConfig llm;
  std::string backend_name = "symbolic";
  std::string cassette;
  bool record = false;
  std::string out_dir;
  std::string limit_check = "per-call";
  std::string rule_profile = "whole";
  bool no_heuristics = false;
  bool no_fact_repo = false;

  CLI::App* eval_cmd = app.add_subcommand("eval", "evaluate a dataset");
  add_common(eval_cmd, eval_common);
  eval_cmd->add_option("--backend", backend_name, "symbolic|llm|replay")
      ->check(CLI::IsMember({"symbolic", "llm", "replay"}));
  eval_cmd->add_option("--endpoint", llm.endpoint, "chat-completions base URL");
  eval_cmd->add_option("--model", llm.model, "model id");
  eval_cmd->add_option("--temperature", llm.temperature, "sampling temperature");
  eval_cmd->add_option("--max-retries", llm.max_retries, "transport retries")
      ->check(CLI::NonNegativeNumber);
  eval_cmd->add_option("--api-key-env", llm.api_key_env,
                       "environment variable holding the API key");
  eval_cmd->add_option("--cassette", cassette,
                       "cassette file (record target / replay source)");
  eval_cmd->add_flag("--record", record, "record live responses into --cassette");
  eval_cmd->add_option("--step-limit", config.engine.step_limit, "reasoning step budget");
  eval_cmd->add_flag("--no-heuristics", no_heuristics,
                     "seeded random fact/rule order instead of prioritization");
  eval_cmd->add_option("--seed", config.engine.seed, "rng seed for the random-order arm");
  eval_cmd->add_option("--limit-check", limit_check, "per-call|per-root")
      ->check(CLI::IsMember({"per-call", "per-root"}));
  eval_cmd->add_flag("--no-fact-repo", no_fact_repo,
                     "do not cache derived facts across branches");
  eval_cmd->add_option("--rule-profile", rule_profile, "whole|conclusion")
      ->check(CLI::IsMember({"whole", "conclusion"}));
  eval_cmd->add_option("--out-dir", out_dir, "directory for report and trace files");
  eval_cmd->add_option("--parallel", config.parallelism, "instance-level worker count");
  eval_cmd->add_option("--run-id", config.run_id, "prefix for emitted files");

  CommonArgs label_common;
  std::string label_out;
  CLI::App* label_cmd = app.add_subcommand("label", "closure-oracle gold labels");
  add_common(label_cmd, label_common);
  label_cmd->add_option("--out", label_out, "write labels as JSON");

  std::string trace_path;
  CLI::App* trace_cmd = app.add_subcommand("trace-show", "pretty-print a trace file");
  trace_cmd->add_option("trace", trace_path, "trace JSON file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (eval_cmd->parsed()) {
      config.engine.heuristics_on = !no_heuristics;
      config.engine.use_fact_repository = !no_fact_repo;
      config.engine.limit_mode =
          limit_check == "per-root" ? StepLimitMode::per_root : StepLimitMode::per_call;
      config.engine.rule_profile = rule_profile == "conclusion"
                                       ? RuleProfileMode::conclusion_only
                                       : RuleProfileMode::whole_text;
      return run_eval_command(eval_common, config, backend_name, llm, cassette, record,
                              out_dir);
    }
    if (label_cmd->parsed()) return run_label_command(label_common, label_out);
    if (trace_cmd->parsed()) return run_trace_show(trace_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
