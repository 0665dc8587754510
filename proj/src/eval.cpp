#include "logictree/eval.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <sstream>
#include <thread>

#include "logictree/oracle.hpp"
#include "logictree/symbolic_backend.hpp"
#include "logictree/trace.hpp"

namespace logictree {

namespace {

using nlohmann::ordered_json;

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

bool subset_of(const std::vector<Rule>& a, const std::vector<Rule>& b) {
  return std::all_of(a.begin(), a.end(), [&](const Rule& r) {
    return std::find(b.begin(), b.end(), r) != b.end();
  });
}

bool same_fact_set(const std::vector<Statement>& a, const std::vector<Statement>& b) {
  if (a.size() != b.size()) return false;
  for (const Statement& s : a) {
    if (std::find(b.begin(), b.end(), s) == b.end()) return false;
  }
  return true;
}

// Re-check the recorded transcript against the symbolic route (selection,
// dead-end classification) and the closure oracle (derivation validity).
InstanceMetrics harvest_metrics(const ProofResult& result, const Problem& problem) {
  InstanceMetrics m;
  m.validated = true;
  SymbolicBackend symbolic;

  // The repository is append-only, so the first repo_size entries reproduce
  // the cache state each call saw.
  std::vector<Statement> final_repo;
  final_repo.reserve(result.repository.size());
  for (const auto& [fact, origin] : result.repository) final_repo.push_back(fact);

  for (const CallRecord& call : result.calls) {
    switch (call.module) {
      case ModuleKind::forward: {
        ++m.selection_calls;
        SelectedRules expected = symbolic.forward_selection(*call.anchor, problem.rules);
        const auto& got = std::get<SelectedRules>(call.outcome);
        if (subset_of(got.rules, expected.rules)) ++m.selection_correct;
        break;
      }
      case ModuleKind::backward: {
        ++m.selection_calls;
        std::size_t prefix = std::min(call.repo_size, final_repo.size());
        FactRepository repo_at_call(
            std::span<const Statement>(final_repo.data(), prefix));
        BackwardOutcome expected =
            symbolic.backward_selection(*call.anchor, *call.rule, repo_at_call);
        bool correct = false;
        if (const auto* got = std::get_if<MissingFacts>(&call.outcome)) {
          const auto* want = std::get_if<MissingFacts>(&expected);
          correct = want != nullptr && same_fact_set(got->facts, want->facts);
        } else {
          correct = std::holds_alternative<MissingUnavailable>(expected);
        }
        if (correct) ++m.selection_correct;
        break;
      }
      case ModuleKind::derive: {
        ++m.derive_calls;
        DerivationOutcome expected = symbolic.derivation(call.facts, *call.rule);
        bool correct = false;
        if (const auto* got = std::get_if<Derived>(&call.outcome)) {
          ++m.derived;
          if (call.derived_was_new) ++m.derived_new;
          correct = validate_step(call.facts, *call.rule, got->fact);
        } else if (std::holds_alternative<PseudoDeadEnd>(call.outcome)) {
          correct = std::holds_alternative<PseudoDeadEnd>(expected);
        } else {
          correct = std::holds_alternative<DeadEnd>(expected);
        }
        if (correct) ++m.inference_correct;
        break;
      }
      case ModuleKind::verify:
        break;
    }
  }
  return m;
}

std::optional<bool> validate_chain(const ProofResult& result, const Problem& problem) {
  if (result.label == Label::Unknown) return std::nullopt;
  if (!result.proof_chain || !result.verified_fact) return false;
  for (const DerivationStep& step : *result.proof_chain) {
    if (!validate_step(step.antecedents, step.rule, step.derived)) return false;
  }
  const Statement& final_fact = result.proof_chain->empty()
                                    ? *result.verified_fact
                                    : result.proof_chain->back().derived;
  bool same = final_fact == problem.hypothesis;
  bool opposite = final_fact == problem.hypothesis.negated();
  if (result.label == Label::True) return same;
  return opposite;
}

std::string sanitize_for_filename(std::string_view id) {
  std::string out;
  for (char c : id) {
    out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_') ? c : '_';
  }
  return out.empty() ? std::string("instance") : out;
}

}  // namespace

ordered_json EvalConfig::to_json() const {
  ordered_json j;
  j["run_id"] = run_id;
  j["backend"] = backend_name;
  j["step_limit"] = engine.step_limit;
  j["heuristics"] = engine.heuristics_on;
  j["seed"] = engine.seed;
  j["limit_check"] =
      engine.limit_mode == StepLimitMode::per_call ? "per-call" : "per-root";
  j["fact_repository"] = engine.use_fact_repository;
  j["rule_profile"] =
      engine.rule_profile == RuleProfileMode::whole_text ? "whole" : "conclusion";
  j["strict_parse"] = strict_parse;
  j["parallelism"] = parallelism;
  return j;
}

RunReport run_eval(const std::vector<DatasetRecord>& records, ReasoningBackend& backend,
                   const EvalConfig& config) {
  RunReport report;
  report.config = config;
  report.instances.resize(records.size());

  const ordered_json config_json = config.to_json();

  auto evaluate_one = [&](std::size_t index) {
    const DatasetRecord& record = records[index];
    InstanceResult& row = report.instances[index];
    row.id = record.id;
    row.gold = record.gold;

    Problem problem;
    try {
      BuiltProblem built = build_problem(record, config.strict_parse);
      problem = std::move(built.problem);
      row.parse_skipped = built.skipped.size();
    } catch (const std::exception& e) {
      row.error = std::string("parse: ") + e.what();
      row.trace = ordered_json();
      return;
    }

    EngineOptions opts = config.engine;
    opts.seed = mix_seed(config.engine.seed, index);

    ProofResult result;
    try {
      result = solve(problem, backend, opts);
    } catch (const EngineFailure& e) {
      row.error = std::string("backend: ") + e.what();
      row.trace = trace_to_json(e.partial(), record.id, config_json);
      return;
    }

    row.predicted = result.label;
    row.steps = result.steps;
    row.hit_step_limit = result.hit_step_limit;
    if (row.gold) row.agree = *row.predicted == *row.gold;
    row.proof_valid = validate_chain(result, problem);
    row.metrics = harvest_metrics(result, problem);
    row.trace = trace_to_json(result, record.id, config_json);
  };

  int workers = std::max(1, config.parallelism);
  if (!backend.concurrent_calls_allowed()) workers = 1;
  if (workers <= 1 || records.size() <= 1) {
    for (std::size_t i = 0; i < records.size(); ++i) evaluate_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
      for (std::size_t i = next.fetch_add(1); i < records.size(); i = next.fetch_add(1)) {
        evaluate_one(i);
      }
    };
    std::vector<std::thread> pool;
    int n = std::min<int>(workers, static_cast<int>(records.size()));
    pool.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  return report;
}

ordered_json RunReport::to_json() const {
  ordered_json doc;
  doc["schema"] = std::string(kReportSchema);
  doc["config"] = config.to_json();

  ordered_json rows = ordered_json::array();
  int with_gold = 0;
  int label_correct = 0;
  int proof_correct = 0;
  int hit_limit = 0;
  int failed = 0;
  long long total_steps = 0;
  int solved = 0;
  long long derive_calls = 0, derived = 0, derived_new = 0;
  long long selection_calls = 0, selection_correct = 0, inference_correct = 0;
  std::size_t parse_skipped = 0;

  for (const InstanceResult& row : instances) {
    ordered_json r;
    r["id"] = row.id;
    r["predicted"] = row.predicted ? ordered_json(std::string(to_string(*row.predicted)))
                                   : ordered_json();
    r["gold"] = row.gold ? ordered_json(std::string(to_string(*row.gold))) : ordered_json();
    r["steps"] = row.steps;
    r["hit_step_limit"] = row.hit_step_limit;
    r["agree"] = row.agree ? ordered_json(*row.agree) : ordered_json();
    r["proof_valid"] = row.proof_valid ? ordered_json(*row.proof_valid) : ordered_json();
    r["parse_skipped"] = row.parse_skipped;
    if (!row.error.empty()) r["error"] = row.error;
    rows.push_back(std::move(r));

    parse_skipped += row.parse_skipped;
    if (!row.error.empty()) {
      ++failed;
      continue;
    }
    ++solved;
    total_steps += row.steps;
    if (row.hit_step_limit) ++hit_limit;
    if (row.gold) {
      ++with_gold;
      if (row.agree && *row.agree) {
        ++label_correct;
        // Mechanical stand-in for manual proof grading: the label matches and
        // the reconstructed chain (when present) validates step by step.
        if (!row.proof_valid || *row.proof_valid) ++proof_correct;
      }
    }
    derive_calls += row.metrics.derive_calls;
    derived += row.metrics.derived;
    derived_new += row.metrics.derived_new;
    selection_calls += row.metrics.selection_calls;
    selection_correct += row.metrics.selection_correct;
    inference_correct += row.metrics.inference_correct;
  }
  doc["instances"] = std::move(rows);

  auto ratio = [](long long num, long long den) {
    return den == 0 ? ordered_json() : ordered_json(static_cast<double>(num) / den);
  };
  ordered_json agg;
  agg["instances"] = instances.size();
  agg["failed"] = failed;
  agg["with_gold"] = with_gold;
  agg["gold_coverage"] = ratio(with_gold, static_cast<long long>(instances.size()));
  agg["label_accuracy"] = ratio(label_correct, with_gold);
  agg["proof_accuracy"] = ratio(proof_correct, with_gold);
  agg["avg_steps"] = solved == 0 ? ordered_json()
                                 : ordered_json(static_cast<double>(total_steps) / solved);
  agg["hit_limit_count"] = hit_limit;
  agg["non_null_inference_rate"] = ratio(derived, derive_calls);
  agg["non_null_unique_inference_rate"] = ratio(derived_new, derive_calls);
  agg["selection_accuracy"] = ratio(selection_correct, selection_calls);
  agg["inference_accuracy"] = ratio(inference_correct, derive_calls);
  agg["parse_skipped"] = parse_skipped;
  doc["aggregates"] = std::move(agg);
  return doc;
}

std::string RunReport::table() const {
  ordered_json doc = to_json();
  const ordered_json& agg = doc["aggregates"];
  std::ostringstream out;
  out << "run " << config.run_id << " (" << config.backend_name << ")\n";
  out << "  instances:        " << agg["instances"] << " (" << agg["failed"]
      << " failed)\n";
  out << "  label accuracy:   " << agg["label_accuracy"].dump() << " over "
      << agg["with_gold"] << " gold labels\n";
  out << "  proof accuracy:   " << agg["proof_accuracy"].dump() << "\n";
  out << "  avg steps:        " << agg["avg_steps"].dump() << "\n";
  out << "  step-limit hits:  " << agg["hit_limit_count"] << "\n";
  out << "  non-null rate:    " << agg["non_null_inference_rate"].dump() << "\n";
  out << "  unique rate:      " << agg["non_null_unique_inference_rate"].dump() << "\n";
  out << "  selection acc:    " << agg["selection_accuracy"].dump() << "\n";
  out << "  inference acc:    " << agg["inference_accuracy"].dump() << "\n";
  out << "  premises skipped: " << agg["parse_skipped"] << "\n";
  return out.str();
}

std::filesystem::path emit_report(const RunReport& report,
                                  const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  std::filesystem::path path = out_dir / (report.config.run_id + ".report.json");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << report.to_json().dump(2) << "\n";
  return path;
}

std::vector<std::filesystem::path> emit_traces(const RunReport& report,
                                               const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  std::vector<std::filesystem::path> paths;
  for (const InstanceResult& row : report.instances) {
    if (row.trace.is_null()) continue;
    std::filesystem::path path =
        out_dir / (report.config.run_id + "." + sanitize_for_filename(row.id) + ".trace.json");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << row.trace.dump(2) << "\n";
    paths.push_back(std::move(path));
  }
  return paths;
}

}  // namespace logictree
