// Evaluation harness: per-instance solve, step-level metrics, report and
// trace emission.

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "logictree/backend.hpp"
#include "logictree/dataset.hpp"
#include "logictree/engine.hpp"

namespace logictree {

inline constexpr std::string_view kReportSchema = "logictree.report/1";

struct EvalConfig {
  EngineOptions engine;
  bool strict_parse = false;
  int parallelism = 1;  // instance granularity; clamped to 1 for serial backends
  std::string run_id = "run";
  std::string backend_name = "symbolic";  // echoed into reports and traces
  bool emit_traces = true;

  nlohmann::ordered_json to_json() const;
};

// Counters harvested from one instance's call transcript.
struct InstanceMetrics {
  int derive_calls = 0;
  int derived = 0;      // calls that produced a fact
  int derived_new = 0;  // calls whose fact was not previously derived
  int selection_calls = 0;
  int selection_correct = 0;  // validated against the symbolic route
  int inference_correct = 0;  // derive calls validated against oracle + symbolic route
  bool validated = false;     // selection/inference accuracy computable
};

struct InstanceResult {
  std::string id;
  std::optional<Label> predicted;
  std::optional<Label> gold;
  int steps = 0;
  bool hit_step_limit = false;
  std::optional<bool> agree;        // predicted == gold, when both exist
  std::optional<bool> proof_valid;  // oracle-validated chain for True/False predictions
  std::string error;                // nonempty when the instance failed
  std::size_t parse_skipped = 0;    // premise sentences dropped in lenient mode
  InstanceMetrics metrics;
  nlohmann::ordered_json trace;
};

struct RunReport {
  EvalConfig config;
  std::vector<InstanceResult> instances;

  nlohmann::ordered_json to_json() const;  // schema, config, rows, aggregates
  std::string table() const;               // human-readable summary
};

RunReport run_eval(const std::vector<DatasetRecord>& records, ReasoningBackend& backend,
                   const EvalConfig& config);

// <out_dir>/<run_id>.report.json
std::filesystem::path emit_report(const RunReport& report,
                                  const std::filesystem::path& out_dir);
// <out_dir>/<run_id>.<instance_id>.trace.json, one per instance
std::vector<std::filesystem::path> emit_traces(const RunReport& report,
                                               const std::filesystem::path& out_dir);

}  // namespace logictree
