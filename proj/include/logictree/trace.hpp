// Versioned JSON serialization of a solve trace; see docs/schemas.md.

#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "logictree/engine.hpp"

namespace logictree {

inline constexpr std::string_view kTraceSchema = "logictree.trace/1";

nlohmann::ordered_json outcome_to_json(const CallOutcome& outcome);

nlohmann::ordered_json trace_to_json(const ProofResult& result, std::string_view instance_id,
                                     const nlohmann::ordered_json& config);

// Human-readable rendering of a trace document (the `trace-show` view).
std::string trace_to_text(const nlohmann::ordered_json& trace);

}  // namespace logictree
