#include "logictree/trace.hpp"

#include <sstream>

namespace logictree {

using nlohmann::ordered_json;

ordered_json outcome_to_json(const CallOutcome& outcome) {
  ordered_json out;
  if (const auto* sel = std::get_if<SelectedRules>(&outcome)) {
    out["kind"] = "selected_rules";
    ordered_json rules = ordered_json::array();
    for (const Rule& r : sel->rules) rules.push_back(r.to_string());
    out["rules"] = std::move(rules);
  } else if (const auto* d = std::get_if<Derived>(&outcome)) {
    out["kind"] = "derived";
    out["fact"] = d->fact.to_string();
  } else if (std::holds_alternative<PseudoDeadEnd>(outcome)) {
    out["kind"] = "pseudo_dead_end";
  } else if (std::holds_alternative<DeadEnd>(outcome)) {
    out["kind"] = "dead_end";
  } else if (const auto* m = std::get_if<MissingFacts>(&outcome)) {
    out["kind"] = "missing_facts";
    ordered_json facts = ordered_json::array();
    for (const Statement& s : m->facts) facts.push_back(s.to_string());
    out["facts"] = std::move(facts);
  } else if (std::holds_alternative<MissingUnavailable>(outcome)) {
    out["kind"] = "missing_unavailable";
  } else if (const auto* v = std::get_if<Verdict>(&outcome)) {
    out["kind"] = "verdict";
    out["verdict"] = std::string(to_string(*v));
  }
  return out;
}

ordered_json trace_to_json(const ProofResult& result, std::string_view instance_id,
                           const ordered_json& config) {
  ordered_json doc;
  doc["schema"] = std::string(kTraceSchema);
  doc["instance_id"] = std::string(instance_id);
  doc["config"] = config;
  doc["label"] = std::string(to_string(result.label));
  doc["steps"] = result.steps;
  doc["hit_step_limit"] = result.hit_step_limit;
  doc["verified_fact"] =
      result.verified_fact ? ordered_json(result.verified_fact->to_string()) : ordered_json();

  if (result.proof_chain) {
    ordered_json chain = ordered_json::array();
    for (const DerivationStep& step : *result.proof_chain) {
      ordered_json entry;
      entry["derived"] = step.derived.to_string();
      entry["rule"] = step.rule.to_string();
      ordered_json ants = ordered_json::array();
      for (const Statement& a : step.antecedents) ants.push_back(a.to_string());
      entry["antecedents"] = std::move(ants);
      chain.push_back(std::move(entry));
    }
    doc["proof_chain"] = std::move(chain);
  } else {
    doc["proof_chain"] = ordered_json();
  }

  ordered_json calls = ordered_json::array();
  for (const CallRecord& call : result.calls) {
    ordered_json entry;
    entry["step"] = call.step;
    entry["module"] = std::string(to_string(call.module));
    ordered_json inputs;
    if (call.anchor) inputs["fact"] = call.anchor->to_string();
    if (!call.facts.empty()) {
      ordered_json facts = ordered_json::array();
      for (const Statement& s : call.facts) facts.push_back(s.to_string());
      inputs["facts"] = std::move(facts);
    }
    if (call.rule) inputs["rule"] = call.rule->to_string();
    if (call.module == ModuleKind::forward) inputs["rules_in_scope"] = call.rules_in_scope;
    entry["inputs"] = std::move(inputs);
    entry["outcome"] = outcome_to_json(call.outcome);
    entry["repo_size"] = call.repo_size;
    if (call.module == ModuleKind::derive) entry["derived_was_new"] = call.derived_was_new;
    calls.push_back(std::move(entry));
  }
  doc["calls"] = std::move(calls);

  ordered_json nodes = ordered_json::array();
  for (const TraceNode& node : result.tree) {
    ordered_json entry;
    entry["id"] = node.id;
    entry["parent"] = node.parent;
    switch (node.kind) {
      case TraceNode::Kind::root: entry["kind"] = "root"; break;
      case TraceNode::Kind::rule: entry["kind"] = "rule"; break;
      case TraceNode::Kind::derived: entry["kind"] = "derived"; break;
    }
    entry["text"] = node.text;
    entry["tree"] = node.tree_index;
    if (!node.note.empty()) entry["note"] = node.note;
    nodes.push_back(std::move(entry));
  }
  doc["tree"] = std::move(nodes);

  ordered_json repo = ordered_json::array();
  for (const auto& [fact, origin] : result.repository) {
    ordered_json entry;
    entry["fact"] = fact.to_string();
    entry["origin"] = origin == FactOrigin::given ? "given" : "derived";
    repo.push_back(std::move(entry));
  }
  doc["fact_repository"] = std::move(repo);
  return doc;
}

std::string trace_to_text(const ordered_json& trace) {
  std::ostringstream out;
  out << "instance: " << trace.value("instance_id", std::string("?")) << "\n";
  out << "label: " << trace.value("label", std::string("?"))
      << "  steps: " << trace.value("steps", 0)
      << (trace.value("hit_step_limit", false) ? "  [step limit hit]" : "") << "\n";

  if (trace.contains("proof_chain") && !trace["proof_chain"].is_null()) {
    out << "proof chain:\n";
    if (trace["proof_chain"].empty()) {
      out << "  (hypothesis verified directly against a given fact)\n";
    }
    for (const auto& step : trace["proof_chain"]) {
      out << "  " << step["antecedents"].dump() << " + " << step["rule"].get<std::string>()
          << " => " << step["derived"].get<std::string>() << "\n";
    }
  }

  out << "exploration:\n";
  if (trace.contains("tree")) {
    for (const auto& node : trace["tree"]) {
      int depth = 0;
      // Depth via parent chase is quadratic but traces are small.
      int parent = node.value("parent", -1);
      while (parent >= 0) {
        ++depth;
        parent = trace["tree"][static_cast<std::size_t>(parent)].value("parent", -1);
      }
      for (int i = 0; i < depth + 1; ++i) out << "  ";
      out << "[" << node.value("kind", std::string()) << "] " << node.value("text", std::string());
      if (node.contains("note")) out << "  (" << node["note"].get<std::string>() << ")";
      out << "\n";
    }
  }

  out << "calls:\n";
  if (trace.contains("calls")) {
    for (const auto& call : trace["calls"]) {
      out << "  #" << call.value("step", 0) << " " << call.value("module", std::string()) << " -> "
          << call["outcome"]["kind"].get<std::string>() << "\n";
    }
  }
  return out.str();
}

}  // namespace logictree
