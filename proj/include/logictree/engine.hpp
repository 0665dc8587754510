// DFS proof search: fact-ranked tree order, rule-ranked branch order, the
// two caches, early stopping, step accounting and bottom-up proof-chain
// reconstruction.

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "logictree/backend.hpp"
#include "logictree/fact_repository.hpp"
#include "logictree/heuristics.hpp"

namespace logictree {

// Where the step budget is enforced. `per_call` additionally refuses every
// backend call once the budget is spent, bounding overshoot at zero;
// `per_root` checks only at the top of the per-root loop.
enum class StepLimitMode { per_call, per_root };

struct EngineOptions {
  int step_limit = 80;
  bool heuristics_on = true;
  std::uint64_t seed = 0;
  StepLimitMode limit_mode = StepLimitMode::per_call;
  bool use_fact_repository = true;  // off: derived facts are not cached/shared
  RuleProfileMode rule_profile = RuleProfileMode::whole_text;
};

using CallOutcome = std::variant<SelectedRules, Derived, PseudoDeadEnd, DeadEnd,
                                 MissingFacts, MissingUnavailable, Verdict>;

// One backend call: inputs, outcome, and the repository prefix length at the
// time of the call (the repository is append-only, so a prefix reconstructs
// the exact cache state).
struct CallRecord {
  int step = 0;  // 1-based
  ModuleKind module = ModuleKind::verify;
  std::optional<Statement> anchor;  // forward fact / backward pivot / verify proposition
  std::vector<Statement> facts;     // derivation inputs
  std::optional<Rule> rule;
  std::size_t rules_in_scope = 0;
  std::size_t repo_size = 0;
  CallOutcome outcome{DeadEnd{}};
  bool derived_was_new = false;  // derive calls: conclusion unseen before this call
};

struct TraceNode {
  enum class Kind { root, rule, derived };
  int id = 0;
  int parent = -1;
  Kind kind = Kind::root;
  std::string text;
  int tree_index = 0;
  std::string note;
};

struct ProofResult {
  Label label = Label::Unknown;
  int steps = 0;
  bool hit_step_limit = false;
  std::optional<Statement> verified_fact;
  std::optional<std::vector<DerivationStep>> proof_chain;  // present iff True/False
  std::vector<CallRecord> calls;
  std::vector<TraceNode> tree;
  std::vector<std::pair<Statement, FactOrigin>> repository;  // final state, insertion order
};

// A backend failure surfaced mid-search; carries the partial exploration.
class EngineFailure : public std::runtime_error {
 public:
  EngineFailure(const std::string& message, ProofResult partial)
      : std::runtime_error(message), partial_(std::move(partial)) {}

  const ProofResult& partial() const { return partial_; }

 private:
  ProofResult partial_;
};

ProofResult solve(const Problem& problem, ReasoningBackend& backend,
                  const EngineOptions& options = {});

// Expand a verified fact bottom-up through the derivation map until all
// leaves are given facts; antecedent derivations precede their consumers and
// the final fact's own derivation comes last. A fact absent from the map (a
// given fact) yields an empty chain.
std::vector<DerivationStep> reconstruct_proof(const Statement& final_fact,
                                              const DerivationHashMap& map);

}  // namespace logictree
