#include "logictree/symbolic_backend.hpp"

#include <algorithm>
#include <cassert>

namespace logictree {

namespace {

// Non-binding structural check: does the fact fit the condition's predicate
// slot regardless of the subject?
bool slot_compatible(const StatementPattern& cond, const Statement& fact) {
  return cond.predicate == fact.predicate && cond.kind == fact.kind &&
         cond.object == fact.object && cond.polarity == fact.polarity;
}

bool matches_under(const StatementPattern& cond, const Statement& fact,
                   const std::optional<NounPhrase>& binding) {
  if (!slot_compatible(cond, fact)) return false;
  if (cond.subject) return *cond.subject == fact.subject;
  return binding && *binding == fact.subject;
}

bool condition_satisfied(const StatementPattern& cond, std::span<const Statement> facts,
                         const std::optional<NounPhrase>& binding) {
  return std::any_of(facts.begin(), facts.end(),
                     [&](const Statement& f) { return matches_under(cond, f, binding); });
}

// Candidate variable bindings in deterministic order: the anchor's subject
// first when it fits a variable slot, then subjects of later facts, and
// finally "unbound" so ground conditions still count.
std::vector<std::optional<NounPhrase>> candidate_bindings(const Rule& rule,
                                                          std::span<const Statement> facts) {
  std::vector<std::optional<NounPhrase>> out;
  auto push_unique = [&](const NounPhrase& np) {
    for (const auto& existing : out) {
      if (existing && *existing == np) return;
    }
    out.emplace_back(np);
  };
  if (rule.has_variable()) {
    for (const auto& fact : facts) {
      for (const auto& cond : rule.conditions) {
        if (cond.is_variable() && slot_compatible(cond, fact)) {
          push_unique(fact.subject);
          break;
        }
      }
    }
  }
  out.emplace_back(std::nullopt);
  return out;
}

struct Evaluation {
  std::size_t matched = 0;
  bool full = false;
  std::optional<Statement> conclusion;
};

Evaluation evaluate(const Rule& rule, std::span<const Statement> facts,
                    const std::optional<NounPhrase>& binding) {
  Evaluation ev;
  for (const auto& cond : rule.conditions) {
    if (condition_satisfied(cond, facts, binding)) ++ev.matched;
  }
  bool complete = rule.condition_mode == ConditionMode::disjunctive
                      ? ev.matched > 0
                      : ev.matched == rule.conditions.size();
  if (!complete) return ev;
  if (rule.conclusion.is_variable() && !binding) return ev;  // cannot ground
  ev.full = true;
  ev.conclusion = rule.conclusion.instantiate(binding);
  return ev;
}

}  // namespace

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Same: return "Same";
    case Verdict::Opposite: return "Opposite";
    case Verdict::Indeterminate: return "Indeterminate";
  }
  return "Indeterminate";
}

std::string_view to_string(ModuleKind kind) {
  switch (kind) {
    case ModuleKind::forward: return "forward_selection";
    case ModuleKind::derive: return "derivation";
    case ModuleKind::backward: return "backward_selection";
    case ModuleKind::verify: return "verification";
  }
  return "unknown";
}

SelectedRules SymbolicBackend::forward_selection(const Statement& fact,
                                                 std::span<const Rule> rules) {
  rules_scanned_.fetch_add(rules.size(), std::memory_order_relaxed);
  SelectedRules out;
  for (const Rule& rule : rules) {
    bool relevant = std::any_of(
        rule.conditions.begin(), rule.conditions.end(), [&](const StatementPattern& cond) {
          if (!slot_compatible(cond, fact)) return false;
          return cond.is_variable() || *cond.subject == fact.subject;
        });
    if (relevant) out.rules.push_back(rule);
  }
  return out;
}

DerivationOutcome SymbolicBackend::derivation(std::span<const Statement> facts,
                                              const Rule& rule) {
  if (facts.empty()) return DeadEnd{};

  std::size_t best_matched = 0;
  for (const auto& binding : candidate_bindings(rule, facts)) {
    Evaluation ev = evaluate(rule, facts, binding);
    if (ev.full) {
      const Statement& derived = *ev.conclusion;
      bool duplicates_input = std::any_of(facts.begin(), facts.end(),
                                          [&](const Statement& f) { return f == derived; });
      // A rule that reproduces one of its own inputs adds nothing.
      if (duplicates_input) return DeadEnd{};
      return Derived{derived};
    }
    best_matched = std::max(best_matched, ev.matched);
  }
  if (rule.condition_mode == ConditionMode::conjunctive && best_matched > 0) {
    return PseudoDeadEnd{};
  }
  return DeadEnd{};
}

BackwardOutcome SymbolicBackend::backward_selection(const Statement& fact, const Rule& rule,
                                                    const FactRepository& repo) {
  condition_checks_.fetch_add(rule.conditions.size(), std::memory_order_relaxed);

  // The pivot fact fixes the variable binding when it fits a variable slot.
  std::optional<NounPhrase> binding;
  for (const auto& cond : rule.conditions) {
    if (cond.is_variable() && slot_compatible(cond, fact)) {
      binding = fact.subject;
      break;
    }
  }

  auto unmatched_under = [&](const std::optional<NounPhrase>& b) {
    std::vector<const StatementPattern*> unmatched;
    for (const auto& cond : rule.conditions) {
      if (!matches_under(cond, fact, b)) unmatched.push_back(&cond);
    }
    return unmatched;
  };

  auto lookup_all = [&](const std::vector<const StatementPattern*>& unmatched,
                        const std::optional<NounPhrase>& b) -> std::optional<MissingFacts> {
    MissingFacts found;
    for (const StatementPattern* cond : unmatched) {
      if (cond->is_variable() && !b) return std::nullopt;
      Statement needed = cond->instantiate(b);
      assert(!(needed == fact));  // an unmatched condition can never equal the pivot
      if (!repo.contains(needed)) return std::nullopt;
      found.facts.push_back(std::move(needed));
    }
    return found;
  };

  if (binding || !rule.has_variable()) {
    auto unmatched = unmatched_under(binding);
    if (auto found = lookup_all(unmatched, binding)) return *found;
    return MissingUnavailable{};
  }

  // Pivot matched only concrete slots: search the repository for a subject
  // that satisfies every remaining variable slot.
  auto unmatched = unmatched_under(std::nullopt);
  const StatementPattern* first_var = nullptr;
  for (const StatementPattern* cond : unmatched) {
    if (cond->is_variable()) {
      first_var = cond;
      break;
    }
  }
  if (!first_var) {
    if (auto found = lookup_all(unmatched, std::nullopt)) return *found;
    return MissingUnavailable{};
  }
  for (const Statement& candidate : repo.ordered()) {
    if (!slot_compatible(*first_var, candidate)) continue;
    std::optional<NounPhrase> b = candidate.subject;
    if (auto found = lookup_all(unmatched_under(b), b)) return *found;
  }
  return MissingUnavailable{};
}

Verdict SymbolicBackend::verification(const Statement& proposition,
                                      const Statement& hypothesis) {
  if (proposition == hypothesis) return Verdict::Same;
  if (proposition == hypothesis.negated()) return Verdict::Opposite;
  return Verdict::Indeterminate;
}

}  // namespace logictree
