#include "logictree/engine.hpp"

#include <algorithm>
#include <random>
#include <unordered_map>
#include <unordered_set>

namespace logictree {

namespace {

void expand_antecedents(const Statement& fact, const DerivationHashMap& map,
                        std::unordered_set<std::string>& visited,
                        std::vector<DerivationStep>& chain) {
  const DerivationStep* step = map.find(fact);
  if (step == nullptr) return;  // given fact
  if (!visited.insert(fact.to_string()).second) return;
  for (const Statement& antecedent : step->antecedents) {
    expand_antecedents(antecedent, map, visited, chain);
  }
  chain.push_back(*step);
}

struct BudgetExhausted {};

class Engine {
 public:
  Engine(const Problem& problem, ReasoningBackend& backend, const EngineOptions& opts)
      : problem_(problem), backend_(backend), opts_(opts), rng_(opts.seed) {}

  ProofResult run() {
    try {
      return search();
    } catch (BudgetExhausted) {
      result_.hit_step_limit = true;
      return finish(Label::Unknown);
    } catch (const BackendError& e) {
      throw EngineFailure(e.what(), finish(Label::Unknown));
    }
  }

 private:
  // --- step accounting -----------------------------------------------------

  void ensure_budget() {
    if (opts_.limit_mode == StepLimitMode::per_call && steps_ >= opts_.step_limit) {
      throw BudgetExhausted{};
    }
  }

  int next_step() {
    ensure_budget();
    return ++steps_;
  }

  // --- recorded backend calls ----------------------------------------------

  SelectedRules call_forward(const Statement& fact) {
    CallRecord rec;
    rec.step = next_step();
    rec.module = ModuleKind::forward;
    rec.anchor = fact;
    rec.rules_in_scope = problem_.rules.size();
    rec.repo_size = repo_.size();
    SelectedRules out = backend_.forward_selection(fact, problem_.rules);
    rec.outcome = out;
    result_.calls.push_back(std::move(rec));
    return out;
  }

  DerivationOutcome call_derive(std::vector<Statement> facts, const Rule& rule) {
    CallRecord rec;
    rec.step = next_step();
    rec.module = ModuleKind::derive;
    rec.facts = std::move(facts);
    rec.rule = rule;
    rec.repo_size = repo_.size();
    DerivationOutcome out = backend_.derivation(rec.facts, rule);
    if (const auto* derived = std::get_if<Derived>(&out)) {
      rec.outcome = *derived;
      rec.derived_was_new = !known(derived->fact);
    } else if (std::holds_alternative<PseudoDeadEnd>(out)) {
      rec.outcome = PseudoDeadEnd{};
    } else {
      rec.outcome = DeadEnd{};
    }
    result_.calls.push_back(std::move(rec));
    return out;
  }

  BackwardOutcome call_backward(const Statement& fact, const Rule& rule) {
    CallRecord rec;
    rec.step = next_step();
    rec.module = ModuleKind::backward;
    rec.anchor = fact;
    rec.rule = rule;
    rec.repo_size = repo_.size();
    BackwardOutcome out = backend_.backward_selection(fact, rule, repo_);
    if (const auto* missing = std::get_if<MissingFacts>(&out)) {
      rec.outcome = *missing;
    } else {
      rec.outcome = MissingUnavailable{};
    }
    result_.calls.push_back(std::move(rec));
    return out;
  }

  Verdict call_verify(const Statement& proposition) {
    CallRecord rec;
    rec.step = next_step();
    rec.module = ModuleKind::verify;
    rec.anchor = proposition;
    rec.repo_size = repo_.size();
    Verdict v = backend_.verification(proposition, problem_.hypothesis);
    rec.outcome = v;
    result_.calls.push_back(std::move(rec));
    return v;
  }

  // --- Algorithm 3: early stopping -----------------------------------------

  Label early_stop(const Statement& candidate) {
    switch (call_verify(candidate)) {
      case Verdict::Same: return Label::True;
      case Verdict::Opposite: return Label::False;
      case Verdict::Indeterminate: return Label::Unknown;
    }
    return Label::Unknown;
  }

  // --- Algorithm 2: inference ----------------------------------------------

  struct InferenceResult {
    std::optional<Statement> derived;
    std::vector<Statement> antecedents;
    std::string note;
  };

  InferenceResult inference(const Statement& leaf, const Rule& rule) {
    InferenceResult out;
    DerivationOutcome first = call_derive({leaf}, rule);
    if (const auto* d = std::get_if<Derived>(&first)) {
      out.derived = d->fact;
      out.antecedents = {leaf};
      out.note = "derived";
      return out;
    }
    if (std::holds_alternative<DeadEnd>(first)) {
      out.note = "dead end";
      return out;
    }

    BackwardOutcome back = call_backward(leaf, rule);
    const auto* missing = std::get_if<MissingFacts>(&back);
    if (missing == nullptr) {
      out.note = "pseudo dead end, missing facts unavailable";
      return out;
    }

    // Re-derivation input: the leaf plus the supplemented facts in
    // repository insertion order.
    std::vector<Statement> supplement = missing->facts;
    std::stable_sort(supplement.begin(), supplement.end(),
                     [this](const Statement& a, const Statement& b) {
                       return repo_.insertion_index(a) < repo_.insertion_index(b);
                     });
    std::vector<Statement> inputs;
    inputs.push_back(leaf);
    inputs.insert(inputs.end(), supplement.begin(), supplement.end());
    DerivationOutcome second = call_derive(inputs, rule);
    if (const auto* d = std::get_if<Derived>(&second)) {
      out.derived = d->fact;
      out.antecedents = std::move(inputs);
      out.note = "derived after backward selection";
      return out;
    }
    out.note = "re-derivation failed";
    return out;
  }

  // --- Algorithm 1: DFS over ranked trees ----------------------------------

  ProofResult search() {
    // Initial sweep: the hypothesis may already be a given fact.
    for (const Statement& fact : problem_.facts) {
      Label verdict = early_stop(fact);
      if (verdict != Label::Unknown) {
        result_.verified_fact = fact;
        result_.proof_chain = std::vector<DerivationStep>{};
        return finish(verdict);
      }
    }

    repo_ = FactRepository(problem_.facts);

    std::vector<Statement> roots;
    if (opts_.heuristics_on) {
      for (auto& ranked : rank_facts(problem_.facts, problem_.rules, problem_.hypothesis)) {
        roots.push_back(std::move(ranked.fact));
      }
    } else {
      roots = problem_.facts;
      std::shuffle(roots.begin(), roots.end(), rng_);
    }

    int tree_index = -1;
    for (const Statement& root : roots) {
      if (steps_ > opts_.step_limit) {
        result_.hit_step_limit = true;
        break;
      }
      ++tree_index;
      int root_node = add_node(TraceNode::Kind::root, root.to_string(), -1, tree_index);
      node_of_fact_[root.to_string()] = root_node;

      std::vector<Statement> stack{root};
      while (!stack.empty()) {
        Statement leaf = stack.back();
        stack.pop_back();
        int leaf_node = node_of_fact_.at(leaf.to_string());

        SelectedRules selected = call_forward(leaf);
        std::vector<Rule> ordered;
        if (opts_.heuristics_on) {
          for (auto& rr : rank_rules(selected.rules, problem_.hypothesis, opts_.rule_profile)) {
            ordered.push_back(std::move(rr.rule));
          }
        } else {
          ordered = selected.rules;
          std::shuffle(ordered.begin(), ordered.end(), rng_);
        }

        for (const Rule& rule : ordered) {
          int rule_node = add_node(TraceNode::Kind::rule, rule.to_string(), leaf_node,
                                   tree_index);
          InferenceResult inferred = inference(leaf, rule);
          result_.tree[static_cast<std::size_t>(rule_node)].note = inferred.note;
          if (!inferred.derived) continue;
          const Statement& derived = *inferred.derived;

          Label verdict = early_stop(derived);
          if (verdict != Label::Unknown) {
            add_node(TraceNode::Kind::derived, derived.to_string(), rule_node, tree_index);
            DerivationStep final_step{derived, rule, inferred.antecedents};
            std::vector<DerivationStep> chain;
            std::unordered_set<std::string> visited{derived.to_string()};
            for (const Statement& antecedent : final_step.antecedents) {
              expand_antecedents(antecedent, hashmap_, visited, chain);
            }
            chain.push_back(std::move(final_step));
            result_.verified_fact = derived;
            result_.proof_chain = std::move(chain);
            return finish(verdict);
          }

          if (!known(derived)) {
            int derived_node =
                add_node(TraceNode::Kind::derived, derived.to_string(), rule_node, tree_index);
            node_of_fact_[derived.to_string()] = derived_node;
            stack.push_back(derived);
            remember(derived);
            hashmap_.record(DerivationStep{derived, rule, inferred.antecedents});
          } else {
            result_.tree[static_cast<std::size_t>(rule_node)].note += ", duplicate";
          }
        }
      }
    }
    if (opts_.limit_mode == StepLimitMode::per_root && steps_ > opts_.step_limit) {
      result_.hit_step_limit = true;
    }
    return finish(Label::Unknown);
  }

  // --- bookkeeping ----------------------------------------------------------

  bool known(const Statement& s) const {
    if (opts_.use_fact_repository) return repo_.contains(s);
    return repo_.contains(s) || seen_derived_.count(s.to_string()) != 0;
  }

  void remember(const Statement& s) {
    if (opts_.use_fact_repository) {
      repo_.add_derived(s);
    } else {
      seen_derived_.insert(s.to_string());
    }
  }

  int add_node(TraceNode::Kind kind, std::string text, int parent, int tree_index) {
    int id = static_cast<int>(result_.tree.size());
    result_.tree.push_back(TraceNode{id, parent, kind, std::move(text), tree_index, {}});
    return id;
  }

  ProofResult finish(Label label) {
    result_.label = label;
    result_.steps = steps_;
    result_.repository.clear();
    for (const Statement& s : repo_.ordered()) {
      result_.repository.emplace_back(s, repo_.origin_of(s));
    }
    if (label == Label::Unknown) result_.proof_chain.reset();
    return std::move(result_);
  }

  const Problem& problem_;
  ReasoningBackend& backend_;
  EngineOptions opts_;
  std::mt19937_64 rng_;

  FactRepository repo_;
  DerivationHashMap hashmap_;
  std::unordered_set<std::string> seen_derived_;  // no-repository ablation dedup
  std::unordered_map<std::string, int> node_of_fact_;
  ProofResult result_;
  int steps_ = 0;
};

}  // namespace

ProofResult solve(const Problem& problem, ReasoningBackend& backend,
                  const EngineOptions& options) {
  return Engine(problem, backend, options).run();
}

std::vector<DerivationStep> reconstruct_proof(const Statement& final_fact,
                                              const DerivationHashMap& map) {
  std::vector<DerivationStep> chain;
  std::unordered_set<std::string> visited;
  expand_antecedents(final_fact, map, visited, chain);
  return chain;
}

}  // namespace logictree
