#include "logictree/oracle.hpp"

#include <set>
#include <unordered_map>

namespace logictree {

namespace {

// Ground instance of a pattern under an explicit substitution choice.
Statement ground(const StatementPattern& pattern, const NounPhrase* substitution) {
  NounPhrase subject = pattern.subject ? *pattern.subject : *substitution;
  return Statement{subject, pattern.predicate, pattern.kind, pattern.object, pattern.polarity};
}

bool needs_substitution(const Rule& rule) { return rule.has_variable(); }

class ClosureBuilder {
 public:
  ClosureBuilder(const Problem& problem, std::size_t max_statements)
      : problem_(problem), max_(max_statements) {}

  Closure build() {
    for (const Statement& f : problem_.facts) add(f, 0, std::nullopt);

    int round = 0;
    bool changed = true;
    while (changed) {
      changed = false;
      ++round;
      // Snapshot: a pass applies rules to the facts known before it started.
      const std::size_t known_before = out_.entries.size();
      for (const Rule& rule : problem_.rules) {
        changed |= apply_rule(rule, known_before, round);
      }
    }
    return std::move(out_);
  }

 private:
  bool contains(const Statement& s) const { return index_.count(s.to_string()) != 0; }

  void add(const Statement& s, int round, std::optional<DerivationStep> provenance) {
    if (!index_.emplace(s.to_string(), out_.entries.size()).second) return;
    if (out_.entries.size() >= max_) {
      throw VocabularyExplosion("closure exceeded " + std::to_string(max_) + " statements");
    }
    out_.entries.push_back(ClosureEntry{s, round, std::move(provenance)});
  }

  // All subjects seen so far, in first-appearance order.
  std::vector<NounPhrase> subject_universe(std::size_t known_before) const {
    std::vector<NounPhrase> subjects;
    std::set<std::pair<std::string, bool>> seen;
    for (std::size_t i = 0; i < known_before; ++i) {
      const NounPhrase& np = out_.entries[i].fact.subject;
      if (seen.emplace(np.text, np.proper).second) subjects.push_back(np);
    }
    return subjects;
  }

  bool apply_rule(const Rule& rule, std::size_t snapshot, int round) {
    bool added = false;
    if (!needs_substitution(rule)) {
      added |= try_instance(rule, nullptr, snapshot, round);
      return added;
    }
    for (const NounPhrase& subject : subject_universe(snapshot)) {
      added |= try_instance(rule, &subject, snapshot, round);
    }
    return added;
  }

  // Check one ground instance of the rule against the facts known before the
  // current pass; add its conclusion when it fires.
  bool try_instance(const Rule& rule, const NounPhrase* substitution, std::size_t snapshot,
                    int round) {
    std::vector<Statement> antecedents;
    if (rule.condition_mode == ConditionMode::conjunctive) {
      for (const StatementPattern& cond : rule.conditions) {
        Statement needed = ground(cond, substitution);
        const ClosureEntry* e = lookup_in_snapshot(needed, snapshot);
        if (e == nullptr) return false;
        antecedents.push_back(e->fact);
      }
    } else {
      const ClosureEntry* hit = nullptr;
      for (const StatementPattern& cond : rule.conditions) {
        if (cond.is_variable() && substitution == nullptr) continue;
        Statement needed = ground(cond, substitution);
        hit = lookup_in_snapshot(needed, snapshot);
        if (hit != nullptr) break;
      }
      if (hit == nullptr) return false;
      antecedents.push_back(hit->fact);
    }
    if (rule.conclusion.is_variable() && substitution == nullptr) return false;
    Statement conclusion = ground(rule.conclusion, substitution);
    if (contains(conclusion)) return false;
    add(conclusion, round, DerivationStep{conclusion, rule, std::move(antecedents)});
    return true;
  }

  const ClosureEntry* lookup_in_snapshot(const Statement& s, std::size_t snapshot) const {
    auto it = index_.find(s.to_string());
    if (it == index_.end() || it->second >= snapshot) return nullptr;
    return &out_.entries[it->second];
  }

  const Problem& problem_;
  std::size_t max_;
  Closure out_;
  std::unordered_map<std::string, std::size_t> index_;
};

}  // namespace

bool Closure::contains(const Statement& s) const { return find(s) != nullptr; }

const ClosureEntry* Closure::find(const Statement& s) const {
  for (const ClosureEntry& e : entries) {
    if (e.fact == s) return &e;
  }
  return nullptr;
}

bool Closure::has_contradiction() const {
  std::set<std::string> keys;
  for (const ClosureEntry& e : entries) keys.insert(e.fact.to_string());
  for (const ClosureEntry& e : entries) {
    if (keys.count(e.fact.negated().to_string()) != 0) return true;
  }
  return false;
}

Closure closure(const Problem& problem, std::size_t max_statements) {
  return ClosureBuilder(problem, max_statements).build();
}

GoldResult gold_label(const Problem& problem, std::size_t max_statements) {
  Closure c = closure(problem, max_statements);
  const ClosureEntry* pos = c.find(problem.hypothesis);
  const ClosureEntry* neg = c.find(problem.hypothesis.negated());
  GoldResult out;
  if (pos != nullptr && neg != nullptr) {
    out.inconsistent = true;
    // First reached by breadth-first application order wins.
    bool pos_first = pos->round != neg->round ? pos->round < neg->round : pos < neg;
    out.label = pos_first ? Label::True : Label::False;
  } else if (pos != nullptr) {
    out.label = Label::True;
  } else if (neg != nullptr) {
    out.label = Label::False;
  } else {
    out.label = Label::Unknown;
  }
  return out;
}

bool validate_step(std::span<const Statement> antecedents, const Rule& rule,
                   const Statement& conclusion) {
  auto satisfied = [&](const StatementPattern& cond, const NounPhrase* substitution) {
    if (cond.is_variable() && substitution == nullptr) return false;
    Statement needed = ground(cond, substitution);
    for (const Statement& a : antecedents) {
      if (a == needed) return true;
    }
    return false;
  };
  auto instance_valid = [&](const NounPhrase* substitution) {
    if (rule.conclusion.is_variable() && substitution == nullptr) return false;
    if (!(ground(rule.conclusion, substitution) == conclusion)) return false;
    if (rule.condition_mode == ConditionMode::disjunctive) {
      for (const StatementPattern& cond : rule.conditions) {
        if (satisfied(cond, substitution)) return true;
      }
      return false;
    }
    for (const StatementPattern& cond : rule.conditions) {
      if (!satisfied(cond, substitution)) return false;
    }
    return true;
  };

  if (!rule.has_variable()) return instance_valid(nullptr);
  // Try every subject mentioned by the antecedents or the conclusion.
  std::vector<NounPhrase> candidates;
  candidates.push_back(conclusion.subject);
  for (const Statement& a : antecedents) candidates.push_back(a.subject);
  for (const NounPhrase& np : candidates) {
    if (instance_valid(&np)) return true;
  }
  return false;
}

}  // namespace logictree
