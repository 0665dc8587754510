// LLM-free premise prioritization: semantic profiles, the weighted overlap
// score, cumulative connectivity, and fact/rule ranking.

#pragma once

#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "logictree/statement.hpp"

namespace logictree {

// Exact rational score in quarter units; semantic overlap values are
// multiples of 0.25 and connectivity is a sum of such values.
struct QuarterScore {
  int quarters = 0;

  double value() const { return quarters / 4.0; }
  std::string str() const;

  QuarterScore& operator+=(QuarterScore o) {
    quarters += o.quarters;
    return *this;
  }
  friend QuarterScore operator+(QuarterScore a, QuarterScore b) {
    return QuarterScore{a.quarters + b.quarters};
  }
  friend bool operator==(const QuarterScore&, const QuarterScore&) = default;
  friend auto operator<=>(const QuarterScore&, const QuarterScore&) = default;
};

// The (s, p, sp) triple extracted from a clause, rule or raw sentence.
struct SemanticProfile {
  std::set<std::string> subjects;
  std::set<std::string> predicates;
  std::set<std::pair<std::string, std::string>> subject_predicate_pairs;
};

// Whether rule profiles use the whole rule text or only its conclusion when
// ranked against the hypothesis.
enum class RuleProfileMode { whole_text, conclusion_only };

SemanticProfile profile(const Statement& statement);
SemanticProfile profile(const StatementPattern& pattern);
SemanticProfile profile(const Rule& rule, RuleProfileMode mode = RuleProfileMode::whole_text);

// Fallback extraction for text outside the template grammar: capitalized
// tokens become subjects, remaining content lemmas become predicates, and sp
// is their cross product. Never fails; empty input gives empty sets.
SemanticProfile profile_text(std::string_view raw);

// 0.25 * [s overlap] + 0.25 * [p overlap] + 0.5 * [sp overlap].
QuarterScore semantic_overlap(const SemanticProfile& a, const SemanticProfile& b);

// Sum of the fact's overlap with every rule profile.
QuarterScore cumulative_connectivity(const SemanticProfile& fact,
                                     std::span<const SemanticProfile> rules);

struct RankedFact {
  Statement fact;
  QuarterScore connectivity;
  bool subject_aligned = false;
};

struct RankedRule {
  Rule rule;
  QuarterScore overlap;
};

// Subject-aligned facts first, then descending connectivity (stable); facts
// with zero connectivity are discarded.
std::vector<RankedFact> rank_facts(std::span<const Statement> facts,
                                   std::span<const Rule> rules,
                                   const Statement& hypothesis);

// Stable descending sort of the selected rules by overlap with the hypothesis.
std::vector<RankedRule> rank_rules(std::span<const Rule> selected,
                                   const Statement& hypothesis,
                                   RuleProfileMode mode = RuleProfileMode::whole_text);

}  // namespace logictree
