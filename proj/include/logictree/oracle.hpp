// Ground-truth reasoner: exhaustive forward-chaining closure under the
// open-world assumption. Used for gold labels, proof-chain validation and
// engine soundness checks. Implemented independently of the symbolic
// backend so the two routes can check each other.

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "logictree/fact_repository.hpp"
#include "logictree/statement.hpp"

namespace logictree {

class VocabularyExplosion : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ClosureEntry {
  Statement fact;
  int round = 0;  // 0 = given; n = added in the n-th application pass
  std::optional<DerivationStep> provenance;
};

struct Closure {
  std::vector<ClosureEntry> entries;  // insertion order

  bool contains(const Statement& s) const;
  const ClosureEntry* find(const Statement& s) const;
  // Any statement whose negation is also in the closure?
  bool has_contradiction() const;
};

// Least fixpoint of exhaustive rule application over the given facts. Throws
// VocabularyExplosion when the closure exceeds `max_statements`.
Closure closure(const Problem& problem, std::size_t max_statements = 10000);

struct GoldResult {
  Label label = Label::Unknown;
  // Both the hypothesis and its negation were derivable; the label reports
  // whichever the breadth-first application order reached first.
  bool inconsistent = false;
};

GoldResult gold_label(const Problem& problem, std::size_t max_statements = 10000);

// True iff `conclusion` is exactly the rule's conclusion under a substitution
// whose conditions the antecedents satisfy.
bool validate_step(std::span<const Statement> antecedents, const Rule& rule,
                   const Statement& conclusion);

}  // namespace logictree
