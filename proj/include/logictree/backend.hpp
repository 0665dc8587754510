// The four reasoning-module contracts behind one backend interface, plus the
// tagged outcome types they produce.

#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "logictree/fact_repository.hpp"
#include "logictree/statement.hpp"

namespace logictree {

struct SelectedRules {
  std::vector<Rule> rules;  // drawn from the problem's rule set
};

struct Derived {
  Statement fact;
};
struct PseudoDeadEnd {};       // some but not all conjunctive conditions met
struct DeadEnd {};             // no condition met
struct MissingFacts {
  std::vector<Statement> facts;
};
struct MissingUnavailable {};  // missing facts not in the repository

enum class Verdict { Same, Opposite, Indeterminate };

std::string_view to_string(Verdict v);

using DerivationOutcome = std::variant<Derived, PseudoDeadEnd, DeadEnd>;
using BackwardOutcome = std::variant<MissingFacts, MissingUnavailable>;

enum class ModuleKind { forward, derive, backward, verify };

std::string_view to_string(ModuleKind kind);

// Hard backend failure (transport exhausted, invalid response stream, ...).
// Recoverable response problems are mapped to safe outcomes instead.
class BackendError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ReasoningBackend {
 public:
  virtual ~ReasoningBackend() = default;

  // Every rule whose conditions the fact fully or partially satisfies.
  virtual SelectedRules forward_selection(const Statement& fact,
                                          std::span<const Rule> rules) = 0;

  // Strict one-step derivation from the given facts; facts.front() is the
  // anchor that fixes the variable binding.
  virtual DerivationOutcome derivation(std::span<const Statement> facts,
                                       const Rule& rule) = 0;

  // For a pseudo-dead-end pivot, the unmatched conditions looked up in the
  // repository: all found, or unavailable.
  virtual BackwardOutcome backward_selection(const Statement& fact, const Rule& rule,
                                             const FactRepository& repo) = 0;

  virtual Verdict verification(const Statement& proposition,
                               const Statement& hypothesis) = 0;

  // Whether distinct evaluation workers may call this backend concurrently.
  virtual bool concurrent_calls_allowed() const { return false; }
};

}  // namespace logictree
