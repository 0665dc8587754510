// Domain types for the templated premise language: statements, rule
// patterns, rules and whole problem instances.

#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace logictree {

enum class Polarity { positive, negative };

// How a statement's predicate attaches to its subject. The kind decides the
// canonical surface form ("is red" / "is a tumpus" / "chases X" / "is X's son").
enum class PredicateKind { attribute, nominal, verb, kinship };

// A determiner-stripped, lowercased noun phrase. `proper` records whether the
// source text used a bare capitalized name (no determiner), which the
// canonical renderer needs to restore the surface form.
struct NounPhrase {
  std::string text;
  bool proper = false;

  // "Bob" / "The cat" / "the cat" depending on properness and position.
  std::string surface(bool sentence_initial) const;
  // "Bob's" / "the cat's"
  std::string possessive() const;

  friend bool operator==(const NounPhrase&, const NounPhrase&) = default;
  friend auto operator<=>(const NounPhrase&, const NounPhrase&) = default;
};

// An atomic polarity-tagged proposition. Equality is field equality, which
// coincides with canonical-string equality because rendering is injective
// over the fields.
struct Statement {
  NounPhrase subject;
  std::string predicate;  // lemma
  PredicateKind kind = PredicateKind::attribute;
  std::optional<NounPhrase> object;
  Polarity polarity = Polarity::positive;

  Statement negated() const;
  // Canonical sentence, e.g. "The rabbit does not chase the bald eagle."
  std::string to_string() const;
  // Clause without final period, e.g. "the rabbit does not chase the bald eagle".
  std::string clause(bool sentence_initial = false) const;

  friend bool operator==(const Statement&, const Statement&) = default;
  friend auto operator<=>(const Statement&, const Statement&) = default;
};

// A statement slot inside a rule. A missing subject marks the rule's single
// quantified variable ("something"/"someone"/...).
struct StatementPattern {
  std::optional<NounPhrase> subject;  // nullopt = variable
  std::string predicate;
  PredicateKind kind = PredicateKind::attribute;
  std::optional<NounPhrase> object;
  Polarity polarity = Polarity::positive;

  bool is_variable() const { return !subject.has_value(); }

  static StatementPattern of(const Statement& s);

  // Ground the pattern; `binding` supplies the variable subject. Throws
  // std::logic_error if the pattern is a variable and no binding is given.
  Statement instantiate(const std::optional<NounPhrase>& binding) const;

  // Unify against a concrete statement. For variable patterns the binding is
  // read when set and written when empty; concrete patterns require equality.
  bool unify(const Statement& s, std::optional<NounPhrase>& binding) const;

  friend bool operator==(const StatementPattern&, const StatementPattern&) = default;
  friend auto operator<=>(const StatementPattern&, const StatementPattern&) = default;
};

enum class ConditionMode { conjunctive, disjunctive };

// One direction of a conditional premise. Biconditionals and conjunctive
// conclusions are normalized away at parse time, so a Rule always has a
// single conclusion pattern.
struct Rule {
  std::vector<StatementPattern> conditions;
  StatementPattern conclusion;
  ConditionMode condition_mode = ConditionMode::conjunctive;
  std::string source_text;  // original sentence, not part of identity

  bool has_variable() const;
  // Canonical form: "If <c1> and <c2> then <conclusion>."
  std::string to_string() const;

  friend bool operator==(const Rule& a, const Rule& b) {
    return a.conditions == b.conditions && a.conclusion == b.conclusion &&
           a.condition_mode == b.condition_mode;
  }
};

enum class Label { True, False, Unknown };

std::string_view to_string(Label label);
std::optional<Label> label_from_string(std::string_view text);

struct Problem {
  std::vector<Statement> facts;
  std::vector<Rule> rules;
  Statement hypothesis;
  std::optional<Label> gold;
};

// Suffix-table morphology used instead of a statistical lemmatizer; the
// datasets are machine-templated so the closed tables are exact.
std::string verb_lemma(std::string_view third_person);
std::string verb_third_person(std::string_view lemma);
std::string singularize_noun(std::string_view plural);
std::string indefinite_article(std::string_view noun);  // "a" / "an"

}  // namespace logictree
