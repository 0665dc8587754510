#include "logictree/statement.hpp"

#include <cctype>
#include <stdexcept>

namespace logictree {

namespace {

bool is_vowel(char c) {
  c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

std::string capitalize_words(std::string_view s) {
  std::string out(s);
  bool at_word_start = true;
  for (char& c : out) {
    if (at_word_start && std::islower(static_cast<unsigned char>(c))) {
      c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    }
    at_word_start = (c == ' ');
  }
  return out;
}

std::string capitalize_first(std::string s) {
  if (!s.empty() && std::islower(static_cast<unsigned char>(s[0]))) {
    s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  }
  return s;
}

}  // namespace

std::string NounPhrase::surface(bool sentence_initial) const {
  if (proper) return capitalize_words(text);
  std::string det = sentence_initial ? "The " : "the ";
  return det + text;
}

std::string NounPhrase::possessive() const {
  std::string base = surface(false);
  return base + "'s";
}

Statement Statement::negated() const {
  Statement out = *this;
  out.polarity = polarity == Polarity::positive ? Polarity::negative : Polarity::positive;
  return out;
}

std::string Statement::clause(bool sentence_initial) const {
  const bool neg = polarity == Polarity::negative;
  std::string out = subject.surface(sentence_initial);
  switch (kind) {
    case PredicateKind::attribute:
      out += neg ? " is not " : " is ";
      out += predicate;
      break;
    case PredicateKind::nominal:
      out += neg ? " is not " : " is ";
      out += indefinite_article(predicate);
      out += ' ';
      out += predicate;
      break;
    case PredicateKind::verb:
      if (neg) {
        out += " does not ";
        out += predicate;
      } else {
        out += ' ';
        out += verb_third_person(predicate);
      }
      out += ' ';
      out += object->surface(false);
      break;
    case PredicateKind::kinship:
      out += neg ? " is not " : " is ";
      out += object->possessive();
      out += ' ';
      out += predicate;
      break;
  }
  return out;
}

std::string Statement::to_string() const {
  return capitalize_first(clause(true)) + ".";
}

StatementPattern StatementPattern::of(const Statement& s) {
  return StatementPattern{s.subject, s.predicate, s.kind, s.object, s.polarity};
}

Statement StatementPattern::instantiate(const std::optional<NounPhrase>& binding) const {
  const std::optional<NounPhrase>& subj = subject ? subject : binding;
  if (!subj) throw std::logic_error("cannot instantiate unbound variable pattern");
  return Statement{*subj, predicate, kind, object, polarity};
}

bool StatementPattern::unify(const Statement& s, std::optional<NounPhrase>& binding) const {
  if (predicate != s.predicate || kind != s.kind || object != s.object ||
      polarity != s.polarity) {
    return false;
  }
  if (subject) return *subject == s.subject;
  if (binding) return *binding == s.subject;
  binding = s.subject;
  return true;
}

bool Rule::has_variable() const {
  if (conclusion.is_variable()) return true;
  for (const auto& c : conditions) {
    if (c.is_variable()) return true;
  }
  return false;
}

std::string Rule::to_string() const {
  // The variable is spelled "something" at first mention, "it" afterwards.
  bool var_seen = false;
  auto pattern_clause = [&var_seen](const StatementPattern& p) {
    NounPhrase subj;
    if (p.is_variable()) {
      subj = NounPhrase{var_seen ? "it" : "something", true};
      var_seen = true;
    } else {
      subj = *p.subject;
    }
    std::string text = Statement{subj, p.predicate, p.kind, p.object, p.polarity}.clause(false);
    if (p.is_variable()) {
      // Pronoun subjects are not capitalized mid-sentence.
      text[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(text[0])));
    }
    return text;
  };

  std::string out = "If ";
  const char* joiner = condition_mode == ConditionMode::disjunctive ? " or " : " and ";
  for (std::size_t i = 0; i < conditions.size(); ++i) {
    if (i > 0) out += joiner;
    out += pattern_clause(conditions[i]);
  }
  out += " then ";
  out += pattern_clause(conclusion);
  out += '.';
  return out;
}

std::string_view to_string(Label label) {
  switch (label) {
    case Label::True: return "True";
    case Label::False: return "False";
    case Label::Unknown: return "Unknown";
  }
  return "Unknown";
}

std::optional<Label> label_from_string(std::string_view text) {
  std::string lower;
  lower.reserve(text.size());
  for (char c : text) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (lower == "true") return Label::True;
  if (lower == "false") return Label::False;
  if (lower == "unknown" || lower == "uncertain" || lower == "unk") return Label::Unknown;
  return std::nullopt;
}

std::string verb_lemma(std::string_view v) {
  if (v == "has") return "have";
  if (v == "does") return "do";
  if (ends_with(v, "sses") || ends_with(v, "shes") || ends_with(v, "ches") ||
      ends_with(v, "xes") || ends_with(v, "zes")) {
    return std::string(v.substr(0, v.size() - 2));
  }
  if (ends_with(v, "ies") && v.size() > 3 && !is_vowel(v[v.size() - 4])) {
    return std::string(v.substr(0, v.size() - 3)) + "y";
  }
  if (ends_with(v, "s") && !ends_with(v, "ss") && v.size() > 1) {
    return std::string(v.substr(0, v.size() - 1));
  }
  return std::string(v);
}

std::string verb_third_person(std::string_view lemma) {
  if (lemma == "have") return "has";
  if (lemma == "do") return "does";
  if (ends_with(lemma, "s") || ends_with(lemma, "sh") || ends_with(lemma, "ch") ||
      ends_with(lemma, "x") || ends_with(lemma, "z") || ends_with(lemma, "o")) {
    return std::string(lemma) + "es";
  }
  if (ends_with(lemma, "y") && lemma.size() > 1 && !is_vowel(lemma[lemma.size() - 2])) {
    return std::string(lemma.substr(0, lemma.size() - 1)) + "ies";
  }
  return std::string(lemma) + "s";
}

std::string singularize_noun(std::string_view plural) {
  if (plural == "people") return "person";
  if (ends_with(plural, "uses") || ends_with(plural, "sses") || ends_with(plural, "shes") ||
      ends_with(plural, "ches") || ends_with(plural, "xes") || ends_with(plural, "zes")) {
    return std::string(plural.substr(0, plural.size() - 2));
  }
  if (ends_with(plural, "ies") && plural.size() > 3 && !is_vowel(plural[plural.size() - 4])) {
    return std::string(plural.substr(0, plural.size() - 3)) + "y";
  }
  if (ends_with(plural, "s") && !ends_with(plural, "ss") && plural.size() > 1) {
    return std::string(plural.substr(0, plural.size() - 1));
  }
  return std::string(plural);
}

std::string indefinite_article(std::string_view noun) {
  return (!noun.empty() && is_vowel(noun[0])) ? "an" : "a";
}

}  // namespace logictree
