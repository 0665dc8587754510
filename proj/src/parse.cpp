#include "logictree/parse.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <optional>

namespace logictree {

namespace {

std::string to_lower(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool is_word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '\'' || c == '-';
}

struct Token {
  std::string lower;
  std::size_t offset = 0;
  bool capitalized = false;
};

std::vector<Token> tokenize(std::string_view text, std::size_t base_offset) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && !is_word_char(text[i])) ++i;
    if (i >= text.size()) break;
    std::size_t start = i;
    while (i < text.size() && is_word_char(text[i])) ++i;
    std::string_view word = text.substr(start, i - start);
    tokens.push_back(Token{to_lower(word), base_offset + start,
                           std::isupper(static_cast<unsigned char>(word[0])) != 0});
  }
  return tokens;
}

bool is_determiner(std::string_view w) { return w == "the" || w == "a" || w == "an"; }

bool is_copula(std::string_view w) {
  return w == "is" || w == "are" || w == "was" || w == "were" || w == "being" || w == "be";
}

bool is_filler(std::string_view w) {
  static constexpr std::array<std::string_view, 10> kFillers = {
      "always", "often",      "usually", "certainly", "probably",
      "definitely", "still", "also",    "both",      "either"};
  return std::find(kFillers.begin(), kFillers.end(), w) != kFillers.end();
}

bool is_variable_word(std::string_view w) {
  return w == "something" || w == "someone" || w == "somebody" || w == "anyone" ||
         w == "anything" || w == "anybody" || w == "everyone" || w == "everything";
}

bool is_pronoun(std::string_view w) {
  return w == "it" || w == "they" || w == "he" || w == "she";
}

bool is_possessive(std::string_view w) {
  return w.size() > 2 && w.substr(w.size() - 2) == "'s";
}

bool looks_like_verb(const Token& t) {
  return t.lower.size() > 1 && t.lower.back() == 's' && !is_possessive(t.lower) &&
         !is_copula(t.lower) && t.lower != "does";
}

// How the fragment parser refers back to earlier clauses of the same rule.
struct ClauseContext {
  bool allow_variable = false;
  bool variable_introduced = false;
  bool last_was_variable = false;
  std::optional<NounPhrase> last_concrete_subject;
};

NounPhrase make_noun_phrase(const std::vector<Token>& tokens, std::size_t begin,
                            std::size_t end) {
  bool had_determiner = false;
  if (begin < end && is_determiner(tokens[begin].lower)) {
    had_determiner = true;
    ++begin;
  }
  std::string text;
  for (std::size_t i = begin; i < end; ++i) {
    if (!text.empty()) text += ' ';
    text += tokens[i].lower;
  }
  bool proper = !had_determiner && begin < end && tokens[begin].capitalized;
  return NounPhrase{std::move(text), proper};
}

class ClauseParser {
 public:
  ClauseParser(std::string_view fragment, std::size_t base_offset, ClauseContext& ctx)
      : tokens_(tokenize(fragment, base_offset)), base_offset_(base_offset), ctx_(ctx) {}

  StatementPattern parse() {
    if (tokens_.empty()) fail(base_offset_, "empty clause");
    while (!done() && tokens_[pos_].lower == "that") ++pos_;
    if (done()) fail(base_offset_, "empty clause");

    SubjectRef subject = parse_subject();
    StatementPattern pattern;
    if (elliptical_) {
      // Bare fragments: "not white", "a wumpus", or a verb phrase
      // ("chases the dog") continuing the previous clause's subject.
      if (looks_like_verb(at(pos_)) && pos_ + 1 < tokens_.size()) {
        pattern = parse_predicate(subject);
      } else {
        pattern = parse_copula_complement(subject);
      }
    } else {
      pattern = parse_predicate(subject);
    }
    if (pos_ != tokens_.size()) fail(at(pos_).offset, "unexpected trailing words");

    if (pattern.is_variable()) {
      ctx_.last_was_variable = true;
    } else {
      ctx_.last_was_variable = false;
      ctx_.last_concrete_subject = pattern.subject;
    }
    return pattern;
  }

 private:
  struct SubjectRef {
    bool variable = false;
    std::optional<NounPhrase> concrete;
  };

  struct KinshipLeft {
    std::string kin;
    NounPhrase of;
  };

  [[noreturn]] void fail(std::size_t offset, std::string reason) const {
    throw ParseError(offset, std::move(reason));
  }

  const Token& at(std::size_t i) const { return tokens_[i]; }
  bool done() const { return pos_ >= tokens_.size(); }
  std::size_t here() const { return done() ? base_offset_ : tokens_[pos_].offset; }

  // Index of the token that starts the predicate, or tokens_.size() when the
  // fragment has no predicate head (elliptical).
  std::size_t find_pivot(std::size_t from) const {
    for (std::size_t i = from; i < tokens_.size(); ++i) {
      const std::string& w = at(i).lower;
      if (is_copula(w) || w == "does" || w == "do") return i;
    }
    for (std::size_t i = from + 1; i < tokens_.size(); ++i) {
      if (looks_like_verb(at(i)) && i + 1 < tokens_.size()) return i;
    }
    return tokens_.size();
  }

  // "it"/"they"/"she" refer to the rule's variable whenever one has been
  // introduced, even across an intervening concrete clause.
  SubjectRef pronoun_subject() {
    if (ctx_.variable_introduced) return SubjectRef{true, std::nullopt};
    if (ctx_.last_concrete_subject) return SubjectRef{false, ctx_.last_concrete_subject};
    fail(here(), "pronoun without antecedent");
  }

  // Elliptical fragments ("not white", "is a wumpus") continue the subject of
  // the immediately preceding clause.
  SubjectRef continuation_subject() {
    if (ctx_.last_was_variable) return SubjectRef{true, std::nullopt};
    if (ctx_.last_concrete_subject) return SubjectRef{false, ctx_.last_concrete_subject};
    if (ctx_.variable_introduced) return SubjectRef{true, std::nullopt};
    fail(here(), "elliptical clause without antecedent");
  }

  SubjectRef parse_subject() {
    const std::string& first = at(pos_).lower;
    if (is_variable_word(first)) {
      if (!ctx_.allow_variable) fail(at(pos_).offset, "quantified subject in statement");
      ++pos_;
      ctx_.variable_introduced = true;
      return SubjectRef{true, std::nullopt};
    }
    if (is_pronoun(first)) {
      ++pos_;
      return pronoun_subject();
    }
    if (first == "a" && pos_ + 2 < tokens_.size() &&
        (at(pos_ + 1).lower == "person" || at(pos_ + 1).lower == "people")) {
      if (!ctx_.allow_variable) fail(at(pos_).offset, "quantified subject in statement");
      pos_ += 2;
      ctx_.variable_introduced = true;
      return SubjectRef{true, std::nullopt};
    }

    std::size_t pivot = find_pivot(pos_);
    if (pivot == pos_) {
      // Fragment starts at the predicate: "is not filthy", "being relieved".
      return continuation_subject();
    }
    if (pivot == tokens_.size()) {
      elliptical_ = true;
      return continuation_subject();
    }

    // "The <kin> of <np> is <np>" puts the true subject on the right side.
    if (at(pos_).lower == "the" && pivot >= pos_ + 4 && at(pos_ + 2).lower == "of") {
      kinship_left_ = KinshipLeft{at(pos_ + 1).lower, make_noun_phrase(tokens_, pos_ + 3, pivot)};
      if (kinship_left_->of.text.empty()) fail(at(pos_).offset, "empty kin holder");
      pos_ = pivot;
      return SubjectRef{};  // resolved in parse_predicate
    }

    NounPhrase np = make_noun_phrase(tokens_, pos_, pivot);
    if (np.text.empty()) fail(at(pos_).offset, "empty subject");
    pos_ = pivot;
    return SubjectRef{false, np};
  }

  NounPhrase parse_noun_tail(const char* what) {
    if (done()) fail(here(), std::string("missing ") + what);
    NounPhrase np = make_noun_phrase(tokens_, pos_, tokens_.size());
    if (np.text.empty()) fail(here(), std::string("missing ") + what);
    pos_ = tokens_.size();
    return np;
  }

  StatementPattern finish(const SubjectRef& subject, std::string predicate,
                          PredicateKind kind, std::optional<NounPhrase> object,
                          Polarity polarity) {
    if (!subject.variable && !subject.concrete) fail(base_offset_, "missing subject");
    if (predicate.empty()) fail(here(), "empty predicate");
    StatementPattern p;
    p.subject = subject.variable ? std::nullopt : subject.concrete;
    p.predicate = std::move(predicate);
    p.kind = kind;
    p.object = std::move(object);
    p.polarity = polarity;
    return p;
  }

  StatementPattern parse_predicate(SubjectRef subject) {
    if (kinship_left_) {
      // "The father of Dave is [not] Bob" -> Bob is Dave's father.
      if (done() || at(pos_).lower != "is") fail(here(), "expected 'is' after kin phrase");
      ++pos_;
      Polarity pol = Polarity::positive;
      if (!done() && at(pos_).lower == "not") {
        pol = Polarity::negative;
        ++pos_;
      }
      NounPhrase holder = parse_noun_tail("kinship subject");
      KinshipLeft left = *kinship_left_;
      return finish(SubjectRef{false, holder}, left.kin, PredicateKind::kinship, left.of, pol);
    }

    if (done()) fail(base_offset_, "missing predicate");

    if (is_copula(at(pos_).lower)) {
      ++pos_;
      return parse_copula_complement(subject);
    }
    if (at(pos_).lower == "does" || at(pos_).lower == "do") {
      ++pos_;
      if (done() || at(pos_).lower != "not") fail(here(), "expected 'not' after 'does'");
      ++pos_;
      if (done()) fail(here(), "missing verb");
      std::string verb = at(pos_).lower;
      ++pos_;
      NounPhrase object = parse_noun_tail("object");
      return finish(subject, verb, PredicateKind::verb, object, Polarity::negative);
    }

    // Plain verb: 3sg form in concrete clauses, base form after pronouns and
    // quantifiers ("they like the dog").
    std::string verb = at(pos_).lower;
    ++pos_;
    std::string lemma = (verb.size() > 1 && verb.back() == 's') ? verb_lemma(verb) : verb;
    NounPhrase object = parse_noun_tail("object");
    return finish(subject, lemma, PredicateKind::verb, object, Polarity::positive);
  }

  StatementPattern parse_copula_complement(SubjectRef subject) {
    while (!done() && is_filler(at(pos_).lower)) ++pos_;
    Polarity pol = Polarity::positive;
    if (!done() && at(pos_).lower == "not") {
      pol = Polarity::negative;
      ++pos_;
    }
    while (!done() && is_filler(at(pos_).lower)) ++pos_;
    if (done()) fail(here(), "missing predicate after copula");

    // "is the aunt of Dave"
    if (at(pos_).lower == "the" && pos_ + 3 < tokens_.size() && at(pos_ + 2).lower == "of") {
      std::string kin = at(pos_ + 1).lower;
      pos_ += 3;
      NounPhrase of = parse_noun_tail("kin holder");
      return finish(subject, kin, PredicateKind::kinship, of, pol);
    }

    // "is Bob's mother"
    for (std::size_t i = pos_; i < tokens_.size(); ++i) {
      if (!is_possessive(at(i).lower)) continue;
      if (i + 1 >= tokens_.size()) fail(at(i).offset, "missing kin term");
      if (i + 2 != tokens_.size()) fail(at(i + 2).offset, "unexpected trailing words");
      std::vector<Token> owner_tokens(tokens_.begin() + static_cast<long>(pos_),
                                      tokens_.begin() + static_cast<long>(i) + 1);
      owner_tokens.back().lower.resize(owner_tokens.back().lower.size() - 2);
      NounPhrase owner = make_noun_phrase(owner_tokens, 0, owner_tokens.size());
      std::string kin = at(i + 1).lower;
      pos_ = tokens_.size();
      return finish(subject, kin, PredicateKind::kinship, owner, pol);
    }

    // "is a tumpus"
    if (is_determiner(at(pos_).lower) && at(pos_).lower != "the") {
      ++pos_;
      if (done()) fail(here(), "missing noun after article");
      std::string noun = join_rest();
      return finish(subject, noun, PredicateKind::nominal, std::nullopt, pol);
    }

    std::string attr = join_rest();
    return finish(subject, attr, PredicateKind::attribute, std::nullopt, pol);
  }

  // Remaining tokens as one phrase; structural words mark an unsupported
  // nested clause rather than a predicate.
  std::string join_rest() {
    std::string out;
    for (; pos_ < tokens_.size(); ++pos_) {
      const std::string& w = at(pos_).lower;
      if (is_copula(w) || w == "does" || w == "do" || w == "not" || is_variable_word(w) ||
          is_pronoun(w) || is_determiner(w)) {
        fail(at(pos_).offset, "unexpected '" + w + "' inside predicate phrase");
      }
      if (!out.empty()) out += ' ';
      out += w;
    }
    return out;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::size_t base_offset_;
  ClauseContext& ctx_;
  std::optional<KinshipLeft> kinship_left_;
  bool elliptical_ = false;
};

StatementPattern parse_clause(std::string_view fragment, std::size_t base_offset,
                              ClauseContext& ctx) {
  return ClauseParser(fragment, base_offset, ctx).parse();
}

// ---------------------------------------------------------------------------
// Sentence-level templates
// ---------------------------------------------------------------------------

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && (std::isspace(static_cast<unsigned char>(s.back())) || s.back() == '.'))
    s.remove_suffix(1);
  return s;
}

std::string_view strip_comma_suffix(std::string_view s) {
  while (!s.empty() && (s.back() == ',' || std::isspace(static_cast<unsigned char>(s.back()))))
    s.remove_suffix(1);
  return s;
}

struct ClauseList {
  std::vector<std::pair<std::string, std::size_t>> fragments;  // text + offset
  ConditionMode mode = ConditionMode::conjunctive;
};

ClauseList split_clause_list(std::string_view text, std::size_t base_offset) {
  ClauseList out;
  std::string lower = to_lower(text);
  std::size_t start = 0;
  if (lower.rfind("either ", 0) == 0) {
    out.mode = ConditionMode::disjunctive;
    start = 7;
  }

  bool saw_and = false;
  bool saw_or = false;
  std::size_t frag_begin = start;
  auto push_fragment = [&](std::size_t end) {
    std::string_view frag = text.substr(frag_begin, end - frag_begin);
    std::string_view trimmed = trim(frag);
    if (!trimmed.empty()) {
      std::size_t lead = static_cast<std::size_t>(trimmed.data() - text.data());
      out.fragments.emplace_back(std::string(trimmed), base_offset + lead);
    }
  };

  std::size_t i = start;
  while (i < lower.size()) {
    if (lower.compare(i, 6, ", and ") == 0) {
      push_fragment(i);
      saw_and = true;
      i += 6;
      frag_begin = i;
    } else if (lower.compare(i, 5, ", or ") == 0) {
      push_fragment(i);
      saw_or = true;
      i += 5;
      frag_begin = i;
    } else if (lower.compare(i, 5, " and ") == 0) {
      push_fragment(i);
      saw_and = true;
      i += 5;
      frag_begin = i;
    } else if (lower.compare(i, 4, " or ") == 0) {
      push_fragment(i);
      saw_or = true;
      i += 4;
      frag_begin = i;
    } else if (lower[i] == ',') {
      push_fragment(i);
      ++i;
      while (i < lower.size() && lower[i] == ' ') ++i;
      frag_begin = i;
    } else {
      ++i;
    }
  }
  push_fragment(text.size());

  if (saw_and && saw_or) {
    throw ParseError(base_offset, "mixed 'and'/'or' connectives in one clause list");
  }
  if (saw_or) out.mode = ConditionMode::disjunctive;
  return out;
}

std::vector<StatementPattern> parse_fragments(const ClauseList& list, ClauseContext& ctx) {
  std::vector<StatementPattern> patterns;
  patterns.reserve(list.fragments.size());
  for (const auto& [frag, offset] : list.fragments) {
    patterns.push_back(parse_clause(frag, offset, ctx));
  }
  return patterns;
}

struct RuleParts {
  std::vector<StatementPattern> conditions;
  ConditionMode mode = ConditionMode::conjunctive;
  std::vector<StatementPattern> conclusions;
};

std::vector<Rule> assemble(const RuleParts& parts, std::string_view source,
                           std::size_t offset) {
  if (parts.conditions.empty()) throw ParseError(offset, "rule has no conditions");
  if (parts.conclusions.empty()) throw ParseError(offset, "rule has no conclusion");
  bool condition_has_variable =
      std::any_of(parts.conditions.begin(), parts.conditions.end(),
                  [](const StatementPattern& p) { return p.is_variable(); });
  std::vector<Rule> rules;
  for (const auto& conclusion : parts.conclusions) {
    if (conclusion.is_variable() && !condition_has_variable) {
      throw ParseError(offset, "conclusion variable unbound by any condition");
    }
    rules.push_back(Rule{parts.conditions, conclusion, parts.mode, std::string(source)});
  }
  return rules;
}

std::vector<Rule> reverse_rules(const RuleParts& parts, std::string_view source,
                                std::size_t offset) {
  if (parts.mode == ConditionMode::disjunctive) {
    throw ParseError(offset, "cannot invert a disjunctive rule");
  }
  RuleParts reversed;
  reversed.conditions = parts.conclusions;
  reversed.conclusions = parts.conditions;
  reversed.mode = ConditionMode::conjunctive;
  return assemble(reversed, source, offset);
}

// Split an if-sentence at " then " or, failing that, at the last ", ".
std::size_t find_then_split(std::string_view lower, std::size_t from, std::size_t* skip) {
  std::size_t pos = lower.find(" then ", from);
  if (pos != std::string_view::npos) {
    *skip = 6;
    return pos;
  }
  pos = lower.rfind(", ");
  if (pos != std::string_view::npos && pos >= from) {
    *skip = 2;
    return pos;
  }
  return std::string_view::npos;
}

}  // namespace

ParseError::ParseError(std::size_t offset, std::string reason)
    : std::runtime_error("parse error at byte " + std::to_string(offset) + ": " + reason),
      offset_(offset),
      reason_(std::move(reason)) {}

Statement parse_statement(std::string_view text) {
  std::string_view body = trim(text);
  if (body.empty()) throw ParseError(0, "empty sentence");
  std::string lower = to_lower(body);
  if (lower.rfind("if ", 0) == 0 || lower.find(" then ") != std::string::npos ||
      lower.find(" if ") != std::string::npos) {
    throw ParseError(0, "conditional sentence in statement position");
  }
  std::size_t base = static_cast<std::size_t>(body.data() - text.data());
  ClauseContext ctx;
  ctx.allow_variable = false;
  StatementPattern pattern = parse_clause(body, base, ctx);
  return pattern.instantiate(std::nullopt);
}

std::vector<Rule> parse_rule(std::string_view text) {
  std::string_view body = trim(text);
  if (body.empty()) throw ParseError(0, "empty sentence");
  std::size_t base = static_cast<std::size_t>(body.data() - text.data());
  std::string lower = to_lower(body);

  // "..., and vice versa" -> both implication directions.
  bool bidirectional = false;
  {
    static constexpr std::string_view kSuffix = "and vice versa";
    if (lower.size() > kSuffix.size() &&
        lower.compare(lower.size() - kSuffix.size(), kSuffix.size(), kSuffix) == 0) {
      body = strip_comma_suffix(body.substr(0, body.size() - kSuffix.size()));
      lower = to_lower(body);
      bidirectional = true;
    }
  }

  ClauseContext ctx;
  ctx.allow_variable = true;
  RuleParts parts;

  auto offset_of = [&](std::string_view part) {
    return base + static_cast<std::size_t>(part.data() - body.data());
  };
  auto parse_condition_text = [&](std::string_view cond_text) {
    ClauseList list = split_clause_list(cond_text, offset_of(cond_text));
    parts.mode = list.mode;
    parts.conditions = parse_fragments(list, ctx);
  };
  auto parse_conclusion_text = [&](std::string_view concl_text) {
    ClauseList list = split_clause_list(concl_text, offset_of(concl_text));
    if (list.mode == ConditionMode::disjunctive) {
      throw ParseError(offset_of(concl_text), "disjunctive conclusion is not supported");
    }
    parts.conclusions = parse_fragments(list, ctx);
  };
  auto with_reverse = [&](std::vector<Rule> rules) {
    if (bidirectional) {
      auto back = reverse_rules(parts, body, base);
      rules.insert(rules.end(), back.begin(), back.end());
    }
    return rules;
  };

  // "<lhs> is equivalent to <rhs>"
  if (std::size_t eq = lower.find(" is equivalent to "); eq != std::string::npos) {
    std::string_view left = strip_comma_suffix(body.substr(0, eq));
    std::string_view right = trim(body.substr(eq + 18));
    parse_condition_text(left);
    parse_conclusion_text(right);
    auto rules = assemble(parts, body, base);
    auto back = reverse_rules(parts, body, base);
    rules.insert(rules.end(), back.begin(), back.end());
    return rules;
  }

  // "It can be concluded that <D> once knowing that <C>"
  if (lower.rfind("it can be concluded that ", 0) == 0) {
    std::size_t once = lower.find(" once knowing that ");
    if (once == std::string::npos) throw ParseError(base, "missing 'once knowing that'");
    std::string_view concl = strip_comma_suffix(body.substr(25, once - 25));
    std::string_view cond = trim(body.substr(once + 19));
    parse_condition_text(cond);
    parse_conclusion_text(concl);
    return with_reverse(assemble(parts, body, base));
  }

  // "<clauses> implies [that] <D>"
  if (std::size_t imp = lower.find(" implies "); imp != std::string::npos) {
    std::string_view left = strip_comma_suffix(body.substr(0, imp));
    std::string_view right = trim(body.substr(imp + 9));
    if (to_lower(right).rfind("that ", 0) == 0) right = trim(right.substr(5));
    parse_condition_text(left);
    parse_conclusion_text(right);
    return with_reverse(assemble(parts, body, base));
  }

  // "If there is <someone> who <conditions>, then <D>"
  if (lower.rfind("if there is ", 0) == 0 || lower.rfind("if there are ", 0) == 0) {
    std::size_t who = lower.find(" who ");
    if (who == std::string::npos) throw ParseError(base, "missing 'who' in existential rule");
    std::size_t skip = 0;
    std::size_t split = find_then_split(lower, who, &skip);
    if (split == std::string::npos) throw ParseError(base, "missing conclusion");
    std::string_view cond = strip_comma_suffix(body.substr(who + 5, split - (who + 5)));
    std::string_view concl = trim(body.substr(split + skip));
    ctx.variable_introduced = true;
    ctx.last_was_variable = true;
    parse_condition_text(cond);
    parse_conclusion_text(concl);
    return assemble(parts, body, base);
  }

  // "If <conditions> then <conclusions>"
  if (lower.rfind("if ", 0) == 0) {
    std::size_t skip = 0;
    std::size_t split = find_then_split(lower, 3, &skip);
    if (split == std::string::npos) throw ParseError(base, "missing 'then'");
    std::string_view cond = strip_comma_suffix(body.substr(3, split - 3));
    std::string_view concl = trim(body.substr(split + skip));
    parse_condition_text(cond);
    parse_conclusion_text(concl);
    return with_reverse(assemble(parts, body, base));
  }

  // "Everything that is <conditions> is <conclusions>" / "Everyone who ..."
  if (lower.rfind("everything ", 0) == 0 || lower.rfind("everyone ", 0) == 0 ||
      lower.rfind("anything ", 0) == 0 || lower.rfind("anyone ", 0) == 0) {
    std::size_t rel = lower.find(" that ");
    std::size_t rel_len = 6;
    if (rel == std::string::npos) {
      rel = lower.find(" who ");
      rel_len = 5;
    }
    if (rel == std::string::npos) throw ParseError(base, "missing relative clause");
    std::size_t split = lower.rfind(" is ");
    if (split == std::string::npos || split <= rel + rel_len) {
      split = lower.rfind(" are ");
      if (split == std::string::npos || split <= rel + rel_len)
        throw ParseError(base, "missing conclusion");
    }
    std::string_view cond = strip_comma_suffix(body.substr(rel + rel_len, split - (rel + rel_len)));
    std::string_view concl = trim(body.substr(split + 1));  // keep the copula
    ctx.variable_introduced = true;
    ctx.last_was_variable = true;
    parse_condition_text(cond);
    parse_conclusion_text(concl);
    return assemble(parts, body, base);
  }

  // "Someone who <conditions> is <conclusion>" / "People who ... tend to be ..."
  {
    bool quantified_head = lower.rfind("someone ", 0) == 0 || lower.rfind("somebody ", 0) == 0 ||
                           lower.rfind("people ", 0) == 0 || lower.rfind("a person ", 0) == 0;
    std::size_t rel = quantified_head ? lower.find(" who ") : std::string::npos;
    if (quantified_head && rel == std::string::npos && lower.find(" being ") != std::string::npos) {
      // "Someone being both filthy and not unlikely ..." (equivalence handled
      // earlier; a bare "being" rule still needs a conclusion split below).
      rel = lower.find(" being ") - 1;  // pretend the relative marker sits before "being"
    }
    if (quantified_head && rel != std::string::npos) {
      std::size_t cond_begin = lower.compare(rel, 5, " who ") == 0 ? rel + 5 : rel + 1;
      std::size_t split = std::string::npos;
      std::size_t skip = 0;
      if (std::size_t t = lower.find(" tend to be ", cond_begin); t != std::string::npos) {
        split = t;
        skip = 12;
      } else if (std::size_t t2 = lower.find(" tends to be ", cond_begin);
                 t2 != std::string::npos) {
        split = t2;
        skip = 13;
      } else {
        std::size_t is_pos = lower.rfind(" is ");
        std::size_t are_pos = lower.rfind(" are ");
        if (is_pos != std::string::npos && is_pos > cond_begin) {
          split = is_pos;
          skip = 1;  // keep the copula in the conclusion fragment
        } else if (are_pos != std::string::npos && are_pos > cond_begin) {
          split = are_pos;
          skip = 1;
        }
      }
      if (split == std::string::npos) throw ParseError(base, "missing conclusion");
      std::string_view cond = strip_comma_suffix(body.substr(cond_begin, split - cond_begin));
      std::string_view concl = trim(body.substr(split + skip));
      ctx.variable_introduced = true;
      ctx.last_was_variable = true;
      parse_condition_text(cond);
      ctx.last_was_variable = true;
      if (skip > 1) {
        // "tend to be rough" leaves a bare predicate list.
        parse_conclusion_text(concl);
      } else {
        parse_conclusion_text(concl);
      }
      return with_reverse(assemble(parts, body, base));
    }
  }

  // "All <adjectives> people are <conclusions>" and the bare forms
  // "<adjectives> people are ..." / "... things are ...".
  {
    static constexpr std::array<std::string_view, 5> kClassMarkers = {
        " people are ", " things are ", " persons are ", " individuals are ", " person is "};
    for (std::string_view marker : kClassMarkers) {
      std::size_t m = lower.find(marker);
      if (m == std::string::npos) continue;
      std::size_t adj_begin = 0;
      if (lower.rfind("all ", 0) == 0) adj_begin = 4;
      else if (lower.rfind("a ", 0) == 0) adj_begin = 2;
      std::string_view adjs = trim(body.substr(adj_begin, m - adj_begin));
      if (adjs.empty()) continue;
      std::string_view concl = trim(body.substr(m + marker.size()));
      ClauseList adj_list = split_clause_list(adjs, offset_of(adjs));
      ctx.variable_introduced = true;
      ctx.last_was_variable = true;
      for (const auto& [frag, off] : adj_list.fragments) {
        ClauseContext frag_ctx = ctx;
        parts.conditions.push_back(parse_clause("is " + frag, off, frag_ctx));
      }
      parts.mode = adj_list.mode;
      parse_conclusion_text(concl);
      return with_reverse(assemble(parts, body, base));
    }
  }

  // "Each dumpus is a gorpus." / "Every tumpus is a vumpus."
  if (lower.rfind("each ", 0) == 0 || lower.rfind("every ", 0) == 0) {
    std::size_t head = lower.rfind("each ", 0) == 0 ? 5 : 6;
    std::size_t is_pos = lower.find(" is ", head);
    std::size_t is_len = 4;
    if (is_pos == std::string::npos) {
      is_pos = lower.find(" are ", head);
      is_len = 5;
    }
    if (is_pos == std::string::npos) throw ParseError(base, "missing conclusion");
    std::string noun = to_lower(trim(body.substr(head, is_pos - head)));
    std::string_view concl = trim(body.substr(is_pos + 1));
    (void)is_len;
    ctx.variable_introduced = true;
    ctx.last_was_variable = true;
    parts.conditions.push_back(StatementPattern{std::nullopt, noun, PredicateKind::nominal,
                                                std::nullopt, Polarity::positive});
    parse_conclusion_text(concl);
    return assemble(parts, body, base);
  }

  // "Zumpuses are grimpuses."
  {
    auto tokens = tokenize(body, base);
    if (tokens.size() >= 3 && tokens[1].lower == "are" && tokens[0].lower.size() > 1 &&
        tokens[0].lower.back() == 's' && !is_determiner(tokens[0].lower)) {
      ctx.variable_introduced = true;
      ctx.last_was_variable = true;
      parts.conditions.push_back(StatementPattern{std::nullopt,
                                                  singularize_noun(tokens[0].lower),
                                                  PredicateKind::nominal, std::nullopt,
                                                  Polarity::positive});
      std::size_t are_pos = lower.find(" are ");
      std::string_view concl_text = trim(body.substr(are_pos + 5));
      ClauseList list = split_clause_list(concl_text, offset_of(concl_text));
      for (const auto& [frag, off] : list.fragments) {
        auto frag_tokens = tokenize(frag, off);
        if (frag_tokens.size() == 1 && frag_tokens[0].lower.size() > 1 &&
            frag_tokens[0].lower.back() == 's') {
          parts.conclusions.push_back(StatementPattern{
              std::nullopt, singularize_noun(frag_tokens[0].lower), PredicateKind::nominal,
              std::nullopt, Polarity::positive});
        } else {
          ClauseContext frag_ctx = ctx;
          parts.conclusions.push_back(parse_clause("is " + frag, off, frag_ctx));
        }
      }
      return assemble(parts, body, base);
    }
  }

  // "<conclusion> if <conditions>"
  if (std::size_t mid = lower.find(" if "); mid != std::string::npos) {
    std::string_view concl = strip_comma_suffix(body.substr(0, mid));
    std::string_view cond = trim(body.substr(mid + 4));
    parse_condition_text(cond);  // conditions first so pronouns can resolve
    parse_conclusion_text(concl);
    return with_reverse(assemble(parts, body, base));
  }

  throw ParseError(base, "sentence fits no rule template");
}

bool looks_like_rule(std::string_view text) {
  std::string lower = to_lower(trim(text));
  if (lower.empty()) return false;
  static constexpr std::array<std::string_view, 11> kPrefixes = {
      "if ",       "all ",      "each ",   "every ",   "everything ", "everyone ",
      "anything ", "anyone ",   "someone ", "somebody ", "people "};
  for (std::string_view p : kPrefixes) {
    if (lower.rfind(p, 0) == 0) return true;
  }
  if (lower.rfind("it can be concluded", 0) == 0) return true;
  static constexpr std::array<std::string_view, 9> kMarkers = {
      " then ",       " implies ",    " equivalent to ", " vice versa", " once knowing ",
      " people are ", " things are ", " tend to be ",    " if "};
  for (std::string_view m : kMarkers) {
    if (lower.find(m) != std::string::npos) return true;
  }
  auto tokens = tokenize(lower, 0);
  return tokens.size() >= 3 && tokens[1].lower == "are" && tokens[0].lower.size() > 1 &&
         tokens[0].lower.back() == 's' && !is_determiner(tokens[0].lower);
}

}  // namespace logictree
