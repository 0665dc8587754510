#include "logictree/heuristics.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace logictree {

namespace {

void add_clause(SemanticProfile& p, const std::optional<NounPhrase>& subject,
                const std::string& predicate) {
  p.predicates.insert(predicate);
  if (subject) {
    p.subjects.insert(subject->text);
    p.subject_predicate_pairs.emplace(subject->text, predicate);
  }
}

bool intersects(const std::set<std::string>& a, const std::set<std::string>& b) {
  const auto& small = a.size() <= b.size() ? a : b;
  const auto& large = a.size() <= b.size() ? b : a;
  return std::any_of(small.begin(), small.end(),
                     [&](const std::string& x) { return large.count(x) != 0; });
}

bool intersects(const std::set<std::pair<std::string, std::string>>& a,
                const std::set<std::pair<std::string, std::string>>& b) {
  const auto& small = a.size() <= b.size() ? a : b;
  const auto& large = a.size() <= b.size() ? b : a;
  return std::any_of(small.begin(), small.end(),
                     [&](const auto& x) { return large.count(x) != 0; });
}

bool is_stopword(std::string_view w) {
  static constexpr std::array<std::string_view, 44> kStop = {
      "the",  "a",     "an",    "is",      "are",     "was",    "were",  "be",
      "being", "if",    "then",  "not",     "and",     "or",     "all",   "each",
      "every", "both",  "either", "who",    "that",    "of",     "it",    "they",
      "he",    "she",   "to",    "in",      "on",      "with",   "there", "at",
      "least", "one",   "once",  "knowing", "can",     "implies", "equivalent",
      "vice",  "versa", "does",  "do",      "concluded"};
  return std::find(kStop.begin(), kStop.end(), w) != kStop.end();
}

}  // namespace

std::string QuarterScore::str() const {
  std::string out = std::to_string(quarters / 4);
  switch (((quarters % 4) + 4) % 4) {
    case 1: out += ".25"; break;
    case 2: out += ".5"; break;
    case 3: out += ".75"; break;
    default: break;
  }
  return out;
}

SemanticProfile profile(const Statement& statement) {
  SemanticProfile p;
  add_clause(p, statement.subject, statement.predicate);
  return p;
}

SemanticProfile profile(const StatementPattern& pattern) {
  SemanticProfile p;
  add_clause(p, pattern.subject, pattern.predicate);
  return p;
}

SemanticProfile profile(const Rule& rule, RuleProfileMode mode) {
  SemanticProfile p;
  if (mode == RuleProfileMode::whole_text) {
    for (const auto& c : rule.conditions) add_clause(p, c.subject, c.predicate);
  }
  add_clause(p, rule.conclusion.subject, rule.conclusion.predicate);
  return p;
}

SemanticProfile profile_text(std::string_view raw) {
  SemanticProfile p;
  std::size_t i = 0;
  std::vector<std::pair<std::string, bool>> words;  // lowered word, capitalized
  while (i < raw.size()) {
    while (i < raw.size() && !std::isalnum(static_cast<unsigned char>(raw[i]))) ++i;
    if (i >= raw.size()) break;
    std::size_t start = i;
    while (i < raw.size() &&
           (std::isalnum(static_cast<unsigned char>(raw[i])) || raw[i] == '\'')) {
      ++i;
    }
    std::string word(raw.substr(start, i - start));
    if (auto apos = word.find('\''); apos != std::string::npos) word.resize(apos);
    if (word.empty()) continue;
    bool cap = std::isupper(static_cast<unsigned char>(word[0])) != 0;
    for (char& c : word) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    words.emplace_back(std::move(word), cap);
  }
  for (const auto& [word, cap] : words) {
    if (is_stopword(word)) continue;
    if (cap) {
      p.subjects.insert(word);
    } else {
      p.predicates.insert(verb_lemma(word));
    }
  }
  for (const auto& s : p.subjects) {
    for (const auto& pr : p.predicates) p.subject_predicate_pairs.emplace(s, pr);
  }
  return p;
}

QuarterScore semantic_overlap(const SemanticProfile& a, const SemanticProfile& b) {
  int quarters = 0;
  if (intersects(a.subjects, b.subjects)) quarters += 1;
  if (intersects(a.predicates, b.predicates)) quarters += 1;
  if (intersects(a.subject_predicate_pairs, b.subject_predicate_pairs)) quarters += 2;
  return QuarterScore{quarters};
}

QuarterScore cumulative_connectivity(const SemanticProfile& fact,
                                     std::span<const SemanticProfile> rules) {
  QuarterScore total;
  for (const auto& r : rules) total += semantic_overlap(fact, r);
  return total;
}

std::vector<RankedFact> rank_facts(std::span<const Statement> facts,
                                   std::span<const Rule> rules,
                                   const Statement& hypothesis) {
  std::vector<SemanticProfile> rule_profiles;
  rule_profiles.reserve(rules.size());
  for (const auto& r : rules) rule_profiles.push_back(profile(r));
  SemanticProfile hyp = profile(hypothesis);

  std::vector<RankedFact> ranked;
  ranked.reserve(facts.size());
  for (const auto& f : facts) {
    SemanticProfile fp = profile(f);
    QuarterScore connectivity = cumulative_connectivity(fp, rule_profiles);
    if (connectivity.quarters == 0) continue;  // cannot open any branch
    bool aligned = intersects(fp.subjects, hyp.subjects);
    ranked.push_back(RankedFact{f, connectivity, aligned});
  }
  std::stable_sort(ranked.begin(), ranked.end(), [](const RankedFact& a, const RankedFact& b) {
    if (a.subject_aligned != b.subject_aligned) return a.subject_aligned;
    return a.connectivity > b.connectivity;
  });
  return ranked;
}

std::vector<RankedRule> rank_rules(std::span<const Rule> selected,
                                   const Statement& hypothesis, RuleProfileMode mode) {
  SemanticProfile hyp = profile(hypothesis);
  std::vector<RankedRule> ranked;
  ranked.reserve(selected.size());
  for (const auto& r : selected) {
    ranked.push_back(RankedRule{r, semantic_overlap(profile(r, mode), hyp)});
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const RankedRule& a, const RankedRule& b) { return a.overlap > b.overlap; });
  return ranked;
}

}  // namespace logictree
