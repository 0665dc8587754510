#include <doctest.h>

#include <random>
#include <set>

#include "logictree/heuristics.hpp"
#include "logictree/parse.hpp"

using namespace logictree;

namespace {

SemanticProfile statement_profile(const char* sentence) {
  return profile(parse_statement(sentence));
}

SemanticProfile rule_profile(const char* sentence,
                             RuleProfileMode mode = RuleProfileMode::whole_text) {
  auto rules = parse_rule(sentence);
  REQUIRE(rules.size() >= 1);
  return profile(rules[0], mode);
}

SemanticProfile random_profile(std::mt19937_64& rng) {
  static const char* kSubjects[] = {"dave", "erin", "cat", "dog", "fiona"};
  static const char* kPredicates[] = {"red", "kind", "cold", "like", "hungry"};
  SemanticProfile p;
  for (int i = 0; i < 3; ++i) {
    if (rng() % 2) p.subjects.insert(kSubjects[rng() % 5]);
    if (rng() % 2) p.predicates.insert(kPredicates[rng() % 5]);
  }
  for (const auto& s : p.subjects) {
    for (const auto& pr : p.predicates) {
      if (rng() % 2) p.subject_predicate_pairs.emplace(s, pr);
    }
  }
  return p;
}

}  // namespace

TEST_CASE("profiles: parsed statements and rules") {
  SemanticProfile dave = statement_profile("Dave is hungry.");
  CHECK(dave.subjects == std::set<std::string>{"dave"});
  CHECK(dave.predicates == std::set<std::string>{"hungry"});
  CHECK(dave.subject_predicate_pairs ==
        std::set<std::pair<std::string, std::string>>{{"dave", "hungry"}});

  SemanticProfile rule = rule_profile("If someone is hungry, they are uncomfortable.");
  CHECK(rule.subjects.empty());  // variable clauses contribute no concrete subject
  CHECK(rule.predicates.count("hungry") == 1);
  CHECK(rule.predicates.count("uncomfortable") == 1);
  CHECK(rule.subject_predicate_pairs.empty());

  SemanticProfile conclusion_only =
      rule_profile("If someone is hungry, they are uncomfortable.",
                   RuleProfileMode::conclusion_only);
  CHECK(conclusion_only.predicates == std::set<std::string>{"uncomfortable"});
}

TEST_CASE("profiles: fallback extraction for unparseable text") {
  SemanticProfile p = profile_text("Bob is a cold and round man who has red skin.");
  CHECK(p.subjects.count("bob") == 1);
  CHECK(p.predicates.count("cold") == 1);
  CHECK(p.predicates.count("round") == 1);
  CHECK(p.subject_predicate_pairs.count({"bob", "cold"}) == 1);

  SemanticProfile empty = profile_text("");
  CHECK(empty.subjects.empty());
  CHECK(empty.predicates.empty());
  CHECK(empty.subject_predicate_pairs.empty());
}

TEST_CASE("semantic overlap: anchor cases") {
  // Predicate-only overlap.
  CHECK(semantic_overlap(statement_profile("Dave is hungry."),
                         rule_profile("If someone is hungry, they are uncomfortable.")) ==
        QuarterScore{1});

  // Identical non-empty profiles reach the upper bound.
  SemanticProfile full = statement_profile("Dave is hungry.");
  CHECK(semantic_overlap(full, full) == QuarterScore{4});

  // Disjoint profiles.
  CHECK(semantic_overlap(statement_profile("Dave is hungry."),
                         statement_profile("Erin is cold.")) == QuarterScore{0});
}

TEST_CASE("semantic overlap: symmetry and value set") {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 500; ++i) {
    SemanticProfile a = random_profile(rng);
    SemanticProfile b = random_profile(rng);
    QuarterScore ab = semantic_overlap(a, b);
    CHECK(ab == semantic_overlap(b, a));
    CHECK(ab.quarters >= 0);
    CHECK(ab.quarters <= 4);
    // For profiles whose sp pairs come from their own subjects x predicates,
    // an sp overlap forces both partial overlaps, so 0.75 is unreachable.
    CHECK(ab.quarters != 3);
  }
}

TEST_CASE("cumulative connectivity") {
  SemanticProfile fact = statement_profile("Dave is hungry.");

  SUBCASE("sum of stated overlaps") {
    // Overlaps 0.25, 0, 1.0 -> 1.25.
    std::vector<SemanticProfile> rules = {
        rule_profile("If someone is hungry, they are uncomfortable."),  // 0.25
        rule_profile("If someone is cold, they are tired."),            // 0
        rule_profile("If Dave is hungry then Dave is grumpy."),         // 1.0
    };
    CHECK(cumulative_connectivity(fact, rules) == QuarterScore{5});
    CHECK(cumulative_connectivity(fact, rules).str() == "1.25");
  }

  SUBCASE("empty rule list") {
    CHECK(cumulative_connectivity(fact, {}) == QuarterScore{0});
  }

  SUBCASE("three predicate-only overlaps") {
    std::vector<SemanticProfile> rules = {
        rule_profile("If someone is hungry, they are tired."),
        rule_profile("If someone is hungry, they are slow."),
        rule_profile("If someone is hungry, they are grumpy."),
    };
    CHECK(cumulative_connectivity(fact, rules) == QuarterScore{3});
    CHECK(cumulative_connectivity(fact, rules).str() == "0.75");
  }

  SUBCASE("duplicating a rule doubles its contribution") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
      SemanticProfile f = random_profile(rng);
      SemanticProfile r = random_profile(rng);
      std::vector<SemanticProfile> once = {r};
      std::vector<SemanticProfile> twice = {r, r};
      CHECK(cumulative_connectivity(f, twice).quarters ==
            2 * cumulative_connectivity(f, once).quarters);
    }
  }
}

TEST_CASE("fact ranking") {
  Statement hypothesis = parse_statement("Kevin is uncomfortable.");

  SUBCASE("zero-connectivity facts are discarded") {
    std::vector<Statement> facts = {parse_statement("Dave is hungry.")};
    std::vector<Rule> rules = parse_rule("If someone is cold, they are tired.");
    CHECK(rank_facts(facts, rules, hypothesis).empty());
  }

  SUBCASE("subject alignment precedes connectivity") {
    std::vector<Statement> facts = {
        parse_statement("Dave is hungry."),   // unaligned, higher connectivity
        parse_statement("Kevin is tired."),   // aligned, lower connectivity
    };
    std::vector<Rule> rules;
    for (auto& r : parse_rule("If Dave is hungry then Dave is grumpy.")) rules.push_back(r);
    for (auto& r : parse_rule("If someone is tired, they are uncomfortable."))
      rules.push_back(r);
    auto ranked = rank_facts(facts, rules, hypothesis);
    REQUIRE(ranked.size() == 2);
    CHECK(ranked[0].fact.subject.text == "kevin");
    CHECK(ranked[0].subject_aligned);
    CHECK(ranked[1].fact.subject.text == "dave");
    CHECK(ranked[0].connectivity < ranked[1].connectivity);
  }

  SUBCASE("highest connectivity first within a partition") {
    std::vector<Statement> facts = {
        parse_statement("The cat is cold."),
        parse_statement("The dog is hungry."),
    };
    std::vector<Rule> rules;
    for (auto& r : parse_rule("If someone is hungry, they are slow.")) rules.push_back(r);
    for (auto& r : parse_rule("If the dog is hungry then the dog is grumpy."))
      rules.push_back(r);
    for (auto& r : parse_rule("If someone is cold, they are tired.")) rules.push_back(r);
    auto ranked = rank_facts(facts, rules, hypothesis);
    REQUIRE(ranked.size() == 2);
    CHECK(ranked[0].fact.subject.text == "dog");  // 0.25 + 1.0 beats 0.25
    CHECK(ranked[0].connectivity == QuarterScore{5});
    CHECK(ranked[1].connectivity == QuarterScore{1});
  }

  SUBCASE("appending zero-connectivity facts does not change the ranking") {
    std::vector<Statement> facts = {
        parse_statement("Dave is hungry."),
        parse_statement("Kevin is tired."),
    };
    std::vector<Rule> rules;
    for (auto& r : parse_rule("If someone is hungry, they are tired.")) rules.push_back(r);
    for (auto& r : parse_rule("If someone is tired, they are uncomfortable."))
      rules.push_back(r);
    auto before = rank_facts(facts, rules, hypothesis);
    facts.push_back(parse_statement("The mouse is invisible."));
    facts.push_back(parse_statement("The bear is weightless."));
    auto after = rank_facts(facts, rules, hypothesis);
    REQUIRE(before.size() == after.size());
    for (std::size_t i = 0; i < before.size(); ++i) {
      CHECK(before[i].fact == after[i].fact);
      CHECK(before[i].connectivity == after[i].connectivity);
    }
  }
}

TEST_CASE("rule ranking") {
  Statement hypothesis = parse_statement("Kevin is uncomfortable.");

  SUBCASE("conclusion overlap beats no overlap") {
    std::vector<Rule> selected;
    for (auto& r : parse_rule("If someone is green, they are happy.")) selected.push_back(r);
    for (auto& r : parse_rule("If someone is tired, the person is uncomfortable."))
      selected.push_back(r);
    auto ranked = rank_rules(selected, hypothesis);
    REQUIRE(ranked.size() == 2);
    CHECK(ranked[0].rule.conclusion.predicate == "uncomfortable");
    CHECK(ranked[0].overlap > ranked[1].overlap);
  }

  SUBCASE("all-zero overlaps preserve input order") {
    std::vector<Rule> selected;
    for (auto& r : parse_rule("If someone is green, they are happy.")) selected.push_back(r);
    for (auto& r : parse_rule("If someone is blue, they are sad.")) selected.push_back(r);
    auto ranked = rank_rules(selected, hypothesis);
    REQUIRE(ranked.size() == 2);
    CHECK(ranked[0].rule == selected[0]);
    CHECK(ranked[1].rule == selected[1]);
  }

  SUBCASE("singleton") {
    std::vector<Rule> selected = parse_rule("If someone is green, they are happy.");
    CHECK(rank_rules(selected, hypothesis).size() == 1);
  }
}

TEST_CASE("reachable overlap values on a dataset-style premise set") {
  // Fact-vs-rule overlaps over a full instance's premises: for clause-derived
  // profiles the reachable values are {0, 0.25, 0.5, 1}; 0.75 would need an
  // sp pair outside the profile's own subjects x predicates.
  std::vector<SemanticProfile> fact_profiles;
  for (const char* text : {"The bald eagle chases the cow.", "The bald eagle is kind.",
                           "The bald eagle needs the rabbit.", "The cow is red.",
                           "The rabbit chases the cow.", "The squirrel eats the cow."}) {
    fact_profiles.push_back(statement_profile(text));
  }
  std::vector<SemanticProfile> rule_profiles;
  for (const char* text :
       {"If something needs the bald eagle then the bald eagle chases the rabbit.",
        "If something chases the bald eagle then it needs the squirrel.",
        "If something chases the cow then the cow eats the bald eagle.",
        "If the cow is red and the cow is kind then the cow is round."}) {
    rule_profiles.push_back(rule_profile(text));
  }
  std::set<int> observed;
  for (const auto& f : fact_profiles) {
    for (const auto& r : rule_profiles) observed.insert(semantic_overlap(f, r).quarters);
  }
  for (int q : observed) {
    CHECK((q == 0 || q == 1 || q == 2 || q == 4));
  }
  // This premise set reaches 0, 0.25 (predicate-only), 0.5 (subject +
  // predicate across clauses) and 1.0 (full clause match).
  CHECK(observed == std::set<int>{0, 1, 2, 4});
}

TEST_CASE("quarter score formatting") {
  CHECK(QuarterScore{0}.str() == "0");
  CHECK(QuarterScore{1}.str() == "0.25");
  CHECK(QuarterScore{2}.str() == "0.5");
  CHECK(QuarterScore{3}.str() == "0.75");
  CHECK(QuarterScore{4}.str() == "1");
  CHECK(QuarterScore{7}.str() == "1.75");
  CHECK(QuarterScore{4}.value() == doctest::Approx(1.0));
}
