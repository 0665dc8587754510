#include <doctest.h>

#include <random>
#include <set>

#include "fixture_gen.hpp"
#include "logictree/dataset.hpp"
#include "logictree/oracle.hpp"
#include "logictree/parse.hpp"

using namespace logictree;
using namespace logictree::testsupport;

namespace {

Problem problem_from(std::vector<const char*> facts, std::vector<const char*> rules,
                     const char* hypothesis) {
  DatasetRecord record;
  for (const char* f : facts) record.premises.emplace_back(f);
  for (const char* r : rules) record.premises.emplace_back(r);
  record.hypothesis = hypothesis;
  return build_problem(record, /*strict=*/true).problem;
}

std::set<std::string> closure_keys(const Closure& c) {
  std::set<std::string> keys;
  for (const ClosureEntry& e : c.entries) keys.insert(e.fact.to_string());
  return keys;
}

}  // namespace

TEST_CASE("closure: single modus ponens") {
  Problem p = problem_from({"Dave is hungry."},
                           {"If someone is hungry, they are uncomfortable."},
                           "Dave is uncomfortable.");
  Closure c = closure(p);
  CHECK(c.entries.size() == 2);
  CHECK(c.contains(parse_statement("Dave is uncomfortable.")));
  const ClosureEntry* derived = c.find(parse_statement("Dave is uncomfortable."));
  REQUIRE(derived != nullptr);
  CHECK(derived->round == 1);
  REQUIRE(derived->provenance.has_value());
  CHECK(derived->provenance->antecedents.size() == 1);
}

TEST_CASE("closure: no rules means no growth") {
  Problem p = problem_from({"Dave is hungry.", "Erin is cold."}, {}, "Dave is cold.");
  Closure c = closure(p);
  CHECK(c.entries.size() == 2);
  for (const ClosureEntry& e : c.entries) CHECK(e.round == 0);
}

TEST_CASE("closure: ProofWriter example reaches the hypothesis") {
  Problem p = build_problem(make_proofwriter_example(), true).problem;
  Closure c = closure(p);
  CHECK(c.contains(parse_statement("The squirrel needs the rabbit.")));
  // Chain landmarks derived on the way.
  CHECK(c.contains(parse_statement("The bald eagle chases the bald eagle.")));
  CHECK(c.contains(parse_statement("The bald eagle needs the squirrel.")));
}

TEST_CASE("gold labels under the open-world assumption") {
  CHECK(gold_label(problem_from({"Bob is red."}, {}, "Bob is red.")).label == Label::True);
  CHECK(gold_label(problem_from({"Bob is red."},
                                {"If someone is red then they are not kind."},
                                "Bob is kind."))
            .label == Label::False);
  CHECK(gold_label(problem_from({"Bob is red."}, {}, "Erin is hungry.")).label ==
        Label::Unknown);
}

TEST_CASE("validate_step") {
  auto rule = parse_rule("Cold, tall people are not furry.").at(0);
  std::vector<Statement> antecedents = {parse_statement("Erin is tall."),
                                        parse_statement("Erin is cold.")};
  CHECK(validate_step(antecedents, rule, parse_statement("Erin is not furry.")));
  // Wrong polarity.
  CHECK_FALSE(validate_step(antecedents, rule, parse_statement("Erin is furry.")));
  // Missing one condition.
  std::vector<Statement> partial = {parse_statement("Erin is tall.")};
  CHECK_FALSE(validate_step(partial, rule, parse_statement("Erin is not furry.")));
  // Wrong subject.
  CHECK_FALSE(validate_step(antecedents, rule, parse_statement("Bob is not furry.")));

  auto disjunctive =
      parse_rule("If Perry is not filthy or Carrick is not grieving, then Conway is not "
                 "filthy.")
          .at(0);
  std::vector<Statement> one_branch = {parse_statement("Perry is not filthy.")};
  CHECK(validate_step(one_branch, disjunctive, parse_statement("Conway is not filthy.")));
  std::vector<Statement> no_branch = {parse_statement("Perry is filthy.")};
  CHECK_FALSE(validate_step(no_branch, disjunctive, parse_statement("Conway is not filthy.")));
}

TEST_CASE("closure guard against vocabulary explosion") {
  std::vector<const char*> rules;
  rules.push_back("If someone is r0 then they are r1.");
  rules.push_back("If someone is r1 then they are r2.");
  rules.push_back("If someone is r2 then they are r3.");
  rules.push_back("If someone is r3 then they are r4.");
  rules.push_back("If someone is r4 then they are r5.");
  Problem p = problem_from({"Bob is r0."}, rules, "Bob is r5.");
  CHECK_THROWS_AS(closure(p, 3), VocabularyExplosion);
  CHECK(closure(p, 100).contains(parse_statement("Bob is r5.")));
}

TEST_CASE("contradictory closures are flagged") {
  Problem p = problem_from({"Bob is red."},
                           {"If someone is red then they are kind.",
                            "If someone is red then they are not kind."},
                           "Bob is kind.");
  GoldResult gold = gold_label(p);
  CHECK(gold.inconsistent);
  // Both appear in round 1; the earlier insertion (rule order) wins.
  CHECK(gold.label == Label::True);
  CHECK(closure(p).has_contradiction());

  Problem consistent = problem_from({"Bob is red."},
                                    {"If someone is red then they are kind."}, "Bob is kind.");
  CHECK_FALSE(gold_label(consistent).inconsistent);
  CHECK_FALSE(closure(consistent).has_contradiction());
}

TEST_CASE("closure properties on random fixtures") {
  auto records = make_fixture_set({.seed = 21, .count = 30});
  std::mt19937_64 rng(5);

  for (const auto& record : records) {
    Problem p = build_problem(record, true).problem;
    Closure base = closure(p);
    auto base_keys = closure_keys(base);

    SUBCASE("") {}  // keep doctest happy about loop structure

    // Monotonicity: adding a fact never shrinks the closure.
    Problem larger = p;
    larger.facts.push_back(Statement{NounPhrase{"zeb", true},
                                     "curious", PredicateKind::attribute, std::nullopt,
                                     Polarity::positive});
    auto larger_keys = closure_keys(closure(larger));
    for (const std::string& key : base_keys) CHECK(larger_keys.count(key) == 1);

    // Idempotence: running the closure over its own output adds nothing.
    Problem saturated = p;
    saturated.facts.clear();
    for (const ClosureEntry& e : base.entries) saturated.facts.push_back(e.fact);
    auto saturated_keys = closure_keys(closure(saturated));
    CHECK(saturated_keys == base_keys);

    (void)rng;
  }
}
