#include "fixture_gen.hpp"

#include <algorithm>
#include <array>
#include <random>

#include "logictree/statement.hpp"

namespace logictree::testsupport {

namespace {

constexpr std::array<const char*, 10> kProperNames = {
    "bob", "dave", "erin", "fiona", "gary", "anne", "harry", "carol", "perry", "toby"};
constexpr std::array<const char*, 8> kAnimals = {
    "cat", "dog", "tiger", "rabbit", "squirrel", "cow", "mouse", "bear"};
constexpr std::array<const char*, 18> kAdjectives = {
    "red",   "blue", "green", "kind",  "quiet", "rough", "smart",  "young",  "cold",
    "round", "nice", "furry", "happy", "sad",   "white", "strong", "gentle", "calm"};
constexpr std::array<const char*, 6> kVerbs = {"like", "chase", "need", "see", "visit", "eat"};
constexpr std::array<const char*, 8> kDistractorAdjectives = {
    "dusty", "shiny", "mellow", "brisk", "plain", "vivid", "rustic", "sleek"};

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(std::uint64_t seed) : gen(seed) {}
  int below(int n) { return static_cast<int>(gen() % static_cast<std::uint64_t>(n)); }
  bool chance(int percent) { return below(100) < percent; }
};

NounPhrase pick_entity(Rng& rng, std::vector<NounPhrase>& used) {
  NounPhrase np;
  if (rng.chance(50)) {
    np = NounPhrase{kProperNames[static_cast<std::size_t>(rng.below(kProperNames.size()))],
                    true};
  } else {
    np = NounPhrase{kAnimals[static_cast<std::size_t>(rng.below(kAnimals.size()))], false};
  }
  for (const NounPhrase& u : used) {
    if (u == np) return pick_entity(rng, used);
  }
  used.push_back(np);
  return np;
}

Statement attribute(const NounPhrase& subject, const std::string& predicate,
                    Polarity polarity = Polarity::positive) {
  return Statement{subject, predicate, PredicateKind::attribute, std::nullopt, polarity};
}

StatementPattern var_attribute(const std::string& predicate,
                               Polarity polarity = Polarity::positive) {
  return StatementPattern{std::nullopt, predicate, PredicateKind::attribute, std::nullopt,
                          polarity};
}

StatementPattern var_verb(const std::string& verb, const NounPhrase& object) {
  return StatementPattern{std::nullopt, verb, PredicateKind::verb, object,
                          Polarity::positive};
}

std::string render_rule(const std::vector<StatementPattern>& conditions,
                        const StatementPattern& conclusion, ConditionMode mode) {
  Rule r{conditions, conclusion, mode, ""};
  return r.to_string();
}

}  // namespace

std::vector<DatasetRecord> make_fixture_set(const FixtureOptions& options) {
  std::vector<DatasetRecord> records;
  records.reserve(static_cast<std::size_t>(options.count));

  for (int index = 0; index < options.count; ++index) {
    Rng rng(options.seed * 0x9e3779b97f4a7c15ull + static_cast<std::uint64_t>(index));

    std::vector<NounPhrase> used;
    NounPhrase chain_entity = pick_entity(rng, used);
    NounPhrase other_entity = pick_entity(rng, used);
    NounPhrase object_entity{kAnimals[static_cast<std::size_t>(rng.below(kAnimals.size()))],
                             false};

    // Unique predicate supply for this instance.
    std::vector<std::string> adjectives(kAdjectives.begin(), kAdjectives.end());
    std::shuffle(adjectives.begin(), adjectives.end(), rng.gen);
    std::size_t next_adjective = 0;
    auto fresh_adjective = [&]() { return adjectives[next_adjective++]; };

    const int depth = 1 + rng.below(5);
    std::vector<std::string> premises;

    // The chain: fact c0(e), rules lifting c_{k-1} to c_k.
    std::string current = fresh_adjective();
    Polarity current_polarity = rng.chance(15) ? Polarity::negative : Polarity::positive;
    premises.push_back(attribute(chain_entity, current, current_polarity).to_string());

    // A verb link can stand in for one attribute hop.
    bool used_verb_link = false;
    for (int k = 0; k < depth; ++k) {
      std::string next = fresh_adjective();
      Polarity next_polarity =
          rng.chance(20) ? Polarity::negative : Polarity::positive;
      StatementPattern condition = var_attribute(current, current_polarity);
      StatementPattern conclusion = var_attribute(next, next_polarity);

      switch (rng.below(5)) {
        case 0: {  // conjunctive with a supporting given fact
          std::string side = fresh_adjective();
          premises.push_back(attribute(chain_entity, side).to_string());
          premises.push_back(render_rule({condition, var_attribute(side)}, conclusion,
                                         ConditionMode::conjunctive));
          break;
        }
        case 1: {  // disjunctive; only the chain branch fires
          std::string alt = fresh_adjective();
          premises.push_back(render_rule({condition, var_attribute(alt)}, conclusion,
                                         ConditionMode::disjunctive));
          break;
        }
        case 2: {  // biconditional written with "and vice versa"
          std::string sentence = render_rule({condition}, conclusion,
                                             ConditionMode::conjunctive);
          sentence.pop_back();  // drop the period
          premises.push_back(sentence + ", and vice versa.");
          break;
        }
        case 3: {  // verb hop: c -> likes(object) -> next
          if (!used_verb_link && next_polarity == Polarity::positive) {
            used_verb_link = true;
            std::string verb = kVerbs[static_cast<std::size_t>(rng.below(kVerbs.size()))];
            StatementPattern via = var_verb(verb, object_entity);
            premises.push_back(
                render_rule({condition}, via, ConditionMode::conjunctive));
            premises.push_back(render_rule({via}, conclusion, ConditionMode::conjunctive));
            break;
          }
          [[fallthrough]];
        }
        default:
          premises.push_back(render_rule({condition}, conclusion, ConditionMode::conjunctive));
          break;
      }
      current = next;
      current_polarity = next_polarity;
    }

    // Distractors. Zero-connectivity facts exercise the discard rule; small
    // dead rules give the random arm extra branches to waste steps on.
    const int distractor_count = 2 + rng.below(3);
    for (int j = 0; j < distractor_count; ++j) {
      std::string adjective =
          kDistractorAdjectives[static_cast<std::size_t>(rng.below(kDistractorAdjectives.size()))];
      NounPhrase subject = rng.chance(50) ? other_entity : chain_entity;
      std::string fact = attribute(subject, adjective).to_string();
      if (std::find(premises.begin(), premises.end(), fact) == premises.end()) {
        premises.push_back(fact);
      }
      if (rng.chance(40)) {
        std::string tail = std::string(adjective) + " looking";
        premises.push_back(render_rule({var_attribute(adjective)}, var_attribute(tail),
                                       ConditionMode::conjunctive));
      }
    }
    // A rule whose conditions never fire.
    premises.push_back(render_rule(
        {var_attribute("ancient"), var_attribute("mysterious")},
        var_attribute("legendary"), ConditionMode::conjunctive));

    DatasetRecord record;
    record.id = "fixture-" + std::to_string(index);
    Statement final_fact = attribute(chain_entity, current, current_polarity);
    switch (rng.below(3)) {
      case 0: record.hypothesis = final_fact.to_string(); break;
      case 1: record.hypothesis = final_fact.negated().to_string(); break;
      default: {
        // Unrelated: a predicate no rule or fact mentions, or the chain's
        // final predicate on an entity outside the chain.
        if (rng.chance(50)) {
          record.hypothesis = attribute(chain_entity, "wistful").to_string();
        } else {
          record.hypothesis =
              attribute(other_entity, current, current_polarity).to_string();
        }
        break;
      }
    }

    std::shuffle(premises.begin(), premises.end(), rng.gen);
    record.premises = std::move(premises);
    records.push_back(std::move(record));
  }
  return records;
}

DatasetRecord make_cross_tree_record() {
  DatasetRecord record;
  record.id = "cross-tree";
  record.premises = {
      "Dave is quick.",
      "Erin is happy.",
      "If something is quick then it is calm.",
      "If something is happy then it is bright.",
      "If Dave is calm and Erin is bright then Gary is proud.",
  };
  record.hypothesis = "Gary is proud.";
  return record;
}

DatasetRecord make_proofwriter_example() {
  DatasetRecord record;
  record.id = "proofwriter-squirrel";
  record.premises = {
      "The bald eagle chases the cow.",
      "The bald eagle is kind.",
      "The bald eagle is rough.",
      "The bald eagle needs the rabbit.",
      "The cow chases the rabbit.",
      "The cow is cold.",
      "The cow is green.",
      "The cow is red.",
      "The rabbit does not chase the bald eagle.",
      "The rabbit chases the cow.",
      "The rabbit does not eat the bald eagle.",
      "The rabbit eats the cow.",
      "The rabbit is cold.",
      "The rabbit is green.",
      "The squirrel eats the cow.",
      "The squirrel does not eat the rabbit.",
      "If something needs the bald eagle then the bald eagle chases the rabbit.",
      "If the squirrel is rough and the squirrel is not kind then the squirrel is green.",
      "If something chases the bald eagle then it needs the squirrel.",
      "If something needs the rabbit then it chases the bald eagle.",
      "If something chases the cow then the cow eats the bald eagle.",
      "If something chases the bald eagle and it does not need the bald eagle then it is red.",
      "If something needs the squirrel then the squirrel needs the rabbit.",
  };
  record.hypothesis = "The squirrel needs the rabbit.";
  return record;
}

}  // namespace logictree::testsupport
