#include "logictree/prompt.hpp"

namespace logictree {

namespace {

PromptTemplate make_forward_template() {
  PromptTemplate t;
  t.instructions =
      "Imagine you are one of the greatest AI scientists. You are given **a fact** and **a "
      "list of rules** (each rule being a premise with condition(s)). Your task is to "
      "evaluate each rule in the list and select those that meet *any* of the following "
      "requirements:\n"
      "- Full Condition Match: The fact fully and directly satisfies all condition(s) of "
      "the rule, allowing a valid derivation to obtain a new proposition.\n"
      "- Partial Condition Match: The fact directly satisfies some, but not all, conditions "
      "of the rule. This means that additional fact(s) would be required to make a full "
      "derivation and obtain a new proposition.\n"
      "If no rule is selected, return **None**.";
  t.demonstrations = {
      {"The given fact:\n"
       "Bob is red.\n"
       "\n"
       "The given list of rules:\n"
       "All red, round people are quiet.\n"
       "Red people are young.\n"
       "If someone is round and smart then they are not red.\n"
       "All white people are red.\n"
       "Quiet people are green.\n"
       "If someone is red and not white then they are not green.\n"
       "If someone likes the dog and they are red then they are blue.\n"
       "\n"
       "Let's go through each rule from the given list of rules and think step by step.\n"
       "The selected rules (partial or full condition directly matched) are:",
       "All red, round people are quiet.\n"
       "Red people are young.\n"
       "If someone is red and not white then they are not green.\n"
       "If someone likes the dog and they are red then they are blue."},
      {"The given fact:\n"
       "Anne is quiet.\n"
       "\n"
       "The given list of rules:\n"
       "If something is furry and not blue then it is nice.\n"
       "If Anne is furry then Anne is nice.\n"
       "Smart, furry things are round.\n"
       "\n"
       "Let's go through each rule from the given list of rules and think step by step.\n"
       "The selected rules (partial or full condition directly matched) are:",
       "None"}};
  t.query_block =
      "The given fact:\n"
      "{fact}\n"
      "\n"
      "The given list of rules:\n"
      "{rules}\n"
      "\n"
      "Let's go through each rule from the given list of rules and think step by step.\n"
      "The selected rules (partial or full condition directly matched) are:";
  return t;
}

PromptTemplate make_backward_template() {
  PromptTemplate t;
  t.instructions =
      "Suppose you are one of the greatest AI scientists, logicians. Given a specific fact, "
      "a rule, and a repository of facts, your task is to identify the missing fact(s) "
      "required to fully satisfy the rule's conditions and check if the missing fact(s) "
      "exist in the fact repository.\n"
      "- The given one specific fact already satisfies one of the rule's conditions. "
      "Identify the missing fact(s) needed to fully satisfy the rule.\n"
      "- Automatically adapt pronouns (e.g., 'they', 'something', 'someone') to the correct "
      "subject based on the context of the given rule and the given fact.\n"
      "- Check if the missing fact(s) are present in the fact repository.\n"
      "  - If the missing fact(s) are present in the fact repository, return **True** along "
      "with the identified missing fact(s).\n"
      "  - Otherwise, return **False**.";
  t.demonstrations = {
      {"The given one specific fact:\n"
       "The cat likes the rabbit.\n"
       "\n"
       "The given rule:\n"
       "If someone is cold and they like the rabbit then the rabbit likes the cat.\n"
       "\n"
       "The given fact repository:\n"
       "The cat eats the bear.\n"
       "The cat is cold.\n"
       "The cat is kind.\n"
       "The cat likes the rabbit.\n"
       "The rabbit likes the tiger.\n"
       "The tiger likes the bear.\n"
       "The tiger visits the cat.\n"
       "\n"
       "Let's go through each condition of the given rule. First identify the missing "
       "fact(s) needed to fully satisfy the rule.\n"
       "Then check if the missing fact(s) are present in the fact repository:",
       "The cat is cold.\n"
       "True. The identified missing fact(s) in the fact repository: The cat is cold."},
      {"The given one specific fact:\n"
       "The rabbit likes the squirrel.\n"
       "\n"
       "The given rule:\n"
       "If someone likes the squirrel and the squirrel sees the cow then they are red.\n"
       "\n"
       "The given fact repository:\n"
       "The cow likes the rabbit.\n"
       "The cow needs the mouse.\n"
       "The mouse likes the squirrel.\n"
       "The rabbit needs the cow.\n"
       "The rabbit sees the cow.\n"
       "The squirrel is nice.\n"
       "The squirrel needs the cow.\n"
       "The rabbit likes the squirrel.\n"
       "\n"
       "Let's go through each condition of the given rule. First identify the missing "
       "fact(s) needed to fully satisfy the rule.\n"
       "Then check if the missing fact(s) are present in the fact repository:",
       "The squirrel sees the cow.\n"
       "False"}};
  t.query_block =
      "The given one specific fact:\n"
      "{fact}\n"
      "\n"
      "The given rule:\n"
      "{rule}\n"
      "\n"
      "The given fact repository:\n"
      "{repository}\n"
      "\n"
      "Let's go through each condition of the given rule. First identify the missing "
      "fact(s) needed to fully satisfy the rule.\n"
      "Then check if the missing fact(s) are present in the fact repository:";
  return t;
}

PromptTemplate make_derive_template() {
  PromptTemplate t;
  t.instructions =
      "Suppose you are one of the greatest AI scientists, logicians. Your task is to derive "
      "a new **Proposition** based on a given **rule** and some **fact(s)**.\n"
      "Follow these instructions carefully:\n"
      "1. Ensure that the **Proposition**:\n"
      "    - Must be a valid logical derivation from the provided **rule** and **fact(s)**.\n"
      "    - Must not duplicate any of the provided **fact(s)**.\n"
      "    - Must not include any information not directly derived from the provided "
      "information.\n"
      "    - Automatically adapt pronouns (e.g., 'they', 'something', 'someone') to the "
      "correct subject based on the context.\n"
      "2. Do not apply the rule unless all conditions of the rule are met.\n"
      "3. If no new **Proposition** can be derived, return **None**, and classify the "
      "reason into one of the following categories:\n"
      "    - A. **Partial Information Met**: The given fact(s) meet some but not all "
      "conditions of the given rule.\n"
      "    - B. **No Information Met**: The given fact(s) do not meet any conditions of the "
      "given rule.";
  t.demonstrations = {
      {"The given fact(s):\n"
       "Erin is tall. Erin is cold.\n"
       "\n"
       "The given rule:\n"
       "Cold, tall people are not furry.\n"
       "\n"
       "The derived proposition is:",
       "Erin is not furry."},
      {"The given fact(s):\n"
       "Bob is round.\n"
       "\n"
       "The given rule:\n"
       "If someone is round and smart then they are not red.\n"
       "\n"
       "The derived proposition is:",
       "None\n"
       "Reason: A. **Partial Information Met**: The given fact(s) meet some but not all "
       "conditions of the given rule."},
      {"The given fact(s):\n"
       "Alice is happy.\n"
       "\n"
       "The given rule:\n"
       "If Alice is sad and red, she is quiet.\n"
       "\n"
       "The derived proposition is:",
       "None\n"
       "Reason: B. **No Information Met**: The given fact(s) do not meet any conditions of "
       "the given rule."}};
  t.query_block =
      "The given fact(s):\n"
      "{facts}\n"
      "\n"
      "The given rule:\n"
      "{rule}\n"
      "\n"
      "The derived proposition is:";
  return t;
}

PromptTemplate make_verify_template() {
  PromptTemplate t;
  t.instructions =
      "Suppose you are one of the greatest AI scientists, logicians. Your task is to verify "
      "the relationship between a given **Proposition** and a **Conclusion**. There are "
      "three possibilities:\n"
      "1. **Same:** The **Proposition** is directly equivalent to the **Conclusion**, "
      "meaning both the subject and the predicate (attributes) are the same.\n"
      "2. **Opposite:** The **Proposition** directly contradicts the **Conclusion**. The "
      "subjects are the same, but the predicates (attributes) are in direct opposition, "
      "such as 'predicate' versus 'not predicate'.\n"
      "3. **Indeterminate:** Neither **Same** or **Opposite**. The **Proposition** and the "
      "**Conclusion** either have different predicates (attributes) or there is no clear "
      "relationship between them.";
  t.demonstrations = {
      {"Proposition:\n"
       "Erin is not round.\n"
       "\n"
       "Conclusion:\n"
       "Erin is not green.\n"
       "\n"
       "Verify the relationship between the given Proposition and the Conclusion:",
       "Indeterminate"},
      {"Proposition:\n"
       "The rabbit is cold.\n"
       "\n"
       "Conclusion:\n"
       "The rabbit is cold.\n"
       "\n"
       "Verify the relationship between the given Proposition and the Conclusion:",
       "Same"},
      {"Proposition:\n"
       "The tiger is not young.\n"
       "\n"
       "Conclusion:\n"
       "The tiger is young.\n"
       "\n"
       "Verify the relationship between the given Proposition and the Conclusion:",
       "Opposite"}};
  t.query_block =
      "Proposition:\n"
      "{proposition}\n"
      "\n"
      "Conclusion:\n"
      "{conclusion}\n"
      "\n"
      "Verify the relationship between the given Proposition and the Conclusion:";
  return t;
}

}  // namespace

RenderedPrompt render_prompt(const PromptTemplate& tmpl,
                             const std::map<std::string, std::string>& slots) {
  std::string user;
  for (std::size_t i = 0; i < tmpl.demonstrations.size(); ++i) {
    user += "##### Example_" + std::to_string(i + 1) + "\n";
    user += tmpl.demonstrations[i].first;
    user += "\n";
    user += tmpl.demonstrations[i].second;
    user += "\n\n";
  }
  user += "##### Query\n";

  std::string query = tmpl.query_block;
  for (const auto& [name, value] : slots) {
    std::string placeholder = "{" + name + "}";
    std::size_t pos = query.find(placeholder);
    if (pos == std::string::npos) {
      throw MissingSlotError("no placeholder for slot '" + name + "'");
    }
    query.replace(pos, placeholder.size(), value);
    if (query.find(placeholder, pos + value.size()) != std::string::npos) {
      throw MissingSlotError("placeholder '" + name + "' appears more than once");
    }
  }
  if (std::size_t open = query.find('{'); open != std::string::npos) {
    std::size_t close = query.find('}', open);
    if (close != std::string::npos) {
      throw MissingSlotError("unfilled placeholder '" + query.substr(open, close - open + 1) +
                             "'");
    }
  }
  user += query;
  return RenderedPrompt{tmpl.instructions, std::move(user)};
}

const PromptTemplate& default_template(ModuleKind kind) {
  static const PromptTemplate forward = make_forward_template();
  static const PromptTemplate backward = make_backward_template();
  static const PromptTemplate derive = make_derive_template();
  static const PromptTemplate verify = make_verify_template();
  switch (kind) {
    case ModuleKind::forward: return forward;
    case ModuleKind::backward: return backward;
    case ModuleKind::derive: return derive;
    case ModuleKind::verify: return verify;
  }
  return verify;
}

std::string render_rule_list(std::span<const Rule> rules) {
  std::string out;
  for (const Rule& r : rules) {
    if (!out.empty()) out += '\n';
    out += r.to_string();
  }
  if (out.empty()) out = "None";
  return out;
}

std::string render_fact_line(std::span<const Statement> facts) {
  std::string out;
  for (const Statement& s : facts) {
    if (!out.empty()) out += ' ';
    out += s.to_string();
  }
  return out;
}

std::string render_repository_block(const FactRepository& repo) {
  std::string out;
  for (const Statement& s : repo.ordered()) {
    if (!out.empty()) out += '\n';
    out += s.to_string();
  }
  if (out.empty()) out = "None";
  return out;
}

}  // namespace logictree
