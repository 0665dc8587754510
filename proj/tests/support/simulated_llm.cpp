#include "simulated_llm.hpp"

#include <stdexcept>
#include <vector>

#include "logictree/parse.hpp"
#include "logictree/symbolic_backend.hpp"

namespace logictree::testsupport {

namespace {

std::string user_message(const nlohmann::json& request) {
  for (const auto& message : request.at("messages")) {
    if (message.value("role", "") == "user") return message.value("content", "");
  }
  throw std::runtime_error("request has no user message");
}

std::string system_message(const nlohmann::json& request) {
  for (const auto& message : request.at("messages")) {
    if (message.value("role", "") == "system") return message.value("content", "");
  }
  return "";
}

// Block between `header` and the next blank line, inside the query section.
std::string block_after(const std::string& query, const std::string& header) {
  std::size_t pos = query.find(header);
  if (pos == std::string::npos) throw std::runtime_error("missing header: " + header);
  pos += header.size();
  std::size_t end = query.find("\n\n", pos);
  if (end == std::string::npos) end = query.size();
  return query.substr(pos, end - pos);
}

std::vector<std::string> block_lines(const std::string& block) {
  std::vector<std::string> lines;
  std::size_t begin = 0;
  while (begin <= block.size()) {
    std::size_t end = block.find('\n', begin);
    if (end == std::string::npos) end = block.size();
    std::string line = block.substr(begin, end - begin);
    if (!line.empty()) lines.push_back(line);
    if (end == block.size()) break;
    begin = end + 1;
  }
  return lines;
}

std::vector<Statement> parse_fact_line(const std::string& line) {
  std::vector<Statement> facts;
  std::size_t begin = 0;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '.' && (i + 1 >= line.size() || line[i + 1] == ' ')) {
      facts.push_back(parse_statement(line.substr(begin, i - begin + 1)));
      begin = i + 1;
    }
  }
  return facts;
}

}  // namespace

std::string SimulatedLlmTransport::complete(const nlohmann::json& request) {
  const std::string system = system_message(request);
  const std::string user = user_message(request);
  std::size_t query_pos = user.rfind("##### Query\n");
  if (query_pos == std::string::npos) throw std::runtime_error("prompt has no query section");
  const std::string query = user.substr(query_pos);

  SymbolicBackend backend;

  if (system.find("select those that meet") != std::string::npos) {
    Statement fact = parse_statement(block_after(query, "The given fact:\n"));
    std::vector<Rule> rules;
    std::string rules_block = block_after(query, "The given list of rules:\n");
    if (rules_block != "None") {
      for (const std::string& line : block_lines(rules_block)) {
        for (Rule& r : parse_rule(line)) rules.push_back(std::move(r));
      }
    }
    SelectedRules selected = backend.forward_selection(fact, rules);
    if (selected.rules.empty()) return "None";
    std::string out;
    for (const Rule& r : selected.rules) {
      if (!out.empty()) out += '\n';
      out += r.to_string();
    }
    return out;
  }

  if (system.find("derive a new **Proposition**") != std::string::npos) {
    std::vector<Statement> facts = parse_fact_line(block_after(query, "The given fact(s):\n"));
    std::vector<Rule> rules = parse_rule(block_after(query, "The given rule:\n"));
    DerivationOutcome outcome = backend.derivation(facts, rules.at(0));
    if (const auto* d = std::get_if<Derived>(&outcome)) return d->fact.to_string();
    if (std::holds_alternative<PseudoDeadEnd>(outcome)) {
      return "None\nReason: A. **Partial Information Met**: The given fact(s) meet some but "
             "not all conditions of the given rule.";
    }
    return "None\nReason: B. **No Information Met**: The given fact(s) do not meet any "
           "conditions of the given rule.";
  }

  if (system.find("identify the missing fact(s)") != std::string::npos) {
    Statement fact = parse_statement(block_after(query, "The given one specific fact:\n"));
    std::vector<Rule> rules = parse_rule(block_after(query, "The given rule:\n"));
    std::string repo_block = block_after(query, "The given fact repository:\n");
    std::vector<Statement> repo_facts;
    if (repo_block != "None") {
      for (const std::string& line : block_lines(repo_block)) {
        repo_facts.push_back(parse_statement(line));
      }
    }
    FactRepository repo(repo_facts);
    BackwardOutcome outcome = backend.backward_selection(fact, rules.at(0), repo);
    if (const auto* missing = std::get_if<MissingFacts>(&outcome)) {
      std::string listed;
      for (const Statement& s : missing->facts) {
        if (!listed.empty()) listed += ' ';
        listed += s.to_string();
      }
      return listed + "\nTrue. The identified missing fact(s) in the fact repository: " +
             listed;
    }
    return "False";
  }

  if (system.find("verify the relationship") != std::string::npos) {
    Statement proposition = parse_statement(block_after(query, "Proposition:\n"));
    Statement conclusion = parse_statement(block_after(query, "Conclusion:\n"));
    return std::string(to_string(backend.verification(proposition, conclusion)));
  }

  throw std::runtime_error("unrecognized module prompt");
}

std::string ScriptedTransport::complete(const nlohmann::json& request) {
  requests_.push_back(request);
  if (responses_.empty()) throw TransportError("scripted transport exhausted");
  std::string out = std::move(responses_.front());
  responses_.pop_front();
  return out;
}

std::string CorruptingTransport::complete(const nlohmann::json& request) {
  bool corrupt = false;
  {
    std::lock_guard<std::mutex> lock(mutex_);
    ++counter_;
    if (every_nth_ > 0 && counter_ % every_nth_ == 0) {
      corrupt = true;
      ++corrupted_;
    }
  }
  std::string response = inner_->complete(request);
  return corrupt ? "%% garbled output that matches no grammar %%" : response;
}

std::string FailingTransport::complete(const nlohmann::json&) {
  ++attempts_;
  throw TransportError("injected transport failure");
}

}  // namespace logictree::testsupport
