#include "logictree/llm_backend.hpp"

#include <algorithm>
#include <cctype>
#include <thread>

#include "logictree/parse.hpp"

namespace logictree {

namespace {

std::string to_lower(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t begin = 0;
  while (begin <= text.size()) {
    std::size_t end = text.find('\n', begin);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(begin, end - begin);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.front())))
      line.remove_prefix(1);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back())))
      line.remove_suffix(1);
    if (!line.empty()) lines.emplace_back(line);
    if (end == text.size()) break;
    begin = end + 1;
  }
  return lines;
}

// Lowercased alphanumerics only; the containment-matching key.
std::string normalized_key(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
  }
  return out;
}

std::vector<std::string> split_sentences(std::string_view text) {
  std::vector<std::string> sentences;
  std::size_t begin = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '.' && (i + 1 >= text.size() || text[i + 1] == ' ' || text[i + 1] == '\n')) {
      std::string_view s = text.substr(begin, i - begin + 1);
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
      if (!s.empty()) sentences.emplace_back(s);
      begin = i + 1;
    }
  }
  return sentences;
}

bool word_at(const std::string& lower, std::size_t pos, std::string_view word) {
  if (lower.compare(pos, word.size(), word) != 0) return false;
  bool left_ok = pos == 0 || !std::isalnum(static_cast<unsigned char>(lower[pos - 1]));
  std::size_t end = pos + word.size();
  bool right_ok = end >= lower.size() || !std::isalnum(static_cast<unsigned char>(lower[end]));
  return left_ok && right_ok;
}

std::size_t find_word(const std::string& lower, std::string_view word) {
  for (std::size_t pos = lower.find(word); pos != std::string::npos;
       pos = lower.find(word, pos + 1)) {
    if (word_at(lower, pos, word)) return pos;
  }
  return std::string::npos;
}

}  // namespace

ModuleTemplates ModuleTemplates::defaults() {
  return ModuleTemplates{default_template(ModuleKind::forward),
                         default_template(ModuleKind::backward),
                         default_template(ModuleKind::derive),
                         default_template(ModuleKind::verify)};
}

std::optional<SelectedRules> parse_forward_response(std::string_view text,
                                                    std::span<const Rule> problem_rules,
                                                    int* hallucinated) {
  std::vector<std::string> lines = split_lines(text);
  if (lines.empty()) return std::nullopt;

  std::vector<std::string> keys;
  keys.reserve(problem_rules.size());
  for (const Rule& r : problem_rules) keys.push_back(normalized_key(r.to_string()));

  std::vector<bool> selected(problem_rules.size(), false);
  bool saw_none = false;
  bool matched_any = false;
  int dropped = 0;
  for (const std::string& line : lines) {
    std::string lk = normalized_key(line);
    if (lk.empty()) continue;
    if (lk == "none" || lk.rfind("none", 0) == 0) {
      saw_none = true;
      continue;
    }
    bool matched = false;
    for (std::size_t i = 0; i < keys.size(); ++i) {
      if (lk == keys[i] || lk.find(keys[i]) != std::string::npos ||
          (!problem_rules[i].source_text.empty() &&
           lk.find(normalized_key(problem_rules[i].source_text)) != std::string::npos)) {
        selected[i] = true;
        matched = true;
        break;
      }
    }
    if (matched) {
      matched_any = true;
    } else {
      ++dropped;
    }
  }
  if (!matched_any && !saw_none) return std::nullopt;
  if (hallucinated != nullptr) *hallucinated += dropped;
  SelectedRules out;
  for (std::size_t i = 0; i < problem_rules.size(); ++i) {
    if (selected[i]) out.rules.push_back(problem_rules[i]);
  }
  return out;
}

std::optional<DerivationOutcome> parse_derive_response(std::string_view text) {
  std::vector<std::string> lines = split_lines(text);
  if (lines.empty()) return std::nullopt;
  std::string first_lower = to_lower(lines.front());
  if (first_lower.rfind("none", 0) == 0) {
    std::string all_lower = to_lower(text);
    if (all_lower.find("partial information met") != std::string::npos ||
        all_lower.find("reason: a") != std::string::npos) {
      return PseudoDeadEnd{};
    }
    if (all_lower.find("no information met") != std::string::npos ||
        all_lower.find("reason: b") != std::string::npos) {
      return DeadEnd{};
    }
    return std::nullopt;  // "None" with no classified reason
  }
  try {
    return Derived{parse_statement(lines.front())};
  } catch (const ParseError&) {
    return std::nullopt;
  }
}

std::optional<BackwardOutcome> parse_backward_response(std::string_view text) {
  std::vector<std::string> lines = split_lines(text);
  if (lines.empty()) return std::nullopt;

  std::ptrdiff_t true_line = -1;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string lower = to_lower(lines[i]);
    if (lower.rfind("false", 0) == 0) return MissingUnavailable{};
    if (lower.rfind("true", 0) == 0) true_line = static_cast<std::ptrdiff_t>(i);
  }
  if (true_line < 0) return std::nullopt;

  auto collect = [](std::string_view source, std::vector<Statement>& out) {
    for (const std::string& sentence : split_sentences(source)) {
      try {
        Statement s = parse_statement(sentence);
        if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(std::move(s));
      } catch (const ParseError&) {
      }
    }
  };

  MissingFacts facts;
  const std::string& line = lines[static_cast<std::size_t>(true_line)];
  if (std::size_t colon = line.rfind(':'); colon != std::string::npos) {
    collect(std::string_view(line).substr(colon + 1), facts.facts);
  }
  if (facts.facts.empty()) {
    // Some responses list the facts on the lines before "True."
    for (std::ptrdiff_t i = 0; i < true_line; ++i) {
      collect(lines[static_cast<std::size_t>(i)], facts.facts);
    }
  }
  if (facts.facts.empty()) return std::nullopt;
  return facts;
}

std::optional<Verdict> parse_verify_response(std::string_view text) {
  std::string lower = to_lower(text);
  std::size_t same = find_word(lower, "same");
  std::size_t opposite = find_word(lower, "opposite");
  std::size_t indeterminate = find_word(lower, "indeterminate");
  std::size_t best = std::min({same, opposite, indeterminate});
  if (best == std::string::npos) return std::nullopt;
  if (best == same) return Verdict::Same;
  if (best == opposite) return Verdict::Opposite;
  return Verdict::Indeterminate;
}

LlmBackend::LlmBackend(std::shared_ptr<ChatTransport> transport, LlmConfig config,
                       ModuleTemplates templates)
    : transport_(std::move(transport)),
      config_(std::move(config)),
      templates_(std::move(templates)),
      in_flight_(std::min(config_.max_in_flight, 256)) {}

std::string LlmBackend::invoke(const RenderedPrompt& prompt) {
  nlohmann::json request = {
      {"model", config_.model},
      {"messages",
       {{{"role", "system"}, {"content", prompt.system}},
        {{"role", "user"}, {"content", prompt.user}}}},
      {"temperature", config_.temperature},
  };

  in_flight_.acquire();
  struct Release {
    std::counting_semaphore<256>& sem;
    ~Release() { sem.release(); }
  } release{in_flight_};

  std::chrono::milliseconds backoff = config_.retry_backoff;
  for (int attempt = 0;; ++attempt) {
    try {
      return transport_->complete(request);
    } catch (const TransportError& e) {
      if (attempt >= config_.max_retries) {
        throw BackendError(std::string("transport failed after retries: ") + e.what());
      }
      {
        std::lock_guard<std::mutex> lock(stats_mutex_);
        ++stats_.transport_retries;
      }
      if (backoff.count() > 0) std::this_thread::sleep_for(backoff);
      backoff *= 2;
    }
  }
}

template <typename Outcome, typename ParseFn>
std::optional<Outcome> LlmBackend::ask(const PromptTemplate& tmpl,
                                       const std::map<std::string, std::string>& slots,
                                       ParseFn parse) {
  {
    std::lock_guard<std::mutex> lock(stats_mutex_);
    ++stats_.calls;
  }
  RenderedPrompt prompt = render_prompt(tmpl, slots);
  if (auto out = parse(invoke(prompt))) return out;

  {
    std::lock_guard<std::mutex> lock(stats_mutex_);
    ++stats_.format_retries;
  }
  RenderedPrompt retry = prompt;
  retry.user += "\n\nAnswer in the exact format requested.";
  if (auto out = parse(invoke(retry))) return out;

  std::lock_guard<std::mutex> lock(stats_mutex_);
  ++stats_.malformed_responses;
  return std::nullopt;
}

SelectedRules LlmBackend::forward_selection(const Statement& fact,
                                            std::span<const Rule> rules) {
  int hallucinated = 0;
  auto parsed = ask<SelectedRules>(
      templates_.forward,
      {{"fact", fact.to_string()}, {"rules", render_rule_list(rules)}},
      [&](const std::string& text) {
        return parse_forward_response(text, rules, &hallucinated);
      });
  if (hallucinated > 0) {
    std::lock_guard<std::mutex> lock(stats_mutex_);
    stats_.hallucinated_rules += hallucinated;
  }
  return parsed.value_or(SelectedRules{});  // safe outcome: empty selection
}

DerivationOutcome LlmBackend::derivation(std::span<const Statement> facts, const Rule& rule) {
  auto parsed = ask<DerivationOutcome>(
      templates_.derive,
      {{"facts", render_fact_line(facts)}, {"rule", rule.to_string()}},
      [](const std::string& text) { return parse_derive_response(text); });
  if (!parsed) return DeadEnd{};  // safe outcome
  // Never fabricate: a "derived" statement equal to an input is no progress.
  if (const auto* d = std::get_if<Derived>(&*parsed)) {
    if (std::any_of(facts.begin(), facts.end(),
                    [&](const Statement& f) { return f == d->fact; })) {
      return DeadEnd{};
    }
  }
  return *parsed;
}

BackwardOutcome LlmBackend::backward_selection(const Statement& fact, const Rule& rule,
                                               const FactRepository& repo) {
  auto parsed = ask<BackwardOutcome>(
      templates_.backward,
      {{"fact", fact.to_string()},
       {"rule", rule.to_string()},
       {"repository", render_repository_block(repo)}},
      [](const std::string& text) { return parse_backward_response(text); });
  if (!parsed) return MissingUnavailable{};  // safe outcome
  if (auto* missing = std::get_if<MissingFacts>(&*parsed)) {
    // Keep the repository closed: drop facts that are not actually cached.
    std::vector<Statement> verified;
    int dropped = 0;
    for (Statement& s : missing->facts) {
      if (repo.contains(s)) {
        verified.push_back(std::move(s));
      } else {
        ++dropped;
      }
    }
    if (dropped > 0) {
      std::lock_guard<std::mutex> lock(stats_mutex_);
      stats_.hallucinated_facts += dropped;
    }
    if (verified.empty()) return MissingUnavailable{};
    missing->facts = std::move(verified);
    return *missing;
  }
  return *parsed;
}

Verdict LlmBackend::verification(const Statement& proposition, const Statement& hypothesis) {
  auto parsed = ask<Verdict>(
      templates_.verify,
      {{"proposition", proposition.to_string()}, {"conclusion", hypothesis.to_string()}},
      [](const std::string& text) { return parse_verify_response(text); });
  return parsed.value_or(Verdict::Indeterminate);  // safe outcome
}

LlmBackendStats LlmBackend::stats() const {
  std::lock_guard<std::mutex> lock(stats_mutex_);
  return stats_;
}

}  // namespace logictree
