// Backend that realizes the four module contracts through few-shot prompts
// over a chat-completions transport, with strict response-grammar parsing
// and safe-outcome mapping for anything that does not parse.

#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <semaphore>

#include "logictree/backend.hpp"
#include "logictree/chat_client.hpp"
#include "logictree/prompt.hpp"

namespace logictree {

struct ModuleTemplates {
  PromptTemplate forward;
  PromptTemplate backward;
  PromptTemplate derive;
  PromptTemplate verify;

  static ModuleTemplates defaults();
};

struct LlmBackendStats {
  int calls = 0;
  int malformed_responses = 0;  // unparseable after the format retry
  int format_retries = 0;
  int transport_retries = 0;
  int hallucinated_rules = 0;  // selected rules not in the problem's rule set
  int hallucinated_facts = 0;  // missing facts not present in the repository
};

// Response grammars, exposed for tests. nullopt = malformed.
std::optional<SelectedRules> parse_forward_response(std::string_view text,
                                                    std::span<const Rule> problem_rules,
                                                    int* hallucinated = nullptr);
std::optional<DerivationOutcome> parse_derive_response(std::string_view text);
std::optional<BackwardOutcome> parse_backward_response(std::string_view text);
std::optional<Verdict> parse_verify_response(std::string_view text);

class LlmBackend : public ReasoningBackend {
 public:
  LlmBackend(std::shared_ptr<ChatTransport> transport, LlmConfig config,
             ModuleTemplates templates = ModuleTemplates::defaults());

  SelectedRules forward_selection(const Statement& fact, std::span<const Rule> rules) override;
  DerivationOutcome derivation(std::span<const Statement> facts, const Rule& rule) override;
  BackwardOutcome backward_selection(const Statement& fact, const Rule& rule,
                                     const FactRepository& repo) override;
  Verdict verification(const Statement& proposition, const Statement& hypothesis) override;

  bool concurrent_calls_allowed() const override { return transport_->concurrent_ok(); }

  LlmBackendStats stats() const;

 private:
  // Transport call with retry/backoff; throws BackendError when exhausted.
  std::string invoke(const RenderedPrompt& prompt);

  // invoke + parse, one format retry with a terse reminder, then nullopt.
  template <typename Outcome, typename ParseFn>
  std::optional<Outcome> ask(const PromptTemplate& tmpl,
                             const std::map<std::string, std::string>& slots, ParseFn parse);

  std::shared_ptr<ChatTransport> transport_;
  LlmConfig config_;
  ModuleTemplates templates_;
  std::counting_semaphore<256> in_flight_;
  mutable std::mutex stats_mutex_;
  LlmBackendStats stats_;
};

}  // namespace logictree
