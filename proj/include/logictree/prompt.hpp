// Few-shot prompt templates for the four reasoning modules and their
// byte-deterministic rendering. Instructions are module-specific and
// dataset-invariant; demonstrations can be swapped per dataset.

#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "logictree/backend.hpp"

namespace logictree {

struct PromptTemplate {
  std::string instructions;
  // Each demonstration: input block (ending with the cue line) and the
  // expected completion.
  std::vector<std::pair<std::string, std::string>> demonstrations;
  // Query block with {placeholders}; ends with the cue line.
  std::string query_block;
};

struct RenderedPrompt {
  std::string system;  // instructions
  std::string user;    // demonstrations + query

  std::string full() const { return system + "\n\n" + user; }
};

class MissingSlotError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Substitute every {slot}; throws MissingSlotError when a placeholder has no
// value or a value has no placeholder. Each placeholder must appear exactly
// once.
RenderedPrompt render_prompt(const PromptTemplate& tmpl,
                             const std::map<std::string, std::string>& slots);

const PromptTemplate& default_template(ModuleKind kind);

// Block renderers shared by the backend and tests.
std::string render_rule_list(std::span<const Rule> rules);
std::string render_fact_line(std::span<const Statement> facts);  // space-joined sentences
std::string render_repository_block(const FactRepository& repo); // one per line, "None" if empty

}  // namespace logictree
