// Deterministic parser for the templated premise language used by the
// ProofWriter family of datasets (copula attributes, transitive verbs,
// kinship possessives, quantified and conditional rule sentences).

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "logictree/statement.hpp"

namespace logictree {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t offset, std::string reason);

  std::size_t offset() const { return offset_; }
  const std::string& reason() const { return reason_; }

 private:
  std::size_t offset_;
  std::string reason_;
};

// Parse a fact or hypothesis sentence. Throws ParseError when the sentence
// fits no statement template.
Statement parse_statement(std::string_view text);

// Parse a rule sentence. Equivalences ("and vice versa", "is equivalent to")
// and conjunctive conclusions expand into several Rule values, one per
// direction and conclusion atom.
std::vector<Rule> parse_rule(std::string_view text);

// Sentence classifier used to segregate unsorted premises into facts and
// rules before parsing.
bool looks_like_rule(std::string_view text);

}  // namespace logictree
