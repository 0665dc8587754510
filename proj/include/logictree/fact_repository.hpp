// The two caches: the deduplicating fact store shared across branches and
// trees, and the derivation map used for bottom-up proof reconstruction.

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "logictree/statement.hpp"

namespace logictree {

enum class FactOrigin { given, derived };

struct DerivationStep {
  Statement derived;
  Rule rule;
  std::vector<Statement> antecedents;
};

// Ordered set of statements keyed by canonical string. Initialized with the
// given facts; derived facts are appended as exploration discovers them.
class FactRepository {
 public:
  FactRepository() = default;
  explicit FactRepository(std::span<const Statement> given);

  bool contains(const Statement& s) const;
  // False when the fact is already present.
  bool add_derived(const Statement& s);

  std::size_t size() const { return order_.size(); }
  const std::vector<Statement>& ordered() const { return order_; }
  FactOrigin origin_of(const Statement& s) const;
  // Position in insertion order; npos when absent.
  std::size_t insertion_index(const Statement& s) const;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  bool insert(const Statement& s, FactOrigin origin);

  std::vector<Statement> order_;
  std::unordered_map<std::string, std::pair<std::size_t, FactOrigin>> by_key_;
};

// Derived fact -> the rule and antecedent facts that produced it.
class DerivationHashMap {
 public:
  void record(const DerivationStep& step);
  const DerivationStep* find(const Statement& derived) const;
  std::size_t size() const { return steps_.size(); }

 private:
  std::vector<DerivationStep> steps_;
  std::unordered_map<std::string, std::size_t> by_key_;
};

}  // namespace logictree
