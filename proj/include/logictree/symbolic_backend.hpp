// Deterministic textual-pattern-matching implementation of the four
// reasoning-module contracts. Selection and backward lookup are single
// passes over the rule list / condition slots.

#pragma once

#include <atomic>
#include <cstddef>

#include "logictree/backend.hpp"

namespace logictree {

class SymbolicBackend : public ReasoningBackend {
 public:
  struct ScanStats {
    std::size_t rules_scanned = 0;     // rules inspected by forward_selection
    std::size_t condition_checks = 0;  // condition slots inspected by backward_selection
  };

  SelectedRules forward_selection(const Statement& fact,
                                  std::span<const Rule> rules) override;
  DerivationOutcome derivation(std::span<const Statement> facts, const Rule& rule) override;
  BackwardOutcome backward_selection(const Statement& fact, const Rule& rule,
                                     const FactRepository& repo) override;
  Verdict verification(const Statement& proposition, const Statement& hypothesis) override;

  bool concurrent_calls_allowed() const override { return true; }

  ScanStats stats() const {
    return ScanStats{rules_scanned_.load(std::memory_order_relaxed),
                     condition_checks_.load(std::memory_order_relaxed)};
  }
  void reset_stats() {
    rules_scanned_.store(0, std::memory_order_relaxed);
    condition_checks_.store(0, std::memory_order_relaxed);
  }

 private:
  std::atomic<std::size_t> rules_scanned_{0};
  std::atomic<std::size_t> condition_checks_{0};
};

}  // namespace logictree
