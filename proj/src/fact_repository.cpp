#include "logictree/fact_repository.hpp"

namespace logictree {

FactRepository::FactRepository(std::span<const Statement> given) {
  for (const auto& s : given) insert(s, FactOrigin::given);
}

bool FactRepository::insert(const Statement& s, FactOrigin origin) {
  auto [it, inserted] = by_key_.try_emplace(s.to_string(), order_.size(), origin);
  if (inserted) order_.push_back(s);
  return inserted;
}

bool FactRepository::contains(const Statement& s) const {
  return by_key_.count(s.to_string()) != 0;
}

bool FactRepository::add_derived(const Statement& s) {
  return insert(s, FactOrigin::derived);
}

FactOrigin FactRepository::origin_of(const Statement& s) const {
  auto it = by_key_.find(s.to_string());
  return it == by_key_.end() ? FactOrigin::derived : it->second.second;
}

std::size_t FactRepository::insertion_index(const Statement& s) const {
  auto it = by_key_.find(s.to_string());
  return it == by_key_.end() ? npos : it->second.first;
}

void DerivationHashMap::record(const DerivationStep& step) {
  auto [it, inserted] = by_key_.try_emplace(step.derived.to_string(), steps_.size());
  if (inserted) steps_.push_back(step);
}

const DerivationStep* DerivationHashMap::find(const Statement& derived) const {
  auto it = by_key_.find(derived.to_string());
  return it == by_key_.end() ? nullptr : &steps_[it->second];
}

}  // namespace logictree
