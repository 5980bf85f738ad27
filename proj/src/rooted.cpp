#include "avgrare/rooted.hpp"

#include <algorithm>
#include <string>

namespace avgrare {

RootedFamily::RootedFamily(int n, std::vector<RootedSet> rules) : n_(n), rules_(std::move(rules)) {
  check_ground_size(n);
  for (const RootedSet& r : rules_) {
    check_element(r.root, n);
    if (r.stem & ~full_mask(n)) throw InputError("stem has an element outside the ground set");
    if (has(r.stem, r.root))
      throw InputError("root " + std::to_string(r.root) + " lies in its own stem");
  }
  std::sort(rules_.begin(), rules_.end());
  if (std::adjacent_find(rules_.begin(), rules_.end()) != rules_.end())
    throw InputError("duplicate rooted set");
}

UniqueRootFamily::UniqueRootFamily(RootedFamily family) : family_(std::move(family)) {
  Mask roots = 0;
  for (const RootedSet& r : family_.rules()) {
    if (r.stem == 0) throw InputError("empty stem in a unique-root family");
    if (has(roots, r.root))
      throw InputError("element " + std::to_string(r.root) + " roots more than one rule");
    roots |= bit(r.root);
  }
}

bool UniqueRootFamily::every_element_rooted() const {
  return static_cast<int>(rules().size()) == ground_size();
}

SetFamily closure_system_of(const RootedFamily& rf) {
  const int n = rf.ground_size();
  check_enumerable(n);
  std::vector<Mask> members;
  const Mask end = Mask{1} << n;
  for (Mask F = 0; F < end; ++F) {
    const bool closed = std::all_of(rf.rules().begin(), rf.rules().end(), [F](const RootedSet& r) {
      return !subset_of(r.stem, F) || has(F, r.root);
    });
    if (closed) members.push_back(F);
  }
  return SetFamily(n, std::move(members));
}

Mask closure_of(const RootedFamily& rf, Mask x) {
  if (x & ~full_mask(rf.ground_size())) throw InputError("set has elements outside the ground set");
  Mask current = x;
  for (bool grew = true; grew;) {
    grew = false;
    for (const RootedSet& r : rf.rules())
      if (subset_of(r.stem, current) && !has(current, r.root)) {
        current |= bit(r.root);
        grew = true;
      }
  }
  return current;
}

bool contains_empty(const RootedFamily& rf) {
  return std::none_of(rf.rules().begin(), rf.rules().end(),
                      [](const RootedSet& r) { return r.stem == 0; });
}

PreorderRelation singleton_stem_to_relation(const RootedFamily& rf) {
  std::vector<std::pair<ElementId, ElementId>> pairs;
  for (const RootedSet& r : rf.rules()) {
    if (popcount(r.stem) != 1)
      throw InputError("stem of size " + std::to_string(popcount(r.stem)) +
                       " where a singleton stem is required");
    pairs.emplace_back(r.root, std::countr_zero(r.stem));
  }
  return PreorderRelation::closure_of(rf.ground_size(), pairs);
}

RootedFamily relation_to_singleton_stems(const FunctionalMap& f) {
  std::vector<RootedSet> rules;
  for (ElementId v = 0; v < f.size(); ++v)
    if (f(v) != v) rules.push_back({bit(f(v)), v});
  return RootedFamily(f.size(), std::move(rules));
}

}  // namespace avgrare
