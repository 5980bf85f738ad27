#pragma once

#include <vector>

#include "avgrare/family.hpp"
#include "avgrare/preorder.hpp"

namespace avgrare {

/// The implication "stem subset of F implies root in F". The root is never in the stem.
struct RootedSet {
  Mask stem = 0;
  ElementId root = 0;

  friend bool operator==(const RootedSet&, const RootedSet&) = default;
  friend auto operator<=>(const RootedSet&, const RootedSet&) = default;
};

/// A set of rooted sets on [0, n). Rule order is irrelevant; rules are
/// stored sorted by (stem, root).
class RootedFamily {
public:
  RootedFamily() = default;

  /// Throws InputError on a root inside its stem, an out-of-range element,
  /// or a duplicate rule.
  RootedFamily(int n, std::vector<RootedSet> rules);

  int ground_size() const { return n_; }
  const std::vector<RootedSet>& rules() const { return rules_; }

  friend bool operator==(const RootedFamily&, const RootedFamily&) = default;

private:
  int n_ = 0;
  std::vector<RootedSet> rules_;
};

/// A rooted family in which every element roots at most one rule and every
/// stem is nonempty, so the generated closure system contains the empty set.
class UniqueRootFamily {
public:
  /// Throws InputError if two rules share a root or a stem is empty.
  explicit UniqueRootFamily(RootedFamily family);

  const RootedFamily& family() const { return family_; }
  int ground_size() const { return family_.ground_size(); }
  const std::vector<RootedSet>& rules() const { return family_.rules(); }

  /// True iff every element is the root of exactly one rule.
  bool every_element_rooted() const;

private:
  RootedFamily family_;
};

/// Every F with (stem subset of F implies root in F) for all rules, found by
/// filtering all 2^n subsets. Always contains the full ground set.
SetFamily closure_system_of(const RootedFamily& rf);

/// Smallest member of closure_system_of(rf) containing x, by fixpoint iteration.
Mask closure_of(const RootedFamily& rf, Mask x);

/// True iff every stem is nonempty.
bool contains_empty(const RootedFamily& rf);

/// The preorder with r <= y for each rule ({y}, r). Throws InputError if some
/// stem is not a singleton.
PreorderRelation singleton_stem_to_relation(const RootedFamily& rf);

/// Rules ({f(v)}, v) for every v with f(v) != v.
RootedFamily relation_to_singleton_stems(const FunctionalMap& f);

}  // namespace avgrare
