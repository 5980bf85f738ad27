#pragma once

#include <cstdint>

#include "avgrare/family.hpp"
#include "avgrare/preorder.hpp"

namespace avgrare {

/// The order ideals of the preorder induced by `source`.
struct IdealFamily {
  FunctionalMap source;
  SetFamily family;
};

/// Count and size sum of an ideal family, enough to get its NDS.
struct IdealStats {
  int n = 0;
  std::int64_t count = 0;
  std::int64_t size_sum = 0;

  std::int64_t nds() const { return nds_from(size_sum, count, n); }
  friend bool operator==(const IdealStats&, const IdealStats&) = default;
};

/// What the forest recursion does with a preorder that is not a partial order.
enum class NonPoset { Quotient, Reject };

/// All downward-closed subsets of an arbitrary preorder, by filtering 2^n masks.
SetFamily ideals_of_relation(const PreorderRelation& p);

/// Order ideals of preorder_of(f), by filtering all 2^n masks.
IdealFamily ideals_bruteforce(const FunctionalMap& f);

/// Order ideals of preorder_of(f) by the rooted-forest recursion: a
/// component's ideals are its full vertex set plus the ideals of what is left
/// after removing its root, and a disjoint union takes one ideal per part.
/// With NonPoset::Quotient each equivalence class is contracted first and
/// expanded back afterwards; with NonPoset::Reject a proper preorder throws
/// NotPosetError.
IdealFamily ideals_forest(const FunctionalMap& f, NonPoset mode = NonPoset::Quotient);

/// Count-only variant of ideals_forest. Accepts any map.
std::int64_t count_ideals(const FunctionalMap& f);

/// Count and size sum of the ideal family in O(n) space without materializing
/// it. Accepts any map with n <= 56.
IdealStats ideal_stats(const FunctionalMap& f);

}  // namespace avgrare
