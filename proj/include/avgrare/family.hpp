#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "avgrare/types.hpp"

namespace avgrare {

/// A finite family of distinct subsets of [0, n).
///
/// Members are kept in ascending mask order, so two families are equal
/// exactly when they hold the same sets.
class SetFamily {
public:
  SetFamily() = default;

  /// Throws InputError on a member outside the ground set or a duplicate member.
  SetFamily(int n, std::vector<Mask> members);

  /// Like the constructor, but merges duplicates instead of rejecting them.
  static SetFamily deduplicated(int n, std::vector<Mask> members);

  /// All 2^n subsets.
  static SetFamily power_set(int n);

  int ground_size() const { return n_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  std::span<const Mask> members() const { return members_; }
  bool contains(Mask m) const;

  /// Sum of member sizes.
  std::int64_t total_size() const;

  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  friend bool operator==(const SetFamily&, const SetFamily&) = default;

private:
  struct Trusted {};
  SetFamily(int n, std::vector<Mask> sorted_unique, Trusted)
      : n_(n), members_(std::move(sorted_unique)) {}

  int n_ = 0;
  std::vector<Mask> members_;
};

/// Number of members containing `u`.
std::int64_t degree(const SetFamily& family, ElementId u);

/// Degrees of all elements, indexed by element.
std::vector<std::int64_t> degrees(const SetFamily& family);

/// Normalized degree sum: 2 * sum |F| - |family| * n.
std::int64_t nds(const SetFamily& family);

/// NDS from the three summary numbers; shared by every fast path.
inline constexpr std::int64_t nds_from(std::int64_t size_sum, std::int64_t count, int n) {
  return 2 * size_sum - count * n;
}

/// True iff 2 * degree(u) <= |family|.
bool is_rare(const SetFamily& family, ElementId u);

/// Mask of all rare elements.
Mask rare_elements(const SetFamily& family);

/// True iff nds(family) <= 0.
bool is_average_rare(const SetFamily& family);

/// {F \ {x}} on the ground set [0, n-1); elements above x shift down by one.
SetFamily trace_at(const SetFamily& family, ElementId x);

/// True iff u and v lie in exactly the same members. Requires u != v.
bool parallel(const SetFamily& family, ElementId u, ElementId v);

/// True iff the family is closed under pairwise intersection.
bool is_intersection_closed(const SetFamily& family);

}  // namespace avgrare
