#pragma once

#include <span>
#include <utility>
#include <vector>

#include "avgrare/types.hpp"

namespace avgrare {

/// A total function f: [0, n) -> [0, n), stored as its image array.
class FunctionalMap {
public:
  FunctionalMap() = default;

  /// Throws InputError if some image is out of range or n exceeds kMaxGround.
  explicit FunctionalMap(std::vector<ElementId> images);

  static FunctionalMap identity(int n);

  int size() const { return static_cast<int>(f_.size()); }
  ElementId operator()(ElementId v) const { return f_[v]; }
  std::span<const ElementId> images() const { return f_; }

  friend bool operator==(const FunctionalMap&, const FunctionalMap&) = default;
  friend auto operator<=>(const FunctionalMap&, const FunctionalMap&) = default;

private:
  std::vector<ElementId> f_;
};

/// A preorder on [0, n) stored as up-sets: row v holds every w with v <= w.
class PreorderRelation {
public:
  PreorderRelation() = default;

  /// Reflexive-transitive closure of the given (lower, upper) pairs.
  static PreorderRelation closure_of(int n, std::span<const std::pair<ElementId, ElementId>> pairs);

  int size() const { return static_cast<int>(up_.size()); }
  bool leq(ElementId v, ElementId w) const { return has(up_[v], w); }
  Mask up_set(ElementId v) const { return up_[v]; }
  Mask down_set(ElementId w) const;

  friend bool operator==(const PreorderRelation&, const PreorderRelation&) = default;

private:
  friend PreorderRelation preorder_of(const FunctionalMap& f);
  explicit PreorderRelation(std::vector<Mask> up) : up_(std::move(up)) {}

  std::vector<Mask> up_;
};

/// Equivalence classes of a preorder. Classes are numbered by their smallest element.
struct Partition {
  int n = 0;
  std::vector<int> class_of;
  std::vector<Mask> classes;

  friend bool operator==(const Partition&, const Partition&) = default;
};

/// Thrown when an operation needs a partial order but got a proper preorder.
/// (lower, upper) is a pair of distinct mutually reachable elements.
class NotPosetError : public InputError {
public:
  NotPosetError(ElementId lower, ElementId upper);
  ElementId lower;
  ElementId upper;
};

/// v <= w iff some iterate f^k(v) equals w. Walks the orbit of each v.
PreorderRelation preorder_of(const FunctionalMap& f);

Partition equiv_classes(const PreorderRelation& p);

/// Mask of u such that u <= v implies v <= u.
Mask maximal_elements(const PreorderRelation& p);

/// True iff the preorder is antisymmetric.
bool is_poset(const PreorderRelation& p);

/// Equivalent to is_poset(preorder_of(f)) without building the relation:
/// every cycle of f is a fixed point.
bool is_functional_poset(const FunctionalMap& f);

/// Weakly connected components of the functional graph, ordered by smallest element.
std::vector<Mask> components(const FunctionalMap& f);

/// Cover pairs (v, f(v)) for f(v) != v, in ascending v. Throws NotPosetError
/// if the preorder of f has a nontrivial class.
std::vector<std::pair<ElementId, ElementId>> hasse_covers(const FunctionalMap& f);

/// Contracts every equivalence class to one vertex. Classes of size >= 2
/// become fixed points. `part` must be equiv_classes(preorder_of(f)).
FunctionalMap quotient_map(const FunctionalMap& f, const Partition& part);

/// f restricted to the elements of `keep`, renumbered in ascending order.
/// `keep` must be closed under f.
FunctionalMap restrict_to(const FunctionalMap& f, Mask keep);

}  // namespace avgrare
