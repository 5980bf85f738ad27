#pragma once

#include <initializer_list>
#include <vector>

#include "avgrare/family.hpp"
#include "avgrare/preorder.hpp"

namespace avgrare::test {

enum : ElementId { a = 0, b = 1, c = 2, d = 3, e = 4 };

inline Mask set_of(std::initializer_list<ElementId> elems) {
  Mask m = 0;
  for (ElementId v : elems) m |= bit(v);
  return m;
}

inline SetFamily family(int n, std::initializer_list<std::initializer_list<ElementId>> sets) {
  std::vector<Mask> members;
  for (auto s : sets) members.push_back(set_of(s));
  return SetFamily(n, std::move(members));
}

inline FunctionalMap fmap(std::initializer_list<ElementId> images) {
  return FunctionalMap(std::vector<ElementId>(images));
}

// The worked examples: a 2-chain, a preorder with b ~ c, and the
// non-functional family generated by ({b}, a) and ({c}, a).
inline SetFamily example1_ideals() { return family(2, {{}, {a}, {a, b}}); }
inline SetFamily example2_ideals() { return family(3, {{}, {a}, {a, b, c}}); }
inline SetFamily example3_family() { return family(3, {{}, {a}, {a, b}, {a, c}, {a, b, c}}); }
inline FunctionalMap example1_map() { return fmap({b, b}); }
inline FunctionalMap example2_map() { return fmap({b, c, b}); }

}  // namespace avgrare::test
