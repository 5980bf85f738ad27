#include <doctest.h>

#include "avgrare/preorder.hpp"
#include "avgrare/search.hpp"
#include "helpers.hpp"

using namespace avgrare;
using namespace avgrare::test;

namespace {

/// Naive transitive closure on a boolean matrix: repeat until nothing changes.
std::vector<std::vector<bool>> matrix_closure(const FunctionalMap& f) {
  const int n = f.size();
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (int v = 0; v < n; ++v) leq[v][v] = leq[v][f(v)] = true;
  for (bool changed = true; changed;) {
    changed = false;
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v)
        for (int w = 0; w < n; ++w)
          if (leq[u][v] && leq[v][w] && !leq[u][w]) leq[u][w] = changed = true;
  }
  return leq;
}

}  // namespace

TEST_CASE("preorder_of") {
  const PreorderRelation p1 = preorder_of(example1_map());
  CHECK(p1.leq(a, b));
  CHECK(p1.leq(a, a));
  CHECK(p1.leq(b, b));
  CHECK_FALSE(p1.leq(b, a));

  const PreorderRelation id = preorder_of(FunctionalMap::identity(3));
  for (int u = 0; u < 3; ++u)
    for (int v = 0; v < 3; ++v) CHECK(id.leq(u, v) == (u == v));

  const PreorderRelation p2 = preorder_of(example2_map());
  CHECK(p2.leq(a, b));
  CHECK(p2.leq(a, c));
  CHECK(p2.leq(b, c));
  CHECK(p2.leq(c, b));
  CHECK_FALSE(p2.leq(b, a));
  CHECK(p2.down_set(b) == set_of({a, b, c}));
}

TEST_CASE("preorder_of agrees with matrix closure for n <= 5") {
  for (int n = 1; n <= 5; ++n)
    enumerate_maps(n, false, [](const FunctionalMap& f) {
      const PreorderRelation p = preorder_of(f);
      const auto oracle = matrix_closure(f);
      for (int u = 0; u < f.size(); ++u)
        for (int v = 0; v < f.size(); ++v) REQUIRE(p.leq(u, v) == oracle[u][v]);
    });
}

TEST_CASE("equivalence classes") {
  const Partition p2 = equiv_classes(preorder_of(example2_map()));
  CHECK(p2.classes == std::vector<Mask>{set_of({a}), set_of({b, c})});
  CHECK(p2.class_of == std::vector<int>{0, 1, 1});

  const Partition id = equiv_classes(preorder_of(FunctionalMap::identity(3)));
  CHECK(id.classes.size() == 3);

  const Partition swap = equiv_classes(preorder_of(fmap({b, a})));
  CHECK(swap.classes == std::vector<Mask>{set_of({a, b})});
}

TEST_CASE("maximal elements and poset test") {
  CHECK(maximal_elements(preorder_of(example1_map())) == set_of({b}));
  CHECK(maximal_elements(preorder_of(example2_map())) == set_of({b, c}));
  CHECK(maximal_elements(preorder_of(FunctionalMap::identity(4))) == full_mask(4));

  CHECK(is_poset(preorder_of(example1_map())));
  CHECK_FALSE(is_poset(preorder_of(example2_map())));
  CHECK_FALSE(is_poset(preorder_of(fmap({b, a}))));
}

TEST_CASE("is_functional_poset matches is_poset for n <= 5") {
  for (int n = 1; n <= 5; ++n)
    enumerate_maps(n, false, [](const FunctionalMap& f) {
      REQUIRE(is_functional_poset(f) == is_poset(preorder_of(f)));
    });
}

TEST_CASE("components") {
  CHECK(components(FunctionalMap::identity(3)).size() == 3);
  CHECK(components(fmap({c, c, c})) == std::vector<Mask>{set_of({a, b, c})});
  CHECK(components(fmap({b, b, d, d})) == std::vector<Mask>{set_of({a, b}), set_of({c, d})});
  // Components partition V.
  for (int n = 1; n <= 4; ++n)
    enumerate_maps(n, false, [](const FunctionalMap& f) {
      Mask seen = 0;
      for (Mask m : components(f)) {
        REQUIRE((seen & m) == 0);
        seen |= m;
      }
      REQUIRE(seen == full_mask(f.size()));
    });
}

TEST_CASE("hasse covers") {
  using Pairs = std::vector<std::pair<ElementId, ElementId>>;
  CHECK(hasse_covers(fmap({b, c, c})) == Pairs{{a, b}, {b, c}});
  CHECK(hasse_covers(FunctionalMap::identity(3)).empty());
  try {
    hasse_covers(example2_map());
    FAIL("expected NotPosetError");
  } catch (const NotPosetError& e) {
    CHECK(e.lower == b);
    CHECK(e.upper == c);
  }
}

TEST_CASE("quotient map") {
  const FunctionalMap f = example2_map();
  const FunctionalMap q = quotient_map(f, equiv_classes(preorder_of(f)));
  CHECK(q == fmap({1, 1}));

  const FunctionalMap chain = fmap({b, c, c});
  CHECK(quotient_map(chain, equiv_classes(preorder_of(chain))) == chain);

  const FunctionalMap swap = fmap({b, a});
  CHECK(quotient_map(swap, equiv_classes(preorder_of(swap))) == fmap({0}));

  CHECK_THROWS_AS(quotient_map(f, equiv_classes(preorder_of(chain))), InputError);

  // Quotients are always posets.
  for (int n = 1; n <= 5; ++n)
    enumerate_maps(n, false, [](const FunctionalMap& g) {
      REQUIRE(is_functional_poset(quotient_map(g, equiv_classes(preorder_of(g)))));
    });
}

TEST_CASE("functional map validation") {
  CHECK_THROWS_AS(fmap({0, 2}), InputError);
  CHECK_THROWS_AS(fmap({-1}), InputError);
  CHECK(restrict_to(fmap({b, b, d, d}), set_of({c, d})) == fmap({1, 1}));
  CHECK_THROWS_AS(restrict_to(fmap({b, b}), set_of({a})), InputError);
}
