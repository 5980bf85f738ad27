#include "avgrare/ideals.hpp"

#include <array>

namespace avgrare {

namespace {

/// Forest over the equivalence classes of a functional preorder.
struct ClassForest {
  std::vector<Mask> node_mask;
  std::vector<int> parent;  // -1 for roots
  std::vector<std::vector<int>> children;
  std::vector<int> roots;
};

ClassForest class_forest(const FunctionalMap& f, NonPoset mode) {
  const Partition part = equiv_classes(preorder_of(f));
  if (mode == NonPoset::Reject)
    for (Mask cls : part.classes)
      if (popcount(cls) >= 2) {
        const ElementId u = std::countr_zero(cls);
        throw NotPosetError(u, f(u));
      }
  const FunctionalMap q = quotient_map(f, part);
  ClassForest forest;
  const int k = q.size();
  forest.node_mask = part.classes;
  forest.parent.assign(k, -1);
  forest.children.resize(k);
  for (int c = 0; c < k; ++c) {
    if (q(c) == c) {
      forest.roots.push_back(c);
    } else {
      forest.parent[c] = q(c);
      forest.children[q(c)].push_back(c);
    }
  }
  return forest;
}

/// Every union of one member from each list.
std::vector<Mask> product(const std::vector<Mask>& a, const std::vector<Mask>& b) {
  std::vector<Mask> out;
  out.reserve(a.size() * b.size());
  for (Mask x : a)
    for (Mask y : b) out.push_back(x | y);
  return out;
}

std::vector<Mask> subtree_ideals(const ClassForest& forest, int node, Mask& subtree) {
  std::vector<Mask> below{0};
  subtree = forest.node_mask[node];
  for (int child : forest.children[node]) {
    Mask child_tree = 0;
    below = product(below, subtree_ideals(forest, child, child_tree));
    subtree |= child_tree;
  }
  below.push_back(subtree);
  return below;
}

}  // namespace

SetFamily ideals_of_relation(const PreorderRelation& p) {
  const int n = p.size();
  check_enumerable(n);
  std::vector<Mask> down(n);
  for (ElementId v = 0; v < n; ++v) down[v] = p.down_set(v);
  std::vector<Mask> members;
  const Mask end = Mask{1} << n;
  for (Mask I = 0; I < end; ++I) {
    bool closed = true;
    for (Mask rest = I; rest != 0 && closed; rest &= rest - 1)
      closed = subset_of(down[std::countr_zero(rest)], I);
    if (closed) members.push_back(I);
  }
  return SetFamily(n, std::move(members));
}

IdealFamily ideals_bruteforce(const FunctionalMap& f) {
  return {f, ideals_of_relation(preorder_of(f))};
}

IdealFamily ideals_forest(const FunctionalMap& f, NonPoset mode) {
  const ClassForest forest = class_forest(f, mode);
  std::vector<Mask> all{0};
  for (int root : forest.roots) {
    Mask tree = 0;
    all = product(all, subtree_ideals(forest, root, tree));
  }
  return {f, SetFamily(f.size(), std::move(all))};
}

std::int64_t count_ideals(const FunctionalMap& f) { return ideal_stats(f).count; }

IdealStats ideal_stats(const FunctionalMap& f) {
  const int n = f.size();
  if (n > 56) throw InputError("ideal_stats supports ground sizes up to 56");

  // node_of[v]: v itself off the cycles, the smallest cycle element on them.
  std::array<int, kMaxGround> node_of{};
  std::array<bool, kMaxGround> cyclic{};
  node_of.fill(-1);
  for (ElementId v = 0; v < n; ++v) {
    ElementId w = v;
    for (int k = 0; k < n; ++k) w = f(w);
    if (cyclic[w]) continue;
    ElementId rep = w;
    for (ElementId x = f(w); x != w; x = f(x)) rep = std::min(rep, x);
    ElementId x = w;
    do {
      cyclic[x] = true;
      node_of[x] = rep;
      x = f(x);
    } while (x != w);
  }
  std::array<int, kMaxGround> parent{};
  std::array<int, kMaxGround> pending{};
  std::array<std::int64_t, kMaxGround> weight{};
  for (ElementId v = 0; v < n; ++v) {
    if (!cyclic[v]) node_of[v] = v;
    parent[v] = -1;
  }
  for (ElementId v = 0; v < n; ++v) {
    ++weight[node_of[v]];
    if (!cyclic[v]) {
      parent[v] = node_of[f(v)];
      ++pending[parent[v]];
    }
  }

  // Children fold into their parent once finished; P is the product of the
  // finished children's counts, S the size sum over their combined ideals.
  std::array<std::int64_t, kMaxGround> prod{};
  std::array<std::int64_t, kMaxGround> sum{};
  std::array<int, kMaxGround> queue{};
  int head = 0, tail = 0;
  for (ElementId v = 0; v < n; ++v) {
    prod[v] = 1;
    sum[v] = 0;
    if (node_of[v] == v && pending[v] == 0) queue[tail++] = v;
  }
  IdealStats total{n, 1, 0};
  while (head < tail) {
    const int x = queue[head++];
    const std::int64_t cnt = prod[x] + 1;
    const std::int64_t sz = sum[x] + weight[x];
    std::int64_t& into_prod = parent[x] < 0 ? total.count : prod[parent[x]];
    std::int64_t& into_sum = parent[x] < 0 ? total.size_sum : sum[parent[x]];
    into_sum = into_sum * cnt + sz * into_prod;
    into_prod *= cnt;
    if (parent[x] >= 0) {
      weight[parent[x]] += weight[x];
      if (--pending[parent[x]] == 0) queue[tail++] = parent[x];
    }
  }
  return total;
}

}  // namespace avgrare
