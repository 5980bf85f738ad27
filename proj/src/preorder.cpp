#include "avgrare/preorder.hpp"

#include <numeric>
#include <string>

namespace avgrare {

FunctionalMap::FunctionalMap(std::vector<ElementId> images) : f_(std::move(images)) {
  const int n = size();
  check_ground_size(n);
  for (ElementId v = 0; v < n; ++v)
    if (f_[v] < 0 || f_[v] >= n)
      throw InputError("image f(" + std::to_string(v) + ") = " + std::to_string(f_[v]) +
                       " out of range for ground size " + std::to_string(n));
}

FunctionalMap FunctionalMap::identity(int n) {
  std::vector<ElementId> f(n);
  std::iota(f.begin(), f.end(), 0);
  return FunctionalMap(std::move(f));
}

PreorderRelation PreorderRelation::closure_of(
    int n, std::span<const std::pair<ElementId, ElementId>> pairs) {
  check_ground_size(n);
  std::vector<Mask> up(n);
  for (ElementId v = 0; v < n; ++v) up[v] = bit(v);
  for (auto [lo, hi] : pairs) {
    check_element(lo, n);
    check_element(hi, n);
    up[lo] |= bit(hi);
  }
  // Warshall on bit rows.
  for (ElementId k = 0; k < n; ++k)
    for (ElementId v = 0; v < n; ++v)
      if (has(up[v], k)) up[v] |= up[k];
  return PreorderRelation(std::move(up));
}

Mask PreorderRelation::down_set(ElementId w) const {
  Mask out = 0;
  for (ElementId v = 0; v < size(); ++v)
    if (has(up_[v], w)) out |= bit(v);
  return out;
}

NotPosetError::NotPosetError(ElementId lower, ElementId upper)
    : InputError("preorder is not a partial order: " + std::to_string(lower) + " and " +
                 std::to_string(upper) + " are equivalent"),
      lower(lower),
      upper(upper) {}

PreorderRelation preorder_of(const FunctionalMap& f) {
  const int n = f.size();
  std::vector<Mask> up(n, 0);
  for (ElementId v = 0; v < n; ++v) {
    // The orbit of v is rho-shaped; stop at the first repeat.
    Mask seen = 0;
    for (ElementId w = v; !has(seen, w); w = f(w)) seen |= bit(w);
    up[v] = seen;
  }
  return PreorderRelation(std::move(up));
}

Partition equiv_classes(const PreorderRelation& p) {
  const int n = p.size();
  Partition part;
  part.n = n;
  part.class_of.assign(n, -1);
  for (ElementId v = 0; v < n; ++v) {
    if (part.class_of[v] >= 0) continue;
    const int id = static_cast<int>(part.classes.size());
    Mask cls = 0;
    for (ElementId w = v; w < n; ++w)
      if (p.leq(v, w) && p.leq(w, v)) {
        cls |= bit(w);
        part.class_of[w] = id;
      }
    part.classes.push_back(cls);
  }
  return part;
}

Mask maximal_elements(const PreorderRelation& p) {
  Mask out = 0;
  for (ElementId u = 0; u < p.size(); ++u) {
    bool maximal = true;
    for (ElementId v : elements_of(p.up_set(u)))
      if (!p.leq(v, u)) {
        maximal = false;
        break;
      }
    if (maximal) out |= bit(u);
  }
  return out;
}

bool is_poset(const PreorderRelation& p) {
  for (ElementId u = 0; u < p.size(); ++u)
    for (ElementId v : elements_of(p.up_set(u)))
      if (v != u && p.leq(v, u)) return false;
  return true;
}

bool is_functional_poset(const FunctionalMap& f) {
  const int n = f.size();
  for (ElementId v = 0; v < n; ++v) {
    // Walk n steps to land on the cycle, then check it is a fixed point.
    ElementId w = v;
    for (int k = 0; k < n; ++k) w = f(w);
    if (f(w) != w) return false;
  }
  return true;
}

std::vector<Mask> components(const FunctionalMap& f) {
  const int n = f.size();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (ElementId v = 0; v < n; ++v) {
    const int a = find(v);
    const int b = find(f(v));
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<Mask> by_root(n, 0);
  for (ElementId v = 0; v < n; ++v) by_root[find(v)] |= bit(v);
  std::vector<Mask> out;
  for (Mask m : by_root)
    if (m != 0) out.push_back(m);
  return out;
}

std::vector<std::pair<ElementId, ElementId>> hasse_covers(const FunctionalMap& f) {
  const Partition part = equiv_classes(preorder_of(f));
  for (Mask cls : part.classes)
    if (popcount(cls) >= 2) {
      const ElementId u = std::countr_zero(cls);
      throw NotPosetError(u, f(u));
    }
  std::vector<std::pair<ElementId, ElementId>> out;
  for (ElementId v = 0; v < f.size(); ++v)
    if (f(v) != v) out.emplace_back(v, f(v));
  return out;
}

FunctionalMap quotient_map(const FunctionalMap& f, const Partition& part) {
  if (part != equiv_classes(preorder_of(f)))
    throw InputError("partition does not match the equivalence classes of the map");
  const int k = static_cast<int>(part.classes.size());
  std::vector<ElementId> g(k);
  for (int c = 0; c < k; ++c) {
    const Mask cls = part.classes[c];
    g[c] = popcount(cls) >= 2 ? c : part.class_of[f(std::countr_zero(cls))];
  }
  return FunctionalMap(std::move(g));
}

FunctionalMap restrict_to(const FunctionalMap& f, Mask keep) {
  const int n = f.size();
  std::vector<int> new_index(n, -1);
  int next = 0;
  for (ElementId v = 0; v < n; ++v)
    if (has(keep, v)) new_index[v] = next++;
  std::vector<ElementId> g;
  g.reserve(next);
  for (ElementId v = 0; v < n; ++v) {
    if (!has(keep, v)) continue;
    if (!has(keep, f(v))) throw InputError("restriction target is not closed under the map");
    g.push_back(new_index[f(v)]);
  }
  return FunctionalMap(std::move(g));
}

}  // namespace avgrare
