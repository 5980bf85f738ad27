#include "avgrare/lemmas.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "avgrare/ideals.hpp"
#include "avgrare/io.hpp"
#include "avgrare/reduction.hpp"
#include "avgrare/search.hpp"

namespace avgrare {

namespace {

std::string show(const FunctionalMap& f) { return "f = [" + format_map_text(f) + "]"; }

template <typename... Parts>
std::string cat(const Parts&... parts) {
  std::ostringstream out;
  (out << ... << parts);
  return out.str();
}

int resolve_jobs(int jobs) {
  return jobs > 0 ? jobs : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

}  // namespace

SetFamily random_family(int n, std::mt19937_64& rng) {
  std::vector<Mask> members;
  std::bernoulli_distribution coin(0.5);
  for (Mask m = 0; m <= full_mask(n); ++m)
    if (coin(rng)) members.push_back(m);
  return SetFamily(n, std::move(members));
}

RootedFamily random_rooted_family(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> rule_count(0, 2 * n);
  std::uniform_int_distribution<int> pick_root(0, n - 1);
  std::uniform_int_distribution<Mask> pick_stem(0, full_mask(n));
  std::set<RootedSet> rules;
  const int k = rule_count(rng);
  for (int i = 0; i < k; ++i) {
    const ElementId r = pick_root(rng);
    rules.insert({pick_stem(rng) & ~bit(r), r});
  }
  return RootedFamily(n, {rules.begin(), rules.end()});
}

CheckResult check_all_maps(
    std::string name, int max_n, int jobs,
    const std::function<std::optional<std::string>(const FunctionalMap&, std::uint64_t&)>& check) {
  CheckResult result;
  result.name = std::move(name);
  const int workers = resolve_jobs(jobs);
  for (int n = 1; n <= max_n && result.passed; ++n) {
    const std::uint64_t total = map_count(n);
    std::atomic<std::uint64_t> next{0};
    std::atomic<std::uint64_t> cases{0};
    std::mutex mutex;
    std::optional<std::pair<std::uint64_t, std::string>> first_failure;
    auto worker = [&]() {
      std::uint64_t local = 0;
      for (std::uint64_t i = next++; i < total; i = next++) {
        std::optional<std::string> failure;
        try {
          failure = check(map_at(n, i), local);
        } catch (const std::exception& e) {
          failure = cat(show(map_at(n, i)), ": exception: ", e.what());
        }
        if (failure) {
          std::lock_guard lock(mutex);
          if (!first_failure || i < first_failure->first) first_failure.emplace(i, *failure);
        }
      }
      cases += local;
    };
    {
      std::vector<std::jthread> pool;
      for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
      worker();
    }
    result.cases += cases;
    if (first_failure) {
      result.passed = false;
      result.detail = first_failure->second;
    }
  }
  return result;
}

CheckResult check_iterates(int max_n, int jobs) {
  return check_all_maps("preorder by iterates", max_n, jobs,
                        [](const FunctionalMap& f, std::uint64_t& cases) -> std::optional<std::string> {
    ++cases;
    std::vector<std::pair<ElementId, ElementId>> arcs;
    for (ElementId v = 0; v < f.size(); ++v) arcs.emplace_back(v, f(v));
    if (preorder_of(f) != PreorderRelation::closure_of(f.size(), arcs))
      return show(f) + ": orbit walk disagrees with matrix closure";
    return std::nullopt;
  });
}

CheckResult check_max_classes(int max_n, int jobs) {
  return check_all_maps("nontrivial classes are maximal", max_n, jobs,
                        [](const FunctionalMap& f, std::uint64_t& cases) -> std::optional<std::string> {
    const PreorderRelation p = preorder_of(f);
    const Mask maximal = maximal_elements(p);
    for (Mask cls : equiv_classes(p).classes) {
      if (popcount(cls) < 2) continue;
      ++cases;
      if (!subset_of(cls, maximal)) return show(f) + ": class " + format_set(cls, f.size()) + " not maximal";
    }
    return std::nullopt;
  });
}

CheckResult check_forest_structure(int max_n, int jobs) {
  return check_all_maps("functional posets are rooted forests", max_n, jobs,
                        [](const FunctionalMap& f, std::uint64_t& cases) -> std::optional<std::string> {
    const PreorderRelation p = preorder_of(f);
    if (!is_poset(p)) return std::nullopt;
    ++cases;
    // Acyclic as an undirected graph: a forest on n vertices with c
    // components has exactly n - c edges, and covers are distinct pairs.
    const auto covers = hasse_covers(f);
    const auto comps = components(f);
    if (covers.size() != static_cast<std::size_t>(f.size()) - comps.size())
      return show(f) + ": cover graph has a cycle";
    const Mask maximal = maximal_elements(p);
    for (Mask c : comps)
      if (popcount(c & maximal) != 1) return show(f) + ": component without a unique maximal element";
    return std::nullopt;
  });
}

CheckResult check_maximal_rare(int max_n, int jobs) {
  return check_all_maps("maximal elements are rare", max_n, jobs,
                        [](const FunctionalMap& f, std::uint64_t& cases) -> std::optional<std::string> {
    const SetFamily ideals = ideals_bruteforce(f).family;
    for (ElementId u : elements_of(maximal_elements(preorder_of(f)))) {
      ++cases;
      if (!is_rare(ideals, u)) return cat(show(f), ": maximal ", u, " is not rare");
    }
    return std::nullopt;
  });
}

CheckResult check_parallel_classes(int max_n, int jobs) {
  return check_all_maps("equivalent iff parallel", max_n, jobs,
                        [](const FunctionalMap& f, std::uint64_t& cases) -> std::optional<std::string> {
    const PreorderRelation p = preorder_of(f);
    const SetFamily ideals = ideals_bruteforce(f).family;
    for (ElementId u = 0; u < f.size(); ++u)
      for (ElementId v = u + 1; v < f.size(); ++v) {
        ++cases;
        if ((p.leq(u, v) && p.leq(v, u)) != parallel(ideals, u, v))
          return cat(show(f), ": elements ", u, ",", v);
      }
    return std::nullopt;
  });
}

CheckResult check_trace_reduction(int max_n, int jobs) {
  return check_all_maps("trace reduction", max_n, jobs,
                        [](const FunctionalMap& f, std::uint64_t& cases) -> std::optional<std::string> {
    const Partition part = equiv_classes(preorder_of(f));
    const SetFamily before = ideals_bruteforce(f).family;
    const auto m = static_cast<std::int64_t>(before.size());
    for (Mask cls : part.classes) {
      if (popcount(cls) < 2) continue;
      for (ElementId u : elements_of(cls)) {
        ++cases;
        const SetFamily after = ideals_bruteforce(trace_class_step(f, u)).family;
        if (after != trace_at(before, u)) return cat(show(f), ": u=", u, " traced family mismatch");
        if (static_cast<std::int64_t>(after.size()) != m) return cat(show(f), ": u=", u, " count changed");
        if (nds(before) != nds(after) + 2 * degree(before, u) - m)
          return cat(show(f), ": u=", u, " trace identity fails");
        if (nds(before) > nds(after)) return cat(show(f), ": u=", u, " nds decreased");
      }
    }
    return std::nullopt;
  });
}

CheckResult check_root_deletion(int max_n, int jobs) {
  return check_all_maps("root deletion identity", max_n, jobs,
                        [](const FunctionalMap& f, std::uint64_t& cases) -> std::optional<std::string> {
    if (!is_functional_poset(f) || components(f).size() != 1) return std::nullopt;
    ++cases;
    ElementId x = 0;
    while (f(x) != x) x = f(x);
    const SetFamily before = ideals_bruteforce(f).family;
    const SetFamily after = ideals_bruteforce(delete_root_step(f, x)).family;
    const std::int64_t n = f.size();
    const auto m = static_cast<std::int64_t>(before.size());
    if (nds(before) != nds(after) + (n - m + 1)) return show(f) + ": deletion identity fails";
    return std::nullopt;
  });
}

CheckResult check_ideal_lower_bound(int max_n, int jobs) {
  return check_all_maps("at least n+1 ideals on posets", max_n, jobs,
                        [](const FunctionalMap& f, std::uint64_t& cases) -> std::optional<std::string> {
    if (!is_functional_poset(f)) return std::nullopt;
    ++cases;
    if (ideals_bruteforce(f).family.size() < static_cast<std::size_t>(f.size()) + 1)
      return show(f) + ": fewer than n+1 ideals";
    return std::nullopt;
  });
}

CheckResult check_product(int max_n, int jobs) {
  return check_all_maps("product identity", max_n, jobs,
                        [](const FunctionalMap& f, std::uint64_t& cases) -> std::optional<std::string> {
    const auto comps = components(f);
    if (comps.size() < 2) return std::nullopt;
    ++cases;
    // Every two-way grouping: the first component versus the rest.
    const Mask first = comps.front();
    const Mask rest = full_mask(f.size()) & ~first;
    const SetFamily whole = ideals_bruteforce(f).family;
    const SetFamily a = ideals_bruteforce(restrict_to(f, first)).family;
    const SetFamily b = ideals_bruteforce(restrict_to(f, rest)).family;
    const auto ca = static_cast<std::int64_t>(a.size());
    const auto cb = static_cast<std::int64_t>(b.size());
    if (static_cast<std::int64_t>(whole.size()) != ca * cb) return show(f) + ": count not multiplicative";
    if (nds(whole) != cb * nds(a) + ca * nds(b)) return show(f) + ": product identity fails";
    // The k-way split, combined left to right.
    std::int64_t count = 1, acc = 0;
    for (const FunctionalMap& g : split_step(f)) {
      const SetFamily part = ideals_bruteforce(g).family;
      const auto c = static_cast<std::int64_t>(part.size());
      acc = c * acc + count * nds(part);
      count *= c;
    }
    if (acc != nds(whole)) return show(f) + ": chained product identity fails";
    return std::nullopt;
  });
}

CheckResult check_singleton_stems(int max_n, int jobs) {
  return check_all_maps("singleton-stem round trip", max_n, jobs,
                        [](const FunctionalMap& f, std::uint64_t& cases) -> std::optional<std::string> {
    ++cases;
    const RootedFamily rules = relation_to_singleton_stems(f);
    const SetFamily ideals = ideals_bruteforce(f).family;
    if (closure_system_of(rules) != ideals) return show(f) + ": closure system differs from ideals";
    if (singleton_stem_to_relation(rules) != preorder_of(f)) return show(f) + ": relation differs";
    return std::nullopt;
  });
}

CheckResult check_ideal_oracles(int max_n, int jobs) {
  return check_all_maps("forest recursion matches brute force", max_n, jobs,
                        [](const FunctionalMap& f, std::uint64_t& cases) -> std::optional<std::string> {
    ++cases;
    const SetFamily brute = ideals_bruteforce(f).family;
    if (ideals_forest(f).family != brute) return show(f) + ": forest ideals differ";
    const IdealStats stats = ideal_stats(f);
    if (stats.count != static_cast<std::int64_t>(brute.size()) || stats.size_sum != brute.total_size())
      return show(f) + ": ideal stats differ";
    return std::nullopt;
  });
}

CheckResult check_certificates(int max_n, int jobs) {
  return check_all_maps("reduction certificates", max_n, jobs,
                        [](const FunctionalMap& f, std::uint64_t& cases) -> std::optional<std::string> {
    ++cases;
    const ReductionCertificate cert = certify(f);
    if (cert.conclusion_nds > 0) return show(f) + ": positive conclusion";
    return std::nullopt;
  });
}

CheckResult check_union_sum(int pairs, int n, std::uint64_t seed) {
  CheckResult result;
  result.name = "union-sum identity";
  std::mt19937_64 rng(seed);
  for (int i = 0; i < pairs; ++i) {
    const SetFamily a = random_family(n, rng);
    const SetFamily b = random_family(n, rng);
    ++result.cases;
    if (!union_sum_check(a, b)) {
      result.passed = false;
      result.detail = cat("pair ", i, " violates the identity");
      break;
    }
  }
  return result;
}

CheckResult check_closure_oracle(int samples, int n, std::uint64_t seed) {
  CheckResult result;
  result.name = "closure fixpoint oracle";
  std::mt19937_64 rng(seed);
  for (int i = 0; i < samples && result.passed; ++i) {
    const RootedFamily rf = random_rooted_family(n, rng);
    const SetFamily system = closure_system_of(rf);
    for (Mask x = 0; x <= full_mask(n); ++x) {
      ++result.cases;
      Mask least = full_mask(n);
      for (Mask m : system)
        if (subset_of(x, m)) least &= m;
      const Mask fix = closure_of(rf, x);
      if (fix != least || !system.contains(fix)) {
        result.passed = false;
        result.detail = cat("sample ", i, ": closure of ", format_set(x, n), " is ", format_set(fix, n),
                            ", least member is ", format_set(least, n));
        break;
      }
    }
  }
  return result;
}

CheckResult check_closure_systems(int exhaustive_n, int samples, int n, std::uint64_t seed) {
  CheckResult result;
  result.name = "generated families are closure systems";
  auto check = [&](const RootedFamily& rf) {
    ++result.cases;
    const SetFamily system = closure_system_of(rf);
    const int size = rf.ground_size();
    if (!system.contains(full_mask(size)) || !is_intersection_closed(system)) {
      result.passed = false;
      result.detail = rooted_to_json(rf).dump() + ": not a closure system";
    } else if (contains_empty(rf) != system.contains(0)) {
      result.passed = false;
      result.detail = rooted_to_json(rf).dump() + ": contains_empty disagrees";
    }
  };
  for (int size = 1; size <= exhaustive_n && result.passed; ++size) {
    std::vector<RootedSet> all;
    for (ElementId r = 0; r < size; ++r)
      for (Mask stem = 0; stem <= full_mask(size); ++stem)
        if (!has(stem, r)) all.push_back({stem, r});
    if (all.size() > 20) throw InputError("exhaustive rooted-family check is limited to 20 possible rules");
    for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << all.size()) && result.passed; ++pick) {
      std::vector<RootedSet> rules;
      for (std::size_t k = 0; k < all.size(); ++k)
        if ((pick >> k) & 1u) rules.push_back(all[k]);
      check(RootedFamily(size, std::move(rules)));
    }
  }
  std::mt19937_64 rng(seed);
  for (int i = 0; i < samples && result.passed; ++i) check(random_rooted_family(n, rng));
  return result;
}

std::vector<CheckResult> run_lemma_suites(int max_n, std::uint64_t seed, int jobs) {
  return {
      check_iterates(max_n, jobs),
      check_max_classes(max_n, jobs),
      check_forest_structure(max_n, jobs),
      check_maximal_rare(max_n, jobs),
      check_parallel_classes(max_n, jobs),
      check_trace_reduction(max_n, jobs),
      check_root_deletion(max_n, jobs),
      check_ideal_lower_bound(max_n, jobs),
      check_union_sum(1000, 4, seed),
      check_product(max_n, jobs),
      check_singleton_stems(max_n, jobs),
      check_ideal_oracles(max_n, jobs),
      check_closure_oracle(1000, 4, seed),
      check_closure_systems(std::min(max_n, 3), 1000, 4, seed),
      check_certificates(max_n, jobs),
  };
}

}  // namespace avgrare
