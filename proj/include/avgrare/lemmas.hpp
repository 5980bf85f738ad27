#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "avgrare/family.hpp"
#include "avgrare/preorder.hpp"
#include "avgrare/rooted.hpp"

namespace avgrare {

/// Uniformly random subfamily of the power set of [0, n).
SetFamily random_family(int n, std::mt19937_64& rng);

/// Up to 2n random rules with random roots and stems; duplicates merged.
RootedFamily random_rooted_family(int n, std::mt19937_64& rng);

/// Outcome of one exhaustive or sampled check.
struct CheckResult {
  std::string name;
  bool passed = true;
  std::uint64_t cases = 0;
  std::string detail;  ///< first failure, empty when passed
};

/// Runs `check` on every map with 1 <= n <= max_n, across `jobs` threads.
/// `check` returns a failure message or nullopt, and the number of cases it
/// covered through `cases`. The reported failure is the one with the
/// smallest (n, index), independent of thread count.
CheckResult check_all_maps(
    std::string name, int max_n, int jobs,
    const std::function<std::optional<std::string>(const FunctionalMap&, std::uint64_t& cases)>& check);

// Individual suites. `max_n` bounds the ground size; all map suites are exhaustive.
CheckResult check_iterates(int max_n, int jobs = 0);           // orbit walk vs matrix closure
CheckResult check_max_classes(int max_n, int jobs = 0);        // classes of size >= 2 are maximal
CheckResult check_forest_structure(int max_n, int jobs = 0);   // posets: acyclic covers, one root per component
CheckResult check_maximal_rare(int max_n, int jobs = 0);       // 2 deg(u) <= |I| for maximal u
CheckResult check_parallel_classes(int max_n, int jobs = 0);   // u ~ v iff parallel in the ideals
CheckResult check_trace_reduction(int max_n, int jobs = 0);    // trace identity, count, set equality
CheckResult check_root_deletion(int max_n, int jobs = 0);      // deletion identity on connected forests
CheckResult check_ideal_lower_bound(int max_n, int jobs = 0);  // |I| >= n + 1 on posets
CheckResult check_product(int max_n, int jobs = 0);            // product identity on disconnected maps
CheckResult check_singleton_stems(int max_n, int jobs = 0);    // rooted round trip
CheckResult check_ideal_oracles(int max_n, int jobs = 0);      // forest recursion vs brute force
CheckResult check_certificates(int max_n, int jobs = 0);       // certify succeeds, nds <= 0

/// Union-sum identity on `pairs` random family pairs over n elements.
CheckResult check_union_sum(int pairs, int n, std::uint64_t seed);

/// Closure fixpoints are the least members containing each set, on `samples`
/// random rooted families over n elements.
CheckResult check_closure_oracle(int samples, int n, std::uint64_t seed);

/// Generated families are closure systems, and contain the empty set iff all
/// stems are nonempty: exhaustive for n <= exhaustive_n, plus random samples at n.
CheckResult check_closure_systems(int exhaustive_n, int samples, int n, std::uint64_t seed);

/// Everything above at ground sizes up to max_n (the sampled suites use n = 4).
std::vector<CheckResult> run_lemma_suites(int max_n, std::uint64_t seed, int jobs = 0);

}  // namespace avgrare
