#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "avgrare/preorder.hpp"
#include "avgrare/rooted.hpp"

namespace avgrare {

// ---------------------------------------------------------------------------
// Instance spaces. Both spaces are indexed so that index order equals the
// lexicographic order of the instance encoding, element 0 most significant.

/// n^n. Throws InputError if n is outside [1, 15] (the count must fit 64 bits).
std::uint64_t map_count(int n);
FunctionalMap map_at(int n, std::uint64_t index);
std::uint64_t map_index(const FunctionalMap& f);

/// g = p o f o p^-1 for the permutation `perm` (perm[v] is the new label of v).
FunctionalMap conjugate(const FunctionalMap& f, std::span<const ElementId> perm);

/// True iff f is lexicographically minimal among all its n! conjugates.
bool is_canonical(const FunctionalMap& f);

/// The lexicographically minimal conjugate of f.
FunctionalMap canonical_form(const FunctionalMap& f);

/// Visits all n^n maps in index order, or one representative per relabeling orbit.
void enumerate_maps(int n, bool canonical_only, const std::function<void(const FunctionalMap&)>& visit);

/// Unique-root rooted families on [0, n) with nonempty stems of size <= max_stem.
/// An instance is a vector of stems, stems[r] = 0 meaning "r roots no rule".
class UniqueRootSpace {
public:
  /// Throws InputError unless 1 <= max_stem <= max(1, n - 1) and the space fits 64 bits.
  UniqueRootSpace(int n, int max_stem, bool exactly_one = false);

  int ground_size() const { return n_; }
  int max_stem() const { return max_stem_; }
  bool exactly_one() const { return exactly_one_; }

  /// Choices per element: sum of C(n-1, k) for k = 1..max_stem, plus one for "no rule".
  std::uint64_t options_per_element() const { return options_[0].size(); }
  std::uint64_t size() const { return size_; }

  std::vector<Mask> stems_at(std::uint64_t index) const;
  void stems_at(std::uint64_t index, std::span<Mask> out) const;
  std::uint64_t index_of(std::span<const Mask> stems) const;
  UniqueRootFamily family_at(std::uint64_t index) const;

private:
  int n_;
  int max_stem_;
  bool exactly_one_;
  std::uint64_t size_ = 1;
  std::vector<std::vector<Mask>> options_;
};

UniqueRootFamily family_from_stems(std::span<const Mask> stems);

/// Stems relabeled by `perm`: rule (A, r) becomes (perm(A), perm(r)).
std::vector<Mask> conjugate_stems(std::span<const Mask> stems, std::span<const ElementId> perm);

/// True iff the stem vector is lexicographically minimal over all relabelings.
bool is_canonical_stems(std::span<const Mask> stems);

/// Visits every unique-root family of the space in index order.
void enumerate_unique_root_families(int n, int max_stem,
                                    const std::function<void(const UniqueRootFamily&)>& visit,
                                    bool exactly_one = false);

/// Count, size sum and rare-element mask of the closure system generated by
/// the rules (stems[r], r), by filtering all 2^n subsets.
struct ClosureStats {
  std::int64_t count = 0;
  std::int64_t size_sum = 0;
  Mask rare = 0;
};
ClosureStats closure_stats(std::span<const Mask> stems);

// ---------------------------------------------------------------------------
// Reports and the parallel driver.

struct Witness {
  std::uint64_t index = 0;
  std::int64_t nds = 0;
  friend bool operator==(const Witness&, const Witness&) = default;
};

enum class SearchKind { Theorem, Conjecture };

/// Stored counterexamples are capped; counterexample_count keeps the full tally.
inline constexpr std::size_t kMaxStoredCounterexamples = 1000;

struct SearchReport {
  SearchKind kind = SearchKind::Theorem;
  int n = 0;
  int max_stem = 0;
  bool canonical_only = false;
  bool posets_only = false;
  bool exactly_one = false;

  std::uint64_t instances_scanned = 0;
  std::uint64_t instances_evaluated = 0;
  std::optional<std::uint64_t> distinct_up_to_iso;
  std::optional<Witness> max_witness;
  std::vector<Witness> counterexamples;
  std::uint64_t counterexample_count = 0;

  // Conjecture miner only.
  std::optional<Witness> max_witness_exactly_one;
  std::uint64_t without_rare = 0;
  std::uint64_t averaging_failures = 0;

  std::uint64_t next_index = 0;
  bool complete = false;
  double wall_time_seconds = 0.0;

  std::optional<std::int64_t> max_nds() const {
    return max_witness ? std::optional(max_witness->nds) : std::nullopt;
  }
};

/// Folds `later`, covering the index range right after `acc`, into `acc`.
/// Ties on the maximum keep the smaller index.
void merge_into(SearchReport& acc, const SearchReport& later);

struct RunOptions {
  int jobs = 0;  ///< 0 means std::thread::hardware_concurrency()
  std::uint64_t checkpoint_every = std::uint64_t{1} << 20;
  /// Called with the merged partial report after each checkpoint block.
  std::function<void(const SearchReport&)> on_checkpoint;
  /// Resume: the partial report to continue from (its next_index is the cursor).
  std::optional<SearchReport> resume;
};

struct TheoremOptions {
  bool posets_only = false;
  bool canonical_only = false;
};

/// Scans every map on n elements and records the largest ideal-family NDS.
SearchReport verify_main_theorem(int n, const TheoremOptions& opts = {}, const RunOptions& run = {});

struct MinerOptions {
  bool exactly_one = false;
  bool canonical_only = false;
};

/// Scans every unique-root family and records the largest closure-system NDS.
SearchReport mine_conjecture(int n, int max_stem, const MinerOptions& opts = {},
                             const RunOptions& run = {});

/// Whether distinct_up_to_iso is computed when not scanning canonically:
/// n <= 7 and at most 2^32 instances.
bool iso_count_affordable(int n, std::uint64_t instances);

}  // namespace avgrare
