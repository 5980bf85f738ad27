#include "avgrare/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

#include "avgrare/ideals.hpp"

namespace avgrare {

namespace {

constexpr std::uint64_t kChunk = 4096;

bool mul_overflows(std::uint64_t a, std::uint64_t b) {
  return b != 0 && a > std::numeric_limits<std::uint64_t>::max() / b;
}

Mask permute_mask(Mask m, std::span<const ElementId> perm) {
  Mask out = 0;
  for (; m != 0; m &= m - 1) out |= bit(perm[std::countr_zero(m)]);
  return out;
}

/// Calls visit(perm, inverse) for every permutation of [0, n) until it returns false.
template <typename Visit>
void for_each_permutation(int n, Visit visit) {
  std::vector<ElementId> inv(n);
  std::iota(inv.begin(), inv.end(), 0);
  std::vector<ElementId> perm(n);
  do {
    for (int k = 0; k < n; ++k) perm[inv[k]] = k;
    if (!visit(std::span<const ElementId>(perm), std::span<const ElementId>(inv))) return;
  } while (std::next_permutation(inv.begin(), inv.end()));
}

}  // namespace

// --- functional maps --------------------------------------------------------

std::uint64_t map_count(int n) {
  if (n < 1 || n > 15) throw InputError("map enumeration needs 1 <= n <= 15");
  std::uint64_t out = 1;
  for (int k = 0; k < n; ++k) out *= static_cast<std::uint64_t>(n);
  return out;
}

FunctionalMap map_at(int n, std::uint64_t index) {
  if (index >= map_count(n)) throw InputError("map index out of range");
  std::vector<ElementId> f(n);
  for (int v = n - 1; v >= 0; --v) {
    f[v] = static_cast<ElementId>(index % n);
    index /= n;
  }
  return FunctionalMap(std::move(f));
}

std::uint64_t map_index(const FunctionalMap& f) {
  const int n = f.size();
  map_count(n);
  std::uint64_t index = 0;
  for (ElementId v = 0; v < n; ++v) index = index * n + f(v);
  return index;
}

FunctionalMap conjugate(const FunctionalMap& f, std::span<const ElementId> perm) {
  const int n = f.size();
  if (static_cast<int>(perm.size()) != n) throw InputError("permutation size mismatch");
  std::vector<ElementId> g(n);
  for (ElementId v = 0; v < n; ++v) g[perm[v]] = perm[f(v)];
  return FunctionalMap(std::move(g));
}

bool is_canonical(const FunctionalMap& f) {
  const int n = f.size();
  bool minimal = true;
  for_each_permutation(n, [&](std::span<const ElementId> perm, std::span<const ElementId> inv) {
    // Compare the conjugate against f position by position.
    for (int k = 0; k < n; ++k) {
      const ElementId g = perm[f(inv[k])];
      if (g > f(k)) return true;
      if (g < f(k)) {
        minimal = false;
        return false;
      }
    }
    return true;
  });
  return minimal;
}

FunctionalMap canonical_form(const FunctionalMap& f) {
  FunctionalMap best = f;
  for_each_permutation(f.size(), [&](std::span<const ElementId> perm, std::span<const ElementId>) {
    FunctionalMap g = conjugate(f, perm);
    if (g < best) best = std::move(g);
    return true;
  });
  return best;
}

void enumerate_maps(int n, bool canonical_only,
                    const std::function<void(const FunctionalMap&)>& visit) {
  const std::uint64_t total = map_count(n);
  for (std::uint64_t i = 0; i < total; ++i) {
    const FunctionalMap f = map_at(n, i);
    if (!canonical_only || is_canonical(f)) visit(f);
  }
}

// --- unique-root families ---------------------------------------------------

UniqueRootSpace::UniqueRootSpace(int n, int max_stem, bool exactly_one)
    : n_(n), max_stem_(max_stem), exactly_one_(exactly_one) {
  if (n < 1 || n > 15) throw InputError("unique-root enumeration needs 1 <= n <= 15");
  if (max_stem < 1 || max_stem > std::max(1, n - 1))
    throw InputError("max stem size must lie in [1, max(1, n-1)]");
  options_.resize(n);
  for (ElementId r = 0; r < n; ++r) {
    if (!exactly_one) options_[r].push_back(0);
    const Mask others = full_mask(n) & ~bit(r);
    for (Mask a = 1; a <= full_mask(n); ++a)
      if (subset_of(a, others) && popcount(a) <= max_stem) options_[r].push_back(a);
  }
  for (int r = 0; r < n; ++r) {
    if (mul_overflows(size_, options_[r].size()))
      throw InputError("unique-root family space does not fit 64-bit indices");
    size_ *= options_[r].size();
  }
}

void UniqueRootSpace::stems_at(std::uint64_t index, std::span<Mask> out) const {
  if (index >= size_) throw InputError("family index out of range");
  for (int r = n_ - 1; r >= 0; --r) {
    const std::uint64_t base = options_[r].size();
    out[r] = options_[r][index % base];
    index /= base;
  }
}

std::vector<Mask> UniqueRootSpace::stems_at(std::uint64_t index) const {
  std::vector<Mask> out(n_);
  stems_at(index, out);
  return out;
}

std::uint64_t UniqueRootSpace::index_of(std::span<const Mask> stems) const {
  if (static_cast<int>(stems.size()) != n_) throw InputError("stem vector size mismatch");
  std::uint64_t index = 0;
  for (int r = 0; r < n_; ++r) {
    const auto& opts = options_[r];
    const auto it = std::lower_bound(opts.begin(), opts.end(), stems[r]);
    if (it == opts.end() || *it != stems[r]) throw InputError("stem outside this family space");
    index = index * opts.size() + static_cast<std::uint64_t>(it - opts.begin());
  }
  return index;
}

UniqueRootFamily UniqueRootSpace::family_at(std::uint64_t index) const {
  return family_from_stems(stems_at(index));
}

UniqueRootFamily family_from_stems(std::span<const Mask> stems) {
  std::vector<RootedSet> rules;
  for (ElementId r = 0; r < static_cast<int>(stems.size()); ++r)
    if (stems[r] != 0) rules.push_back({stems[r], r});
  return UniqueRootFamily(RootedFamily(static_cast<int>(stems.size()), std::move(rules)));
}

std::vector<Mask> conjugate_stems(std::span<const Mask> stems, std::span<const ElementId> perm) {
  std::vector<Mask> out(stems.size());
  for (std::size_t r = 0; r < stems.size(); ++r) out[perm[r]] = permute_mask(stems[r], perm);
  return out;
}

bool is_canonical_stems(std::span<const Mask> stems) {
  const int n = static_cast<int>(stems.size());
  bool minimal = true;
  for_each_permutation(n, [&](std::span<const ElementId> perm, std::span<const ElementId> inv) {
    for (int k = 0; k < n; ++k) {
      const Mask g = permute_mask(stems[inv[k]], perm);
      if (g > stems[k]) return true;
      if (g < stems[k]) {
        minimal = false;
        return false;
      }
    }
    return true;
  });
  return minimal;
}

void enumerate_unique_root_families(int n, int max_stem,
                                    const std::function<void(const UniqueRootFamily&)>& visit,
                                    bool exactly_one) {
  const UniqueRootSpace space(n, max_stem, exactly_one);
  for (std::uint64_t i = 0; i < space.size(); ++i) visit(space.family_at(i));
}

ClosureStats closure_stats(std::span<const Mask> stems) {
  const int n = static_cast<int>(stems.size());
  check_enumerable(n);
  ClosureStats out;
  std::array<std::int64_t, kMaxGround> deg{};
  const Mask end = Mask{1} << n;
  for (Mask F = 0; F < end; ++F) {
    bool closed = true;
    for (ElementId r = 0; r < n && closed; ++r)
      closed = stems[r] == 0 || has(F, r) || !subset_of(stems[r], F);
    if (!closed) continue;
    ++out.count;
    out.size_sum += popcount(F);
    for (Mask rest = F; rest != 0; rest &= rest - 1) ++deg[std::countr_zero(rest)];
  }
  for (ElementId v = 0; v < n; ++v)
    if (2 * deg[v] <= out.count) out.rare |= bit(v);
  return out;
}

// --- reports and driver -----------------------------------------------------

bool iso_count_affordable(int n, std::uint64_t instances) {
  // The early-exit minimality test rejects most relabelings after one or two
  // positions, so the n! factor stays cheap through n = 7.
  return n <= 7 && instances <= (std::uint64_t{1} << 32);
}

namespace {

void offer_max(std::optional<Witness>& slot, const Witness& w) {
  if (!slot || w.nds > slot->nds || (w.nds == slot->nds && w.index < slot->index)) slot = w;
}

void record(SearchReport& rep, const Witness& w) {
  offer_max(rep.max_witness, w);
  if (w.nds > 0) {
    ++rep.counterexample_count;
    if (rep.counterexamples.size() < kMaxStoredCounterexamples) rep.counterexamples.push_back(w);
  }
}

using RangeEvaluator = std::function<void(std::uint64_t begin, std::uint64_t end, SearchReport& out)>;

SearchReport run_blocks(SearchReport acc, std::uint64_t total, const RangeEvaluator& evaluate,
                        const RunOptions& run) {
  const auto started = std::chrono::steady_clock::now();
  const double previous_seconds = acc.wall_time_seconds;
  const int jobs = run.jobs > 0 ? run.jobs : std::max(1u, std::thread::hardware_concurrency());
  const std::uint64_t block = std::max<std::uint64_t>(1, run.checkpoint_every);

  while (acc.next_index < total) {
    const std::uint64_t begin = acc.next_index;
    const std::uint64_t end = begin + std::min(block, total - begin);
    const std::uint64_t chunks = (end - begin + kChunk - 1) / kChunk;
    std::vector<SearchReport> parts(chunks);
    for (SearchReport& p : parts) {
      p = acc;
      p.instances_scanned = p.instances_evaluated = p.counterexample_count = 0;
      p.without_rare = p.averaging_failures = 0;
      p.distinct_up_to_iso = acc.distinct_up_to_iso ? std::optional<std::uint64_t>(0) : std::nullopt;
      p.max_witness.reset();
      p.max_witness_exactly_one.reset();
      p.counterexamples.clear();
    }

    std::atomic<std::uint64_t> next_chunk{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&]() {
      try {
        for (std::uint64_t c = next_chunk++; c < chunks; c = next_chunk++) {
          const std::uint64_t lo = begin + c * kChunk;
          evaluate(lo, std::min(end, lo + kChunk), parts[c]);
        }
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    };
    const int workers = static_cast<int>(std::min<std::uint64_t>(jobs, chunks));
    if (workers <= 1) {
      worker();
    } else {
      std::vector<std::jthread> pool;
      for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);

    for (const SearchReport& p : parts) merge_into(acc, p);
    acc.next_index = end;
    acc.complete = end == total;
    acc.wall_time_seconds =
        previous_seconds +
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    if (run.on_checkpoint) run.on_checkpoint(acc);
  }
  acc.complete = true;
  acc.wall_time_seconds =
      previous_seconds +
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return acc;
}

SearchReport start_report(const SearchReport& fresh, const RunOptions& run) {
  if (!run.resume) return fresh;
  const SearchReport& r = *run.resume;
  if (r.kind != fresh.kind || r.n != fresh.n || r.max_stem != fresh.max_stem ||
      r.canonical_only != fresh.canonical_only || r.posets_only != fresh.posets_only ||
      r.exactly_one != fresh.exactly_one || r.distinct_up_to_iso.has_value() != fresh.distinct_up_to_iso.has_value())
    throw InputError("resume report was produced with different search parameters");
  return r;
}

}  // namespace

void merge_into(SearchReport& acc, const SearchReport& later) {
  acc.instances_scanned += later.instances_scanned;
  acc.instances_evaluated += later.instances_evaluated;
  if (acc.distinct_up_to_iso && later.distinct_up_to_iso)
    *acc.distinct_up_to_iso += *later.distinct_up_to_iso;
  if (later.max_witness) offer_max(acc.max_witness, *later.max_witness);
  if (later.max_witness_exactly_one) offer_max(acc.max_witness_exactly_one, *later.max_witness_exactly_one);
  for (const Witness& w : later.counterexamples) {
    if (acc.counterexamples.size() >= kMaxStoredCounterexamples) break;
    acc.counterexamples.push_back(w);
  }
  acc.counterexample_count += later.counterexample_count;
  acc.without_rare += later.without_rare;
  acc.averaging_failures += later.averaging_failures;
}

SearchReport verify_main_theorem(int n, const TheoremOptions& opts, const RunOptions& run) {
  const std::uint64_t total = map_count(n);
  SearchReport fresh;
  fresh.kind = SearchKind::Theorem;
  fresh.n = n;
  fresh.canonical_only = opts.canonical_only;
  fresh.posets_only = opts.posets_only;
  const bool track_iso = opts.canonical_only || iso_count_affordable(n, total);
  if (track_iso) fresh.distinct_up_to_iso = 0;

  auto evaluate = [&](std::uint64_t begin, std::uint64_t end, SearchReport& out) {
    for (std::uint64_t i = begin; i < end; ++i) {
      ++out.instances_scanned;
      const FunctionalMap f = map_at(n, i);
      if (opts.posets_only && !is_functional_poset(f)) continue;
      if (track_iso) {
        const bool canonical = is_canonical(f);
        if (canonical) ++*out.distinct_up_to_iso;
        if (opts.canonical_only && !canonical) continue;
      }
      ++out.instances_evaluated;
      record(out, {i, ideal_stats(f).nds()});
    }
  };
  return run_blocks(start_report(fresh, run), total, evaluate, run);
}

SearchReport mine_conjecture(int n, int max_stem, const MinerOptions& opts, const RunOptions& run) {
  const UniqueRootSpace space(n, max_stem, opts.exactly_one);
  SearchReport fresh;
  fresh.kind = SearchKind::Conjecture;
  fresh.n = n;
  fresh.max_stem = max_stem;
  fresh.canonical_only = opts.canonical_only;
  fresh.exactly_one = opts.exactly_one;
  const bool track_iso = opts.canonical_only || iso_count_affordable(n, space.size());
  if (track_iso) fresh.distinct_up_to_iso = 0;

  auto evaluate = [&](std::uint64_t begin, std::uint64_t end, SearchReport& out) {
    std::array<Mask, kMaxGround> buffer{};
    const std::span<Mask> stems(buffer.data(), n);
    for (std::uint64_t i = begin; i < end; ++i) {
      ++out.instances_scanned;
      space.stems_at(i, stems);
      if (track_iso) {
        const bool canonical = is_canonical_stems(stems);
        if (canonical) ++*out.distinct_up_to_iso;
        if (opts.canonical_only && !canonical) continue;
      }
      ++out.instances_evaluated;
      const ClosureStats cs = closure_stats(stems);
      // Nonempty stems keep the empty set closed, so count >= 1 always.
      if (cs.count < 1) throw InconsistencyError("closure system lost the empty set");
      const Witness w{i, nds_from(cs.size_sum, cs.count, n)};
      record(out, w);
      if (std::all_of(stems.begin(), stems.end(), [](Mask s) { return s != 0; }))
        offer_max(out.max_witness_exactly_one, w);
      if (cs.rare == 0) {
        ++out.without_rare;
        if (w.nds <= 0) ++out.averaging_failures;
      }
    }
  };
  return run_blocks(start_report(fresh, run), space.size(), evaluate, run);
}

}  // namespace avgrare
