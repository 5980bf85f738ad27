#include "avgrare/reduction.hpp"

#include <sstream>

#include "avgrare/ideals.hpp"

namespace avgrare {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw InconsistencyError(what);
}

SetFamily ideals_of(const FunctionalMap& f) { return ideals_bruteforce(f).family; }

std::int64_t count_of(const SetFamily& family) { return static_cast<std::int64_t>(family.size()); }

/// Removes x from the ground set and remaps the remaining images via `image`.
template <typename Image>
FunctionalMap drop_element(const FunctionalMap& f, ElementId x, Image image) {
  std::vector<ElementId> g;
  g.reserve(f.size() - 1);
  for (ElementId v = 0; v < f.size(); ++v) {
    if (v == x) continue;
    const ElementId w = image(v);
    g.push_back(w > x ? w - 1 : w);
  }
  return FunctionalMap(std::move(g));
}

}  // namespace

std::string_view to_string(StepKind kind) {
  switch (kind) {
    case StepKind::TraceClass: return "TraceClass";
    case StepKind::DeleteRoot: return "DeleteRoot";
    case StepKind::SplitComponents: return "SplitComponents";
    case StepKind::BaseSingleton: return "BaseSingleton";
  }
  return "?";
}

StepKind step_kind_from_string(std::string_view name) {
  for (StepKind k : {StepKind::TraceClass, StepKind::DeleteRoot, StepKind::SplitComponents,
                     StepKind::BaseSingleton})
    if (to_string(k) == name) return k;
  throw InputError("unknown step kind '" + std::string(name) + "'");
}

FunctionalMap trace_class_step(const FunctionalMap& f, ElementId u) {
  check_element(u, f.size());
  const PreorderRelation p = preorder_of(f);
  const Partition part = equiv_classes(p);
  if (popcount(part.classes[part.class_of[u]]) < 2)
    throw InputError("element " + std::to_string(u) + " has a singleton equivalence class");
  return drop_element(f, u, [&](ElementId v) { return f(v) == u ? f(f(v)) : f(v); });
}

FunctionalMap delete_root_step(const FunctionalMap& f, ElementId x) {
  check_element(x, f.size());
  if (!is_functional_poset(f)) {
    const Partition part = equiv_classes(preorder_of(f));
    for (Mask cls : part.classes)
      if (popcount(cls) >= 2) throw NotPosetError(std::countr_zero(cls), f(std::countr_zero(cls)));
  }
  if (components(f).size() != 1) throw InputError("root deletion needs a connected forest");
  if (f(x) != x) throw InputError("element " + std::to_string(x) + " is not the root");
  return drop_element(f, x, [&](ElementId v) { return f(v) == x ? v : f(v); });
}

std::vector<FunctionalMap> split_step(const FunctionalMap& f) {
  const auto parts = components(f);
  if (parts.size() < 2) throw InputError("split needs at least two components");
  std::vector<FunctionalMap> out;
  out.reserve(parts.size());
  for (Mask part : parts) out.push_back(restrict_to(f, part));
  return out;
}

bool union_sum_check(const SetFamily& f1, const SetFamily& f2) {
  if (f1.ground_size() != f2.ground_size())
    throw InputError("union-sum check needs families on the same ground set");
  std::int64_t unions = 0, intersections = 0;
  for (Mask a : f1)
    for (Mask b : f2) {
      unions += popcount(a | b);
      intersections += popcount(a & b);
    }
  return unions == count_of(f2) * f1.total_size() + count_of(f1) * f2.total_size() - intersections;
}

ReductionStep make_trace_step(const FunctionalMap& f, ElementId u) {
  ReductionStep step;
  step.kind = StepKind::TraceClass;
  step.input_map = f;
  step.removed = u;
  const FunctionalMap g = trace_class_step(f, u);
  step.output_maps = {g};

  const SetFamily before = ideals_of(f);
  const SetFamily after = ideals_of(g);
  const std::int64_t deg = degree(before, u);
  const std::int64_t m = count_of(before);
  step.nds_before = nds(before);
  step.nds_after = {nds(after)};

  require(after == trace_at(before, u), "traced ideal family differs from the ideals of g");
  require(count_of(after) == m, "trace did not preserve the number of ideals");
  require(step.nds_before == step.nds_after[0] + 2 * deg - m, "trace identity failed");
  require(2 * deg <= m, "removed element is not rare");
  std::ostringstream why;
  why << step.nds_before << " = " << step.nds_after[0] << " + 2*" << deg << " - " << m << ", 2*"
      << deg << " <= " << m;
  step.justification = why.str();
  return step;
}

ReductionStep make_delete_step(const FunctionalMap& f, ElementId x) {
  ReductionStep step;
  step.kind = StepKind::DeleteRoot;
  step.input_map = f;
  step.removed = x;
  const FunctionalMap g = delete_root_step(f, x);
  step.output_maps = {g};

  const SetFamily before = ideals_of(f);
  const SetFamily after = ideals_of(g);
  const std::int64_t n = f.size();
  const std::int64_t m = count_of(before);
  const std::int64_t term = n - m + 1;
  step.nds_before = nds(before);
  step.nds_after = {nds(after)};

  require(m == count_of(after) + 1, "root deletion must drop exactly the full ideal");
  require(step.nds_before == step.nds_after[0] + term, "deletion identity failed");
  require(term <= 0, "fewer than n+1 ideals in a poset");
  std::ostringstream why;
  why << step.nds_before << " = " << step.nds_after[0] << " + (" << n << " - " << m
      << " + 1), " << term << " <= 0";
  step.justification = why.str();
  return step;
}

ReductionStep make_split_step(const FunctionalMap& f) {
  const auto parts = components(f);
  if (parts.size() < 2) throw InputError("split needs at least two components");
  Mask left = 0;
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) left |= parts[i];

  ReductionStep step;
  step.kind = StepKind::SplitComponents;
  step.input_map = f;
  step.output_maps = {restrict_to(f, left), restrict_to(f, parts.back())};

  const SetFamily whole = ideals_of(f);
  const SetFamily first = ideals_of(step.output_maps[0]);
  const SetFamily second = ideals_of(step.output_maps[1]);
  const std::int64_t c1 = count_of(first), c2 = count_of(second);
  step.nds_before = nds(whole);
  step.nds_after = {nds(first), nds(second)};

  require(count_of(whole) == c1 * c2, "ideal count is not multiplicative over components");
  require(step.nds_before == c2 * step.nds_after[0] + c1 * step.nds_after[1],
          "product identity failed");
  std::ostringstream why;
  why << step.nds_before << " = " << c2 << "*" << step.nds_after[0] << " + " << c1 << "*"
      << step.nds_after[1];
  step.justification = why.str();
  return step;
}

ReductionStep make_base_step(const FunctionalMap& f) {
  if (f.size() != 1) throw InputError("base step needs a single vertex");
  ReductionStep step;
  step.kind = StepKind::BaseSingleton;
  step.input_map = f;
  step.nds_before = nds(ideals_of(f));
  require(step.nds_before == 0, "single vertex must have nds 0");
  step.justification = "0 = 2*1 - 2*1";
  return step;
}

namespace {

void reduce_poset(const FunctionalMap& f, std::vector<ReductionStep>& steps) {
  if (f.size() == 1) {
    steps.push_back(make_base_step(f));
    return;
  }
  if (components(f).size() >= 2) {
    steps.push_back(make_split_step(f));
    const auto outputs = steps.back().output_maps;
    for (const FunctionalMap& g : outputs) reduce_poset(g, steps);
    return;
  }
  ElementId root = 0;
  while (f(root) != root) root = f(root);
  steps.push_back(make_delete_step(f, root));
  const FunctionalMap g = steps.back().output_maps[0];
  reduce_poset(g, steps);
}

void reduce(const FunctionalMap& f, std::vector<ReductionStep>& steps) {
  const Partition part = equiv_classes(preorder_of(f));
  // Classes are numbered by smallest element, so the first nontrivial one
  // is also the lexicographically first.
  for (Mask cls : part.classes)
    if (popcount(cls) >= 2) {
      const ElementId u = 63 - std::countl_zero(cls);
      steps.push_back(make_trace_step(f, u));
      const FunctionalMap g = steps.back().output_maps[0];
      reduce(g, steps);
      return;
    }
  reduce_poset(f, steps);
}

ReductionStep rebuild(const FunctionalMap& f, StepKind kind, std::optional<ElementId> removed) {
  auto need_removed = [&]() {
    if (!removed) throw InconsistencyError(std::string(to_string(kind)) + " step without removed element");
    return *removed;
  };
  try {
    switch (kind) {
      case StepKind::TraceClass: return make_trace_step(f, need_removed());
      case StepKind::DeleteRoot: return make_delete_step(f, need_removed());
      case StepKind::SplitComponents: return make_split_step(f);
      case StepKind::BaseSingleton: return make_base_step(f);
    }
  } catch (const InputError& e) {
    throw InconsistencyError(std::string(to_string(kind)) + " step does not apply: " + e.what());
  }
  throw InconsistencyError("unknown step kind");
}

/// Checks the subtree starting at steps[pos] and returns the index after it.
std::size_t check_subtree(const ReductionCertificate& cert, std::size_t pos,
                          const FunctionalMap& expected_input) {
  require(pos < cert.steps.size(), "certificate ends before every map is reduced");
  const ReductionStep& step = cert.steps[pos];
  require(step.input_map == expected_input, "step input is not the pending output map");

  const ReductionStep fresh = rebuild(step.input_map, step.kind, step.removed);
  require(fresh.output_maps == step.output_maps, "recorded outputs differ from recomputation");
  require(fresh.nds_before == step.nds_before && fresh.nds_after == step.nds_after,
          "recorded nds values differ from recomputation");

  // Every kind turns "outputs have nds <= 0" into "input has nds <= 0":
  // trace by nds_before <= nds_after, deletion by a nonpositive additive
  // term, split by a positive combination, base by nds == 0.
  std::size_t next = pos + 1;
  for (const FunctionalMap& g : step.output_maps) next = check_subtree(cert, next, g);
  for (std::int64_t after : step.nds_after) require(after <= 0, "chained bound failed");
  require(step.nds_before <= 0, "chained bound failed");
  return next;
}

}  // namespace

ReductionCertificate certify(const FunctionalMap& f) {
  if (f.size() < 1) throw InputError("certify needs a nonempty ground set");
  ReductionCertificate cert;
  cert.input = f;
  reduce(f, cert.steps);
  cert.conclusion_nds = cert.steps.front().nds_before;
  verify_certificate(cert);
  return cert;
}

void verify_certificate(const ReductionCertificate& cert) {
  require(!cert.steps.empty(), "empty certificate");
  const std::size_t end = check_subtree(cert, 0, cert.input);
  require(end == cert.steps.size(), "certificate has steps past the reduction tree");
  require(cert.conclusion_nds == cert.steps.front().nds_before, "conclusion does not match input");
  require(cert.conclusion_nds <= 0, "conclusion nds is positive");
}

ReductionCertificate replay_certificate(const FunctionalMap& input,
                                        const std::vector<RecordedStep>& recorded,
                                        std::int64_t conclusion_nds) {
  if (input.size() < 1) throw InputError("certificate input is empty");
  ReductionCertificate cert;
  cert.input = input;
  cert.conclusion_nds = conclusion_nds;
  std::vector<FunctionalMap> pending{input};
  for (const RecordedStep& r : recorded) {
    require(!pending.empty(), "certificate has more steps than pending maps");
    const FunctionalMap f = pending.back();
    pending.pop_back();
    ReductionStep step = rebuild(f, r.kind, r.removed);
    require(step.removed == r.removed, "removed element mismatch");
    require(step.nds_before == r.nds_before && step.nds_after == r.nds_after,
            "recorded nds values differ from recomputation");
    for (auto it = step.output_maps.rbegin(); it != step.output_maps.rend(); ++it)
      pending.push_back(*it);
    cert.steps.push_back(std::move(step));
  }
  require(pending.empty(), "certificate leaves maps unreduced");
  verify_certificate(cert);
  return cert;
}

}  // namespace avgrare
