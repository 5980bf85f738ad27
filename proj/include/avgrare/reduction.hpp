#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "avgrare/family.hpp"
#include "avgrare/preorder.hpp"

namespace avgrare {

enum class StepKind { TraceClass, DeleteRoot, SplitComponents, BaseSingleton };

std::string_view to_string(StepKind kind);
StepKind step_kind_from_string(std::string_view name);

/// One checked step of the reduction. The numeric verdict is verified when
/// the step is built; a failing verdict throws InconsistencyError.
struct ReductionStep {
  StepKind kind = StepKind::BaseSingleton;
  FunctionalMap input_map;
  std::vector<FunctionalMap> output_maps;
  std::optional<ElementId> removed;
  std::int64_t nds_before = 0;
  std::vector<std::int64_t> nds_after;
  std::string justification;
};

/// Steps in depth-first pre-order: the outputs of a step are the inputs of
/// the steps that follow it, left to right. Leaves are single-vertex maps.
struct ReductionCertificate {
  FunctionalMap input;
  std::vector<ReductionStep> steps;
  std::int64_t conclusion_nds = 0;
};

/// Removes u from a class of size >= 2: g(x) = f(x) unless f(x) = u, in
/// which case g(x) = f(f(x)). Elements above u shift down by one.
FunctionalMap trace_class_step(const FunctionalMap& f, ElementId u);

/// Removes the root x of a connected rooted-forest poset; children of x
/// become fixed points. Elements above x shift down by one.
FunctionalMap delete_root_step(const FunctionalMap& f, ElementId x);

/// Restriction of f to each of its components, ordered by smallest element.
/// Throws InputError if f is connected.
std::vector<FunctionalMap> split_step(const FunctionalMap& f);

/// Checks sum |A u B| = |F2| sum |A| + |F1| sum |B| - sum |A n B| by direct summation.
bool union_sum_check(const SetFamily& f1, const SetFamily& f2);

/// Checked step constructors. Each recomputes the ideal families by brute force.
ReductionStep make_trace_step(const FunctionalMap& f, ElementId u);
ReductionStep make_delete_step(const FunctionalMap& f, ElementId x);
/// Two-way split: all components but the last versus the last one.
ReductionStep make_split_step(const FunctionalMap& f);
ReductionStep make_base_step(const FunctionalMap& f);

/// Replays the full reduction on f: trace every nontrivial class away, then
/// split components and delete roots down to single vertices.
ReductionCertificate certify(const FunctionalMap& f);

/// Re-derives every family and checks structure, values, verdicts, and that
/// chaining them proves conclusion_nds <= 0. Throws InconsistencyError on failure.
void verify_certificate(const ReductionCertificate& cert);

/// Rebuilds a certificate from its input and per-step (kind, removed) data,
/// then verifies it; nds values must match the recorded ones.
struct RecordedStep {
  StepKind kind;
  std::optional<ElementId> removed;
  std::int64_t nds_before;
  std::vector<std::int64_t> nds_after;
};
ReductionCertificate replay_certificate(const FunctionalMap& input,
                                        const std::vector<RecordedStep>& recorded,
                                        std::int64_t conclusion_nds);

}  // namespace avgrare
