#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "flatmod/graph.hpp"
#include "flatmod/merge_state.hpp"
#include "flatmod/partition.hpp"
#include "flatmod/scoring.hpp"

namespace flatmod {

/// One merge of the climb, in the cluster labeling current at that step.
struct MergeStep {
  ClusterId lo = 0;
  ClusterId hi = 0;
  ScaledScore delta;

  friend bool operator==(const MergeStep& a, const MergeStep& b) {
    return a.lo == b.lo && a.hi == b.hi && a.delta.numerator == b.delta.numerator &&
           a.delta.denominator == b.delta.denominator;
  }
};

struct ClimbResult {
  Partition partition;
  std::vector<MergeStep> trace;
  ScaledScore final_score;
};

/// Greedy agglomerative climb from all-singletons.
///
/// Each step merges the connected cluster pair with the largest exact delta;
/// ties go to the smaller `lo` id, then the smaller `hi` id, where a merged
/// cluster keeps the smaller of its parents' ids. The climb stops when no pair
/// has a strictly positive delta. Throws EmptyGraphError when L = 0.
ClimbResult greedy_cluster(const Graph& g, const ScoreVariant& variant);

/// Reapplies a trace from singletons. Throws TraceMismatchError if a step
/// names a cluster that is not live. When `variant` is given, every recorded
/// delta is also checked against the exact delta recomputed at that step.
Partition replay_trace(const Graph& g, std::span<const MergeStep> trace,
                       const std::optional<ScoreVariant>& variant = std::nullopt);

/// Trace file: one "step lo hi delta_num delta_den" line per merge, step
/// counting from 0.
void write_trace(std::ostream& out, std::span<const MergeStep> trace);
std::vector<MergeStep> parse_trace(std::string_view text);

}  // namespace flatmod
