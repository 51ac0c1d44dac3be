#include "flatmod/greedy.hpp"

#include <ostream>
#include <queue>
#include <sstream>

#include "flatmod/error.hpp"

namespace flatmod {

namespace {

// Heap entry. Versions snapshot both clusters at push time; a later merge
// touching either cluster bumps its version and makes the entry stale.
struct Candidate {
  Wide delta;
  ClusterId lo;
  ClusterId hi;
  std::uint32_t lo_version;
  std::uint32_t hi_version;
};

// std::priority_queue pops the greatest element: largest delta first, then the
// smallest (lo, hi).
struct LowerPriority {
  bool operator()(const Candidate& a, const Candidate& b) const {
    if (a.delta != b.delta) return a.delta < b.delta;
    if (a.lo != b.lo) return a.lo > b.lo;
    return a.hi > b.hi;
  }
};

}  // namespace

ClimbResult greedy_cluster(const Graph& g, const ScoreVariant& variant) {
  if (g.edge_count() == 0) throw EmptyGraphError("cannot cluster a graph with L = 0");

  MergeState state(g);
  const std::int64_t two_l = state.twice_edges();
  const Wide denominator = score_denominator(two_l, variant);
  std::vector<std::uint32_t> version(g.vertex_count(), 0);

  const auto delta_of = [&](ClusterId a, ClusterId b, std::int64_t e) {
    return merge_delta_numerator(variant, two_l, e, state.degree_sum(a), state.degree_sum(b),
                                 state.size(a), state.size(b));
  };

  // Deltas of a pair only change when one side merges, at which point the pair
  // is re-pushed; so non-positive entries can be dropped outright.
  std::vector<Candidate> initial;
  initial.reserve(g.edge_count());
  for (const Edge& e : g.edges()) {
    const Wide d = delta_of(e.u, e.v, 1);
    if (d > 0) initial.push_back({d, e.u, e.v, 0, 0});
  }
  std::priority_queue<Candidate, std::vector<Candidate>, LowerPriority> heap(
      LowerPriority{}, std::move(initial));

  ClimbResult result;
  while (!heap.empty()) {
    const Candidate top = heap.top();
    heap.pop();
    if (!state.is_live(top.lo) || !state.is_live(top.hi) || version[top.lo] != top.lo_version ||
        version[top.hi] != top.hi_version) {
      continue;
    }
    if (top.delta <= 0) break;

    const ClusterId kept = state.merge(top.lo, top.hi);
    ++version[kept];
    result.trace.push_back({top.lo, top.hi, ScaledScore{top.delta, denominator}});

    for (const auto& [other, e] : state.neighbors(kept)) {
      const Wide d = delta_of(kept, other, e);
      if (d <= 0) continue;
      const ClusterId lo = std::min(kept, other);
      const ClusterId hi = std::max(kept, other);
      heap.push({d, lo, hi, version[lo], version[hi]});
    }
  }

  result.final_score = state.score(variant);
  result.partition = state.partition();
  return result;
}

Partition replay_trace(const Graph& g, std::span<const MergeStep> trace,
                       const std::optional<ScoreVariant>& variant) {
  MergeState state(g);
  for (std::size_t step = 0; step < trace.size(); ++step) {
    const MergeStep& m = trace[step];
    if (m.lo >= m.hi || !state.is_live(m.lo) || !state.is_live(m.hi)) {
      throw TraceMismatchError("step " + std::to_string(step) + ": clusters " +
                               std::to_string(m.lo) + ", " + std::to_string(m.hi) +
                               " are not two live clusters with lo < hi");
    }
    if (variant) {
      const ScaledScore expected = merge_delta(state, m.lo, m.hi, *variant);
      if (expected.numerator != m.delta.numerator ||
          expected.denominator != m.delta.denominator) {
        throw TraceMismatchError("step " + std::to_string(step) + ": recorded delta " +
                                 to_string(m.delta.numerator) + "/" +
                                 to_string(m.delta.denominator) + " but recomputed " +
                                 to_string(expected.numerator) + "/" +
                                 to_string(expected.denominator));
      }
    }
    state.merge(m.lo, m.hi);
  }
  return state.partition();
}

void write_trace(std::ostream& out, std::span<const MergeStep> trace) {
  for (std::size_t step = 0; step < trace.size(); ++step) {
    const MergeStep& m = trace[step];
    out << step << ' ' << m.lo << ' ' << m.hi << ' ' << to_string(m.delta.numerator) << ' '
        << to_string(m.delta.denominator) << '\n';
  }
}

std::vector<MergeStep> parse_trace(std::string_view text) {
  std::vector<MergeStep> trace;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string step, lo, hi, num, den, extra;
    if (!(fields >> step) || step.front() == '#') continue;
    if (!(fields >> lo >> hi >> num >> den) || (fields >> extra)) {
      throw ParseError("trace line " + std::to_string(line_no) +
                       ": expected 'step lo hi delta_num delta_den'");
    }
    if (parse_wide(step) != static_cast<Wide>(trace.size())) {
      throw ParseError("trace line " + std::to_string(line_no) + ": steps must count from 0");
    }
    const Wide lo_id = parse_wide(lo);
    const Wide hi_id = parse_wide(hi);
    if (lo_id < 0 || hi_id < 0 || lo_id > UINT32_MAX || hi_id > UINT32_MAX) {
      throw ParseError("trace line " + std::to_string(line_no) + ": cluster id out of range");
    }
    trace.push_back({static_cast<ClusterId>(lo_id), static_cast<ClusterId>(hi_id),
                     ScaledScore{parse_wide(num), parse_wide(den)}});
  }
  return trace;
}

}  // namespace flatmod
