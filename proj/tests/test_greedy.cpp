#include "doctest.h"

#include <sstream>

#include "flatmod/error.hpp"
#include "flatmod/greedy.hpp"
#include "flatmod/merge_state.hpp"
#include "oracles.hpp"

using namespace flatmod;

namespace {

std::string trace_text(const std::vector<MergeStep>& t) {
  std::ostringstream out;
  write_trace(out, t);
  return out.str();
}

// No pair of live, adjacent clusters has a positive delta.
bool locally_optimal(const Graph& g, const ClimbResult& r, const ScoreVariant& v) {
  MergeState state(g);
  for (const auto& s : r.trace) state.merge(s.lo, s.hi);
  for (ClusterId a : state.live_clusters()) {
    for (ClusterId b : state.live_clusters()) {
      if (a < b && merge_delta(state, a, b, v).numerator > 0) return false;
    }
  }
  return true;
}

ScoreVariant random_variant(oracle::Rng& rng, bool flat) {
  if (flat) return Flat{static_cast<std::int64_t>(oracle::pick(rng, 40))};
  return Standard{static_cast<std::int32_t>(oracle::pick(rng, 101))};
}

}  // namespace

TEST_CASE("barbell splits into its triangles under Q_1") {
  const Graph g = oracle::barbell();
  const ClimbResult r = greedy_cluster(g, Standard{100});
  CHECK(r.partition == Partition(std::vector<ClusterId>{0, 0, 0, 1, 1, 1}));
  REQUIRE(!r.trace.empty());
  // best opening merge: an edge between two degree-2 vertices,
  // (2*14 - 2*2*2) / 196 = 20/196; lowest such pair is (0, 1)
  CHECK(r.trace.front().delta == ScaledScore{20, 196});
  CHECK(r.trace.front().lo == 0);
  CHECK(r.trace.front().hi == 1);
  CHECK(r.final_score == ScaledScore{5, 14});
}

TEST_CASE("ties go to the lowest pair") {
  const Graph cycle = oracle::make_graph(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  const ClimbResult r = greedy_cluster(cycle, Standard{100});
  REQUIRE(!r.trace.empty());
  CHECK(r.trace.front().lo == 0);
  CHECK(r.trace.front().hi == 1);
}

TEST_CASE("large flat penalty keeps singletons") {
  const Graph g = oracle::barbell();
  const ClimbResult r = greedy_cluster(g, Flat{g.twice_edge_count()});
  CHECK(r.trace.empty());
  CHECK(r.partition == Partition::singletons(6));
  // R = 0 merges every connected component
  CHECK(greedy_cluster(g, Flat{0}).partition.cluster_count() == 1);
}

TEST_CASE("greedy matches the rescanning simulator exactly") {
  oracle::Rng rng(31);
  for (int trial = 0; trial < 80; ++trial) {
    const std::size_t n = 2 + oracle::pick(rng, 40);
    const Graph g = oracle::random_graph(n, 0.15, rng);
    const ScoreVariant v = random_variant(rng, trial % 2);
    const ClimbResult r = greedy_cluster(g, v);
    std::vector<ClusterId> final_of;
    const auto naive = oracle::naive_climb(g, v, &final_of);
    REQUIRE(naive.size() == r.trace.size());
    const Wide den = score_denominator(g.twice_edge_count(), v);
    for (std::size_t i = 0; i < naive.size(); ++i) {
      CHECK(r.trace[i].lo == naive[i].lo);
      CHECK(r.trace[i].hi == naive[i].hi);
      CHECK(r.trace[i].delta == ScaledScore{naive[i].delta_num, den});
    }
    std::vector<std::uint64_t> labels(final_of.begin(), final_of.end());
    CHECK(r.partition == Partition::from_labels(labels));
  }
}

TEST_CASE("climb is monotone, locally optimal and reproducible") {
  oracle::Rng rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 20 + oracle::pick(rng, 180);
    const Graph g = oracle::random_graph(n, 4.0 / static_cast<double>(n), rng);
    const ScoreVariant v = random_variant(rng, trial % 2);
    const ClimbResult r = greedy_cluster(g, v);
    ScaledScore running = score(g, Partition::singletons(n), v);
    MergeState state(g);
    for (const auto& s : r.trace) {
      CHECK(s.delta.numerator > 0);
      state.merge(s.lo, s.hi);
      const ScaledScore now = score(g, state.partition(), v);
      CHECK(now.numerator - running.numerator == s.delta.numerator);
      running = now;
    }
    CHECK(running == r.final_score);
    CHECK(locally_optimal(g, r, v));
    const ClimbResult again = greedy_cluster(g, v);
    CHECK(trace_text(again.trace) == trace_text(r.trace));
    CHECK(again.partition == r.partition);
  }
}

TEST_CASE("greedy never beats the exhaustive optimum") {
  oracle::Rng rng(3);
  for (int trial = 0; trial < 15; ++trial) {
    const std::size_t n = 4 + oracle::pick(rng, 5);
    const Graph g = oracle::random_graph(n, 0.45, rng);
    const ScoreVariant v = random_variant(rng, trial % 2);
    ScaledScore best = score(g, Partition::singletons(n), v);
    oracle::for_each_partition(n, [&](const Partition& p) { best = std::max(best, score(g, p, v)); });
    CHECK(greedy_cluster(g, v).final_score <= best);
  }
}

TEST_CASE("trace replay and serialization") {
  const Graph g = oracle::barbell();
  const ClimbResult r = greedy_cluster(g, Standard{100});
  CHECK(replay_trace(g, r.trace, ScoreVariant{Standard{100}}) == r.partition);
  CHECK(replay_trace(g, {}) == Partition::singletons(6));
  CHECK(parse_trace(trace_text(r.trace)) == r.trace);

  std::vector<MergeStep> bad = r.trace;
  bad.push_back(bad.front());  // cluster hi is gone by now
  CHECK_THROWS_AS(replay_trace(g, bad), TraceMismatchError);
  std::vector<MergeStep> wrong_delta = r.trace;
  wrong_delta.front().delta.numerator += 1;
  CHECK_THROWS_AS(replay_trace(g, wrong_delta, ScoreVariant{Standard{100}}), TraceMismatchError);
  CHECK_NOTHROW(replay_trace(g, wrong_delta));
}

TEST_CASE("empty graph cannot be clustered") {
  const Graph g = Graph::from_adjacency_unchecked({{}, {}, {}});
  CHECK_THROWS_AS(greedy_cluster(g, Standard{100}), EmptyGraphError);
}
