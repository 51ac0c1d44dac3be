#include "doctest.h"

#include "flatmod/error.hpp"
#include "flatmod/merge_state.hpp"
#include "flatmod/scoring.hpp"
#include "oracles.hpp"

using namespace flatmod;

namespace {

bool same(const ScaledScore& a, const ScaledScore& b) { return a == b; }

ScaledScore frac(Wide num, Wide den) { return {num, den}; }

const Partition kTriangles(std::vector<ClusterId>{0, 0, 0, 1, 1, 1});

}  // namespace

TEST_CASE("resolution parsing is exact to two decimals") {
  CHECK(Standard::parse("0.39").percent == 39);
  CHECK(Standard::parse(".5").percent == 50);
  CHECK(Standard::parse("1").percent == 100);
  CHECK(Standard::parse("0").percent == 0);
  CHECK_THROWS_AS(Standard::parse("0.391"), ParseError);
  CHECK_THROWS_AS(Standard::parse("1.01"), ParseError);
  CHECK_THROWS_AS(Standard::parse("-0.1"), ParseError);
  CHECK(Standard{39}.str() == "0.39");
  CHECK(Flat::parse("98").multiplier == 98);
  CHECK_THROWS_AS(Flat::parse("-2"), ParseError);
}

TEST_CASE("hand-computed values") {
  const Graph tri = oracle::make_graph(3, {{0, 1}, {1, 2}, {0, 2}});
  // singletons: -sum k^2 / (2L)^2 = -12/36
  CHECK(same(modularity(tri, Partition::singletons(3), Standard{100}), frac(-1, 3)));
  CHECK(same(modularity(tri, Partition::single_cluster(3), Standard{100}), frac(0, 1)));

  const Graph bb = oracle::barbell();
  // two triangles: 2*(6/14 - (7/14)^2) = 12/14 - 98/196 = 70/196
  CHECK(same(modularity(bb, kTriangles, Standard{100}), frac(5, 14)));
  // flat, R = 4: 12/14 - 4*18/196 = 96/196
  CHECK(same(flat_modularity(bb, kTriangles, Flat{4}), frac(24, 49)));

  // first merge on the triangle, Q_1: 2/6 - 2*2*2/36 = 1/9
  MergeState state(tri);
  CHECK(same(merge_delta(state, 0, 1, Standard{100}), frac(1, 9)));
}

TEST_CASE("scores fail on empty or mismatched input") {
  const Graph bb = oracle::barbell();
  CHECK_THROWS_AS(modularity(bb, Partition::singletons(5), Standard{100}),
                  VertexSetMismatchError);
  const Graph empty = Graph::from_adjacency_unchecked({{}, {}});
  CHECK_THROWS_AS(modularity(empty, Partition::singletons(2), Standard{100}), EmptyGraphError);
  MergeState state(bb);
  state.merge(0, 1);
  CHECK_THROWS_AS(merge_delta(state, 1, 2, Standard{100}), UnknownClusterError);
  CHECK_THROWS_AS(merge_delta(state, 2, 2, Standard{100}), UnknownClusterError);
  CHECK_THROWS_AS(merge_delta(state, 0, 60, Standard{100}), UnknownClusterError);
}

TEST_CASE("scores match the double-sum oracle") {
  oracle::Rng rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + oracle::pick(rng, 29);
    const Graph g = oracle::random_graph(n, 0.05 + 0.4 * std::uniform_real_distribution<>()(rng), rng);
    const Partition p = oracle::random_partition(n, 1 + oracle::pick(rng, n), rng);
    const Standard r{static_cast<std::int32_t>(oracle::pick(rng, 101))};
    const Flat R{static_cast<std::int64_t>(oracle::pick(rng, 300))};
    const ScaledScore got_r = modularity(g, p, r);
    const ScaledScore want_r = oracle::double_sum(g, p, r);
    CHECK(got_r.numerator == want_r.numerator);
    CHECK(got_r.denominator == want_r.denominator);
    const ScaledScore got_R = flat_modularity(g, p, R);
    const ScaledScore want_R = oracle::double_sum(g, p, R);
    CHECK(got_R.numerator == want_R.numerator);
    CHECK(got_R.denominator == want_R.denominator);
  }
}

TEST_CASE("merge deltas agree with score differences") {
  oracle::Rng rng(77);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 3 + oracle::pick(rng, 25);
    const Graph g = oracle::random_graph(n, 0.25, rng);
    const ScoreVariant v = trial % 2 ? ScoreVariant{Standard{static_cast<std::int32_t>(oracle::pick(rng, 101))}}
                                     : ScoreVariant{Flat{static_cast<std::int64_t>(oracle::pick(rng, 50))}};
    MergeState state(g);
    while (state.live_count() > 1) {
      const auto live = state.live_clusters();
      const ClusterId a = live[oracle::pick(rng, live.size())];
      ClusterId b = a;
      while (b == a) b = live[oracle::pick(rng, live.size())];
      const ScaledScore before = score(g, state.partition(), v);
      const ScaledScore delta = merge_delta(state, a, b, v);
      state.merge(a, b);
      const ScaledScore after = score(g, state.partition(), v);
      CHECK(before.denominator == after.denominator);
      CHECK(after.numerator - before.numerator == delta.numerator);
      CHECK(state.score(v) == after);
    }
  }
}

TEST_CASE("flat with R = d^2 equals Q_1 on d-regular graphs") {
  oracle::Rng rng(5);
  for (std::uint32_t d : {2u, 3u, 4u}) {
    for (int trial = 0; trial < 10; ++trial) {
      std::size_t n = 6 + oracle::pick(rng, 35);
      if ((n * d) % 2) ++n;
      const Graph g = oracle::random_regular(n, d, rng);
      for (int k = 0; k < 10; ++k) {
        const Partition p = oracle::random_partition(n, 1 + oracle::pick(rng, n), rng);
        CHECK(modularity(g, p, Standard{100}) == flat_modularity(g, p, Flat{d * d}));
      }
    }
  }
}

TEST_CASE("bounds and monotonicity") {
  oracle::Rng rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + oracle::pick(rng, 29);
    const Graph g = oracle::random_graph(n, 0.3, rng);
    const Partition p = oracle::random_partition(n, 1 + oracle::pick(rng, n), rng);
    const double q = modularity(g, p, Standard{100}).value();
    CHECK(q >= -0.5 - 1e-12);
    CHECK(q <= 1.0);
    // Q_r grows with r: internal edges only add
    ScaledScore prev = modularity(g, p, Standard{0});
    for (std::int32_t pct = 5; pct <= 100; pct += 5) {
      const ScaledScore cur = modularity(g, p, Standard{pct});
      CHECK(cur >= prev);
      prev = cur;
    }
    CHECK(modularity(g, Partition::single_cluster(n), Standard{100}) == ScaledScore{0, 1});
    Wide sum_sq = 0;
    for (VertexId v = 0; v < n; ++v) sum_sq += Wide{g.degree(v)} * g.degree(v);
    const Wide two_l = g.twice_edge_count();
    CHECK(modularity(g, Partition::singletons(n), Standard{37}) ==
          ScaledScore{-sum_sq, two_l * two_l});
    CHECK(flat_modularity(g, Partition::singletons(n), Flat{13}) ==
          ScaledScore{-13 * static_cast<Wide>(n), two_l * two_l});
  }
}

TEST_CASE("wide integer text round trip") {
  const Wide big = Wide{1} << 100;
  CHECK(parse_wide(to_string(big)) == big);
  CHECK(parse_wide(to_string(-big)) == -big);
  CHECK(to_string(Wide{0}) == "0");
  CHECK_THROWS_AS(parse_wide("12a"), ParseError);
}
