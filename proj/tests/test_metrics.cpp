#include "doctest.h"

#include <sstream>

#include "flatmod/error.hpp"
#include "flatmod/metrics.hpp"
#include "oracles.hpp"

using namespace flatmod;

namespace {

// Disjoint union of regular graphs, listed as (vertex count, degree).
Graph regular_union(std::vector<std::pair<std::size_t, std::uint32_t>> parts, oracle::Rng& rng) {
  std::vector<Edge> edges;
  VertexId offset = 0;
  for (auto [n, d] : parts) {
    for (const auto& e : oracle::random_regular(n, d, rng).edges()) {
      edges.push_back({e.u + offset, e.v + offset});
    }
    offset += static_cast<VertexId>(n);
  }
  return Graph::from_edges(offset, edges);
}

}  // namespace

TEST_CASE("worked MCC example") {
  const PairConfusion c{4, 3, 2, 6};
  // (24 - 6) / sqrt(7 * 6 * 9 * 8)
  CHECK(mcc(c) == doctest::Approx(18.0 / std::sqrt(3024.0)).epsilon(1e-12));
  CHECK(std::abs(mcc(c) - 0.327327) < 1e-6);
  CHECK(mcc(PairConfusion{0, 0, 0, 10}) == 0.0);
  CHECK(mcc(PairConfusion{5, 0, 0, 5}) == 1.0);
  CHECK(mcc(PairConfusion{0, 5, 5, 0}) == -1.0);
}

TEST_CASE("pair counts match brute force") {
  oracle::Rng rng(41);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + oracle::pick(rng, 11);
    const Partition truth = oracle::random_partition(n, 1 + oracle::pick(rng, n), rng);
    const Partition found = oracle::random_partition(n, 1 + oracle::pick(rng, n), rng);
    const PairConfusion c = pair_confusion(truth, found);
    CHECK(c == oracle::brute_confusion(truth, found));
    CHECK(c.total() == n * (n - 1) / 2);
    CHECK(mcc(c) == doctest::Approx(oracle::mcc_formula(c)).epsilon(1e-12));
    // swapping roles swaps fp and fn and leaves MCC alone
    const PairConfusion s = pair_confusion(found, truth);
    CHECK(s.fp == c.fn);
    CHECK(s.fn == c.fp);
    CHECK(mcc(s) == doctest::Approx(mcc(c)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(pair_confusion(Partition::singletons(3), Partition::singletons(4)),
                  VertexSetMismatchError);
}

TEST_CASE("restricted counts match brute force") {
  oracle::Rng rng(43);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + oracle::pick(rng, 11);
    const Graph g = oracle::random_graph(n, 0.4, rng);
    const Partition truth = oracle::random_partition(n, 1 + oracle::pick(rng, n), rng);
    const Partition found = oracle::random_partition(n, 1 + oracle::pick(rng, n), rng);
    const std::uint32_t low = static_cast<std::uint32_t>(oracle::pick(rng, 5));
    const std::uint32_t high = low + static_cast<std::uint32_t>(oracle::pick(rng, 4));
    const auto keep = [&](VertexId a, VertexId b) {
      const auto da = g.degree(a), db = g.degree(b);
      return (da <= low && db >= high) || (db <= low && da >= high);
    };
    CHECK(low_high_confusion(truth, found, g, low, high) ==
          oracle::brute_confusion(truth, found, keep));
    const auto all = [](std::uint32_t, std::uint32_t) { return true; };
    CHECK(restricted_confusion(truth, found, g, all) == pair_confusion(truth, found));
  }
}

TEST_CASE("barbell restricted to degree-2 by degree-3 pairs") {
  const Graph g = oracle::barbell();
  const Partition truth(std::vector<ClusterId>{0, 0, 0, 1, 1, 1});
  const Partition found = Partition::single_cluster(6);
  // pairs with one endpoint degree <= 2 and the other >= 3: 4 low vertices x 2 high
  const PairConfusion c = low_high_confusion(truth, found, g, 2, 3);
  CHECK(c.total() == 8);
  CHECK(c.tp == 4);
  CHECK(c.fp == 4);
  CHECK(mcc(c) == 0.0);
}

TEST_CASE("degree buckets") {
  oracle::Rng rng(1);
  SUBCASE("greedy fill up to the cap") {
    const Graph g = regular_union({{60, 1}, {50, 2}, {30, 3}}, rng);
    const auto b = degree_buckets(g, 100);
    REQUIRE(b.size() == 2);
    CHECK(b[0].lo == 1);
    CHECK(b[0].hi == 1);
    CHECK(b[0].members.size() == 60);
    CHECK(b[1].lo == 2);
    CHECK(b[1].hi == 3);
    CHECK(b[1].members.size() == 80);
  }
  SUBCASE("one degree beyond the cap") {
    const Graph g = regular_union({{150, 5}}, rng);
    const auto b = degree_buckets(g, 100);
    REQUIRE(b.size() == 1);
    CHECK(b[0].members.size() == 150);
  }
}

TEST_CASE("bucket matrix cells aggregate to the global count") {
  oracle::Rng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 10 + oracle::pick(rng, 60);
    const Graph g = oracle::random_graph(n, 0.2, rng);
    const Partition truth = oracle::random_partition(n, 1 + oracle::pick(rng, 6), rng);
    const Partition found = oracle::random_partition(n, 1 + oracle::pick(rng, 6), rng);
    const std::size_t cap = 1 + oracle::pick(rng, n / 3 + 1);
    const BucketMatrix m = bucket_mcc_matrix(truth, found, g, degree_buckets(g, cap));
    PairConfusion sum;
    for (const auto& cell : m.cells) {
      CHECK(cell.i >= cell.j);
      sum += cell.confusion;
      // brute force over the two buckets' members
      std::vector<int> bucket_of(n, -1);
      for (std::size_t b = 0; b < m.buckets.size(); ++b) {
        for (auto v : m.buckets[b].members) bucket_of[v] = static_cast<int>(b);
      }
      const auto keep = [&](VertexId a, VertexId b) {
        const int x = bucket_of[a], y = bucket_of[b];
        return (x == static_cast<int>(cell.i) && y == static_cast<int>(cell.j)) ||
               (y == static_cast<int>(cell.i) && x == static_cast<int>(cell.j));
      };
      CHECK(cell.confusion == oracle::brute_confusion(truth, found, keep));
      if (!cell.degenerate) CHECK(cell.mcc == doctest::Approx(oracle::mcc_formula(cell.confusion)));
    }
    CHECK(sum == pair_confusion(truth, found));
  }
}

TEST_CASE("bucket CSV and SVG output") {
  oracle::Rng rng(2);
  const Graph g = oracle::random_graph(40, 0.2, rng);
  const Partition truth = oracle::random_partition(40, 3, rng);
  const BucketMatrix m = bucket_mcc_matrix(truth, truth, g, degree_buckets(g, 10));
  std::ostringstream csv, svg;
  write_bucket_csv(csv, m);
  write_bucket_svg(svg, m, "test");
  CHECK(csv.str().rfind("bucket_i_lo,bucket_i_hi,bucket_j_lo,bucket_j_hi,pair_count,mcc\n", 0) == 0);
  std::size_t lines = 0;
  for (char ch : csv.str()) lines += ch == '\n';
  CHECK(lines == 1 + m.cells.size());
  CHECK(svg.str().find("<svg") != std::string::npos);
  CHECK(svg.str().find("</svg>") != std::string::npos);
}

TEST_CASE("six-vertex confusion example") {
  const Partition truth(std::vector<ClusterId>{0, 0, 0, 1, 1, 1});
  const Partition found(std::vector<ClusterId>{0, 0, 1, 1, 1, 1});
  const PairConfusion c = pair_confusion(truth, found);
  CHECK(c == PairConfusion{4, 3, 2, 6});
  CHECK(c == oracle::brute_confusion(truth, found));
  const PairConfusion same = pair_confusion(truth, truth);
  CHECK(same.fp == 0);
  CHECK(same.fn == 0);
  CHECK(mcc(same) == 1.0);
  const PairConfusion single = pair_confusion(truth, Partition::singletons(6));
  CHECK(single.tp == 0);
  CHECK(single.fp == 0);
  CHECK(mcc(single) == 0.0);
}

TEST_CASE("barbell pairs between the two degree-3 vertices") {
  const Graph g = oracle::barbell();
  const Partition p(std::vector<ClusterId>{0, 0, 0, 1, 1, 1});
  const auto both_high = [](std::uint32_t du, std::uint32_t dv) { return du >= 3 && dv >= 3; };
  const PairConfusion c = restricted_confusion(p, p, g, both_high);
  CHECK(c == PairConfusion{0, 0, 0, 1});
  CHECK(mcc(c) == 0.0);
  const auto never = [](std::uint32_t, std::uint32_t) { return false; };
  CHECK(restricted_confusion(p, p, g, never) == PairConfusion{});
}

TEST_CASE("bucket matrix edge cases") {
  oracle::Rng rng(12);
  const Graph g = oracle::random_graph(60, 0.15, rng);
  const Partition truth = oracle::random_partition(60, 4, rng);
  const BucketMatrix same = bucket_mcc_matrix(truth, truth, g, degree_buckets(g, 15));
  for (const auto& cell : same.cells) {
    if (!cell.degenerate) CHECK(cell.mcc == doctest::Approx(1.0));
  }
  const Partition found = oracle::random_partition(60, 5, rng);
  const BucketMatrix one = bucket_mcc_matrix(truth, found, g, degree_buckets(g, 1000));
  REQUIRE(one.cells.size() == 1);
  CHECK(one.at(0, 0).mcc == doctest::Approx(mcc(pair_confusion(truth, found))));
}
