#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "flatmod/graph.hpp"
#include "flatmod/partition.hpp"
#include "flatmod/scoring.hpp"

namespace flatmod {

/// Cluster aggregates for an agglomerative climb.
///
/// Starts from singletons (cluster id = vertex id). Merging i and j keeps the
/// smaller id; the larger one dies. Only connected cluster pairs are stored in
/// the inter-cluster edge maps, and the maps are kept symmetric.
class MergeState {
 public:
  using NeighborMap = std::unordered_map<ClusterId, std::int64_t>;

  explicit MergeState(const Graph& g);

  std::size_t vertex_count() const { return live_.size(); }
  std::size_t live_count() const { return live_count_; }
  std::int64_t twice_edges() const { return twice_edges_; }

  bool is_live(ClusterId c) const { return c < live_.size() && live_[c]; }
  std::int64_t degree_sum(ClusterId c) const { return degree_sum_[c]; }
  std::int64_t size(ClusterId c) const { return static_cast<std::int64_t>(members_[c].size()); }
  std::int64_t internal_edges(ClusterId c) const { return internal_edges_[c]; }
  /// e_ij, zero when the clusters are not adjacent.
  std::int64_t edges_between(ClusterId i, ClusterId j) const;
  const NeighborMap& neighbors(ClusterId c) const { return neighbors_[c]; }
  const std::vector<VertexId>& members(ClusterId c) const { return members_[c]; }

  std::vector<ClusterId> live_clusters() const;

  /// Merges two live clusters and returns the surviving id, min(i, j).
  /// Throws UnknownClusterError when either id is not live or i == j.
  ClusterId merge(ClusterId i, ClusterId j);

  /// Exact score of the current clustering from aggregates alone.
  ScaledScore score(const ScoreVariant& v) const;

  /// Current clustering with dense ids ordered by smallest member vertex.
  Partition partition() const;

 private:
  std::vector<bool> live_;
  std::size_t live_count_ = 0;
  std::int64_t twice_edges_ = 0;
  std::vector<std::int64_t> degree_sum_;
  std::vector<std::int64_t> internal_edges_;
  std::vector<std::vector<VertexId>> members_;
  std::vector<NeighborMap> neighbors_;
};

}  // namespace flatmod
