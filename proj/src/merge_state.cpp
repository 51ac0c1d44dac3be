#include "flatmod/merge_state.hpp"

#include <algorithm>

#include "flatmod/error.hpp"

namespace flatmod {

MergeState::MergeState(const Graph& g)
    : live_(g.vertex_count(), true),
      live_count_(g.vertex_count()),
      twice_edges_(g.twice_edge_count()),
      degree_sum_(g.vertex_count()),
      internal_edges_(g.vertex_count(), 0),
      members_(g.vertex_count()),
      neighbors_(g.vertex_count()) {
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    degree_sum_[v] = g.degree(v);
    members_[v] = {v};
    auto& row = neighbors_[v];
    row.reserve(g.degree(v));
    for (VertexId w : g.neighbors(v)) row.emplace(w, 1);
  }
}

std::int64_t MergeState::edges_between(ClusterId i, ClusterId j) const {
  const auto& row = neighbors_[i];
  auto it = row.find(j);
  return it == row.end() ? 0 : it->second;
}

std::vector<ClusterId> MergeState::live_clusters() const {
  std::vector<ClusterId> out;
  out.reserve(live_count_);
  for (ClusterId c = 0; c < live_.size(); ++c) {
    if (live_[c]) out.push_back(c);
  }
  return out;
}

ClusterId MergeState::merge(ClusterId i, ClusterId j) {
  if (i == j || !is_live(i) || !is_live(j)) {
    throw UnknownClusterError("cannot merge clusters " + std::to_string(i) + " and " +
                              std::to_string(j) + ": not two distinct live clusters");
  }
  const ClusterId keep = std::min(i, j);
  const ClusterId gone = std::max(i, j);

  auto& kept_row = neighbors_[keep];
  auto& gone_row = neighbors_[gone];
  std::int64_t joining = 0;
  if (auto it = kept_row.find(gone); it != kept_row.end()) {
    joining = it->second;
    kept_row.erase(it);
    gone_row.erase(keep);
  }
  for (const auto& [other, count] : gone_row) {
    kept_row[other] += count;
    auto& other_row = neighbors_[other];
    other_row.erase(gone);
    other_row[keep] += count;
  }
  NeighborMap{}.swap(gone_row);

  internal_edges_[keep] += internal_edges_[gone] + joining;
  degree_sum_[keep] += degree_sum_[gone];
  auto& kept_members = members_[keep];
  kept_members.insert(kept_members.end(), members_[gone].begin(), members_[gone].end());
  std::vector<VertexId>{}.swap(members_[gone]);
  internal_edges_[gone] = 0;
  degree_sum_[gone] = 0;
  live_[gone] = false;
  --live_count_;
  return keep;
}

ScaledScore MergeState::score(const ScoreVariant& v) const {
  ScaledScore out{0, score_denominator(twice_edges_, v)};
  for (ClusterId c = 0; c < live_.size(); ++c) {
    if (!live_[c]) continue;
    if (const auto* s = std::get_if<Standard>(&v)) {
      out.numerator += Wide{s->percent} * 2 * internal_edges_[c] * twice_edges_ -
                       Wide{100} * degree_sum_[c] * degree_sum_[c];
    } else {
      const auto n_c = size(c);
      out.numerator += Wide{2} * internal_edges_[c] * twice_edges_ -
                       Wide{std::get<Flat>(v).multiplier} * n_c * n_c;
    }
  }
  return out;
}

Partition MergeState::partition() const {
  std::vector<std::uint64_t> labels(live_.size());
  for (ClusterId c = 0; c < live_.size(); ++c) {
    for (VertexId v : members_[c]) labels[v] = c;
  }
  return Partition::from_labels(labels);
}

}  // namespace flatmod
