#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace flatmod {

using VertexId = std::uint32_t;

/// Unordered edge, stored with u < v in canonical form.
struct Edge {
  VertexId u;
  VertexId v;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Immutable undirected simple graph in CSR layout.
///
/// Vertex ids are dense in [0, n). Each adjacency row is sorted ascending.
/// The public factory `from_edges` validates every invariant; the unchecked
/// factory exists so that `validate` can be exercised on malformed input.
class Graph {
 public:
  Graph() = default;

  /// Builds and validates. Throws ValidationError on a self-loop, duplicate
  /// edge, or out-of-range endpoint.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges);

  /// Builds from raw adjacency rows without any checks.
  static Graph from_adjacency_unchecked(
      const std::vector<std::vector<VertexId>>& rows);

  std::size_t vertex_count() const { return degree_.size(); }
  std::size_t edge_count() const { return edge_count_; }
  /// 2L, the total number of half-edges.
  std::int64_t twice_edge_count() const {
    return 2 * static_cast<std::int64_t>(edge_count_);
  }
  double average_degree() const;

  std::span<const VertexId> neighbors(VertexId v) const {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  std::uint32_t degree(VertexId v) const { return degree_[v]; }
  std::span<const std::uint32_t> degrees() const { return degree_; }
  std::uint32_t max_degree() const;

  bool has_edge(VertexId u, VertexId v) const;

  /// Canonical edge list: u < v, sorted lexicographically.
  std::vector<Edge> edges() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::size_t> offsets_{0};
  std::vector<VertexId> targets_;
  std::vector<std::uint32_t> degree_;
  std::size_t edge_count_ = 0;
};

/// Checks every Graph invariant and throws ValidationError describing the
/// first violation: self-loop, duplicate neighbor, unsorted row, asymmetric
/// adjacency, or a degree sum different from 2L.
void validate(const Graph& g);

/// Number of connected components (isolated vertices count as components).
std::size_t connected_components(const Graph& g);

/// Parses the edge-list text format. Lines starting with '#' are comments,
/// except a first line of the form "# n=<count>" which fixes the vertex count.
/// Throws ParseError (with line number), ValidationError, or EmptyGraphError.
Graph parse_edge_list(std::string_view text);
Graph load_edge_list(std::istream& in);
Graph load_edge_list_file(const std::string& path);

/// Canonical output: "# n=<count>" header, then one "u v" line per edge with
/// u < v in ascending order.
void write_edge_list(std::ostream& out, const Graph& g);
std::string to_edge_list_text(const Graph& g);
void write_edge_list_file(const std::string& path, const Graph& g);

/// A graph read from a file whose vertex ids are not dense. `original_ids[v]`
/// is the external id of dense vertex v; dense ids follow ascending external
/// ids.
struct RemappedGraph {
  Graph graph;
  std::vector<std::uint64_t> original_ids;
};

RemappedGraph parse_edge_list_remapped(std::string_view text);

/// Id-translation table, one "dense_id original_id" line per vertex.
void write_id_map(std::ostream& out, std::span<const std::uint64_t> original_ids);

}  // namespace flatmod
