#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "flatmod/graph.hpp"

namespace flatmod {

using ClusterId = std::uint32_t;

/// Vertex-to-cluster assignment with dense cluster ids in [0, cluster_count).
class Partition {
 public:
  Partition() = default;

  /// Throws ValidationError unless the ids are dense.
  explicit Partition(std::vector<ClusterId> assignment);

  /// Dense relabeling of arbitrary labels; clusters are numbered in order of
  /// their smallest member vertex.
  static Partition from_labels(std::span<const std::uint64_t> labels);
  static Partition singletons(std::size_t n);
  static Partition single_cluster(std::size_t n);

  std::size_t vertex_count() const { return assignment_.size(); }
  std::size_t cluster_count() const { return cluster_count_; }
  ClusterId operator[](VertexId v) const { return assignment_[v]; }
  std::span<const ClusterId> assignment() const { return assignment_; }

  std::vector<std::size_t> cluster_sizes() const;
  std::vector<std::vector<VertexId>> members() const;

  /// Same relabeling as from_labels; useful after merges produced sparse ids.
  Partition canonical() const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<ClusterId> assignment_;
  std::size_t cluster_count_ = 0;
};

/// Membership file: one "vertex_id cluster_id" line per vertex. Input may be
/// in any order but must cover 0..n-1 exactly once; '#' lines are comments.
Partition parse_partition(std::string_view text);
Partition load_partition_file(const std::string& path);

/// Canonical output sorted by vertex id.
void write_partition(std::ostream& out, const Partition& p);
std::string to_partition_text(const Partition& p);
void write_partition_file(const std::string& path, const Partition& p);

}  // namespace flatmod
