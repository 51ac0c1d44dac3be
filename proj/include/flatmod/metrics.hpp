#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "flatmod/graph.hpp"
#include "flatmod/partition.hpp"

namespace flatmod {

/// Confusion counts over unordered vertex pairs; "positive" means the pair
/// shares a cluster.
struct PairConfusion {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;
  std::uint64_t tn = 0;

  std::uint64_t total() const { return tp + fp + fn + tn; }

  PairConfusion& operator+=(const PairConfusion& o) {
    tp += o.tp;
    fp += o.fp;
    fn += o.fn;
    tn += o.tn;
    return *this;
  }
  friend bool operator==(const PairConfusion&, const PairConfusion&) = default;
};

/// Contingency-table pair counting, O(n + nonzero cells).
/// Throws VertexSetMismatchError when the partitions differ in size.
PairConfusion pair_confusion(const Partition& truth, const Partition& found);

/// Matthews correlation coefficient. Returns 0 when any marginal is zero.
double mcc(const PairConfusion& c);

/// Pairs {u, v} qualify when pred(deg u, deg v) or pred(deg v, deg u) holds.
using DegreePairPredicate = std::function<bool(std::uint32_t, std::uint32_t)>;

/// Confusion over the qualifying pairs only, by direct enumeration of the
/// degree classes involved.
PairConfusion restricted_confusion(const Partition& truth, const Partition& found,
                                   const Graph& g, const DegreePairPredicate& pred);

/// Pairs with one endpoint of degree <= low_cut and the other >= high_cut.
PairConfusion low_high_confusion(const Partition& truth, const Partition& found,
                                 const Graph& g, std::uint32_t low_cut, std::uint32_t high_cut);

/// Pairs with one endpoint in `a` and the other in `b`; when a and b are the
/// same set, pairs within it. The sets must be either identical or disjoint.
PairConfusion cross_confusion(const Partition& truth, const Partition& found,
                              std::span<const VertexId> a, std::span<const VertexId> b,
                              bool same_set);

struct DegreeBucket {
  std::uint32_t lo = 0;
  std::uint32_t hi = 0;
  std::vector<VertexId> members;
};

/// Consecutive degree ranges, smallest first. A bucket is closed before adding
/// a degree class that would push its size past `cap`; a single class larger
/// than `cap` forms its own bucket.
std::vector<DegreeBucket> degree_buckets(const Graph& g, std::size_t cap = 100);

struct BucketCell {
  std::size_t i = 0;  ///< row bucket, i >= j
  std::size_t j = 0;
  PairConfusion confusion;
  double mcc = 0.0;
  bool degenerate = false;  ///< some marginal is zero, mcc reported as 0

  std::uint64_t pair_count() const { return confusion.total(); }
};

/// Lower-triangular MCC matrix over bucket pairs.
struct BucketMatrix {
  std::vector<DegreeBucket> buckets;
  std::vector<BucketCell> cells;  ///< row-major over i, then j <= i

  const BucketCell& at(std::size_t i, std::size_t j) const;
};

BucketMatrix bucket_mcc_matrix(const Partition& truth, const Partition& found, const Graph& g,
                               std::vector<DegreeBucket> buckets);

/// CSV with header bucket_i_lo,bucket_i_hi,bucket_j_lo,bucket_j_hi,pair_count,mcc.
void write_bucket_csv(std::ostream& out, const BucketMatrix& m);

/// Lower-triangle heatmap. Rows run bottom-up from the smallest degrees and
/// columns left-to-right; block widths are proportional to bucket sizes.
/// Linear grayscale over [0, 1] (darker = higher), negatives clamped to 0.
void write_bucket_svg(std::ostream& out, const BucketMatrix& m, const std::string& title);

}  // namespace flatmod
