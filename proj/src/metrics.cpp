#include "flatmod/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <unordered_map>

#include "flatmod/error.hpp"
#include "flatmod/svg.hpp"

namespace flatmod {

namespace {

std::uint64_t choose2(std::uint64_t x) { return x < 2 ? 0 : x * (x - 1) / 2; }

void require_same_size(const Partition& truth, const Partition& found) {
  if (truth.vertex_count() != found.vertex_count()) {
    throw VertexSetMismatchError("truth covers " + std::to_string(truth.vertex_count()) +
                                 " vertices, found covers " +
                                 std::to_string(found.vertex_count()));
  }
}

void tally(PairConfusion& c, bool together_true, bool together_found) {
  if (together_true) {
    ++(together_found ? c.tp : c.fn);
  } else {
    ++(together_found ? c.fp : c.tn);
  }
}

}  // namespace

PairConfusion pair_confusion(const Partition& truth, const Partition& found) {
  require_same_size(truth, found);
  std::unordered_map<std::uint64_t, std::uint64_t> cells;
  cells.reserve(truth.vertex_count());
  for (VertexId v = 0; v < truth.vertex_count(); ++v) {
    ++cells[(static_cast<std::uint64_t>(truth[v]) << 32) | found[v]];
  }
  std::uint64_t tp = 0;
  for (const auto& [key, count] : cells) tp += choose2(count);

  std::uint64_t together_true = 0;
  for (auto s : truth.cluster_sizes()) together_true += choose2(s);
  std::uint64_t together_found = 0;
  for (auto s : found.cluster_sizes()) together_found += choose2(s);

  PairConfusion c;
  c.tp = tp;
  c.fp = together_found - tp;
  c.fn = together_true - tp;
  c.tn = choose2(truth.vertex_count()) - c.tp - c.fp - c.fn;
  return c;
}

double mcc(const PairConfusion& c) {
  const std::uint64_t m1 = c.tp + c.fp;
  const std::uint64_t m2 = c.tp + c.fn;
  const std::uint64_t m3 = c.tn + c.fp;
  const std::uint64_t m4 = c.tn + c.fn;
  if (m1 == 0 || m2 == 0 || m3 == 0 || m4 == 0) return 0.0;
  const __int128 numerator = static_cast<__int128>(c.tp) * c.tn -
                             static_cast<__int128>(c.fp) * c.fn;
  const double denominator = std::sqrt(static_cast<double>(m1) * static_cast<double>(m2)) *
                             std::sqrt(static_cast<double>(m3) * static_cast<double>(m4));
  return std::clamp(static_cast<double>(numerator) / denominator, -1.0, 1.0);
}

PairConfusion cross_confusion(const Partition& truth, const Partition& found,
                              std::span<const VertexId> a, std::span<const VertexId> b,
                              bool same_set) {
  require_same_size(truth, found);
  PairConfusion c;
  if (same_set) {
    for (std::size_t x = 0; x < a.size(); ++x) {
      for (std::size_t y = x + 1; y < a.size(); ++y) {
        tally(c, truth[a[x]] == truth[a[y]], found[a[x]] == found[a[y]]);
      }
    }
    return c;
  }
  for (VertexId u : a) {
    for (VertexId v : b) tally(c, truth[u] == truth[v], found[u] == found[v]);
  }
  return c;
}

PairConfusion restricted_confusion(const Partition& truth, const Partition& found,
                                   const Graph& g, const DegreePairPredicate& pred) {
  require_same_size(truth, found);
  if (truth.vertex_count() != g.vertex_count()) {
    throw VertexSetMismatchError("partitions do not cover the graph's vertices");
  }
  std::map<std::uint32_t, std::vector<VertexId>> by_degree;
  for (VertexId v = 0; v < g.vertex_count(); ++v) by_degree[g.degree(v)].push_back(v);

  PairConfusion c;
  for (auto i = by_degree.begin(); i != by_degree.end(); ++i) {
    for (auto j = i; j != by_degree.end(); ++j) {
      if (!pred(i->first, j->first) && !pred(j->first, i->first)) continue;
      c += cross_confusion(truth, found, i->second, j->second, i == j);
    }
  }
  return c;
}

PairConfusion low_high_confusion(const Partition& truth, const Partition& found,
                                 const Graph& g, std::uint32_t low_cut,
                                 std::uint32_t high_cut) {
  return restricted_confusion(truth, found, g, [=](std::uint32_t du, std::uint32_t dv) {
    return du <= low_cut && dv >= high_cut;
  });
}

std::vector<DegreeBucket> degree_buckets(const Graph& g, std::size_t cap) {
  std::map<std::uint32_t, std::vector<VertexId>> by_degree;
  for (VertexId v = 0; v < g.vertex_count(); ++v) by_degree[g.degree(v)].push_back(v);

  std::vector<DegreeBucket> buckets;
  for (auto& [degree, vertices] : by_degree) {
    if (buckets.empty() || buckets.back().members.size() + vertices.size() > cap) {
      buckets.emplace_back();
      buckets.back().lo = degree;
    }
    auto& current = buckets.back();
    current.hi = degree;
    current.members.insert(current.members.end(), vertices.begin(), vertices.end());
  }
  return buckets;
}

const BucketCell& BucketMatrix::at(std::size_t i, std::size_t j) const {
  if (j > i) std::swap(i, j);
  return cells[i * (i + 1) / 2 + j];
}

BucketMatrix bucket_mcc_matrix(const Partition& truth, const Partition& found, const Graph& g,
                               std::vector<DegreeBucket> buckets) {
  require_same_size(truth, found);
  if (truth.vertex_count() != g.vertex_count()) {
    throw VertexSetMismatchError("partitions do not cover the graph's vertices");
  }
  BucketMatrix m;
  m.buckets = std::move(buckets);
  for (std::size_t i = 0; i < m.buckets.size(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      BucketCell cell;
      cell.i = i;
      cell.j = j;
      cell.confusion =
          cross_confusion(truth, found, m.buckets[i].members, m.buckets[j].members, i == j);
      const auto& c = cell.confusion;
      cell.degenerate = c.tp + c.fp == 0 || c.tp + c.fn == 0 || c.tn + c.fp == 0 ||
                        c.tn + c.fn == 0;
      cell.mcc = mcc(c);
      m.cells.push_back(cell);
    }
  }
  return m;
}

void write_bucket_csv(std::ostream& out, const BucketMatrix& m) {
  out << "bucket_i_lo,bucket_i_hi,bucket_j_lo,bucket_j_hi,pair_count,mcc\n";
  for (const BucketCell& cell : m.cells) {
    const auto& bi = m.buckets[cell.i];
    const auto& bj = m.buckets[cell.j];
    out << bi.lo << ',' << bi.hi << ',' << bj.lo << ',' << bj.hi << ',' << cell.pair_count()
        << ',' << fixed(cell.mcc, 6) << '\n';
  }
}

void write_bucket_svg(std::ostream& out, const BucketMatrix& m, const std::string& title) {
  const double side = 400.0;
  const double margin = 70.0;
  std::size_t total = 0;
  for (const auto& b : m.buckets) total += b.members.size();
  const double scale = total == 0 ? 0.0 : side / static_cast<double>(total);

  std::vector<double> start(m.buckets.size() + 1, 0.0);
  for (std::size_t k = 0; k < m.buckets.size(); ++k) {
    start[k + 1] = start[k] + scale * static_cast<double>(m.buckets[k].members.size());
  }

  SvgDocument svg(side + 2 * margin, side + 2 * margin + 20);
  svg.text(margin + side / 2, 24, title, 14, "middle");
  const double base = margin + 20 + side;  // bottom edge of the triangle
  // Cell (i, j) with i >= j: row j counted from the bottom, column i.
  for (const BucketCell& cell : m.cells) {
    const double x = margin + start[cell.i];
    const double w = start[cell.i + 1] - start[cell.i];
    const double y1 = base - start[cell.j + 1];
    const double h = start[cell.j + 1] - start[cell.j];
    svg.rect(x, y1, w, h, gray(std::max(0.0, cell.mcc)), "#888888");
  }
  for (std::size_t k = 0; k < m.buckets.size(); ++k) {
    const auto& b = m.buckets[k];
    const std::string label =
        b.lo == b.hi ? std::to_string(b.lo) : std::to_string(b.lo) + "-" + std::to_string(b.hi);
    const double mid = (start[k] + start[k + 1]) / 2;
    svg.text(margin + mid, base + 14, label, 9, "middle");
    svg.text(margin - 4, base - mid + 3, label, 9, "end");
  }
  svg.text(margin + side / 2, base + 34, "degree range", 11, "middle");
  out << svg.str();
}

}  // namespace flatmod
