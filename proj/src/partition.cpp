#include "flatmod/partition.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <sstream>
#include <unordered_map>

#include "flatmod/error.hpp"

namespace flatmod {

Partition::Partition(std::vector<ClusterId> assignment) : assignment_(std::move(assignment)) {
  std::vector<bool> used;
  for (ClusterId c : assignment_) {
    if (c >= used.size()) used.resize(static_cast<std::size_t>(c) + 1, false);
    used[c] = true;
  }
  if (std::find(used.begin(), used.end(), false) != used.end()) {
    throw ValidationError("cluster ids are not dense");
  }
  cluster_count_ = used.size();
}

Partition Partition::from_labels(std::span<const std::uint64_t> labels) {
  std::unordered_map<std::uint64_t, ClusterId> dense;
  std::vector<ClusterId> assignment;
  assignment.reserve(labels.size());
  for (std::uint64_t label : labels) {
    auto [it, inserted] = dense.try_emplace(label, static_cast<ClusterId>(dense.size()));
    assignment.push_back(it->second);
  }
  Partition p;
  p.assignment_ = std::move(assignment);
  p.cluster_count_ = dense.size();
  return p;
}

Partition Partition::singletons(std::size_t n) {
  Partition p;
  p.assignment_.resize(n);
  for (std::size_t v = 0; v < n; ++v) p.assignment_[v] = static_cast<ClusterId>(v);
  p.cluster_count_ = n;
  return p;
}

Partition Partition::single_cluster(std::size_t n) {
  Partition p;
  p.assignment_.assign(n, 0);
  p.cluster_count_ = n == 0 ? 0 : 1;
  return p;
}

std::vector<std::size_t> Partition::cluster_sizes() const {
  std::vector<std::size_t> sizes(cluster_count_, 0);
  for (ClusterId c : assignment_) ++sizes[c];
  return sizes;
}

std::vector<std::vector<VertexId>> Partition::members() const {
  std::vector<std::vector<VertexId>> out(cluster_count_);
  for (VertexId v = 0; v < assignment_.size(); ++v) out[assignment_[v]].push_back(v);
  return out;
}

Partition Partition::canonical() const {
  std::vector<std::uint64_t> labels(assignment_.begin(), assignment_.end());
  return from_labels(labels);
}

Partition parse_partition(std::string_view text) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string a, b, extra;
    if (!(fields >> a)) continue;
    if (a.front() == '#') continue;
    if (!(fields >> b) || (fields >> extra)) {
      throw ParseError("line " + std::to_string(line_no) + ": expected 'vertex cluster'");
    }
    std::uint64_t v = 0, c = 0;
    auto r1 = std::from_chars(a.data(), a.data() + a.size(), v);
    auto r2 = std::from_chars(b.data(), b.data() + b.size(), c);
    if (r1.ec != std::errc{} || r1.ptr != a.data() + a.size() || r2.ec != std::errc{} ||
        r2.ptr != b.data() + b.size()) {
      throw ParseError("line " + std::to_string(line_no) + ": ids must be non-negative integers");
    }
    rows.emplace_back(v, c);
  }
  std::sort(rows.begin(), rows.end());
  std::vector<std::uint64_t> labels;
  labels.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].first != i) {
      throw ValidationError("membership must list every vertex 0.." +
                            std::to_string(rows.size() == 0 ? 0 : rows.size() - 1) +
                            " exactly once (problem at vertex " + std::to_string(rows[i].first) +
                            ")");
    }
    labels.push_back(rows[i].second);
  }
  // Keep the file's ids when they are already dense; otherwise relabel.
  std::vector<ClusterId> assignment;
  assignment.reserve(labels.size());
  bool fits = true;
  for (auto c : labels) {
    if (c > std::numeric_limits<ClusterId>::max()) fits = false;
    assignment.push_back(static_cast<ClusterId>(c));
  }
  if (fits) {
    try {
      return Partition(std::move(assignment));
    } catch (const ValidationError&) {
    }
  }
  return Partition::from_labels(labels);
}

Partition load_partition_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open membership file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_partition(buffer.str());
}

void write_partition(std::ostream& out, const Partition& p) {
  for (VertexId v = 0; v < p.vertex_count(); ++v) out << v << ' ' << p[v] << '\n';
}

std::string to_partition_text(const Partition& p) {
  std::ostringstream out;
  write_partition(out, p);
  return out.str();
}

void write_partition_file(const std::string& path, const Partition& p) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write membership file '" + path + "'");
  write_partition(out, p);
}

}  // namespace flatmod
