#include "flatmod/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <numeric>
#include <optional>
#include <sstream>

#include "flatmod/error.hpp"

namespace flatmod {

namespace {

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n';
  };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::optional<std::uint64_t> parse_uint(std::string_view token) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) return std::nullopt;
  return value;
}

struct RawEdges {
  std::optional<std::uint64_t> header_n;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
};

RawEdges parse_raw(std::string_view text) {
  RawEdges raw;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;

    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (line_no == 1) {
        std::string_view body = trim(line.substr(1));
        if (body.starts_with("n=")) {
          auto n = parse_uint(trim(body.substr(2)));
          if (!n) {
            throw ParseError("line 1: malformed vertex-count header '" +
                             std::string(line) + "'");
          }
          raw.header_n = *n;
        }
      }
      continue;
    }

    std::string_view tokens[3];
    std::size_t count = 0;
    std::string_view rest = line;
    while (!rest.empty() && count < 3) {
      const auto end = rest.find_first_of(" \t");
      tokens[count++] = rest.substr(0, end);
      rest = end == std::string_view::npos ? std::string_view{} : trim(rest.substr(end));
    }
    if (count != 2 || !rest.empty()) {
      throw ParseError("line " + std::to_string(line_no) +
                       ": expected two vertex ids, got '" + std::string(line) + "'");
    }
    auto u = parse_uint(tokens[0]);
    auto v = parse_uint(tokens[1]);
    if (!u || !v) {
      throw ParseError("line " + std::to_string(line_no) +
                       ": vertex ids must be non-negative integers, got '" +
                       std::string(line) + "'");
    }
    raw.pairs.emplace_back(*u, *v);
  }
  return raw;
}

Graph build_checked(std::size_t n, std::vector<Edge> edges) {
  if (edges.empty()) throw EmptyGraphError("graph has no edges (L = 0)");
  return Graph::from_edges(n, edges);
}

}  // namespace

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges) {
  if (n > std::numeric_limits<VertexId>::max()) {
    throw ValidationError("vertex count " + std::to_string(n) + " exceeds id range");
  }
  std::vector<Edge> canon;
  canon.reserve(edges.size());
  for (const Edge& e : edges) {
    if (e.u == e.v) {
      throw ValidationError("self-loop at vertex " + std::to_string(e.u));
    }
    if (e.u >= n || e.v >= n) {
      throw ValidationError("edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                            ") references a vertex outside [0, " + std::to_string(n) + ")");
    }
    canon.push_back(e.u < e.v ? e : Edge{e.v, e.u});
  }
  std::sort(canon.begin(), canon.end());
  if (auto dup = std::adjacent_find(canon.begin(), canon.end()); dup != canon.end()) {
    throw ValidationError("duplicate edge (" + std::to_string(dup->u) + ", " +
                          std::to_string(dup->v) + ")");
  }

  Graph g;
  g.degree_.assign(n, 0);
  for (const Edge& e : canon) {
    ++g.degree_[e.u];
    ++g.degree_[e.v];
  }
  g.offsets_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + g.degree_[v];
  g.targets_.resize(g.offsets_[n]);
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const Edge& e : canon) {
    g.targets_[cursor[e.u]++] = e.v;
    g.targets_[cursor[e.v]++] = e.u;
  }
  for (std::size_t v = 0; v < n; ++v) {
    std::sort(g.targets_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]),
              g.targets_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]));
  }
  g.edge_count_ = canon.size();
  return g;
}

Graph Graph::from_adjacency_unchecked(const std::vector<std::vector<VertexId>>& rows) {
  Graph g;
  const std::size_t n = rows.size();
  g.degree_.resize(n);
  g.offsets_.assign(n + 1, 0);
  std::size_t half_edges = 0;
  for (std::size_t v = 0; v < n; ++v) {
    g.degree_[v] = static_cast<std::uint32_t>(rows[v].size());
    g.offsets_[v + 1] = g.offsets_[v] + rows[v].size();
    g.targets_.insert(g.targets_.end(), rows[v].begin(), rows[v].end());
    half_edges += rows[v].size();
  }
  g.edge_count_ = half_edges / 2;
  return g;
}

double Graph::average_degree() const {
  if (vertex_count() == 0) return 0.0;
  return static_cast<double>(twice_edge_count()) / static_cast<double>(vertex_count());
}

std::uint32_t Graph::max_degree() const {
  return degree_.empty() ? 0 : *std::max_element(degree_.begin(), degree_.end());
}

bool Graph::has_edge(VertexId u, VertexId v) const {
  auto row = neighbors(u);
  return std::binary_search(row.begin(), row.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (VertexId u = 0; u < vertex_count(); ++u) {
    for (VertexId v : neighbors(u)) {
      if (u < v) out.push_back({u, v});
    }
  }
  return out;
}

void validate(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::int64_t degree_sum = 0;
  for (VertexId v = 0; v < n; ++v) {
    auto row = g.neighbors(v);
    if (row.size() != g.degree(v)) {
      throw ValidationError("vertex " + std::to_string(v) + ": degree " +
                            std::to_string(g.degree(v)) + " disagrees with adjacency size " +
                            std::to_string(row.size()));
    }
    degree_sum += g.degree(v);
    for (std::size_t i = 0; i < row.size(); ++i) {
      const VertexId w = row[i];
      if (w >= n) {
        throw ValidationError("vertex " + std::to_string(v) + ": neighbor " +
                              std::to_string(w) + " out of range");
      }
      if (w == v) throw ValidationError("self-loop at vertex " + std::to_string(v));
      if (i > 0 && row[i - 1] == w) {
        throw ValidationError("duplicate edge (" + std::to_string(v) + ", " +
                              std::to_string(w) + ")");
      }
      if (i > 0 && row[i - 1] > w) {
        throw ValidationError("vertex " + std::to_string(v) + ": adjacency not sorted");
      }
    }
  }
  for (VertexId v = 0; v < n; ++v) {
    for (VertexId w : g.neighbors(v)) {
      auto back = g.neighbors(w);
      if (!std::binary_search(back.begin(), back.end(), v)) {
        throw ValidationError("asymmetric adjacency: " + std::to_string(w) + " in adj(" +
                              std::to_string(v) + ") but not the reverse");
      }
    }
  }
  if (degree_sum != g.twice_edge_count()) {
    throw ValidationError("degree sum " + std::to_string(degree_sum) + " differs from 2L = " +
                          std::to_string(g.twice_edge_count()));
  }
}

std::size_t connected_components(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<bool> seen(n, false);
  std::vector<VertexId> stack;
  std::size_t components = 0;
  for (VertexId s = 0; s < n; ++s) {
    if (seen[s]) continue;
    ++components;
    seen[s] = true;
    stack.push_back(s);
    while (!stack.empty()) {
      VertexId v = stack.back();
      stack.pop_back();
      for (VertexId w : g.neighbors(v)) {
        if (!seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
      }
    }
  }
  return components;
}

Graph parse_edge_list(std::string_view text) {
  RawEdges raw = parse_raw(text);
  std::uint64_t max_id = 0;
  std::vector<Edge> edges;
  edges.reserve(raw.pairs.size());
  for (auto [u, v] : raw.pairs) {
    if (u > std::numeric_limits<VertexId>::max() - 1 ||
        v > std::numeric_limits<VertexId>::max() - 1) {
      throw ValidationError("vertex id exceeds dense id range; use remapped loading");
    }
    max_id = std::max({max_id, u, v});
    edges.push_back({static_cast<VertexId>(u), static_cast<VertexId>(v)});
  }
  std::size_t n = edges.empty() ? 0 : static_cast<std::size_t>(max_id) + 1;
  if (raw.header_n) {
    if (!edges.empty() && *raw.header_n <= max_id) {
      throw ValidationError("header declares n=" + std::to_string(*raw.header_n) +
                            " but vertex " + std::to_string(max_id) + " appears");
    }
    n = static_cast<std::size_t>(*raw.header_n);
  }
  return build_checked(n, std::move(edges));
}

Graph load_edge_list(std::istream& in) {
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_edge_list(buffer.str());
}

Graph load_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open edge-list file '" + path + "'");
  return load_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << "# n=" << g.vertex_count() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

std::string to_edge_list_text(const Graph& g) {
  std::ostringstream out;
  write_edge_list(out, g);
  return out.str();
}

void write_edge_list_file(const std::string& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write edge-list file '" + path + "'");
  write_edge_list(out, g);
}

RemappedGraph parse_edge_list_remapped(std::string_view text) {
  RawEdges raw = parse_raw(text);
  RemappedGraph result;
  auto& ids = result.original_ids;
  for (auto [u, v] : raw.pairs) {
    ids.push_back(u);
    ids.push_back(v);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  const auto dense = [&](std::uint64_t id) {
    return static_cast<VertexId>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
  };
  std::vector<Edge> edges;
  edges.reserve(raw.pairs.size());
  for (auto [u, v] : raw.pairs) edges.push_back({dense(u), dense(v)});
  result.graph = build_checked(ids.size(), std::move(edges));
  return result;
}

void write_id_map(std::ostream& out, std::span<const std::uint64_t> original_ids) {
  for (std::size_t v = 0; v < original_ids.size(); ++v) {
    out << v << ' ' << original_ids[v] << '\n';
  }
}

}  // namespace flatmod
