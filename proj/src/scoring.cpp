#include "flatmod/scoring.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "flatmod/error.hpp"
#include "flatmod/merge_state.hpp"

namespace flatmod {

std::string to_string(Wide value) {
  if (value == 0) return "0";
  const bool negative = value < 0;
  // Work on the negative side so the most negative value is representable.
  std::string digits;
  Wide v = negative ? value : -value;
  while (v != 0) {
    digits.push_back(static_cast<char>('0' - static_cast<int>(v % 10)));
    v /= 10;
  }
  if (negative) digits.push_back('-');
  std::reverse(digits.begin(), digits.end());
  return digits;
}

Wide parse_wide(std::string_view text) {
  if (text.empty()) throw ParseError("empty integer");
  bool negative = false;
  std::size_t i = 0;
  if (text[0] == '-' || text[0] == '+') {
    negative = text[0] == '-';
    i = 1;
  }
  if (i == text.size()) throw ParseError("malformed integer '" + std::string(text) + "'");
  Wide v = 0;
  for (; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
      throw ParseError("malformed integer '" + std::string(text) + "'");
    }
    v = v * 10 - (text[i] - '0');
  }
  return negative ? v : -v;
}

Standard Standard::parse(std::string_view text) {
  const auto fail = [&] {
    return ParseError("resolution must be a two-decimal value in [0, 1], got '" +
                      std::string(text) + "'");
  };
  const auto dot = text.find('.');
  std::string_view whole = text.substr(0, dot);
  std::string_view frac = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
  if ((whole.empty() && frac.empty()) || frac.size() > 2) throw fail();
  const auto all_digits = [](std::string_view s) {
    return std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  if (!all_digits(whole) || !all_digits(frac)) throw fail();
  if (dot != std::string_view::npos && frac.empty()) throw fail();

  int units = 0;
  for (char c : whole) {
    units = units * 10 + (c - '0');
    if (units > 1) throw fail();
  }
  int hundredths = 0;
  if (!frac.empty()) {
    hundredths = (frac[0] - '0') * 10 + (frac.size() > 1 ? frac[1] - '0' : 0);
  }
  const int percent = units * 100 + hundredths;
  if (percent > 100) throw fail();
  return Standard{percent};
}

std::string Standard::str() const {
  std::string out = std::to_string(percent / 100) + ".";
  const int frac = percent % 100;
  out += static_cast<char>('0' + frac / 10);
  out += static_cast<char>('0' + frac % 10);
  return out;
}

Flat Flat::parse(std::string_view text) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || value < 0) {
    throw ParseError("penalty multiplier must be a non-negative integer, got '" +
                     std::string(text) + "'");
  }
  return Flat{value};
}

std::string variant_name(const ScoreVariant& v) {
  return std::holds_alternative<Standard>(v) ? "standard" : "flat";
}

std::string param_string(const ScoreVariant& v) {
  return std::visit([](const auto& x) { return x.str(); }, v);
}

double param_value(const ScoreVariant& v) {
  if (const auto* s = std::get_if<Standard>(&v)) return s->resolution();
  return static_cast<double>(std::get<Flat>(v).multiplier);
}

ScoreVariant make_variant(std::string_view name, std::string_view param) {
  if (name == "standard") return Standard::parse(param);
  if (name == "flat") return Flat::parse(param);
  throw ParseError("unknown variant '" + std::string(name) + "' (expected standard|flat)");
}

Wide score_denominator(std::int64_t twice_edges, const ScoreVariant& v) {
  const Wide sq = Wide{twice_edges} * twice_edges;
  return std::holds_alternative<Standard>(v) ? 100 * sq : sq;
}

ClusterStats cluster_stats(const Graph& g, const Partition& p) {
  if (p.vertex_count() != g.vertex_count()) {
    throw VertexSetMismatchError("partition covers " + std::to_string(p.vertex_count()) +
                                 " vertices, graph has " + std::to_string(g.vertex_count()));
  }
  const std::size_t k = p.cluster_count();
  ClusterStats stats{std::vector<std::int64_t>(k, 0), std::vector<std::int64_t>(k, 0),
                     std::vector<std::int64_t>(k, 0)};
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    const ClusterId c = p[v];
    stats.degree_sum[c] += g.degree(v);
    stats.size[c] += 1;
    for (VertexId w : g.neighbors(v)) {
      if (v < w && p[w] == c) ++stats.internal_edges[c];
    }
  }
  return stats;
}

namespace {

void require_edges(const Graph& g) {
  if (g.edge_count() == 0) throw EmptyGraphError("cannot score a graph with L = 0");
}

}  // namespace

ScaledScore modularity(const Graph& g, const Partition& p, Standard r) {
  require_edges(g);
  const ClusterStats stats = cluster_stats(g, p);
  const std::int64_t two_l = g.twice_edge_count();
  ScaledScore out{0, score_denominator(two_l, r)};
  for (std::size_t c = 0; c < stats.size.size(); ++c) {
    out.numerator += Wide{r.percent} * 2 * stats.internal_edges[c] * two_l -
                     Wide{100} * stats.degree_sum[c] * stats.degree_sum[c];
  }
  return out;
}

ScaledScore flat_modularity(const Graph& g, const Partition& p, Flat R) {
  require_edges(g);
  const ClusterStats stats = cluster_stats(g, p);
  const std::int64_t two_l = g.twice_edge_count();
  ScaledScore out{0, score_denominator(two_l, R)};
  for (std::size_t c = 0; c < stats.size.size(); ++c) {
    out.numerator += Wide{2} * stats.internal_edges[c] * two_l -
                     Wide{R.multiplier} * stats.size[c] * stats.size[c];
  }
  return out;
}

ScaledScore score(const Graph& g, const Partition& p, const ScoreVariant& v) {
  return std::visit(
      [&](const auto& x) -> ScaledScore {
        if constexpr (std::is_same_v<std::decay_t<decltype(x)>, Standard>) {
          return modularity(g, p, x);
        } else {
          return flat_modularity(g, p, x);
        }
      },
      v);
}

ScaledScore merge_delta(const MergeState& state, std::uint32_t i, std::uint32_t j,
                        const ScoreVariant& v) {
  if (i == j || !state.is_live(i) || !state.is_live(j)) {
    throw UnknownClusterError("merge_delta: clusters " + std::to_string(i) + " and " +
                              std::to_string(j) + " are not two distinct live clusters");
  }
  return ScaledScore{
      merge_delta_numerator(v, state.twice_edges(), state.edges_between(i, j),
                            state.degree_sum(i), state.degree_sum(j), state.size(i),
                            state.size(j)),
      score_denominator(state.twice_edges(), v)};
}

}  // namespace flatmod
