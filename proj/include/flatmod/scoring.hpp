#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "flatmod/graph.hpp"
#include "flatmod/partition.hpp"

namespace flatmod {

using Wide = __int128;

std::string to_string(Wide value);
/// Throws ParseError on anything but an optionally signed decimal integer.
Wide parse_wide(std::string_view text);

/// Standard modularity with resolution r = percent / 100, 0 <= percent <= 100.
struct Standard {
  std::int32_t percent = 100;

  /// Parses "0.39", ".39", "1", "1.0" exactly; at most two decimal digits.
  static Standard parse(std::string_view text);
  double resolution() const { return percent / 100.0; }
  /// Two-decimal form, e.g. "0.39".
  std::string str() const;

  friend bool operator==(const Standard&, const Standard&) = default;
};

/// Flat modularity with integer penalty multiplier R >= 0.
struct Flat {
  std::int64_t multiplier = 0;

  static Flat parse(std::string_view text);
  std::string str() const { return std::to_string(multiplier); }

  friend bool operator==(const Flat&, const Flat&) = default;
};

using ScoreVariant = std::variant<Standard, Flat>;

/// "standard" or "flat".
std::string variant_name(const ScoreVariant& v);
/// "0.39" for Standard, "98" for Flat.
std::string param_string(const ScoreVariant& v);
/// Parameter as a real number, for ordering and plotting.
double param_value(const ScoreVariant& v);
/// Builds a variant from its name and parameter text.
ScoreVariant make_variant(std::string_view name, std::string_view param);

/// Exact score or score difference, numerator / denominator.
///
/// Every value produced for one graph and variant shares the denominator
/// returned by `score_denominator`, so numerators compare directly. Equality
/// and ordering below cross-multiply and so also work across variants.
struct ScaledScore {
  Wide numerator = 0;
  Wide denominator = 1;

  double value() const {
    return static_cast<double>(numerator) / static_cast<double>(denominator);
  }

  friend bool operator==(const ScaledScore& a, const ScaledScore& b) {
    return a.numerator * b.denominator == b.numerator * a.denominator;
  }
  friend std::strong_ordering operator<=>(const ScaledScore& a, const ScaledScore& b) {
    return a.numerator * b.denominator <=> b.numerator * a.denominator;
  }
};

/// 100 * (2L)^2 for Standard, (2L)^2 for Flat.
Wide score_denominator(std::int64_t twice_edges, const ScoreVariant& v);

/// Per-cluster aggregates of a partition.
struct ClusterStats {
  std::vector<std::int64_t> internal_edges;  ///< m_c
  std::vector<std::int64_t> degree_sum;      ///< a_c
  std::vector<std::int64_t> size;            ///< n_c
};

ClusterStats cluster_stats(const Graph& g, const Partition& p);

/// Q_r = (1/2L) sum_v sum_w C_vw (r A_vw - k_v k_w / 2L), summed over ordered
/// pairs including v = w. Requires L > 0 (throws EmptyGraphError otherwise)
/// and a partition over the same vertex set (throws VertexSetMismatchError).
ScaledScore modularity(const Graph& g, const Partition& p, Standard r);

/// Q_R = (1/2L) sum_v sum_w C_vw (A_vw - R / 2L), same conventions.
ScaledScore flat_modularity(const Graph& g, const Partition& p, Flat R);

ScaledScore score(const Graph& g, const Partition& p, const ScoreVariant& v);

/// Numerator of the merge delta over `score_denominator`:
///   Standard: 2 p e_ij 2L - 200 a_i a_j
///   Flat:     2 e_ij 2L - 2 R n_i n_j
inline Wide merge_delta_numerator(const ScoreVariant& v, std::int64_t twice_edges,
                                  std::int64_t edges_between, std::int64_t degree_i,
                                  std::int64_t degree_j, std::int64_t size_i,
                                  std::int64_t size_j) {
  if (const auto* s = std::get_if<Standard>(&v)) {
    return Wide{2} * s->percent * edges_between * twice_edges -
           Wide{200} * degree_i * degree_j;
  }
  const auto& f = std::get<Flat>(v);
  return Wide{2} * edges_between * twice_edges - Wide{2} * f.multiplier * size_i * size_j;
}

class MergeState;

/// Exact change in score from merging live clusters i and j of `state`.
/// Throws UnknownClusterError if either is not live or i == j.
ScaledScore merge_delta(const MergeState& state, std::uint32_t i, std::uint32_t j,
                        const ScoreVariant& v);

}  // namespace flatmod
