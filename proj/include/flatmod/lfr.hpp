#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "flatmod/graph.hpp"
#include "flatmod/partition.hpp"
#include "flatmod/rng.hpp"

namespace flatmod {

/// LFR benchmark parameters. Defaults are the 1000-vertex setup: degree
/// exponent 2.5, community-size exponent 2, mixing 0.5, mean degree 20 capped
/// at 50, community sizes in [20, 100].
struct LfrParams {
  std::size_t n = 1000;
  double tau1 = 2.5;
  double tau2 = 2.0;
  double mu = 0.5;
  double average_degree = 20.0;
  std::uint32_t max_degree = 50;
  std::uint32_t min_community = 20;
  std::uint32_t max_community = 100;
  std::uint64_t seed = 0;

  /// Throws ConfigError when an invariant does not hold.
  void validate() const;
};

struct GroundTruth {
  Partition membership;
  std::vector<std::size_t> community_sizes;
};

struct GenerationReport {
  std::uint64_t seed = 0;
  double mean_degree = 0.0;
  std::uint32_t max_degree = 0;
  double mean_mixing = 0.0;
  std::size_t community_count = 0;
  bool connected = false;
};

struct LfrGraph {
  Graph graph;
  GroundTruth truth;
  GenerationReport report;
};

/// Mean of the continuous power law x^-tau truncated to [lo, hi].
double truncated_powerlaw_mean(double tau, double lo, double hi);

/// Lower cutoff in [1, max_degree] whose truncated power-law mean equals
/// `average_degree`, by bisection to 1e-7. Throws InfeasibleDegreesError if the
/// target is outside the achievable range.
double solve_min_degree(double tau, double average_degree, double max_degree);

/// Degrees from the continuous truncated power law, rounded half up, with an
/// even sum (one entry is redrawn if needed).
std::vector<std::uint32_t> sample_powerlaw_degrees(const LfrParams& params, Stream& rng);

/// Community sizes from the discrete power law s^-tau2 on
/// [min_community, max_community], summing exactly to n. Overshoot is removed
/// from the largest communities; if that is impossible the list is redrawn,
/// up to 100 times, before InfeasiblePartitionError.
std::vector<std::size_t> sample_community_sizes(const LfrParams& params, Stream& rng);

/// Internal degree for a vertex of total degree k: round half up of (1 - mu) k.
std::uint32_t internal_degree(std::uint32_t k, double mu);

/// Full benchmark graph. Pure function of `params`; throws GenerationFailure
/// naming the stage that ran out of its 100-attempt budget.
LfrGraph generate(const LfrParams& params);

/// key=value lines: seed, mean_degree, max_degree, mean_mixing,
/// community_count, connected (yes/no).
void write_report(std::ostream& out, const GenerationReport& r);

/// Per-vertex fraction of edges leaving the vertex's community (0 for
/// isolated vertices).
std::vector<double> external_fractions(const Graph& g, const Partition& membership);

}  // namespace flatmod
