#include "flatmod/lfr.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <unordered_set>

#include "flatmod/error.hpp"
#include "flatmod/svg.hpp"

namespace flatmod {

namespace {

constexpr int kAttempts = 100;

// Integral of x^e over [lo, hi].
double power_integral(double e, double lo, double hi) {
  if (std::abs(e + 1.0) < 1e-12) return std::log(hi / lo);
  return (std::pow(hi, e + 1.0) - std::pow(lo, e + 1.0)) / (e + 1.0);
}

double draw_powerlaw(double tau, double lo, double hi, Stream& rng) {
  const double u = rng.uniform();
  if (hi - lo < 1e-12) return hi;
  if (std::abs(tau - 1.0) < 1e-12) return lo * std::pow(hi / lo, u);
  const double a = std::pow(lo, 1.0 - tau);
  const double b = std::pow(hi, 1.0 - tau);
  return std::pow(a + u * (b - a), 1.0 / (1.0 - tau));
}

std::uint32_t round_half_up(double x) { return static_cast<std::uint32_t>(std::floor(x + 0.5)); }

using EdgeKey = std::uint64_t;

EdgeKey key_of(VertexId u, VertexId v) {
  if (u > v) std::swap(u, v);
  return (static_cast<EdgeKey>(u) << 32) | v;
}

// Random stub matching for one stage. Invalid pairs (rejected by `allowed` or
// already present) are reshuffled among themselves; whatever still fails is
// repaired by swapping against a random edge of the same stage:
// (u, v) + (x, y) -> (u, x) + (v, y). Degrees are preserved throughout.
template <typename Allowed>
bool wire_stubs(std::vector<VertexId> stubs, const Allowed& allowed,
                std::unordered_set<EdgeKey>& present, std::vector<Edge>& out, Stream& rng) {
  std::vector<Edge> stage;
  stage.reserve(stubs.size() / 2);
  std::size_t stalled = 0;
  for (int pass = 0; pass < kAttempts && !stubs.empty() && stalled < 3; ++pass) {
    rng.shuffle(std::span<VertexId>(stubs));
    std::vector<VertexId> leftover;
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
      const VertexId u = stubs[i];
      const VertexId v = stubs[i + 1];
      if (allowed(u, v) && present.insert(key_of(u, v)).second) {
        stage.push_back({u, v});
      } else {
        leftover.push_back(u);
        leftover.push_back(v);
      }
    }
    stalled = leftover.size() == stubs.size() ? stalled + 1 : 0;
    stubs = std::move(leftover);
  }

  for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
    const VertexId u = stubs[i];
    const VertexId v = stubs[i + 1];
    bool placed = false;
    for (int tries = 0; tries < 100 * kAttempts && !stage.empty(); ++tries) {
      const std::size_t idx = static_cast<std::size_t>(rng.below(stage.size()));
      VertexId x = stage[idx].u;
      VertexId y = stage[idx].v;
      if (rng.below(2) == 1) std::swap(x, y);
      if (!allowed(u, x) || !allowed(v, y)) continue;
      const EdgeKey first = key_of(u, x);
      const EdgeKey second = key_of(v, y);
      if (first == second || present.count(first) != 0 || present.count(second) != 0) continue;
      present.erase(key_of(x, y));
      present.insert(first);
      present.insert(second);
      stage[idx] = {u, x};
      stage.push_back({v, y});
      placed = true;
      break;
    }
    if (!placed) {
      for (const auto& e : stage) present.erase(key_of(e.u, e.v));
      return false;
    }
  }
  out.insert(out.end(), stage.begin(), stage.end());
  return true;
}

// Deterministic Havel-Hakimi realization of `need` over `vertices`, then
// degree-preserving double-edge swaps to randomize it. Used when stub
// matching gets stuck on a dense community. False if not graphical.
bool wire_dense(const std::vector<VertexId>& vertices, std::vector<std::uint32_t> need,
                std::unordered_set<EdgeKey>& present, std::vector<Edge>& out, Stream& rng) {
  std::vector<Edge> stage;
  std::vector<std::size_t> order(vertices.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  while (true) {
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return need[a] > need[b]; });
    const std::size_t top = order.front();
    const std::uint32_t d = need[top];
    if (d == 0) break;
    if (d >= order.size()) return false;
    need[top] = 0;
    for (std::size_t k = 1; k <= d; ++k) {
      const std::size_t other = order[k];
      if (need[other] == 0) return false;
      --need[other];
      stage.push_back({vertices[top], vertices[other]});
    }
  }
  std::unordered_set<EdgeKey> local;
  for (const auto& e : stage) local.insert(key_of(e.u, e.v));
  const std::size_t swaps = 10 * stage.size();
  for (std::size_t i = 0; i < swaps && stage.size() > 1; ++i) {
    const std::size_t p = static_cast<std::size_t>(rng.below(stage.size()));
    const std::size_t q = static_cast<std::size_t>(rng.below(stage.size()));
    if (p == q) continue;
    VertexId a = stage[p].u, b = stage[p].v, c = stage[q].u, d = stage[q].v;
    if (rng.below(2) == 1) std::swap(c, d);
    if (a == d || c == b) continue;
    const EdgeKey ad = key_of(a, d), cb = key_of(c, b);
    if (ad == cb || local.count(ad) != 0 || local.count(cb) != 0) continue;
    local.erase(key_of(a, b));
    local.erase(key_of(c, d));
    local.insert(ad);
    local.insert(cb);
    stage[p] = {a, d};
    stage[q] = {c, b};
  }
  for (const auto& e : stage) present.insert(key_of(e.u, e.v));
  out.insert(out.end(), stage.begin(), stage.end());
  return true;
}

// Places every vertex in a community whose size exceeds its internal degree.
// Vertices with the largest internal degree go first; each picks a free slot
// uniformly among the eligible communities.
bool assign_communities(const std::vector<std::uint32_t>& internal,
                        const std::vector<std::size_t>& sizes, std::vector<ClusterId>& community,
                        Stream& rng) {
  const std::size_t n = internal.size();
  std::vector<VertexId> order(n);
  std::iota(order.begin(), order.end(), VertexId{0});
  rng.shuffle(std::span<VertexId>(order));
  std::stable_sort(order.begin(), order.end(),
                   [&](VertexId a, VertexId b) { return internal[a] > internal[b]; });

  std::vector<std::size_t> free_slots(sizes);
  community.assign(n, 0);
  for (VertexId v : order) {
    std::uint64_t eligible = 0;
    for (std::size_t c = 0; c < sizes.size(); ++c) {
      if (sizes[c] > internal[v]) eligible += free_slots[c];
    }
    if (eligible == 0) return false;
    std::uint64_t pick = rng.below(eligible);
    for (std::size_t c = 0; c < sizes.size(); ++c) {
      if (sizes[c] <= internal[v]) continue;
      if (pick < free_slots[c]) {
        community[v] = static_cast<ClusterId>(c);
        --free_slots[c];
        break;
      }
      pick -= free_slots[c];
    }
  }
  return true;
}

}  // namespace

void LfrParams::validate() const {
  const auto fail = [](const std::string& what) { throw ConfigError("LFR parameters: " + what); };
  if (n == 0) fail("n must be positive");
  if (!(mu > 0.0 && mu < 1.0)) fail("mu must lie in (0, 1)");
  if (!(tau1 > 1.0)) fail("tau1 must exceed 1");
  if (!(tau2 > 1.0)) fail("tau2 must exceed 1");
  if (min_community == 0) fail("min_community must be positive");
  if (min_community > max_community) fail("min_community exceeds max_community");
  if (max_community > n) fail("max_community exceeds n");
  if (!(average_degree > 0.0)) fail("average_degree must be positive");
  if (average_degree > max_degree) fail("average_degree exceeds max_degree");
}

double truncated_powerlaw_mean(double tau, double lo, double hi) {
  if (hi - lo < 1e-12) return hi;
  return power_integral(1.0 - tau, lo, hi) / power_integral(-tau, lo, hi);
}

double solve_min_degree(double tau, double average_degree, double max_degree) {
  constexpr double kTolerance = 1e-7;
  if (max_degree < 1.0 || average_degree > max_degree + kTolerance) {
    throw InfeasibleDegreesError("target mean degree " + fixed(average_degree, 3) +
                                 " exceeds the maximum degree " + fixed(max_degree, 0));
  }
  if (average_degree >= max_degree - kTolerance) return max_degree;
  if (truncated_powerlaw_mean(tau, 1.0, max_degree) > average_degree + kTolerance) {
    throw InfeasibleDegreesError("target mean degree " + fixed(average_degree, 3) +
                                 " is below the smallest achievable mean");
  }
  double lo = 1.0;
  double hi = max_degree;
  double mid = lo;
  for (int iter = 0; iter < 500; ++iter) {
    mid = 0.5 * (lo + hi);
    const double mean = truncated_powerlaw_mean(tau, mid, max_degree);
    if (std::abs(mean - average_degree) < kTolerance) return mid;
    (mean < average_degree ? lo : hi) = mid;
  }
  return mid;
}

std::uint32_t internal_degree(std::uint32_t k, double mu) {
  // Tiny bias so that exact halves survive the (1 - mu) representation error.
  return std::min(k, round_half_up((1.0 - mu) * k + 1e-9));
}

std::vector<std::uint32_t> sample_powerlaw_degrees(const LfrParams& params, Stream& rng) {
  const double cap = params.max_degree;
  const double lo = solve_min_degree(params.tau1, params.average_degree, cap);
  const auto draw = [&] {
    const std::uint32_t k = round_half_up(draw_powerlaw(params.tau1, lo, cap, rng));
    return std::clamp<std::uint32_t>(k, 1, params.max_degree);
  };
  std::vector<std::uint32_t> degrees(params.n);
  std::uint64_t sum = 0;
  for (auto& k : degrees) {
    k = draw();
    sum += k;
  }
  if (sum % 2 == 1) {
    auto& k = degrees[rng.below(degrees.size())];
    const std::uint32_t old = k;
    for (int tries = 0; tries < 100 * kAttempts && (k % 2) == (old % 2); ++tries) k = draw();
    if ((k % 2) == (old % 2)) {
      // Collapsed distribution: every draw has the same parity.
      k = old > 1 ? old - 1 : old + 1;
    }
  }
  return degrees;
}

std::vector<std::size_t> sample_community_sizes(const LfrParams& params, Stream& rng) {
  const std::size_t lo = params.min_community;
  const std::size_t hi = params.max_community;
  const std::size_t n = params.n;
  // Some count k of communities must satisfy k * lo <= n <= k * hi.
  const std::size_t fewest = (n + hi - 1) / hi;
  if (lo == 0 || fewest * lo > n) {
    throw InfeasiblePartitionError("cannot split " + std::to_string(n) +
                                   " vertices into communities of size [" +
                                   std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }

  std::vector<double> cumulative;
  double total = 0.0;
  for (std::size_t s = lo; s <= hi; ++s) {
    total += std::pow(static_cast<double>(s), -params.tau2);
    cumulative.push_back(total);
  }
  const auto draw = [&] {
    const double u = rng.uniform() * total;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    if (it == cumulative.end()) --it;
    return lo + static_cast<std::size_t>(it - cumulative.begin());
  };

  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    std::vector<std::size_t> sizes;
    std::size_t sum = 0;
    while (sum < n) {
      sizes.push_back(draw());
      sum += sizes.back();
    }
    std::size_t excess = sum - n;
    bool repaired = true;
    while (excess > 0) {
      auto largest = std::max_element(sizes.begin(), sizes.end());
      if (*largest <= lo) {
        repaired = false;
        break;
      }
      --*largest;
      --excess;
    }
    if (repaired) return sizes;
  }
  throw InfeasiblePartitionError("community sizes for n=" + std::to_string(n) +
                                 " not found within " + std::to_string(kAttempts) + " attempts");
}

LfrGraph generate(const LfrParams& params) {
  params.validate();
  const std::size_t n = params.n;

  Stream degree_rng(params.seed, "degrees");
  const std::vector<std::uint32_t> degree = sample_powerlaw_degrees(params, degree_rng);

  std::vector<std::uint32_t> internal(n);
  for (std::size_t v = 0; v < n; ++v) internal[v] = internal_degree(degree[v], params.mu);

  std::vector<std::size_t> sizes;
  std::vector<ClusterId> community;
  std::vector<Edge> edges;
  std::string failed_stage;
  bool done = false;
  for (int attempt = 0; attempt < kAttempts && !done; ++attempt) {
    const auto a = static_cast<std::uint64_t>(attempt);
    Stream size_rng(params.seed, "communities", a);
    sizes = sample_community_sizes(params, size_rng);
    Stream assign_rng(params.seed, "assign", a);
    if (!assign_communities(internal, sizes, community, assign_rng)) {
      failed_stage = "community assignment";
      continue;
    }
    std::vector<std::vector<VertexId>> members(sizes.size());
    for (VertexId v = 0; v < n; ++v) members[community[v]].push_back(v);

    // Internal stub count per community must be even; move one stub between
    // the internal and external side of a single vertex when it is not.
    std::vector<std::uint32_t> inner = internal;
    for (std::size_t c = 0; c < members.size(); ++c) {
      std::uint64_t stubs = 0;
      for (VertexId v : members[c]) stubs += inner[v];
      if (stubs % 2 == 0) continue;
      const auto limit = [&](VertexId v) {
        return std::min<std::uint32_t>(degree[v], static_cast<std::uint32_t>(sizes[c] - 1));
      };
      auto up = std::find_if(members[c].begin(), members[c].end(),
                             [&](VertexId v) { return inner[v] < limit(v); });
      if (up != members[c].end()) {
        ++inner[*up];
      } else {
        auto down = std::find_if(members[c].begin(), members[c].end(),
                                 [&](VertexId v) { return inner[v] > 0; });
        --inner[*down];
      }
    }

    Stream wire_rng(params.seed, "wiring", a);
    std::unordered_set<EdgeKey> present;
    present.reserve(static_cast<std::size_t>(params.average_degree * static_cast<double>(n)));
    edges.clear();
    bool wired = true;
    for (std::size_t c = 0; c < members.size() && wired; ++c) {
      std::vector<VertexId> stubs;
      for (VertexId v : members[c]) stubs.insert(stubs.end(), inner[v], v);
      if (wire_stubs(stubs, [](VertexId u, VertexId v) { return u != v; }, present, edges,
                     wire_rng)) {
        continue;
      }
      // stuck on a dense community: build it directly instead
      std::vector<std::uint32_t> need;
      for (VertexId v : members[c]) need.push_back(inner[v]);
      wired = wire_dense(members[c], need, present, edges, wire_rng);
      if (!wired) failed_stage = "internal wiring of community " + std::to_string(c);
    }
    if (!wired) continue;
    std::vector<VertexId> stubs;
    for (VertexId v = 0; v < n; ++v) stubs.insert(stubs.end(), degree[v] - inner[v], v);
    wired = wire_stubs(
        stubs, [&](VertexId u, VertexId v) { return community[u] != community[v]; }, present,
        edges, wire_rng);
    if (!wired) {
      failed_stage = "external wiring";
      continue;
    }
    done = true;
  }
  if (!done) {
    throw GenerationFailure(failed_stage + ": no valid graph after " +
                            std::to_string(kAttempts) + " attempts");
  }

  LfrGraph out;
  out.graph = Graph::from_edges(n, edges);
  out.truth.membership = Partition(std::move(community));
  out.truth.community_sizes = sizes;

  auto& report = out.report;
  report.seed = params.seed;
  report.mean_degree = out.graph.average_degree();
  report.max_degree = out.graph.max_degree();
  const auto fractions = external_fractions(out.graph, out.truth.membership);
  report.mean_mixing =
      fractions.empty() ? 0.0
                        : std::accumulate(fractions.begin(), fractions.end(), 0.0) /
                              static_cast<double>(fractions.size());
  report.community_count = sizes.size();
  report.connected = connected_components(out.graph) == 1;
  return out;
}

void write_report(std::ostream& out, const GenerationReport& r) {
  out << "seed=" << r.seed << '\n'
      << "mean_degree=" << fixed(r.mean_degree, 4) << '\n'
      << "max_degree=" << r.max_degree << '\n'
      << "mean_mixing=" << fixed(r.mean_mixing, 4) << '\n'
      << "community_count=" << r.community_count << '\n'
      << "connected=" << (r.connected ? "yes" : "no") << '\n';
}

std::vector<double> external_fractions(const Graph& g, const Partition& membership) {
  std::vector<double> out(g.vertex_count(), 0.0);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (g.degree(v) == 0) continue;
    std::size_t external = 0;
    for (VertexId w : g.neighbors(v)) external += membership[w] != membership[v] ? 1 : 0;
    out[v] = static_cast<double>(external) / g.degree(v);
  }
  return out;
}

}  // namespace flatmod
