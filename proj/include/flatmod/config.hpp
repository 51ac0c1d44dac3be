#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "flatmod/lfr.hpp"
#include "flatmod/scoring.hpp"

namespace flatmod {

/// Everything a sweep needs. `lfr` is a template: its tau1, mu and seed are
/// replaced per (gamma, mu, seed) cell.
struct ExperimentConfig {
  LfrParams lfr;
  std::vector<double> gammas{2.5};
  std::vector<double> mus{0.5};
  std::uint64_t seed_first = 0;
  std::uint64_t seed_last = 24;
  std::vector<Standard> r_grid;
  std::vector<Flat> R_grid;
  std::string output_dir = "sweep_out";
  unsigned parallelism = 1;
  std::uint32_t low_cut = 20;
  std::uint32_t high_cut = 40;

  /// 25 seeds, r in 0.00..1.00 step 0.05, R in 0..200 step 10.
  static ExperimentConfig desk_defaults();
  /// 1001 seeds, three gammas, r step 0.01, every even R in 0..200.
  static ExperimentConfig paper_scale();

  std::size_t seed_count() const { return seed_last - seed_first + 1; }
  /// Throws ConfigError. Either grid may be empty, but not both.
  void validate() const;
};

/// Sets one key from its text value. Keys: gammas, mus, seeds, r_grid, R_grid,
/// output_dir, parallelism, low_cut, high_cut, n, tau2, average_degree,
/// max_degree, min_community, max_community. Throws ConfigError.
void apply_setting(ExperimentConfig& config, std::string_view key, std::string_view value);

/// key=value lines ('#' comments) or a JSON object with the same keys; JSON
/// values may be numbers, strings, or arrays.
ExperimentConfig parse_config(std::string_view text, ExperimentConfig base = {});
ExperimentConfig load_config_file(const std::string& path, ExperimentConfig base = {});

/// "0.30..0.50:0.01", "0.30..0.50" (step 0.01), or "0.3,0.39,0.5".
std::vector<Standard> parse_r_grid(std::string_view text);
/// "80..120:2", "80..120" (step 1), or "80,98,120".
std::vector<Flat> parse_R_grid(std::string_view text);
/// "a..b" inclusive, or a single seed.
std::pair<std::uint64_t, std::uint64_t> parse_seed_range(std::string_view text);
std::vector<double> parse_real_list(std::string_view text);

/// Two-decimal label used in file names and CSVs, e.g. "2.50".
std::string label(double value);

}  // namespace flatmod
