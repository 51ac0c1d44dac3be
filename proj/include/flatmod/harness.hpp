#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "flatmod/config.hpp"
#include "flatmod/lfr.hpp"
#include "flatmod/scoring.hpp"

namespace flatmod {

/// Order-statistic summary; every value is an element of the sample.
struct Quartiles {
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
};

/// Sorted sample at zero-based indices floor((m-1)/4), floor((m-1)/2),
/// floor(3(m-1)/4). Throws EmptyInputError on an empty sample.
Quartiles quartiles(std::vector<double> samples);

/// One clustering run scored against ground truth.
struct SweepRow {
  double gamma = 0.0;
  double mu = 0.0;
  std::uint64_t seed = 0;
  ScoreVariant variant;
  double mcc_all = 0.0;
  double mcc_lowhigh = 0.0;
};

struct SkippedSeed {
  double gamma = 0.0;
  double mu = 0.0;
  std::uint64_t seed = 0;
  std::string reason;
};

struct SweepResult {
  std::vector<SweepRow> rows;  ///< sorted by (gamma, mu, seed, variant, param)
  std::vector<SkippedSeed> skipped;
};

/// MCC values are kept at this many decimals everywhere, so that summaries
/// reproduce per-seed CSV entries verbatim and resumed sweeps match fresh ones.
inline constexpr int kMccDecimals = 8;
double round_mcc(double value);
std::string format_mcc(double value);

/// Canonical row order: gamma, mu, seed, standard before flat, parameter.
bool row_less(const SweepRow& a, const SweepRow& b);

/// Per-seed CSV: gamma,mu,seed,variant,param,mcc_all,mcc_lowhigh.
void write_per_seed_csv(std::ostream& out, const std::vector<SweepRow>& rows);
std::vector<SweepRow> parse_per_seed_csv(const std::string& text);
SweepResult load_sweep_result(const std::string& output_dir);

/// Cached benchmark graph for one (gamma, mu, seed), generated on first use
/// under <output_dir>/graphs.
LfrGraph cached_graph(const ExperimentConfig& config, double gamma, double mu,
                      std::uint64_t seed);

/// Scores one clustering run. `low_cut`/`high_cut` define the restricted MCC.
SweepRow evaluate_run(const LfrGraph& bench, const ScoreVariant& variant, double gamma,
                      double mu, std::uint64_t seed, std::uint32_t low_cut,
                      std::uint32_t high_cut);

/// Runs every (gamma, mu, seed, variant, parameter) cell and writes
/// per_seed.csv, summary.csv and skipped.csv under output_dir. Cells already
/// present in <output_dir>/cells are reused. Output does not depend on
/// `parallelism`. Seeds whose generation fails are logged and skipped.
SweepResult run_sweep(const ExperimentConfig& config, std::ostream* log = nullptr);

struct SummaryRow {
  double gamma = 0.0;
  double mu = 0.0;
  ScoreVariant variant;
  std::size_t samples = 0;
  Quartiles all;
  Quartiles lowhigh;
};

std::vector<SummaryRow> summarize(const SweepResult& result);
void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);

/// Per (gamma, mu, variant): the parameter with the greatest median MCC over
/// all pairs; ties go to the smaller parameter.
std::vector<SummaryRow> best_parameters(const SweepResult& result);

/// Writes table_all_mu<mu>.csv and table_lowhigh_mu<mu>.csv (columns
/// gamma,variant,param,q1,median,q3) plus best_params.csv into `report_dir`.
/// When the cuts differ from the ones the sweep was run with, the restricted
/// MCC is recomputed at the best parameters from the cached graphs.
/// Throws MissingResultsError when the result has no rows.
void report_tables(const SweepResult& result, const ExperimentConfig& config,
                   const std::string& report_dir, std::uint32_t low_cut, std::uint32_t high_cut);

/// Seeds realizing the q1, median and q3 standard-variant MCC at the best r for
/// one (gamma, mu); empty when there are no standard rows.
std::vector<std::uint64_t> quartile_seeds(const SweepResult& result, double gamma, double mu);

/// Sweep curves per variant and mu, the standard-vs-flat scatter per (gamma,
/// mu), and bucket heatmaps (SVG + CSV) for the quartile seeds. Throws
/// MissingResultsError when the result has no rows.
void report_figures(const SweepResult& result, const ExperimentConfig& config,
                    const std::string& report_dir);

/// Scatter of paired per-seed MCC values, with marginal-median guides and the
/// y = x diagonal.
std::string scatter_svg(const std::vector<double>& x, const std::vector<double>& y,
                        const std::string& title, const std::string& x_label,
                        const std::string& y_label);

}  // namespace flatmod
