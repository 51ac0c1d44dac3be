#include "flatmod/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "flatmod/error.hpp"
#include "flatmod/greedy.hpp"
#include "flatmod/metrics.hpp"
#include "flatmod/svg.hpp"

namespace fs = std::filesystem;

namespace flatmod {

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Writes through a temporary so a crash never leaves a truncated file behind.
void write_file(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path());
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + tmp.string() + "'");
    out << content;
  }
  fs::rename(tmp, path);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream in(line);
  std::string field;
  while (std::getline(in, field, ',')) out.push_back(field);
  return out;
}

std::string graph_stem(double gamma, double mu, std::uint64_t seed) {
  return "g" + label(gamma) + "_mu" + label(mu) + "_s" + std::to_string(seed);
}

// Cache directory keyed on the LFR template, so a changed template never
// reuses stale graphs.
std::string lfr_fingerprint(const LfrParams& p) {
  std::ostringstream key;
  key << "n=" << p.n << ";tau2=" << fixed(p.tau2, 6) << ";avg=" << fixed(p.average_degree, 6)
      << ";max=" << p.max_degree << ";cmin=" << p.min_community << ";cmax=" << p.max_community;
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash_tag(key.str())));
  return buf;
}

fs::path graph_dir(const ExperimentConfig& c) {
  return fs::path(c.output_dir) / "graphs" / lfr_fingerprint(c.lfr);
}

fs::path cell_dir(const ExperimentConfig& c) {
  return fs::path(c.output_dir) / "cells" / lfr_fingerprint(c.lfr);
}

std::vector<ScoreVariant> grid_variants(const ExperimentConfig& c) {
  std::vector<ScoreVariant> out;
  for (const auto& r : c.r_grid) out.emplace_back(r);
  for (const auto& R : c.R_grid) out.emplace_back(R);
  return out;
}

int variant_rank(const ScoreVariant& v) { return std::holds_alternative<Standard>(v) ? 0 : 1; }

bool same_variant(const ScoreVariant& a, const ScoreVariant& b) {
  return variant_rank(a) == variant_rank(b) && param_string(a) == param_string(b);
}

bool same_setting(double a, double b) { return label(a) == label(b); }

struct CellKey {
  int rank;
  double param;
  friend auto operator<=>(const CellKey&, const CellKey&) = default;
};

CellKey cell_key(const ScoreVariant& v) { return {variant_rank(v), param_value(v)}; }

std::string cell_header(std::uint32_t low_cut, std::uint32_t high_cut) {
  return "# low_cut=" + std::to_string(low_cut) + " high_cut=" + std::to_string(high_cut);
}

// All rows for one graph: cached cells plus freshly computed missing ones.
std::vector<SweepRow> run_graph_unit(const ExperimentConfig& config, double gamma, double mu,
                                     std::uint64_t seed, std::size_t& cached_count) {
  const fs::path cell_path = cell_dir(config) / (graph_stem(gamma, mu, seed) + ".csv");
  const std::string header = cell_header(config.low_cut, config.high_cut);

  std::map<CellKey, SweepRow> cells;
  if (fs::exists(cell_path)) {
    std::istringstream in(read_file(cell_path));
    std::string line;
    if (std::getline(in, line) && line == header) {
      while (std::getline(in, line)) {
        const auto f = split_csv(line);
        if (f.size() != 4) continue;
        SweepRow row{gamma, mu, seed, make_variant(f[0], f[1]), std::stod(f[2]), std::stod(f[3])};
        cells.emplace(cell_key(row.variant), row);
      }
    }
  }

  std::vector<ScoreVariant> missing;
  for (const auto& v : grid_variants(config)) {
    if (!cells.contains(cell_key(v))) missing.push_back(v);
  }
  cached_count = grid_variants(config).size() - missing.size();

  if (!missing.empty()) {
    const LfrGraph bench = cached_graph(config, gamma, mu, seed);
    for (const auto& v : missing) {
      cells.emplace(cell_key(v),
                    evaluate_run(bench, v, gamma, mu, seed, config.low_cut, config.high_cut));
    }
    std::ostringstream out;
    out << header << '\n';
    for (const auto& [key, row] : cells) {
      out << variant_name(row.variant) << ',' << param_string(row.variant) << ','
          << format_mcc(row.mcc_all) << ',' << format_mcc(row.mcc_lowhigh) << '\n';
    }
    write_file(cell_path, out.str());
  }

  std::vector<SweepRow> rows;
  for (const auto& v : grid_variants(config)) rows.push_back(cells.at(cell_key(v)));
  return rows;
}

// Runs `count` jobs over `workers` threads; the first exception is rethrown.
template <typename Job>
void parallel_for(std::size_t count, unsigned workers, Job&& job) {
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        job(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(count);
      }
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(count)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
}

Quartiles column_quartiles(const std::vector<const SweepRow*>& rows, bool lowhigh) {
  std::vector<double> values;
  values.reserve(rows.size());
  for (const SweepRow* r : rows) values.push_back(lowhigh ? r->mcc_lowhigh : r->mcc_all);
  return quartiles(std::move(values));
}

std::string format_quartiles(const Quartiles& q) {
  return format_mcc(q.q1) + ',' + format_mcc(q.median) + ',' + format_mcc(q.q3);
}

std::vector<const SweepRow*> rows_for(const SweepResult& result, double gamma, double mu,
                                      const ScoreVariant& v) {
  std::vector<const SweepRow*> out;
  for (const auto& row : result.rows) {
    if (same_setting(row.gamma, gamma) && same_setting(row.mu, mu) &&
        same_variant(row.variant, v)) {
      out.push_back(&row);
    }
  }
  return out;
}

std::vector<std::pair<double, double>> settings_of(const SweepResult& result) {
  std::vector<std::pair<double, double>> out;
  for (const auto& row : result.rows) {
    if (std::none_of(out.begin(), out.end(), [&](const auto& s) {
          return same_setting(s.first, row.gamma) && same_setting(s.second, row.mu);
        })) {
      out.emplace_back(row.gamma, row.mu);
    }
  }
  return out;
}

const SummaryRow* find_best(const std::vector<SummaryRow>& best, double gamma, double mu,
                            int rank) {
  for (const auto& b : best) {
    if (same_setting(b.gamma, gamma) && same_setting(b.mu, mu) && variant_rank(b.variant) == rank) {
      return &b;
    }
  }
  return nullptr;
}

void require_rows(const SweepResult& result) {
  if (result.rows.empty()) throw MissingResultsError("sweep result has no rows");
}

std::string curve_svg(const SweepResult& result, const std::vector<SummaryRow>& summary,
                      double mu, int rank) {
  std::vector<double> gammas;
  double x_min = 1e300, x_max = -1e300, y_max = 0.1, y_min = 0.0;
  for (const auto& s : summary) {
    if (!same_setting(s.mu, mu) || variant_rank(s.variant) != rank) continue;
    if (std::none_of(gammas.begin(), gammas.end(),
                     [&](double g) { return same_setting(g, s.gamma); })) {
      gammas.push_back(s.gamma);
    }
    x_min = std::min(x_min, param_value(s.variant));
    x_max = std::max(x_max, param_value(s.variant));
    y_max = std::max(y_max, s.all.q3);
    y_min = std::min(y_min, s.all.q1);
  }
  (void)result;
  y_max = std::ceil(y_max * 10.0) / 10.0;
  y_min = std::floor(y_min * 10.0) / 10.0;
  if (x_max <= x_min) x_max = x_min + 1.0;

  SvgDocument svg(640, 440);
  const std::string name = rank == 0 ? "standard modularity" : "flat modularity";
  svg.text(320, 24, "MCC vs " + std::string(rank == 0 ? "r" : "R") + " (" + name + ", mu=" +
                        label(mu) + "): median with quartile band",
           13, "middle");
  PlotArea area{70, 40, 520, 330, x_min, x_max, y_min, y_max};
  area.draw_axes(svg, rank == 0 ? "resolution r" : "penalty multiplier R", "MCC");
  for (std::size_t gi = 0; gi < gammas.size(); ++gi) {
    const std::string& color = palette()[gi % palette().size()];
    std::vector<std::pair<double, double>> median, band_top, band_bottom;
    for (const auto& s : summary) {
      if (!same_setting(s.mu, mu) || variant_rank(s.variant) != rank ||
          !same_setting(s.gamma, gammas[gi])) {
        continue;
      }
      const double x = area.x(param_value(s.variant));
      median.emplace_back(x, area.y(s.all.median));
      band_top.emplace_back(x, area.y(s.all.q3));
      band_bottom.emplace_back(x, area.y(s.all.q1));
    }
    std::vector<std::pair<double, double>> band(band_top);
    band.insert(band.end(), band_bottom.rbegin(), band_bottom.rend());
    svg.polygon(band, color, 0.2);
    svg.polyline(median, color);
    svg.line(area.left + 10, area.top + 14 + 16.0 * static_cast<double>(gi), area.left + 30,
             area.top + 14 + 16.0 * static_cast<double>(gi), color, 2);
    svg.text(area.left + 36, area.top + 18 + 16.0 * static_cast<double>(gi),
             "gamma = " + label(gammas[gi]), 11);
  }
  return svg.str();
}

}  // namespace

Quartiles quartiles(std::vector<double> samples) {
  if (samples.empty()) throw EmptyInputError("quartiles of an empty sample");
  std::sort(samples.begin(), samples.end());
  const std::size_t m = samples.size();
  return {samples[(m - 1) / 4], samples[(m - 1) / 2], samples[3 * (m - 1) / 4]};
}

double round_mcc(double value) { return std::stod(format_mcc(value)); }

std::string format_mcc(double value) { return fixed(value, kMccDecimals); }

bool row_less(const SweepRow& a, const SweepRow& b) {
  const auto key = [](const SweepRow& r) {
    return std::tuple{std::stod(label(r.gamma)), std::stod(label(r.mu)), r.seed,
                      variant_rank(r.variant), param_value(r.variant)};
  };
  return key(a) < key(b);
}

void write_per_seed_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "gamma,mu,seed,variant,param,mcc_all,mcc_lowhigh\n";
  for (const auto& r : rows) {
    out << label(r.gamma) << ',' << label(r.mu) << ',' << r.seed << ',' << variant_name(r.variant)
        << ',' << param_string(r.variant) << ',' << format_mcc(r.mcc_all) << ','
        << format_mcc(r.mcc_lowhigh) << '\n';
  }
}

std::vector<SweepRow> parse_per_seed_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "gamma,mu,seed,variant,param,mcc_all,mcc_lowhigh") {
    throw ParseError("per-seed CSV: missing or unexpected header");
  }
  std::vector<SweepRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split_csv(line);
    if (f.size() != 7) {
      throw ParseError("per-seed CSV line " + std::to_string(line_no) + ": expected 7 fields");
    }
    try {
      rows.push_back({std::stod(f[0]), std::stod(f[1]), std::stoull(f[2]), make_variant(f[3], f[4]),
                      std::stod(f[5]), std::stod(f[6])});
    } catch (const std::invalid_argument&) {
      throw ParseError("per-seed CSV line " + std::to_string(line_no) + ": malformed number");
    }
  }
  return rows;
}

SweepResult load_sweep_result(const std::string& output_dir) {
  const fs::path path = fs::path(output_dir) / "per_seed.csv";
  if (!fs::exists(path)) {
    throw MissingResultsError("no per_seed.csv in '" + output_dir + "'; run the sweep first");
  }
  SweepResult result;
  result.rows = parse_per_seed_csv(read_file(path));
  const fs::path skipped = fs::path(output_dir) / "skipped.csv";
  if (fs::exists(skipped)) {
    std::istringstream in(read_file(skipped));
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
      const auto f = split_csv(line);
      if (f.size() < 4) continue;
      result.skipped.push_back({std::stod(f[0]), std::stod(f[1]), std::stoull(f[2]), f[3]});
    }
  }
  return result;
}

LfrGraph cached_graph(const ExperimentConfig& config, double gamma, double mu,
                      std::uint64_t seed) {
  const fs::path dir = graph_dir(config);
  const std::string stem = graph_stem(gamma, mu, seed);
  const fs::path edges = dir / (stem + ".edges");
  const fs::path membership = dir / (stem + ".membership");
  const fs::path report = dir / (stem + ".report");

  if (fs::exists(edges) && fs::exists(membership)) {
    LfrGraph out;
    out.graph = load_edge_list_file(edges.string());
    out.truth.membership = load_partition_file(membership.string());
    for (auto s : out.truth.membership.cluster_sizes()) out.truth.community_sizes.push_back(s);
    auto& r = out.report;
    r.seed = seed;
    r.mean_degree = out.graph.average_degree();
    r.max_degree = out.graph.max_degree();
    const auto fractions = external_fractions(out.graph, out.truth.membership);
    double total = 0.0;
    for (double f : fractions) total += f;
    r.mean_mixing = fractions.empty() ? 0.0 : total / static_cast<double>(fractions.size());
    r.community_count = out.truth.community_sizes.size();
    r.connected = connected_components(out.graph) == 1;
    return out;
  }

  LfrParams params = config.lfr;
  params.tau1 = gamma;
  params.mu = mu;
  params.seed = seed;
  LfrGraph out = generate(params);
  write_file(edges, to_edge_list_text(out.graph));
  write_file(membership, to_partition_text(out.truth.membership));
  std::ostringstream rep;
  write_report(rep, out.report);
  write_file(report, rep.str());
  return out;
}

SweepRow evaluate_run(const LfrGraph& bench, const ScoreVariant& variant, double gamma,
                      double mu, std::uint64_t seed, std::uint32_t low_cut,
                      std::uint32_t high_cut) {
  const ClimbResult climb = greedy_cluster(bench.graph, variant);
  const Partition& truth = bench.truth.membership;
  SweepRow row{gamma, mu, seed, variant, 0.0, 0.0};
  row.mcc_all = round_mcc(mcc(pair_confusion(truth, climb.partition)));
  row.mcc_lowhigh =
      round_mcc(mcc(low_high_confusion(truth, climb.partition, bench.graph, low_cut, high_cut)));
  return row;
}

SweepResult run_sweep(const ExperimentConfig& config, std::ostream* log) {
  config.validate();
  fs::create_directories(config.output_dir);

  struct Unit {
    double gamma;
    double mu;
    std::uint64_t seed;
  };
  std::vector<Unit> units;
  for (double g : config.gammas) {
    for (double m : config.mus) {
      for (std::uint64_t s = config.seed_first; s <= config.seed_last; ++s) units.push_back({g, m, s});
    }
  }

  std::vector<std::vector<SweepRow>> unit_rows(units.size());
  std::vector<std::optional<std::string>> unit_failure(units.size());
  std::mutex log_mutex;
  parallel_for(units.size(), config.parallelism, [&](std::size_t i) {
    const Unit& u = units[i];
    std::size_t cached = 0;
    try {
      unit_rows[i] = run_graph_unit(config, u.gamma, u.mu, u.seed, cached);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::GenerationFailure && e.kind() != ErrorKind::InfeasibleDegrees &&
          e.kind() != ErrorKind::InfeasiblePartition) {
        throw;
      }
      unit_failure[i] = e.what();
    }
    if (log) {
      std::lock_guard lock(log_mutex);
      *log << "gamma=" << label(u.gamma) << " mu=" << label(u.mu) << " seed=" << u.seed << ": ";
      if (unit_failure[i]) {
        *log << "skipped (" << *unit_failure[i] << ")\n";
      } else {
        *log << unit_rows[i].size() << " cells, " << cached << " cached\n";
      }
      log->flush();
    }
  });

  SweepResult result;
  for (std::size_t i = 0; i < units.size(); ++i) {
    if (unit_failure[i]) {
      result.skipped.push_back({units[i].gamma, units[i].mu, units[i].seed, *unit_failure[i]});
    }
    result.rows.insert(result.rows.end(), unit_rows[i].begin(), unit_rows[i].end());
  }
  std::stable_sort(result.rows.begin(), result.rows.end(), row_less);

  const fs::path out_dir(config.output_dir);
  std::ostringstream per_seed;
  write_per_seed_csv(per_seed, result.rows);
  write_file(out_dir / "per_seed.csv", per_seed.str());

  std::ostringstream summary;
  write_summary_csv(summary, summarize(result));
  write_file(out_dir / "summary.csv", summary.str());

  std::ostringstream skipped;
  skipped << "gamma,mu,seed,reason\n";
  for (const auto& s : result.skipped) {
    std::string reason = s.reason;
    std::replace(reason.begin(), reason.end(), ',', ';');
    skipped << label(s.gamma) << ',' << label(s.mu) << ',' << s.seed << ',' << reason << '\n';
  }
  write_file(out_dir / "skipped.csv", skipped.str());

  write_file(out_dir / "sweep_meta.txt", "low_cut=" + std::to_string(config.low_cut) +
                                             "\nhigh_cut=" + std::to_string(config.high_cut) +
                                             "\n");
  return result;
}

std::vector<SummaryRow> summarize(const SweepResult& result) {
  // Rows are grouped by (gamma, mu, variant, param) in canonical order.
  std::vector<SweepRow> sorted = result.rows;
  std::stable_sort(sorted.begin(), sorted.end(), [](const SweepRow& a, const SweepRow& b) {
    const auto key = [](const SweepRow& r) {
      return std::tuple{std::stod(label(r.gamma)), std::stod(label(r.mu)),
                        variant_rank(r.variant), param_value(r.variant), r.seed};
    };
    return key(a) < key(b);
  });
  std::vector<SummaryRow> out;
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i;
    std::vector<const SweepRow*> group;
    while (j < sorted.size() && same_setting(sorted[j].gamma, sorted[i].gamma) &&
           same_setting(sorted[j].mu, sorted[i].mu) &&
           same_variant(sorted[j].variant, sorted[i].variant)) {
      group.push_back(&sorted[j]);
      ++j;
    }
    out.push_back({sorted[i].gamma, sorted[i].mu, sorted[i].variant, group.size(),
                   column_quartiles(group, false), column_quartiles(group, true)});
    i = j;
  }
  return out;
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << "gamma,mu,variant,param,samples,q1,median,q3,lowhigh_q1,lowhigh_median,lowhigh_q3\n";
  for (const auto& s : rows) {
    out << label(s.gamma) << ',' << label(s.mu) << ',' << variant_name(s.variant) << ','
        << param_string(s.variant) << ',' << s.samples << ',' << format_quartiles(s.all) << ','
        << format_quartiles(s.lowhigh) << '\n';
  }
}

std::vector<SummaryRow> best_parameters(const SweepResult& result) {
  std::vector<SummaryRow> best;
  for (const auto& s : summarize(result)) {
    SummaryRow* current = nullptr;
    for (auto& b : best) {
      if (same_setting(b.gamma, s.gamma) && same_setting(b.mu, s.mu) &&
          variant_rank(b.variant) == variant_rank(s.variant)) {
        current = &b;
      }
    }
    // Summaries arrive in ascending parameter order, so a strict comparison
    // keeps the smaller parameter on ties.
    if (!current) {
      best.push_back(s);
    } else if (s.all.median > current->all.median) {
      *current = s;
    }
  }
  return best;
}

void report_tables(const SweepResult& result, const ExperimentConfig& config,
                   const std::string& report_dir, std::uint32_t low_cut,
                   std::uint32_t high_cut) {
  require_rows(result);
  std::vector<SummaryRow> best = best_parameters(result);

  if (low_cut != config.low_cut || high_cut != config.high_cut) {
    for (auto& b : best) {
      std::vector<double> values;
      for (const SweepRow* row : rows_for(result, b.gamma, b.mu, b.variant)) {
        const LfrGraph bench = cached_graph(config, row->gamma, row->mu, row->seed);
        values.push_back(evaluate_run(bench, row->variant, row->gamma, row->mu, row->seed,
                                      low_cut, high_cut)
                             .mcc_lowhigh);
      }
      b.lowhigh = quartiles(values);
    }
  }

  const fs::path dir(report_dir);
  std::vector<double> mus;
  for (const auto& b : best) {
    if (std::none_of(mus.begin(), mus.end(), [&](double m) { return same_setting(m, b.mu); })) {
      mus.push_back(b.mu);
    }
  }
  for (double mu : mus) {
    std::ostringstream all, lowhigh;
    all << "gamma,variant,param,q1,median,q3\n";
    lowhigh << "gamma,variant,param,q1,median,q3\n";
    for (const auto& b : best) {
      if (!same_setting(b.mu, mu)) continue;
      const std::string prefix =
          label(b.gamma) + ',' + variant_name(b.variant) + ',' + param_string(b.variant) + ',';
      all << prefix << format_quartiles(b.all) << '\n';
      lowhigh << prefix << format_quartiles(b.lowhigh) << '\n';
    }
    write_file(dir / ("table_all_mu" + label(mu) + ".csv"), all.str());
    write_file(dir / ("table_lowhigh_mu" + label(mu) + ".csv"), lowhigh.str());
  }

  std::ostringstream params;
  params << "gamma,mu,variant,param,samples,median_all,median_lowhigh,low_cut,high_cut\n";
  for (const auto& b : best) {
    params << label(b.gamma) << ',' << label(b.mu) << ',' << variant_name(b.variant) << ','
           << param_string(b.variant) << ',' << b.samples << ',' << format_mcc(b.all.median)
           << ',' << format_mcc(b.lowhigh.median) << ',' << low_cut << ',' << high_cut << '\n';
  }
  write_file(dir / "best_params.csv", params.str());
}

std::vector<std::uint64_t> quartile_seeds(const SweepResult& result, double gamma, double mu) {
  const auto best = best_parameters(result);
  const SummaryRow* standard = find_best(best, gamma, mu, 0);
  if (!standard) return {};
  std::vector<std::pair<double, std::uint64_t>> ranked;
  for (const SweepRow* row : rows_for(result, gamma, mu, standard->variant)) {
    ranked.emplace_back(row->mcc_all, row->seed);
  }
  std::sort(ranked.begin(), ranked.end());
  const std::size_t m = ranked.size();
  return {ranked[(m - 1) / 4].second, ranked[(m - 1) / 2].second,
          ranked[3 * (m - 1) / 4].second};
}

std::string scatter_svg(const std::vector<double>& x, const std::vector<double>& y,
                        const std::string& title, const std::string& x_label,
                        const std::string& y_label) {
  double lo = 0.0, hi = 0.1;
  for (double v : x) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  for (double v : y) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  lo = std::floor(lo * 10.0) / 10.0;
  hi = std::ceil(hi * 10.0) / 10.0;

  SvgDocument svg(520, 520);
  svg.text(260, 24, title, 13, "middle");
  PlotArea area{70, 40, 410, 410, lo, hi, lo, hi};
  area.draw_axes(svg, x_label, y_label);
  svg.line(area.x(lo), area.y(lo), area.x(hi), area.y(hi), "#999999", 1, 0.6);
  if (!x.empty() && !y.empty()) {
    const double mx = quartiles(x).median;
    const double my = quartiles(y).median;
    svg.line(area.x(mx), area.y(lo), area.x(mx), area.y(hi), "#999999", 1, 0.5);
    svg.line(area.x(lo), area.y(my), area.x(hi), area.y(my), "#999999", 1, 0.5);
  }
  for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i) {
    svg.circle(area.x(x[i]), area.y(y[i]), 2.5, palette()[0], 0.7);
  }
  return svg.str();
}

void report_figures(const SweepResult& result, const ExperimentConfig& config,
                    const std::string& report_dir) {
  require_rows(result);
  const fs::path dir(report_dir);
  const auto summary = summarize(result);
  const auto best = best_parameters(result);
  const auto settings = settings_of(result);

  std::vector<double> mus;
  for (const auto& [g, m] : settings) {
    if (std::none_of(mus.begin(), mus.end(), [&](double x) { return same_setting(x, m); })) {
      mus.push_back(m);
    }
  }
  for (double mu : mus) {
    for (int rank : {0, 1}) {
      const bool present = std::any_of(summary.begin(), summary.end(), [&](const SummaryRow& s) {
        return same_setting(s.mu, mu) && variant_rank(s.variant) == rank;
      });
      if (!present) continue;
      write_file(dir / ((rank == 0 ? "sweep_standard_mu" : "sweep_flat_mu") + label(mu) + ".svg"),
                 curve_svg(result, summary, mu, rank));
    }
  }

  std::ostringstream seeds_csv;
  seeds_csv << "gamma,mu,quantile,seed,mcc_standard,mcc_flat\n";
  for (const auto& [gamma, mu] : settings) {
    const SummaryRow* standard = find_best(best, gamma, mu, 0);
    const SummaryRow* flat = find_best(best, gamma, mu, 1);
    const std::string tag = "g" + label(gamma) + "_mu" + label(mu);

    std::map<std::uint64_t, double> standard_by_seed, flat_by_seed;
    if (standard) {
      for (const SweepRow* r : rows_for(result, gamma, mu, standard->variant)) {
        standard_by_seed[r->seed] = r->mcc_all;
      }
    }
    if (flat) {
      for (const SweepRow* r : rows_for(result, gamma, mu, flat->variant)) {
        flat_by_seed[r->seed] = r->mcc_all;
      }
    }

    if (standard && flat) {
      std::vector<double> xs, ys;
      for (const auto& [seed, x] : standard_by_seed) {
        if (auto it = flat_by_seed.find(seed); it != flat_by_seed.end()) {
          xs.push_back(x);
          ys.push_back(it->second);
        }
      }
      write_file(dir / ("scatter_" + tag + ".svg"),
                 scatter_svg(xs, ys, "Per-seed MCC, gamma=" + label(gamma) + ", mu=" + label(mu),
                             "standard MCC (r=" + param_string(standard->variant) + ")",
                             "flat MCC (R=" + param_string(flat->variant) + ")"));
    }

    if (!standard) continue;
    const auto seeds = quartile_seeds(result, gamma, mu);
    const char* names[] = {"q1", "median", "q3"};
    for (std::size_t q = 0; q < seeds.size(); ++q) {
      const std::uint64_t seed = seeds[q];
      seeds_csv << label(gamma) << ',' << label(mu) << ',' << names[q] << ',' << seed << ','
                << format_mcc(standard_by_seed[seed]) << ','
                << (flat_by_seed.contains(seed) ? format_mcc(flat_by_seed[seed]) : "") << '\n';
      const LfrGraph bench = cached_graph(config, gamma, mu, seed);
      for (const SummaryRow* chosen : {standard, flat}) {
        if (!chosen) continue;
        const ClimbResult climb = greedy_cluster(bench.graph, chosen->variant);
        const BucketMatrix matrix = bucket_mcc_matrix(bench.truth.membership, climb.partition,
                                                      bench.graph, degree_buckets(bench.graph));
        const std::string stem = "heatmap_" + variant_name(chosen->variant) + "_" + tag + "_s" +
                                 std::to_string(seed);
        std::ostringstream csv, svg;
        write_bucket_csv(csv, matrix);
        write_bucket_svg(svg, matrix,
                         variant_name(chosen->variant) + " " + param_string(chosen->variant) +
                             ", seed " + std::to_string(seed) + " (" + names[q] + ")");
        write_file(dir / (stem + ".csv"), csv.str());
        write_file(dir / (stem + ".svg"), svg.str());
      }
    }
  }
  write_file(dir / "heatmap_seeds.csv", seeds_csv.str());
}

}  // namespace flatmod
