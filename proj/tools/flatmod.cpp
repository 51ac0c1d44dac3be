// flatmod command-line front end: generate, cluster, eval, sweep, report.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "flatmod/config.hpp"
#include "flatmod/error.hpp"
#include "flatmod/graph.hpp"
#include "flatmod/greedy.hpp"
#include "flatmod/harness.hpp"
#include "flatmod/lfr.hpp"
#include "flatmod/metrics.hpp"
#include "flatmod/partition.hpp"
#include "flatmod/scoring.hpp"

namespace fs = std::filesystem;
using namespace flatmod;

namespace {

enum Exit { kOk = 0, kUsage = 1, kData = 2, kGeneration = 3 };

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Config:
      return kUsage;
    case ErrorKind::GenerationFailure:
    case ErrorKind::InfeasibleDegrees:
    case ErrorKind::InfeasiblePartition:
      return kGeneration;
    default:
      return kData;
  }
}

// Flag values shared by all subcommands; unset ones leave the config alone.
struct Overrides {
  std::string config;
  std::optional<std::string> gamma, mu, seed, seeds, r, R, out;
  std::optional<unsigned> parallelism;
  std::optional<std::uint32_t> low_cut, high_cut;
  bool paper_scale = false;
};

void add_common(CLI::App* app, Overrides& o) {
  app->add_option("--config", o.config, "key=value or JSON config file");
}

ExperimentConfig build_config(const Overrides& o) {
  ExperimentConfig c =
      o.paper_scale ? ExperimentConfig::paper_scale() : ExperimentConfig::desk_defaults();
  if (!o.config.empty()) c = load_config_file(o.config, c);
  if (o.gamma) apply_setting(c, "gammas", *o.gamma);
  if (o.mu) apply_setting(c, "mus", *o.mu);
  if (o.seed) apply_setting(c, "seeds", *o.seed);
  if (o.seeds) apply_setting(c, "seeds", *o.seeds);
  if (o.r) apply_setting(c, "r_grid", *o.r);
  if (o.R) apply_setting(c, "R_grid", *o.R);
  if (o.out) c.output_dir = *o.out;
  if (o.parallelism) c.parallelism = *o.parallelism;
  if (o.low_cut) c.low_cut = *o.low_cut;
  if (o.high_cut) c.high_cut = *o.high_cut;
  return c;
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  out << text;
}

int run_generate(const Overrides& o) {
  const ExperimentConfig c = build_config(o);
  LfrParams p = c.lfr;
  p.tau1 = c.gammas.front();
  p.mu = c.mus.front();
  p.seed = c.seed_first;
  const LfrGraph bench = generate(p);
  const fs::path dir = o.out.value_or(".");
  write_text(dir / "graph.edges", to_edge_list_text(bench.graph));
  write_text(dir / "truth.membership", to_partition_text(bench.truth.membership));
  std::ostringstream report;
  write_report(report, bench.report);
  write_text(dir / "report.txt", report.str());
  std::cout << report.str();
  return kOk;
}

ScoreVariant pick_variant(const std::string& name, const Overrides& o) {
  if (name == "standard") return Standard::parse(o.r.value_or("1.00"));
  if (name == "flat") {
    if (!o.R) throw ConfigError("--variant flat needs --R");
    return Flat::parse(*o.R);
  }
  throw ConfigError("unknown variant '" + name + "' (standard|flat)");
}

int run_cluster(const Overrides& o, const std::string& graph_path, const std::string& variant) {
  const ScoreVariant v = [&] {
    try {
      return pick_variant(variant, o);
    } catch (const ParseError& e) {
      throw ConfigError(e.what());
    }
  }();
  const Graph g = load_edge_list_file(graph_path);
  const ClimbResult result = greedy_cluster(g, v);
  const fs::path dir = o.out.value_or(".");
  write_text(dir / "partition.membership", to_partition_text(result.partition));
  std::ostringstream trace;
  write_trace(trace, result.trace);
  write_text(dir / "trace.txt", trace.str());
  std::cout << "variant=" << variant_name(v) << " param=" << param_string(v)
            << " clusters=" << result.partition.cluster_count()
            << " merges=" << result.trace.size() << " score=" << result.final_score.value()
            << '\n';
  return kOk;
}

int run_eval(const Overrides& o, const std::string& graph_path, const std::string& truth_path,
             const std::string& found_path, std::size_t cap) {
  const ExperimentConfig c = build_config(o);
  const Graph g = load_edge_list_file(graph_path);
  const Partition truth = load_partition_file(truth_path);
  const Partition found = load_partition_file(found_path);
  if (truth.vertex_count() != g.vertex_count() || found.vertex_count() != g.vertex_count()) {
    throw VertexSetMismatchError("partitions and graph cover different vertex sets");
  }
  const PairConfusion all = pair_confusion(truth, found);
  const PairConfusion lh = low_high_confusion(truth, found, g, c.low_cut, c.high_cut);
  std::cout << "pairs=" << all.total() << " tp=" << all.tp << " fp=" << all.fp
            << " fn=" << all.fn << " tn=" << all.tn << '\n';
  std::cout << "mcc_all=" << format_mcc(mcc(all)) << '\n';
  std::cout << "mcc_lowhigh=" << format_mcc(mcc(lh)) << " (pairs=" << lh.total()
            << ", low<=" << c.low_cut << ", high>=" << c.high_cut << ")\n";
  if (o.out) {
    const BucketMatrix m = bucket_mcc_matrix(truth, found, g, degree_buckets(g, cap));
    std::ostringstream csv, svg;
    write_bucket_csv(csv, m);
    write_bucket_svg(svg, m, "Pairwise MCC by degree bucket");
    write_text(fs::path(*o.out) / "buckets.csv", csv.str());
    write_text(fs::path(*o.out) / "buckets.svg", svg.str());
  }
  return kOk;
}

void print_best(const SweepResult& result) {
  for (const auto& b : best_parameters(result)) {
    std::cout << "gamma=" << label(b.gamma) << " mu=" << label(b.mu) << ' '
              << variant_name(b.variant) << " best=" << param_string(b.variant)
              << " median=" << format_mcc(b.all.median) << " (q1 " << format_mcc(b.all.q1)
              << ", q3 " << format_mcc(b.all.q3) << ", n=" << b.samples << ")\n";
  }
}

int run_sweep_cmd(const Overrides& o) {
  const ExperimentConfig c = build_config(o);
  if (o.paper_scale) {
    std::cerr << "warning: paper-scale sweep (" << c.gammas.size() * c.mus.size() * c.seed_count()
              << " graphs, " << c.r_grid.size() + c.R_grid.size()
              << " climbs each); expect many CPU-hours\n";
  }
  const SweepResult result = run_sweep(c, &std::cerr);
  if (!result.skipped.empty()) {
    std::cerr << result.skipped.size() << " seed(s) skipped, see skipped.csv\n";
  }
  print_best(result);
  return kOk;
}

int run_report(const Overrides& o, std::string report_dir) {
  const ExperimentConfig c = build_config(o);
  const SweepResult result = load_sweep_result(c.output_dir);
  // cuts the sweep was run with, so tables only re-evaluate when they differ
  ExperimentConfig swept = c;
  if (std::ifstream meta(fs::path(c.output_dir) / "sweep_meta.txt"); meta) {
    std::string line;
    while (std::getline(meta, line)) {
      if (const auto eq = line.find('='); eq != std::string::npos) {
        apply_setting(swept, line.substr(0, eq), line.substr(eq + 1));
      }
    }
  }
  if (report_dir.empty()) report_dir = (fs::path(c.output_dir) / "report").string();
  report_tables(result, swept, report_dir, c.low_cut, c.high_cut);
  report_figures(result, swept, report_dir);
  print_best(result);
  std::cout << "report written to " << report_dir << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Greedy modularity clustering with standard and flat scores on LFR benchmarks"};
  app.require_subcommand(1);

  Overrides o;
  std::string graph_path, truth_path, found_path, variant = "standard", report_dir;
  std::size_t cap = 100;

  const auto add_lfr = [&](CLI::App* cmd) {
    cmd->add_option("--gamma", o.gamma, "degree exponent(s), comma separated");
    cmd->add_option("--mu", o.mu, "mixing parameter(s), comma separated");
  };
  const auto add_cuts = [&](CLI::App* cmd) {
    cmd->add_option("--low-cut", o.low_cut, "low degree cut (<=)");
    cmd->add_option("--high-cut", o.high_cut, "high degree cut (>=)");
  };

  auto* gen = app.add_subcommand("generate", "generate one LFR benchmark graph");
  add_common(gen, o);
  add_lfr(gen);
  gen->add_option("--seed", o.seed, "generator seed");
  gen->add_option("--out", o.out, "output directory");

  auto* clu = app.add_subcommand("cluster", "run the greedy climb on an edge list");
  add_common(clu, o);
  clu->add_option("--graph", graph_path, "edge list")->required();
  clu->add_option("--variant", variant, "standard|flat");
  clu->add_option("--r", o.r, "resolution, two decimals (standard)");
  clu->add_option("--R", o.R, "penalty multiplier (flat)");
  clu->add_option("--out", o.out, "output directory");

  auto* ev = app.add_subcommand("eval", "pairwise MCC of a clustering against ground truth");
  add_common(ev, o);
  ev->add_option("--graph", graph_path, "edge list")->required();
  ev->add_option("--truth", truth_path, "ground-truth membership")->required();
  ev->add_option("--found", found_path, "clustering membership")->required();
  ev->add_option("--cap", cap, "degree bucket cap");
  ev->add_option("--out", o.out, "write bucket heatmap CSV/SVG here");
  add_cuts(ev);

  auto* sw = app.add_subcommand("sweep", "sweep r and R over seeded LFR graphs");
  add_common(sw, o);
  add_lfr(sw);
  sw->add_option("--seeds,--seed", o.seeds, "seed range a..b");
  sw->add_option("--r", o.r, "r grid, e.g. 0.30..0.50:0.01");
  sw->add_option("--R", o.R, "R grid, e.g. 80..120:2");
  sw->add_option("--out", o.out, "output directory");
  sw->add_option("--parallelism,-j", o.parallelism, "worker threads");
  sw->add_flag("--paper-scale", o.paper_scale, "1001 seeds, 3 gammas, full grids");
  add_cuts(sw);

  auto* rep = app.add_subcommand("report", "tables and figures from a finished sweep");
  add_common(rep, o);
  rep->add_option("--out", o.out, "sweep output directory");
  rep->add_option("--report-dir", report_dir, "default <out>/report");
  add_cuts(rep);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*gen) return run_generate(o);
    if (*clu) return run_cluster(o, graph_path, variant);
    if (*ev) return run_eval(o, graph_path, truth_path, found_path, cap);
    if (*sw) return run_sweep_cmd(o);
    if (*rep) return run_report(o, report_dir);
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kData;
  }
  return kUsage;
}
