#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "flatmod/error.hpp"
#include "flatmod/harness.hpp"

using namespace flatmod;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("flatmod_test_" + name);
  fs::remove_all(dir);
  return dir;
}

ExperimentConfig small_config(const fs::path& out) {
  ExperimentConfig c;
  c.lfr.n = 200;
  c.gammas = {2.5, 3.5};
  c.mus = {0.5};
  c.seed_first = 0;
  c.seed_last = 4;
  c.r_grid = parse_r_grid("0.20,0.40");
  c.R_grid = parse_R_grid("1000,2000");
  c.output_dir = out.string();
  return c;
}

SweepRow row(std::uint64_t seed, ScoreVariant v, double all) {
  return {2.5, 0.5, seed, v, all, all / 2};
}

}  // namespace

TEST_CASE("quartiles are order statistics") {
  auto q = quartiles({5, 1, 4, 2, 3});
  CHECK(q.q1 == 2);
  CHECK(q.median == 3);
  CHECK(q.q3 == 4);
  q = quartiles({7});
  CHECK(q.q1 == 7);
  CHECK(q.median == 7);
  CHECK(q.q3 == 7);
  std::vector<double> big(1001);
  for (std::size_t i = 0; i < big.size(); ++i) big[i] = static_cast<double>(1000 - i);
  q = quartiles(big);
  CHECK(q.q1 == 250);
  CHECK(q.median == 500);
  CHECK(q.q3 == 750);
  CHECK_THROWS_AS(quartiles({}), EmptyInputError);
}

TEST_CASE("config parsing") {
  SUBCASE("key=value") {
    const auto c = parse_config(
        "# desk run\ngammas=2.5,3.5\nmu=0.6\nseeds=0..14\nr=0.30..0.50:0.01\nR=80..120:2\n"
        "out=x\nparallelism=2\n");
    CHECK(c.gammas == std::vector<double>{2.5, 3.5});
    CHECK(c.mus == std::vector<double>{0.6});
    CHECK(c.seed_count() == 15);
    CHECK(c.r_grid.size() == 21);
    CHECK(c.r_grid.back().percent == 50);
    CHECK(c.R_grid.size() == 21);
    CHECK(c.R_grid[9].multiplier == 98);
    CHECK(c.output_dir == "x");
    CHECK(c.parallelism == 2);
    CHECK_NOTHROW(c.validate());
  }
  SUBCASE("json") {
    const auto c = parse_config(R"({"gammas": [2.5, 3.0], "seeds": "3..5", "R_grid": [98],
                                   "r_grid": "0.39", "n": 500})");
    CHECK(c.gammas.size() == 2);
    CHECK(c.seed_first == 3);
    CHECK(c.seed_last == 5);
    CHECK(c.R_grid.size() == 1);
    CHECK(c.r_grid.front().percent == 39);
    CHECK(c.lfr.n == 500);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(parse_config("bogus=1"), ConfigError);
    CHECK_THROWS_AS(parse_config("r=0.305"), ConfigError);
    CHECK_THROWS_AS(parse_config("seeds=5..3"), ConfigError);
    CHECK_THROWS_AS(parse_config("{ nope"), ConfigError);
    ExperimentConfig c;
    CHECK_THROWS_AS(c.validate(), ConfigError);  // both grids empty
    c.R_grid = parse_R_grid("98");
    CHECK_NOTHROW(c.validate());
  }
  SUBCASE("presets") {
    const auto desk = ExperimentConfig::desk_defaults();
    CHECK(desk.seed_count() == 25);
    CHECK(desk.r_grid.size() == 21);
    CHECK(desk.R_grid.size() == 21);
    const auto paper = ExperimentConfig::paper_scale();
    CHECK(paper.seed_count() == 1001);
    CHECK(paper.r_grid.size() == 101);
    CHECK(paper.R_grid.size() == 101);
  }
}

TEST_CASE("per-seed CSV round trip") {
  std::vector<SweepRow> rows{row(0, Standard{39}, 0.25), row(0, Flat{98}, -0.125)};
  std::ostringstream out;
  write_per_seed_csv(out, rows);
  const auto back = parse_per_seed_csv(out.str());
  REQUIRE(back.size() == 2);
  CHECK(back[1].mcc_all == -0.125);
  CHECK(param_string(back[1].variant) == "98");
  CHECK_THROWS_AS(parse_per_seed_csv("nope\n"), ParseError);
}

TEST_CASE("best parameter ties go to the smaller value") {
  SweepResult r;
  for (std::uint64_t s = 0; s < 3; ++s) {
    r.rows.push_back(row(s, Standard{30}, 0.4));
    r.rows.push_back(row(s, Standard{45}, 0.4));
    r.rows.push_back(row(s, Standard{50}, 0.1));
  }
  const auto best = best_parameters(r);
  REQUIRE(best.size() == 1);
  CHECK(param_string(best[0].variant) == "0.30");
  CHECK(best[0].samples == 3);
}

TEST_CASE("single seed summary equals the seed") {
  SweepResult r;
  r.rows.push_back(row(7, Standard{39}, 0.4091));
  const auto s = summarize(r);
  REQUIRE(s.size() == 1);
  CHECK(s[0].all.q1 == 0.4091);
  CHECK(s[0].all.median == 0.4091);
  CHECK(s[0].all.q3 == 0.4091);
}

TEST_CASE("reports need results") {
  const fs::path dir = scratch("empty");
  ExperimentConfig c = small_config(dir);
  CHECK_THROWS_AS(report_tables(SweepResult{}, c, dir.string(), 20, 40), MissingResultsError);
  CHECK_THROWS_AS(report_figures(SweepResult{}, c, dir.string()), MissingResultsError);
  CHECK_THROWS_AS(load_sweep_result(dir.string()), MissingResultsError);
}

TEST_CASE("scatter of identical lists sits on the diagonal") {
  const std::vector<double> v{0.1, 0.35, 0.7, 0.9};
  const std::string svg = scatter_svg(v, v, "t", "x", "y");
  const std::regex circle("<circle cx=\"([0-9.]+)\" cy=\"([0-9.]+)\"");
  std::size_t count = 0;
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), circle); it != std::sregex_iterator();
       ++it) {
    const double cx = std::stod((*it)[1]), cy = std::stod((*it)[2]);
    // plot square: left 70, top 40, side 410; diagonal is cx + cy = 520
    CHECK(cx + cy == doctest::Approx(520.0).epsilon(1e-3));
    ++count;
  }
  CHECK(count == v.size());
}

TEST_CASE("sweep is deterministic, parallel-invariant and resumable") {
  const fs::path a = scratch("sweep_a");
  const fs::path b = scratch("sweep_b");
  const fs::path c = scratch("sweep_c");

  const SweepResult first = run_sweep(small_config(a));
  CHECK(first.rows.size() == 2 * 5 * 4);
  CHECK(first.skipped.empty());
  const std::string per_seed = slurp(a / "per_seed.csv");
  const std::string summary = slurp(a / "summary.csv");

  // rerun on the same directory: everything cached, same bytes
  run_sweep(small_config(a));
  CHECK(slurp(a / "per_seed.csv") == per_seed);
  CHECK(slurp(a / "summary.csv") == summary);

  // fresh directory with several workers
  ExperimentConfig parallel = small_config(b);
  parallel.parallelism = 3;
  run_sweep(parallel);
  CHECK(slurp(b / "per_seed.csv") == per_seed);
  CHECK(slurp(b / "summary.csv") == summary);

  // partial run first (fewer seeds and one r value), then the full grid
  ExperimentConfig partial = small_config(c);
  partial.seed_last = 2;
  partial.r_grid = parse_r_grid("0.40");
  run_sweep(partial);
  fs::remove_all(c / "graphs");  // cells alone must be enough for cached ones
  run_sweep(small_config(c));
  CHECK(slurp(c / "per_seed.csv") == per_seed);
  CHECK(slurp(c / "summary.csv") == summary);

  // every quartile appears verbatim in the per-seed CSV
  for (const auto& s : summarize(first)) {
    for (double q : {s.all.q1, s.all.median, s.all.q3, s.lowhigh.q1, s.lowhigh.median,
                     s.lowhigh.q3}) {
      CHECK(per_seed.find(format_mcc(q)) != std::string::npos);
    }
  }
  const SweepResult loaded = load_sweep_result(a.string());
  CHECK(loaded.rows.size() == first.rows.size());
}

TEST_CASE("report tables and figures") {
  const fs::path out = scratch("report");
  ExperimentConfig cfg = small_config(out);
  cfg.R_grid.clear();
  const SweepResult result = run_sweep(cfg);
  const fs::path rep = out / "report";
  report_tables(result, cfg, rep.string(), cfg.low_cut, cfg.high_cut);
  report_figures(result, cfg, rep.string());

  CHECK(fs::exists(rep / "table_all_mu0.50.csv"));
  CHECK(fs::exists(rep / "table_lowhigh_mu0.50.csv"));
  CHECK(fs::exists(rep / "best_params.csv"));
  CHECK(fs::exists(rep / "sweep_standard_mu0.50.svg"));
  CHECK_FALSE(fs::exists(rep / "sweep_flat_mu0.50.svg"));
  CHECK(slurp(rep / "table_all_mu0.50.csv").rfind("gamma,variant,param,q1,median,q3\n", 0) == 0);

  // the median seed's MCC at the best r is the order-statistic median
  const auto best = best_parameters(result);
  const auto seeds = quartile_seeds(result, 2.5, 0.5);
  REQUIRE(seeds.size() == 3);
  for (const auto& b : best) {
    if (b.gamma != 2.5 || !std::holds_alternative<Standard>(b.variant)) continue;
    for (const auto& r : result.rows) {
      if (r.gamma == 2.5 && r.seed == seeds[1] && param_string(r.variant) == param_string(b.variant)) {
        CHECK(r.mcc_all == b.all.median);
      }
    }
  }
  CHECK(fs::exists(rep / ("heatmap_standard_g2.50_mu0.50_s" + std::to_string(seeds[1]) + ".svg")));
  CHECK(fs::exists(rep / "heatmap_seeds.csv"));

  // other cuts trigger recomputation; same cuts reproduce the sweep's values
  report_tables(result, cfg, (out / "rep2").string(), 10, 30);
  CHECK(slurp(out / "rep2" / "table_all_mu0.50.csv") == slurp(rep / "table_all_mu0.50.csv"));
}
