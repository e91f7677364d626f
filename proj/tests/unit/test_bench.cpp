#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>

#include "empower/bench.hpp"
#include "empower/io_error.hpp"
#include "empower/svg_plot.hpp"

using namespace empower;
using namespace empower::bench;
using empower::blockworld::BlockWorld;
using empower::blockworld::generate_random_world;

namespace {

BenchParams small_params() {
  BenchParams p;
  p.worlds = 4;
  p.horizon = 2;
  p.dims = {4, 4, 4};
  p.fractions = {1.0, 0.25, 0.05};
  p.seed = 5;
  return p;
}

}  // namespace

TEST_CASE("variant names and settings") {
  const char* names[] = {"Basic", "UCT", "UCT+Novelty", "UCT+Branching", "UCT+Both",
                         "UCTa", "UCTa+Novelty", "UCTa+Branching", "UCTa+Both"};
  for (std::size_t i = 0; i < kVariantCount; ++i) {
    CHECK(variant_name(kAllVariants[i]) == names[i]);
    CHECK(parse_variant(names[i]) == kAllVariants[i]);
  }
  CHECK_FALSE(parse_variant("UCTb").has_value());
  const auto both = variant_config(Variant::UctaBoth, 10, 10000, 3);
  CHECK(both.novelty);
  CHECK(both.aggregated);
  CHECK(both.branch_depth == 1);
  CHECK(both.budget == 10000u);
  const auto plain = variant_config(Variant::Uct, 4, 10, 3);
  CHECK_FALSE(plain.novelty);
  CHECK_FALSE(plain.aggregated);
  CHECK(plain.branch_depth == 0);
  CHECK(plain.exploration == 0.01);
}

TEST_CASE("fractions and budgets") {
  const auto f = halving_fractions(11);
  REQUIRE(f.size() == 11);
  CHECK(f.front() == 0.5);
  CHECK(f.back() == 1.0 / 2048);
  CHECK(fraction_budget(1.0 / 64, 271452) == 4241);
  CHECK(fraction_budget(0.5, 7) == 3);
}

TEST_CASE("score is the chosen count relative to the best") {
  WorldBaseline b;
  b.counts = {4, 8, 2};
  b.best_count = 8;
  CHECK(score(b, 1) == std::pair{true, 1.0});
  CHECK(score(b, 0) == std::pair{false, 0.5});
  CHECK(score(b, 2) == std::pair{false, 0.25});
}

TEST_CASE("benchmark: metrics agree with the per-world scores") {
  const BenchTable t = run_benchmark(small_params());
  REQUIRE(t.results.size() == 4 * 9 * 3);
  for (const auto& r : t.results) {
    const auto& base = t.baselines[r.world_id];
    CHECK(r.calls_used <= r.budget);
    CHECK(r.budget == fraction_budget(r.fraction, base.calls));
    const auto [opt, rel] = score(base, r.chosen_action);
    CHECK(opt == r.optimal);
    CHECK(rel == r.relative_performance);
    CHECK(r.relative_performance <= 1.0);
    CHECK(r.relative_performance > 0.0);
  }
  const auto optimal = aggregate(t, Metric::OptimalRatio);
  const auto perf = aggregate(t, Metric::RelativePerformance);
  for (std::size_t v = 0; v < kVariantCount; ++v) {
    for (std::size_t f = 0; f < 3; ++f) {
      double o = 0, p = 0;
      for (const auto& r : t.results) {
        if (static_cast<std::size_t>(r.variant) == v && r.fraction == t.params.fractions[f]) {
          o += r.optimal ? 1 : 0;
          p += r.relative_performance;
        }
      }
      CHECK(optimal.values[v][f] == doctest::Approx(o / 4));
      CHECK(perf.values[v][f] == doctest::Approx(p / 4));
      // A world scored optimal also has relative performance 1.
      CHECK(perf.values[v][f] >= optimal.values[v][f] - 1e-12);
    }
  }
}

TEST_CASE("benchmark: a budget that fits full expansion makes UCT optimal") {
  // Descents re-bill their edges, so full expansion needs more calls than
  // the exhaustive baseline; 100000 calls is plenty at n = 2.
  const BenchTable t = run_benchmark(small_params());
  for (const auto& base : t.baselines) {
    const BlockWorld w = generate_random_world(base.world_seed, small_params().dims);
    for (Variant v : {Variant::Uct, Variant::UctNovelty, Variant::UctBranching}) {
      const auto run = run_variant(w, v, 2, 100000, 1);
      CHECK(score(base, run.action).first);
    }
  }
}

TEST_CASE("benchmark: thread count does not change results") {
  BenchParams p = small_params();
  const auto one = run_benchmark(p);
  p.jobs = 3;
  const auto three = run_benchmark(p);
  CHECK(format_csv(aggregate(one, Metric::RelativePerformance)) ==
        format_csv(aggregate(three, Metric::RelativePerformance)));
  for (std::size_t i = 0; i < one.results.size(); ++i) {
    CHECK(one.results[i].chosen_action == three.results[i].chosen_action);
  }
}

TEST_CASE("benchmark rejects bad parameters") {
  BenchParams p = small_params();
  p.fractions = {1.5};
  CHECK_THROWS_AS(run_benchmark(p), std::invalid_argument);
  p = small_params();
  p.worlds = 0;
  CHECK_THROWS_AS(run_benchmark(p), std::invalid_argument);
}

TEST_CASE("csv round trip") {
  SeriesTable t;
  t.key_name = "fraction";
  t.keys = {0.5, 0.25, 1.0 / 3};
  for (std::size_t v = 0; v < kVariantCount; ++v) {
    t.values[v] = {0.1 * static_cast<double>(v), 1.0 / 7, 0.999999};
  }
  const std::string text = format_csv(t);
  CHECK(text.rfind("fraction,Basic,UCT,UCT+Novelty,UCT+Branching,UCT+Both,UCTa,"
                   "UCTa+Novelty,UCTa+Branching,UCTa+Both\n", 0) == 0);
  CHECK(parse_csv(text) == t);

  const auto path = std::filesystem::temp_directory_path() / "empower_csv_round_trip.csv";
  emit_csv(t, path);
  CHECK(read_csv(path) == t);
  std::filesystem::remove(path);
}

TEST_CASE("csv errors") {
  CHECK_THROWS_AS(format_csv(SeriesTable{}), std::invalid_argument);
  CHECK_THROWS(parse_csv("fraction,Basic\n0.5,1\n"));
  CHECK_THROWS(parse_csv(""));
  CHECK_THROWS_AS(read_csv("/nonexistent/x.csv"), IoError);
  SeriesTable t;
  t.keys = {1};
  CHECK_THROWS_AS(emit_csv(t, "/nonexistent/dir/x.csv"), IoError);
}

TEST_CASE("bridge: degenerate budgets pick the crossing about 1/12 of the time") {
  BridgeParams p;
  p.budgets = {1};
  p.runs = 1200;
  p.horizon = 10;
  p.variants = {Variant::Basic, Variant::UctaBoth};
  const auto t = run_bridge(blockworld::bridge_scenario(), p);
  // Binomial(1200, 1/12): sd of the share is 0.008.
  for (const auto& row : t.toward) CHECK(std::abs(row[0] - 1.0 / 12) < 0.04);
}

TEST_CASE("bridge: results are reproducible and independent of jobs") {
  BridgeParams p;
  p.budgets = {500, 2000};
  p.runs = 6;
  p.variants = {Variant::Uct, Variant::UctaBoth};
  const auto a = run_bridge(blockworld::bridge_scenario(), p);
  p.jobs = 2;
  const auto b = run_bridge(blockworld::bridge_scenario(), p);
  CHECK(a.choices == b.choices);
  CHECK(a.toward == b.toward);
  const auto series = bridge_series(a);
  CHECK(series.keys == std::vector<double>{500, 2000});
  CHECK(series.values[static_cast<std::size_t>(Variant::Basic)].empty());
  CHECK(series.values[static_cast<std::size_t>(Variant::UctaBoth)] == a.toward[1]);
  CHECK(parse_csv(format_csv(series)) == series);
}

TEST_CASE("manifests record seeds and settings") {
  const auto m = manifest(small_params());
  CHECK(m["seed"] == 5);
  CHECK(m["worlds"] == 4);
  CHECK(m.contains("git_describe"));
  BridgeParams bp;
  const auto bm = manifest(bp, "bridge");
  CHECK(bm["scenario"] == "bridge");
  CHECK(bm["runs"] == 100);
}

TEST_CASE("svg plot is a self-contained document") {
  SeriesTable t;
  t.key_name = "fraction";
  t.keys = {0.5, 0.25};
  t.values[0] = {0.9, 0.8};
  t.values[8] = {1.0, 0.95};
  PlotOptions options;
  options.title = "demo";
  const std::string svg = render_svg(t, options);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(svg.find("UCTa+Both") != std::string::npos);
  CHECK(svg.find("demo") != std::string::npos);
}

TEST_CASE("parallel_for runs every index once and rethrows") {
  std::vector<int> hits(100, 0);
  parallel_for(100, 4, [&](std::size_t i) { ++hits[i]; });
  for (int h : hits) CHECK(h == 1);
  CHECK_THROWS_AS(parallel_for(10, 2, [](std::size_t i) {
                    if (i == 5) throw std::runtime_error("boom");
                  }),
                  std::runtime_error);
}
