// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.  Pass criterion numbers as arguments to run a subset.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "empower/bench.hpp"
#include "empower/blockworld.hpp"
#include "empower/empowerment.hpp"
#include "empower/scenarios.hpp"
#include "empower/search_tree.hpp"
#include "empower/uct_search.hpp"
#include "oracles.hpp"
#include "physics_cases.hpp"
#include "properties.hpp"

using namespace empower;
using namespace empower::blockworld;
using bench::Variant;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  std::function<Verdict()> check;
};

std::size_t jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

std::string fmt(double v, int precision = 4) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f", precision, v);
  return buf;
}

std::string fraction_label(double f) { return "1/" + std::to_string(std::lround(1.0 / f)); }

Verdict oracle_equivalence() {
  std::size_t compared = 0;
  for (std::uint64_t w = 0; w < 50; ++w) {
    const BlockWorld world = generate_random_world(derive_seed(101, {w}), {3, 3, 3});
    for (std::size_t n = 1; n <= 3; ++n) {
      CallCounter counter;
      const auto report = exhaustive_empowerment(BlockWorldModel{}, world, n, counter);
      const auto truth = oracle::reachable_counts(world, n);
      if (report.counts != truth) {
        return {false, "world " + std::to_string(w) + ", n=" + std::to_string(n) +
                           ": counts differ from the sequence oracle"};
      }
      compared += truth.size();
    }
  }
  return {true, std::to_string(compared) + " per-action counts identical (50 worlds x n=1..3)"};
}

Verdict full_expansion() {
  std::size_t runs = 0;
  for (std::uint64_t w = 0; w < 50; ++w) {
    const BlockWorld world = generate_random_world(derive_seed(102, {w}), {5, 5, 5});
    CallCounter counter;
    const auto truth = exhaustive_empowerment(BlockWorldModel{}, world, 2, counter);
    for (Variant v : {Variant::Uct, Variant::UctNovelty}) {
      SearchConfig cfg = bench::variant_config(v, 2, 0, derive_seed(103, {w}));
      cfg.budget.reset();
      const auto out = best_action(BlockWorldModel{}, world, cfg);
      if (out.report.counts != truth.counts || out.action != truth.best_action()) {
        return {false, "world " + std::to_string(w) + ", " +
                           std::string(bench::variant_name(v)) + ": differs from exhaustive"};
      }
      ++runs;
    }
  }
  return {true, std::to_string(runs) +
                    " unbounded runs (UCT, UCT+Novelty) match exhaustive counts and argmax"};
}

Verdict physics_suite() {
  const auto cases = physics_cases::all_cases();
  for (const auto& c : cases) {
    const std::string failure = c.run();
    if (!failure.empty()) return {false, c.name + ": " + failure};
  }
  return {true, std::to_string(cases.size()) + " hand-simulated rule cases"};
}

Verdict budget_and_determinism() {
  bench::BenchParams p;
  p.worlds = 10;
  p.horizon = 4;
  p.fractions = bench::halving_fractions(6);
  p.seed = 7;
  p.jobs = jobs();
  const auto first = bench::run_benchmark(p);
  const auto second = bench::run_benchmark(p);
  for (const auto& r : first.results) {
    if (r.calls_used > r.budget) {
      return {false, std::string(bench::variant_name(r.variant)) + " used " +
                         std::to_string(r.calls_used) + " > budget " + std::to_string(r.budget)};
    }
  }
  auto serialize = [](const bench::BenchTable& t) {
    std::ostringstream s;
    for (const auto& r : t.results) {
      s << r.world_id << ' ' << static_cast<int>(r.variant) << ' ' << r.fraction << ' '
        << r.budget << ' ' << r.chosen_action << ' ' << r.calls_used << '\n';
    }
    s << bench::format_csv(bench::aggregate(t, bench::Metric::OptimalRatio))
      << bench::format_csv(bench::aggregate(t, bench::Metric::RelativePerformance));
    return s.str();
  };
  if (serialize(first) != serialize(second)) return {false, "repeated sweep differs"};
  return {true, std::to_string(first.results.size()) +
                    " runs within budget; repeated sweep byte-identical"};
}

Verdict benchmark_dominance() {
  bench::BenchParams p;
  p.worlds = 100;
  p.horizon = 4;
  p.fractions = {1.0 / 64, 1.0 / 32, 1.0 / 16, 1.0 / 8};
  p.seed = 1;
  p.jobs = jobs();
  const auto perf = bench::aggregate(bench::run_benchmark(p), bench::Metric::RelativePerformance);
  auto at = [&](Variant v, std::size_t f) { return perf.values[static_cast<std::size_t>(v)][f]; };

  std::cout << "      mean relative performance (100 worlds, n=4, seed 1)\n      fraction";
  for (double f : p.fractions) std::cout << "  " << fraction_label(f);
  std::cout << '\n';
  for (Variant v : bench::kAllVariants) {
    std::string name(bench::variant_name(v));
    name.resize(16, ' ');
    std::cout << "      " << name;
    for (std::size_t f = 0; f < p.fractions.size(); ++f) std::cout << ' ' << fmt(at(v, f));
    std::cout << '\n';
  }

  std::vector<std::string> misses;
  for (Variant v : {Variant::UctBoth, Variant::UctaBoth}) {
    for (std::size_t f = 0; f < p.fractions.size(); ++f) {
      if (!(at(v, f) > at(Variant::Basic, f))) {
        misses.push_back("(a) " + std::string(bench::variant_name(v)) + " " + fmt(at(v, f)) +
                         " <= Basic " + fmt(at(Variant::Basic, f)) + " at " +
                         fraction_label(p.fractions[f]));
      }
    }
  }
  const std::pair<Variant, Variant> pairs[] = {{Variant::UctNovelty, Variant::Uct},
                                               {Variant::UctBoth, Variant::UctBranching},
                                               {Variant::UctaNovelty, Variant::Ucta},
                                               {Variant::UctaBoth, Variant::UctaBranching}};
  for (const auto& [novel, base] : pairs) {
    for (std::size_t f = 0; f < p.fractions.size(); ++f) {
      if (p.fractions[f] < 1.0 / 16) continue;
      if (at(novel, f) - at(base, f) < -0.01) {
        misses.push_back("(b) " + std::string(bench::variant_name(novel)) + " " +
                         fmt(at(novel, f)) + " < " + std::string(bench::variant_name(base)) +
                         " " + fmt(at(base, f)) + " - 0.01 at " + fraction_label(p.fractions[f]));
      }
    }
  }
  if (!misses.empty()) {
    std::string detail;
    for (const auto& m : misses) detail += (detail.empty() ? "" : "; ") + m;
    return {false, detail};
  }
  return {true, "(a) both full variants beat Basic at every fraction; (b) novelty never "
                "trails by more than 0.01 at >= 1/16"};
}

Verdict bridge_bottleneck() {
  bench::BridgeParams p;
  p.budgets = {10000};
  p.runs = 100;
  p.horizon = 10;
  p.seed = 1;
  p.jobs = jobs();
  const auto t = bench::run_bridge(bridge_scenario(), p);
  auto share = [&](Variant v) { return t.toward[static_cast<std::size_t>(v)][0]; };
  std::cout << "      bridge-ward share (100 runs, n=10, budget 10000):";
  for (Variant v : bench::kAllVariants) {
    std::cout << ' ' << bench::variant_name(v) << '=' << fmt(share(v), 2);
  }
  std::cout << '\n';
  const double basic = share(Variant::Basic);
  const double uct = share(Variant::Uct);
  const double best = share(Variant::UctaBoth);
  const bool ok = basic < 0.15 && uct < 0.15 && best > 0.30 && best > basic;
  return {ok, "Basic " + fmt(basic, 2) + " (< 0.15), UCT " + fmt(uct, 2) + " (< 0.15), UCTa+Both " +
                  fmt(best, 2) + " (> 0.30 and > Basic)"};
}

Verdict uct_arithmetic() {
  auto node = [](std::size_t states, std::uint64_t visits, std::uint64_t unique) {
    SearchNode n;
    for (std::size_t i = 0; i < states; ++i) n.states.insert(SensorToken{i});
    n.visits = visits;
    n.unique = unique;
    return n;
  };
  auto root = [&](std::uint64_t visits) { return node(0, visits, 0); };
  SearchConfig off;
  SearchConfig on;
  on.novelty = true;
  struct Example {
    double got;
    double expected;
    double stated;
    double stated_precision;
  };
  const Example examples[] = {
      {uct_value(node(1, 1, 0), root(1), off), 1.0 + 0.01 * std::sqrt(std::log(1.0) / 1.0), 1.0,
       0.0},
      {uct_value(node(5, 2, 0), root(100), off), 2.5 + 0.01 * std::sqrt(std::log(100.0) / 2.0),
       2.5152, 5e-5},
      {uct_value(node(3, 5, 2), root(5), on), 1.0 + 0.01 * std::sqrt(std::log(5.0) / 5.0),
       1.00567, 5e-6},
  };
  std::string detail;
  bool ok = true;
  for (const auto& e : examples) {
    ok = ok && std::abs(e.got - e.expected) <= 1e-9 &&
         std::abs(e.expected - e.stated) <= e.stated_precision;
    detail += (detail.empty() ? "" : ", ") + fmt(e.got, 9);
  }
  return {ok, "values " + detail + " (tolerance 1e-9)"};
}

Verdict property_suite() {
  const auto results = properties::all(1000);
  std::string detail;
  bool ok = true;
  for (const auto& r : results) {
    ok = ok && r.ok() && r.cases >= 1000;
    if (!r.ok()) detail += r.name + " failed: " + r.first_failure + "; ";
  }
  if (ok) detail = std::to_string(results.size()) + " properties x >= 1000 cases each";
  return {ok, detail};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {1, "oracle equivalence (exhaustive vs per-sequence oracle)", oracle_equivalence},
      {2, "full-expansion equivalence (UCT vs exhaustive)", full_expansion},
      {3, "simulator physics suite", physics_suite},
      {4, "budget compliance and determinism", budget_and_determinism},
      {5, "benchmark dominance", benchmark_dominance},
      {6, "bridge bottleneck", bridge_bottleneck},
      {7, "uct value arithmetic", uct_arithmetic},
      {8, "property suite", property_suite},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::stoi(argv[i]));

  int failures = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && !only.count(c.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << (v.pass ? "PASS" : "FAIL") << " [" << c.id << "] " << c.name << " -- "
              << v.detail << " (" << fmt(secs, 1) << " s)" << std::endl;
    failures += v.pass ? 0 : 1;
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
