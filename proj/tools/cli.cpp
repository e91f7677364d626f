#include "cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "empower/bench.hpp"
#include "empower/empowerment.hpp"
#include "empower/io_error.hpp"
#include "empower/scenarios.hpp"
#include "empower/svg_plot.hpp"
#include "empower/uct_search.hpp"
#include "empower/world_io.hpp"

namespace empower::cli {

namespace fs = std::filesystem;
using blockworld::BlockAction;
using blockworld::BlockWorld;
using blockworld::BlockWorldModel;
using nlohmann::json;

namespace {

// Raised for malformed user input that is not a world-file problem.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Common {
  std::uint64_t seed = 1;
  bool json = false;
};

std::string default_out_dir() {
  if (const char* env = std::getenv("EMPOWER_OUT_DIR"); env && *env) return env;
  return ".";
}

std::string action_label(ActionId id) {
  return std::string(blockworld::action_name(blockworld::from_id(id)));
}

double parse_fraction(const std::string& text) {
  auto parse = [&](std::string_view s) {
    double v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
      throw UsageError("bad fraction '" + text + "'");
    }
    return v;
  };
  const auto slash = text.find('/');
  const double v = slash == std::string::npos
                       ? parse(text)
                       : parse(std::string_view(text).substr(0, slash)) /
                             parse(std::string_view(text).substr(slash + 1));
  if (!(v > 0.0 && v <= 1.0)) throw UsageError("fraction '" + text + "' outside (0, 1]");
  return v;
}

blockworld::Vec3 parse_triple(const std::vector<int>& v, const char* what) {
  if (v.size() != 3) throw UsageError(std::string(what) + " needs three values X,Y,Z");
  return {v[0], v[1], v[2]};
}

void print_seed(std::ostream& out, const Common& c) {
  if (!c.json) out << "seed: " << c.seed << '\n';
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write " + path.string());
  f << text;
  if (!f) throw IoError("failed writing " + path.string());
}

void print_series(std::ostream& out, const bench::SeriesTable& t, int precision) {
  out << std::left << std::setw(16) << "variant";
  for (double k : t.keys) {
    std::ostringstream key;
    const double inverse = 1.0 / k;
    if (k < 1.0 && inverse == std::round(inverse)) {
      key << "1/" << static_cast<long long>(inverse);
    } else {
      key << k;
    }
    out << std::right << std::setw(10) << key.str();
  }
  out << '\n';
  for (std::size_t v = 0; v < bench::kVariantCount; ++v) {
    if (t.values[v].empty()) continue;
    out << std::left << std::setw(16) << bench::variant_name(static_cast<bench::Variant>(v));
    for (double x : t.values[v]) {
      out << std::right << std::setw(10) << std::fixed << std::setprecision(precision) << x;
    }
    out.unsetf(std::ios::floatfield);
    out << '\n';
  }
}

// --- simulate -------------------------------------------------------------

struct SimulateArgs {
  std::string world;
  std::vector<std::string> actions;
  std::size_t dump_every = 0;
};

int cmd_simulate(const SimulateArgs& a, const Common& c, std::ostream& out) {
  BlockWorld w = blockworld::load_world_file(a.world);
  std::vector<BlockAction> actions;
  for (const auto& name : a.actions) {
    auto act = blockworld::parse_action(name);
    if (!act) throw InputError("unknown action '" + name + "'");
    actions.push_back(*act);
  }
  json dumps = json::array();
  auto dump = [&](std::size_t step) {
    if (c.json) {
      dumps.push_back({{"step", step}, {"world", blockworld::save_world(w)}});
    } else {
      out << "step " << step << '\n' << blockworld::save_world(w);
    }
  };
  print_seed(out, c);
  if (a.dump_every > 0) dump(0);
  for (std::size_t i = 0; i < actions.size(); ++i) {
    w = blockworld::apply_block_action(w, actions[i]);
    const std::size_t step = i + 1;
    if (a.dump_every > 0 && step % a.dump_every == 0) dump(step);
  }
  if (a.dump_every == 0 || actions.size() % a.dump_every != 0) dump(actions.size());
  if (c.json) out << json{{"seed", c.seed}, {"dumps", dumps}}.dump(2) << '\n';
  return kOk;
}

// --- empower --------------------------------------------------------------

struct EmpowerArgs {
  std::string world;
  std::size_t n = 4;
  std::optional<std::uint64_t> budget;
};

int cmd_empower(const EmpowerArgs& a, const Common& c, std::ostream& out) {
  const BlockWorld w = blockworld::load_world_file(a.world);
  CallCounter counter(a.budget);
  const auto report = exhaustive_empowerment(BlockWorldModel{}, w, a.n, counter);
  if (c.json) {
    json rows = json::array();
    for (std::size_t i = 0; i < report.actions.size(); ++i) {
      rows.push_back({{"action", action_label(report.actions[i])},
                      {"id", report.actions[i]},
                      {"count", report.counts[i]},
                      {"bits", EmpowermentReport::bits(report.counts[i])}});
    }
    out << json{{"seed", c.seed},
                {"n", a.n},
                {"calls_used", report.calls_used},
                {"best", action_label(report.best_action())},
                {"actions", rows}}
               .dump(2)
        << '\n';
    return kOk;
  }
  print_seed(out, c);
  out << "n: " << a.n << "\ncalls: " << report.calls_used << '\n';
  out << std::left << std::setw(14) << "action" << std::right << std::setw(8) << "count"
      << std::setw(10) << "bits" << '\n';
  for (std::size_t i = 0; i < report.actions.size(); ++i) {
    out << std::left << std::setw(14) << action_label(report.actions[i]) << std::right
        << std::setw(8) << report.counts[i] << std::setw(10) << std::fixed
        << std::setprecision(4) << EmpowermentReport::bits(report.counts[i]) << '\n';
    out.unsetf(std::ios::floatfield);
  }
  out << "best: " << action_label(report.best_action()) << '\n';
  return kOk;
}

// --- act ------------------------------------------------------------------

struct ActArgs {
  std::string world;
  std::size_t n = 4;
  std::uint64_t budget = 10000;
  std::string variant = "UCTa+Both";
  double exploration = 0.01;
  bool cache_successors = false;
};

int cmd_act(const ActArgs& a, const Common& c, std::ostream& out, std::ostream& err) {
  const auto variant = bench::parse_variant(a.variant);
  if (!variant) throw UsageError("unknown variant '" + a.variant + "'");
  const BlockWorld w = blockworld::load_world_file(a.world);
  const BlockWorldModel model;

  ActionId chosen = 0;
  bool degenerate = false;
  std::uint64_t used = 0;
  json children = json::array();
  if (*variant == bench::Variant::Basic) {
    CallCounter counter = CallCounter::with_budget(a.budget);
    Rng rng(c.seed);
    const auto choice = basic_sampling_action(model, w, a.n, counter, rng);
    chosen = choice.action;
    degenerate = choice.report.degenerate;
    used = counter.used();
    for (std::size_t i = 0; i < choice.report.actions.size(); ++i) {
      children.push_back({{"action", choice.report.actions[i]},
                          {"states", choice.report.counts[i]}});
    }
  } else {
    SearchConfig cfg = bench::variant_config(*variant, a.n, a.budget, c.seed);
    cfg.exploration = a.exploration;
    cfg.cache_successors = a.cache_successors;
    CallCounter counter = CallCounter::with_budget(a.budget);
    const auto outcome = best_action(model, w, cfg, counter);
    chosen = outcome.action;
    degenerate = outcome.degenerate;
    used = counter.used();
    children = dump_root_children(outcome.tree);
  }
  for (auto& child : children) child["name"] = action_label(child["action"].get<ActionId>());
  if (degenerate) {
    err << "warning: budget " << a.budget
        << " cannot pay for one sample; picked a random action\n";
  }
  if (c.json) {
    out << json{{"seed", c.seed},
                {"variant", a.variant},
                {"n", a.n},
                {"budget", a.budget},
                {"calls_used", used},
                {"degenerate", degenerate},
                {"action", action_label(chosen)},
                {"children", children}}
               .dump(2)
        << '\n';
    return kOk;
  }
  print_seed(out, c);
  out << "variant: " << a.variant << "\ncalls: " << used << " / " << a.budget << '\n';
  out << std::left << std::setw(14) << "child" << std::right << std::setw(8) << "visits"
      << std::setw(8) << "states" << std::setw(8) << "unique" << '\n';
  for (const auto& child : children) {
    out << std::left << std::setw(14) << child["name"].get<std::string>() << std::right
        << std::setw(8) << (child.contains("visits") ? std::to_string(child["visits"].get<std::uint64_t>()) : "-")
        << std::setw(8) << child["states"].get<std::uint64_t>() << std::setw(8)
        << (child.contains("unique") ? std::to_string(child["unique"].get<std::uint64_t>()) : "-")
        << '\n';
  }
  out << "action: " << action_label(chosen) << '\n';
  return kOk;
}

// --- bench ----------------------------------------------------------------

struct BenchArgs {
  std::size_t worlds = 100;
  bool full = false;
  std::size_t n = 4;
  std::vector<std::string> fractions;
  std::string out_dir;
  std::size_t jobs = 1;
  bool plot = false;
};

int cmd_bench(const BenchArgs& a, const Common& c, std::ostream& out) {
  bench::BenchParams p;
  p.worlds = a.full ? 1000 : a.worlds;
  p.horizon = a.n;
  p.seed = c.seed;
  p.jobs = a.jobs;
  if (!a.fractions.empty()) {
    p.fractions.clear();
    for (const auto& f : a.fractions) p.fractions.push_back(parse_fraction(f));
  }
  const fs::path dir = a.out_dir.empty() ? default_out_dir() : a.out_dir;
  fs::create_directories(dir);

  const auto table = bench::run_benchmark(p);
  const auto optimal = bench::aggregate(table, bench::Metric::OptimalRatio);
  const auto perf = bench::aggregate(table, bench::Metric::RelativePerformance);
  const json manifest = bench::manifest(p);
  const std::pair<std::string, const bench::SeriesTable*> outputs[] = {
      {"resultsoptimal", &optimal}, {"resultsperformance", &perf}};
  for (const auto& [stem, series] : outputs) {
    bench::emit_csv(*series, dir / (stem + ".csv"));
    json m = manifest;
    m["metric"] = stem == "resultsoptimal" ? "optimal-ratio" : "relative-performance";
    write_text(dir / (stem + ".json"), m.dump(2) + "\n");
    if (a.plot) {
      bench::PlotOptions opt;
      opt.title = stem == "resultsoptimal" ? "Ratio of optimal choices"
                                           : "Average relative performance";
      opt.y_label = stem == "resultsoptimal" ? "optimal ratio" : "relative performance";
      write_text(dir / (stem + ".svg"), bench::render_svg(*series, opt));
    }
  }

  if (c.json) {
    out << json{{"seed", c.seed},
                {"worlds", p.worlds},
                {"n", p.horizon},
                {"fractions", p.fractions},
                {"optimal", optimal.values},
                {"performance", perf.values},
                {"out_dir", dir.string()}}
               .dump(2)
        << '\n';
    return kOk;
  }
  print_seed(out, c);
  out << "worlds: " << p.worlds << "  n: " << p.horizon
      << "  baseline calls (world 0): " << table.baselines.front().calls << '\n';
  out << "\noptimal-choice ratio\n";
  print_series(out, optimal, 3);
  out << "\nmean relative performance\n";
  print_series(out, perf, 3);
  out << "\nwrote " << (dir / "resultsoptimal.csv").string() << ", "
      << (dir / "resultsperformance.csv").string() << '\n';
  return kOk;
}

// --- bridge ---------------------------------------------------------------

struct BridgeArgs {
  std::vector<std::uint64_t> budgets{10000};
  std::size_t runs = 100;
  std::size_t n = 10;
  std::string scenario = "bridge";
  std::string world;
  std::vector<int> target;
  std::vector<std::string> variants;
  std::string out_dir;
  std::size_t jobs = 1;
  bool plot = false;
};

int cmd_bridge(const BridgeArgs& a, const Common& c, std::ostream& out) {
  blockworld::Scenario sc;
  if (!a.world.empty()) {
    sc.name = fs::path(a.world).stem().string();
    sc.world = blockworld::load_world_file(a.world);
    sc.target = parse_triple(a.target, "--target");
  } else {
    auto found = blockworld::find_scenario(a.scenario);
    if (!found) throw UsageError("unknown scenario '" + a.scenario + "'");
    sc = *found;
    if (!a.target.empty()) sc.target = parse_triple(a.target, "--target");
  }
  bench::BridgeParams p;
  p.budgets = a.budgets;
  p.runs = a.runs;
  p.horizon = a.n;
  p.seed = c.seed;
  p.jobs = a.jobs;
  if (!a.variants.empty()) {
    p.variants.clear();
    for (const auto& name : a.variants) {
      auto v = bench::parse_variant(name);
      if (!v) throw UsageError("unknown variant '" + name + "'");
      p.variants.push_back(*v);
    }
  }
  const auto table = bench::run_bridge(sc, p);
  const auto series = bench::bridge_series(table);

  const fs::path dir = a.out_dir.empty() ? default_out_dir() : a.out_dir;
  fs::create_directories(dir);
  bench::emit_csv(series, dir / "bridge.csv");
  write_text(dir / "bridge.json", bench::manifest(p, sc.name).dump(2) + "\n");
  if (a.plot) {
    bench::PlotOptions opt;
    opt.title = "Bridge scenario: first move toward the crossing";
    opt.x_label = "forward model calls";
    opt.y_label = "share of runs";
    write_text(dir / "bridge.svg", bench::render_svg(series, opt));
  }

  const auto toward = blockworld::move_toward(sc.world, sc.target);
  if (c.json) {
    json rows = json::array();
    for (std::size_t vi = 0; vi < p.variants.size(); ++vi) {
      rows.push_back({{"variant", bench::variant_name(p.variants[vi])},
                      {"toward", table.toward[vi]}});
    }
    out << json{{"seed", c.seed},
                {"scenario", sc.name},
                {"runs", p.runs},
                {"n", p.horizon},
                {"budgets", p.budgets},
                {"toward_action", toward ? action_label(blockworld::to_id(*toward)) : "none"},
                {"results", rows}}
               .dump(2)
        << '\n';
    return kOk;
  }
  print_seed(out, c);
  out << "scenario: " << sc.name << "  runs: " << p.runs << "  n: " << p.horizon
      << "  toward: " << (toward ? action_label(blockworld::to_id(*toward)) : "none") << '\n';
  print_series(out, series, 2);
  out << "wrote " << (dir / "bridge.csv").string() << '\n';
  return kOk;
}

// --- gen-world ------------------------------------------------------------

struct GenArgs {
  std::vector<int> dims{7, 7, 7};
  std::string scenario;
  std::string out;
};

int cmd_gen_world(const GenArgs& a, const Common& c, std::ostream& out, std::ostream& err) {
  const auto dims = parse_triple(a.dims, "--dims");
  if (dims.x <= 0 || dims.y <= 0 || dims.z <= 0) throw UsageError("--dims must be positive");
  BlockWorld w = blockworld::generate_random_world(c.seed, dims);
  if (!a.scenario.empty()) {
    auto found = blockworld::find_scenario(a.scenario);
    if (!found) throw UsageError("unknown scenario '" + a.scenario + "'");
    w = found->world;
  }
  if (!a.out.empty()) {
    blockworld::save_world_file(w, a.out);
    if (c.json) {
      out << json{{"seed", c.seed}, {"out", a.out}}.dump(2) << '\n';
    } else {
      print_seed(out, c);
      out << "wrote " << a.out << '\n';
    }
    return kOk;
  }
  if (c.json) {
    out << json{{"seed", c.seed}, {"world", blockworld::save_world(w)}}.dump(2) << '\n';
  } else {
    // stdout stays a loadable world file, so the seed goes to stderr.
    err << "seed: " << c.seed << '\n';
    out << blockworld::save_world(w);
  }
  return kOk;
}

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--seed", c.seed, "RNG seed")->capture_default_str();
  cmd->add_flag("--json", c.json, "machine-readable output");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Empowerment estimation and UCT search in a voxel world", "empower"};
  app.require_subcommand(1);

  Common common;
  SimulateArgs sim;
  EmpowerArgs emp;
  ActArgs act;
  BenchArgs ben;
  BridgeArgs bri;
  GenArgs gen;

  auto* simulate = app.add_subcommand("simulate", "apply actions to a world and dump it");
  simulate->add_option("world", sim.world, "world file")->required();
  simulate->add_option("actions", sim.actions, "action names, e.g. move-east wait");
  simulate->add_option("--dump-every", sim.dump_every,
                       "dump every N steps (0: final state only)");
  add_common(simulate, common);

  auto* empower = app.add_subcommand("empower", "exhaustive n-step empowerment per action");
  empower->add_option("world", emp.world, "world file")->required();
  empower->add_option("--n", emp.n, "empowerment horizon")->capture_default_str();
  empower->add_option("--budget", emp.budget, "forward-call ceiling");
  add_common(empower, common);

  auto* actc = app.add_subcommand("act", "pick the most empowered action with one variant");
  actc->add_option("world", act.world, "world file")->required();
  actc->add_option("--n", act.n, "empowerment horizon")->capture_default_str();
  actc->add_option("--budget", act.budget, "forward-call budget")->capture_default_str();
  actc->add_option("--variant", act.variant, "Basic, UCT, UCT+Novelty, ..., UCTa+Both")
      ->capture_default_str();
  actc->add_option("--exploration", act.exploration, "UCT exploration constant")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  actc->add_flag("--cache-successors", act.cache_successors,
                 "do not re-bill descents through expanded edges");
  add_common(actc, common);

  auto* benchc = app.add_subcommand("bench", "budget sweep over random worlds");
  benchc->add_option("--worlds", ben.worlds, "corpus size")->capture_default_str();
  benchc->add_flag("--full", ben.full, "use the 1000-world corpus");
  benchc->add_option("--n", ben.n, "empowerment horizon")->capture_default_str();
  benchc->add_option("--fractions", ben.fractions, "budget fractions, e.g. 1/2,1/4")
      ->delimiter(',');
  benchc->add_option("--out-dir", ben.out_dir, "output directory (default $EMPOWER_OUT_DIR or .)");
  benchc->add_option("--jobs", ben.jobs, "worker threads")->capture_default_str();
  benchc->add_flag("--plot", ben.plot, "also write SVG line charts");
  add_common(benchc, common);

  auto* bridgec = app.add_subcommand("bridge", "bottleneck scenario: how often each variant heads for the crossing");
  bridgec->add_option("--budgets", bri.budgets, "forward-call budgets")->delimiter(',');
  bridgec->add_option("--runs", bri.runs, "seeded runs per variant and budget")
      ->capture_default_str();
  bridgec->add_option("--n", bri.n, "empowerment horizon")->capture_default_str();
  bridgec->add_option("--scenario", bri.scenario, "built-in scenario")->capture_default_str();
  bridgec->add_option("--world", bri.world, "custom world file (needs --target)");
  bridgec->add_option("--target", bri.target, "crossing cell X,Y,Z")->delimiter(',');
  bridgec->add_option("--variants", bri.variants, "subset of variants")->delimiter(',');
  bridgec->add_option("--out-dir", bri.out_dir, "output directory (default $EMPOWER_OUT_DIR or .)");
  bridgec->add_option("--jobs", bri.jobs, "worker threads")->capture_default_str();
  bridgec->add_flag("--plot", bri.plot, "also write an SVG line chart");
  add_common(bridgec, common);

  auto* genc = app.add_subcommand("gen-world", "write a random world");
  genc->add_option("--dims", gen.dims, "X,Y,Z")->delimiter(',');
  genc->add_option("--scenario", gen.scenario, "write a built-in scenario instead");
  genc->add_option("--out", gen.out, "output file (default stdout)");
  add_common(genc, common);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(sim, common, out);
    if (empower->parsed()) return cmd_empower(emp, common, out);
    if (actc->parsed()) return cmd_act(act, common, out, err);
    if (benchc->parsed()) return cmd_bench(ben, common, out);
    if (bridgec->parsed()) return cmd_bridge(bri, common, out);
    if (genc->parsed()) return cmd_gen_world(gen, common, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const blockworld::WorldParseError& e) {
    err << "error: world file: " << e.what() << '\n';
    return kInputError;
  } catch (const blockworld::WorldValidationError& e) {
    err << "error: world file: " << e.what() << '\n';
    return kInputError;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const BudgetExhausted& e) {
    err << "error: " << e.what() << "; partial results suppressed\n";
    return kRuntimeError;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
  return kUsage;
}

}  // namespace empower::cli
