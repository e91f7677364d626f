#include "empower/bench.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "empower/io_error.hpp"
#include "empower/rng.hpp"

#ifndef EMPOWER_GIT_DESCRIBE
#define EMPOWER_GIT_DESCRIBE "unknown"
#endif

namespace empower::bench {

using blockworld::BlockWorld;
using blockworld::BlockWorldModel;

namespace {

constexpr std::array<std::string_view, kVariantCount> kVariantNames{
    "Basic", "UCT",  "UCT+Novelty",  "UCT+Branching",  "UCT+Both",
    "UCTa",  "UCTa+Novelty", "UCTa+Branching", "UCTa+Both"};

// Coordinates mixed into per-job seeds.
constexpr std::uint64_t kWorldStream = 0x776f726c64ULL;   // "world"
constexpr std::uint64_t kSearchStream = 0x736561726368ULL;  // "search"
constexpr std::uint64_t kBridgeStream = 0x627269646765ULL;  // "bridge"

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
  return std::string(buf, ptr);
}

double parse_double(std::string_view s, std::size_t line) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw std::runtime_error("csv line " + std::to_string(line) +
                             ": bad number '" + std::string(s) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

std::string_view variant_name(Variant v) {
  return kVariantNames[static_cast<std::size_t>(v)];
}

std::optional<Variant> parse_variant(std::string_view name) {
  for (std::size_t i = 0; i < kVariantNames.size(); ++i) {
    if (kVariantNames[i] == name) return static_cast<Variant>(i);
  }
  return std::nullopt;
}

SearchConfig variant_config(Variant v, std::size_t horizon, std::uint64_t budget,
                            std::uint64_t seed) {
  SearchConfig c;
  c.horizon = horizon;
  c.budget = budget;
  c.seed = seed;
  c.aggregated = v >= Variant::Ucta;
  c.novelty = v == Variant::UctNovelty || v == Variant::UctBoth ||
              v == Variant::UctaNovelty || v == Variant::UctaBoth;
  const bool branching = v == Variant::UctBranching || v == Variant::UctBoth ||
                         v == Variant::UctaBranching || v == Variant::UctaBoth;
  c.branch_depth = branching ? 1 : 0;
  return c;
}

VariantRun run_variant(const BlockWorld& world, Variant variant,
                       std::size_t horizon, std::uint64_t budget,
                       std::uint64_t seed) {
  const BlockWorldModel model;
  CallCounter counter = CallCounter::with_budget(budget);
  VariantRun run;
  if (variant == Variant::Basic) {
    Rng rng(seed);
    auto choice = basic_sampling_action(model, world, horizon, counter, rng);
    run.action = choice.action;
    run.degenerate = choice.report.degenerate;
    run.report = std::move(choice.report);
  } else {
    auto outcome = best_action(model, world,
                               variant_config(variant, horizon, budget, seed),
                               counter);
    run.action = outcome.action;
    run.degenerate = outcome.degenerate;
    run.report = std::move(outcome.report);
  }
  run.calls_used = counter.used();
  return run;
}

std::vector<double> halving_fractions(std::size_t count) {
  std::vector<double> out;
  double f = 1.0;
  for (std::size_t i = 0; i < count; ++i) {
    f /= 2.0;
    out.push_back(f);
  }
  return out;
}

std::uint64_t fraction_budget(double fraction, std::uint64_t baseline_calls) {
  return static_cast<std::uint64_t>(
      std::floor(fraction * static_cast<double>(baseline_calls)));
}

std::pair<bool, double> score(const WorldBaseline& baseline, ActionId chosen) {
  const std::uint64_t got = baseline.counts.at(chosen);
  return {got == baseline.best_count,
          static_cast<double>(got) / static_cast<double>(baseline.best_count)};
}

void parallel_for(std::size_t count, std::size_t jobs,
                  const std::function<void(std::size_t)>& fn) {
  jobs = std::max<std::size_t>(1, std::min(jobs, count));
  if (jobs == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < jobs; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

BenchTable run_benchmark(const BenchParams& params) {
  if (params.worlds == 0) throw std::invalid_argument("corpus must hold a world");
  for (double f : params.fractions) {
    if (!(f > 0.0 && f <= 1.0)) {
      throw std::invalid_argument("budget fractions must lie in (0, 1]");
    }
  }
  const BlockWorldModel model;
  const std::size_t per_world = kVariantCount * params.fractions.size();

  BenchTable table;
  table.params = params;
  table.baselines.resize(params.worlds);
  table.results.resize(params.worlds * per_world);

  parallel_for(params.worlds, params.jobs, [&](std::size_t w) {
    WorldBaseline& base = table.baselines[w];
    base.world_id = w;
    base.world_seed = derive_seed(params.seed, {kWorldStream, w});
    const BlockWorld world = blockworld::generate_random_world(base.world_seed, params.dims);

    CallCounter counter;
    const auto report = exhaustive_empowerment(model, world, params.horizon, counter);
    base.calls = report.calls_used;
    base.counts = report.counts;
    base.best_count = report.best_count();
    base.dead_start = std::ranges::all_of(model.actions(world), [&](ActionId a) {
      return !model.step(world, a).alive();
    });

    std::size_t slot = w * per_world;
    for (Variant v : kAllVariants) {
      for (double f : params.fractions) {
        BenchResult& r = table.results[slot++];
        r.world_id = w;
        r.variant = v;
        r.fraction = f;
        r.budget = fraction_budget(f, base.calls);
        const std::uint64_t seed = derive_seed(
            params.seed, {kSearchStream, w, static_cast<std::uint64_t>(v),
                          std::bit_cast<std::uint64_t>(f)});
        const VariantRun run = run_variant(world, v, params.horizon, r.budget, seed);
        r.chosen_action = run.action;
        r.calls_used = run.calls_used;
        std::tie(r.optimal, r.relative_performance) = score(base, run.action);
      }
    }
  });
  return table;
}

SeriesTable aggregate(const BenchTable& table, Metric metric) {
  const auto& fractions = table.params.fractions;
  SeriesTable out;
  out.key_name = "fraction";
  out.keys = fractions;
  std::array<std::vector<double>, kVariantCount> sums;
  for (auto& s : sums) s.assign(fractions.size(), 0.0);
  for (const BenchResult& r : table.results) {
    const auto fi = static_cast<std::size_t>(
        std::find(fractions.begin(), fractions.end(), r.fraction) - fractions.begin());
    const double value = metric == Metric::OptimalRatio
                             ? (r.optimal ? 1.0 : 0.0)
                             : r.relative_performance;
    sums[static_cast<std::size_t>(r.variant)][fi] += value;
  }
  const auto worlds = static_cast<double>(table.baselines.size());
  for (std::size_t v = 0; v < kVariantCount; ++v) {
    for (double& s : sums[v]) s /= worlds;
    out.values[v] = std::move(sums[v]);
  }
  return out;
}

std::string format_csv(const SeriesTable& table) {
  if (table.keys.empty()) throw std::invalid_argument("refusing to write an empty table");
  std::ostringstream out;
  out << table.key_name;
  for (std::string_view name : kVariantNames) out << ',' << name;
  out << '\n';
  for (std::size_t row = 0; row < table.keys.size(); ++row) {
    out << format_double(table.keys[row]);
    for (const auto& column : table.values) {
      out << ',';
      if (row < column.size()) out << format_double(column[row]);
    }
    out << '\n';
  }
  return out.str();
}

void emit_csv(const SeriesTable& table, const std::filesystem::path& path) {
  const std::string text = format_csv(table);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("failed writing " + path.string());
}

SeriesTable parse_csv(std::string_view text) {
  SeriesTable table;
  std::size_t line_no = 0;
  bool header = true;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != kVariantCount + 1) {
      throw std::runtime_error("csv line " + std::to_string(line_no) + ": expected " +
                               std::to_string(kVariantCount + 1) + " columns");
    }
    if (header) {
      table.key_name = std::string(cells[0]);
      for (std::size_t v = 0; v < kVariantCount; ++v) {
        if (cells[v + 1] != kVariantNames[v]) {
          throw std::runtime_error("csv header: unexpected column '" +
                                   std::string(cells[v + 1]) + "'");
        }
      }
      header = false;
      continue;
    }
    table.keys.push_back(parse_double(cells[0], line_no));
    for (std::size_t v = 0; v < kVariantCount; ++v) {
      if (!cells[v + 1].empty()) {
        table.values[v].push_back(parse_double(cells[v + 1], line_no));
      }
    }
  }
  if (header) throw std::runtime_error("csv: missing header");
  return table;
}

SeriesTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_csv(buf.str());
}

BridgeTable run_bridge(const blockworld::Scenario& scenario,
                       const BridgeParams& params) {
  const auto toward = blockworld::move_toward(scenario.world, scenario.target);
  const std::size_t nb = params.budgets.size();
  const std::size_t nv = params.variants.size();

  BridgeTable table;
  table.params = params;
  table.toward.assign(nv, std::vector<double>(nb, 0.0));
  table.choices.assign(nv, std::vector<std::vector<ActionId>>(
                               nb, std::vector<ActionId>(params.runs, 0)));

  parallel_for(nv * nb * params.runs, params.jobs, [&](std::size_t job) {
    const std::size_t run = job % params.runs;
    const std::size_t bi = job / params.runs % nb;
    const std::size_t vi = job / params.runs / nb;
    const Variant v = params.variants[vi];
    const std::uint64_t seed =
        derive_seed(params.seed, {kBridgeStream, static_cast<std::uint64_t>(v),
                                  params.budgets[bi], run});
    table.choices[vi][bi][run] =
        run_variant(scenario.world, v, params.horizon, params.budgets[bi], seed).action;
  });

  for (std::size_t vi = 0; vi < nv; ++vi) {
    for (std::size_t bi = 0; bi < nb; ++bi) {
      const auto& picks = table.choices[vi][bi];
      const auto hits = std::ranges::count_if(picks, [&](ActionId a) {
        return toward && a == blockworld::to_id(*toward);
      });
      table.toward[vi][bi] =
          params.runs == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(params.runs);
    }
  }
  return table;
}

SeriesTable bridge_series(const BridgeTable& table) {
  SeriesTable out;
  out.key_name = "budget";
  for (auto b : table.params.budgets) out.keys.push_back(static_cast<double>(b));
  for (std::size_t vi = 0; vi < table.params.variants.size(); ++vi) {
    out.values[static_cast<std::size_t>(table.params.variants[vi])] = table.toward[vi];
  }
  return out;
}

std::string git_describe() { return EMPOWER_GIT_DESCRIBE; }

nlohmann::json manifest(const BenchParams& params) {
  nlohmann::json variants = nlohmann::json::array();
  for (auto name : kVariantNames) variants.push_back(name);
  return {{"command", "bench"},
          {"git_describe", git_describe()},
          {"seed", params.seed},
          {"worlds", params.worlds},
          {"horizon", params.horizon},
          {"dims", {params.dims.x, params.dims.y, params.dims.z}},
          {"fractions", params.fractions},
          {"variants", variants},
          {"world_seed", "derive_seed(seed, {world-stream, world_id})"},
          {"job_seed", "derive_seed(seed, {search-stream, world_id, variant, fraction bits})"},
          {"rng", "mt19937_64"}};
}

nlohmann::json manifest(const BridgeParams& params, const std::string& scenario) {
  nlohmann::json variants = nlohmann::json::array();
  for (Variant v : params.variants) variants.push_back(variant_name(v));
  return {{"command", "bridge"},
          {"git_describe", git_describe()},
          {"scenario", scenario},
          {"seed", params.seed},
          {"runs", params.runs},
          {"horizon", params.horizon},
          {"budgets", params.budgets},
          {"variants", variants},
          {"job_seed", "derive_seed(seed, {bridge-stream, variant, budget, run})"},
          {"rng", "mt19937_64"}};
}

}  // namespace empower::bench
