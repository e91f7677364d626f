#pragma once

// Experiment harness: random-world corpora scored against the exhaustive
// baseline, budget sweeps over the nine estimator variants, and the bridge
// scenario.  Every job draws its randomness from a seed derived from
// (master seed, job coordinates), so results do not depend on --jobs.

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "empower/blockworld.hpp"
#include "empower/empowerment.hpp"
#include "empower/scenarios.hpp"
#include "empower/uct_search.hpp"

namespace empower::bench {

enum class Variant : std::uint8_t {
  Basic,
  Uct,
  UctNovelty,
  UctBranching,
  UctBoth,
  Ucta,
  UctaNovelty,
  UctaBranching,
  UctaBoth,
};

inline constexpr std::size_t kVariantCount = 9;
inline constexpr std::array<Variant, kVariantCount> kAllVariants{
    Variant::Basic,       Variant::Uct,           Variant::UctNovelty,
    Variant::UctBranching, Variant::UctBoth,      Variant::Ucta,
    Variant::UctaNovelty, Variant::UctaBranching, Variant::UctaBoth};

std::string_view variant_name(Variant v);
std::optional<Variant> parse_variant(std::string_view name);

/// Search settings for a UCT variant (Basic has none).
SearchConfig variant_config(Variant v, std::size_t horizon,
                            std::uint64_t budget, std::uint64_t seed);

struct VariantRun {
  ActionId action = 0;
  EmpowermentReport report;
  std::uint64_t calls_used = 0;
  bool degenerate = false;
};

/// One decision by `variant` on `world` within `budget` forward calls.
VariantRun run_variant(const blockworld::BlockWorld& world, Variant variant,
                       std::size_t horizon, std::uint64_t budget,
                       std::uint64_t seed);

/// 1/2, 1/4, ..., 1/2^count.
std::vector<double> halving_fractions(std::size_t count);

struct BenchParams {
  std::size_t worlds = 100;
  std::size_t horizon = 4;
  std::vector<double> fractions = halving_fractions(11);
  std::uint64_t seed = 1;
  blockworld::Vec3 dims{7, 7, 7};
  std::size_t jobs = 1;
};

struct WorldBaseline {
  std::size_t world_id = 0;
  std::uint64_t world_seed = 0;
  std::uint64_t calls = 0;
  std::vector<std::uint64_t> counts;
  std::uint64_t best_count = 0;
  /// Every first action leaves the agent dead, so all actions tie.
  bool dead_start = false;
};

struct BenchResult {
  std::size_t world_id = 0;
  Variant variant = Variant::Basic;
  double fraction = 0.0;
  std::uint64_t budget = 0;
  ActionId chosen_action = 0;
  bool optimal = false;
  double relative_performance = 0.0;
  std::uint64_t calls_used = 0;
};

struct BenchTable {
  BenchParams params;
  std::vector<WorldBaseline> baselines;
  std::vector<BenchResult> results;
};

/// floor(fraction * baseline_calls).
std::uint64_t fraction_budget(double fraction, std::uint64_t baseline_calls);

/// Scores `chosen` against a baseline: (optimal, count(chosen) / count(best)).
std::pair<bool, double> score(const WorldBaseline& baseline, ActionId chosen);

BenchTable run_benchmark(const BenchParams& params);

/// Column 0 is the key (fraction or budget); columns 1..9 are the variants
/// in kAllVariants order.
struct SeriesTable {
  std::string key_name;
  std::vector<double> keys;
  std::array<std::vector<double>, kVariantCount> values;

  friend bool operator==(const SeriesTable&, const SeriesTable&) = default;
};

enum class Metric { OptimalRatio, RelativePerformance };

/// Mean over worlds per (fraction, variant).
SeriesTable aggregate(const BenchTable& table, Metric metric);

void emit_csv(const SeriesTable& table, const std::filesystem::path& path);
std::string format_csv(const SeriesTable& table);
SeriesTable parse_csv(std::string_view text);
SeriesTable read_csv(const std::filesystem::path& path);

struct BridgeParams {
  std::vector<std::uint64_t> budgets{10000};
  std::size_t runs = 100;
  std::size_t horizon = 10;
  std::uint64_t seed = 1;
  std::size_t jobs = 1;
  std::vector<Variant> variants{kAllVariants.begin(), kAllVariants.end()};
};

struct BridgeTable {
  BridgeParams params;
  /// Share of runs whose first action moves toward the scenario target,
  /// indexed [variant position in params.variants][budget].
  std::vector<std::vector<double>> toward;
  /// Per-run chosen actions, same indexing plus run.
  std::vector<std::vector<std::vector<ActionId>>> choices;
};

BridgeTable run_bridge(const blockworld::Scenario& scenario,
                       const BridgeParams& params);

/// Bridge results as a budget-keyed series (variants missing from the run
/// are left empty).
SeriesTable bridge_series(const BridgeTable& table);

/// Seeds and settings of a run, written next to its CSVs.
nlohmann::json manifest(const BenchParams& params);
nlohmann::json manifest(const BridgeParams& params, const std::string& scenario);

std::string git_describe();

/// Runs fn(i) for i in [0, count) on up to `jobs` threads.
void parallel_for(std::size_t count, std::size_t jobs,
                  const std::function<void(std::size_t)>& fn);

}  // namespace empower::bench
